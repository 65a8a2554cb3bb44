"""Character scanner for the hand-written recursive-descent parsers.

Tracks the set of tokens that would have been accepted at the furthest
failure position so that :class:`ParseError` can report them.
"""

from __future__ import annotations

import re

from .errors import ParseError

_INT = re.compile(r"\d+")
_WORD = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class Scanner:
    def __init__(self, text: str, comments: bool = False):
        self.text = text
        self.pos = 0
        self.comments = comments
        self._expected: set[str] = set()
        self._expected_at = -1

    def skip(self) -> None:
        text, n = self.text, len(self.text)
        while self.pos < n:
            c = text[self.pos]
            if c.isspace():
                self.pos += 1
            elif self.comments and c == "#":
                nl = text.find("\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            else:
                break

    def _note(self, token: str) -> None:
        if self.pos > self._expected_at:
            self._expected = set()
            self._expected_at = self.pos
        if self.pos == self._expected_at:
            self._expected.add(token)

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.pos)

    def accept(self, literal: str) -> bool:
        self.skip()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        self._note(repr(literal))
        return False

    def expect(self, literal: str) -> None:
        if not self.accept(literal):
            self.fail()

    def integer(self) -> int | None:
        """Unsigned decimal integer, or None without consuming anything."""
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self._note("integer")
            return None
        self.pos = m.end()
        return int(m.group())

    def expect_integer(self) -> int:
        value = self.integer()
        if value is None:
            self.fail()
        return value

    def signed_integer(self) -> int:
        neg = self.accept("-")
        return -self.expect_integer() if neg else self.expect_integer()

    def word(self) -> str | None:
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def at_end(self) -> bool:
        self.skip()
        if self.pos >= len(self.text):
            return True
        self._note("end of input")
        return False

    def expect_end(self) -> None:
        if not self.at_end():
            self.fail()

    def fail(self, *expected: str):
        self.skip()
        for token in expected:
            self._note(token)
        if self._expected_at == self.pos:
            tokens = self._expected
        else:
            tokens = set(expected)
        raise ParseError(self.pos, tokens or {"<valid input>"}, self.text)
