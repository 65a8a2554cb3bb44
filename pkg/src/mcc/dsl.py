"""Text syntax for space expressions.

::

    space := "pt" | "P(" iexpr ")" | "WP(" int {"," int} ")" | "Gr(" iexpr "," iexpr ")"
           | "prod(" space "," space ")" | "bundle(fiber=" space ",base=" space ")"
           | "blowup(" space ",center=" space ",codim=" iexpr ")"
           | "contract(" space ",base=" space ",fiberdim=" iexpr ")"
           | "lit(" ratfun ")"
    iexpr := [int "*"] "r" [("+"|"-") int] | int

Whitespace is ignored between tokens and ``#`` starts a line comment.
:func:`format_space` is the inverse of :func:`parse_space`.
"""

from __future__ import annotations

from pathlib import Path

from ._scan import Scanner
from .cohomology import (
    BlowUp,
    Bundle,
    Contract,
    Grass,
    IntExpr,
    Literal,
    Point,
    Product,
    Proj,
    SpaceExpr,
    WProj,
)
from .ratpoly import _parse_ratfun, format_ratfun

__all__ = ["format_space", "load_msd", "parse_space"]

_HEADS = ("pt", "P", "WP", "Gr", "prod", "bundle", "blowup", "contract", "lit")


def parse_space(text: str) -> SpaceExpr:
    sc = Scanner(text, comments=True)
    s = _space(sc)
    sc.expect_end()
    return s


def load_msd(path) -> SpaceExpr:
    return parse_space(Path(path).read_text())


def _keyword(sc: Scanner, name: str) -> None:
    """Match ``name=`` allowing whitespace around the equals sign."""
    sc.skip()
    start = sc.pos
    word = sc.word()
    if word != name:
        sc.pos = start
        sc.fail(f"'{name}='")
    sc.expect("=")


def _space(sc: Scanner) -> SpaceExpr:
    sc.skip()
    start = sc.pos
    head = sc.word()
    if head not in _HEADS:
        sc.pos = start
        sc.fail(*(repr(h) for h in _HEADS))
    if head == "pt":
        return Point()
    sc.expect("(")
    if head == "P":
        node = Proj(_iexpr(sc))
    elif head == "WP":
        weights = [sc.expect_integer()]
        while sc.accept(","):
            weights.append(sc.expect_integer())
        node = WProj(*weights)
    elif head == "Gr":
        k = _iexpr(sc)
        sc.expect(",")
        node = Grass(k, _iexpr(sc))
    elif head == "prod":
        left = _space(sc)
        sc.expect(",")
        node = Product(left, _space(sc))
    elif head == "bundle":
        _keyword(sc, "fiber")
        fiber = _space(sc)
        sc.expect(",")
        _keyword(sc, "base")
        node = Bundle(fiber, _space(sc))
    elif head == "blowup":
        ambient = _space(sc)
        sc.expect(",")
        _keyword(sc, "center")
        center = _space(sc)
        sc.expect(",")
        _keyword(sc, "codim")
        node = BlowUp(ambient, center, _iexpr(sc))
    elif head == "contract":
        total = _space(sc)
        sc.expect(",")
        _keyword(sc, "base")
        base = _space(sc)
        sc.expect(",")
        _keyword(sc, "fiberdim")
        node = Contract(total, base, _iexpr(sc))
    else:
        node = Literal(_parse_ratfun(sc))
    sc.expect(")")
    return node


def _iexpr(sc: Scanner) -> IntExpr:
    neg = sc.accept("-")
    n = sc.integer()
    if n is not None:
        if neg:
            n = -n
        if not sc.accept("*"):
            return IntExpr(0, n)
        sc.expect("r")
        a = n
    else:
        if neg:
            sc.fail("integer")
        sc.expect("r")
        a = 1
    if sc.accept("+"):
        return IntExpr(a, sc.expect_integer())
    if sc.accept("-"):
        return IntExpr(a, -sc.expect_integer())
    return IntExpr(a, 0)


def format_space(s: SpaceExpr) -> str:
    if isinstance(s, Point):
        return "pt"
    if isinstance(s, Proj):
        return f"P({s.n})"
    if isinstance(s, WProj):
        return "WP(" + ",".join(map(str, s.weights)) + ")"
    if isinstance(s, Grass):
        return f"Gr({s.k},{s.n})"
    if isinstance(s, Product):
        return f"prod({format_space(s.left)},{format_space(s.right)})"
    if isinstance(s, Bundle):
        return f"bundle(fiber={format_space(s.fiber)},base={format_space(s.base)})"
    if isinstance(s, BlowUp):
        return f"blowup({format_space(s.ambient)},center={format_space(s.center)},codim={s.codim})"
    if isinstance(s, Contract):
        return (
            f"contract({format_space(s.total)},base={format_space(s.base)},"
            f"fiberdim={s.fiber_dim})"
        )
    if isinstance(s, Literal):
        return f"lit({format_ratfun(s.value)})"
    raise TypeError(f"not a space expression: {s!r}")
