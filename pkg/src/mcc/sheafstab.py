"""Slope stability of one-dimensional sheaves and Hilbert polynomials of
monomial ideals.

A pure one-dimensional sheaf has a linear Hilbert polynomial ``a*m + b``
and reduced slope ``b/a``.  It is stable when every nontrivial pure
quotient has strictly larger slope, semistable when no quotient has a
smaller one.  Sheaves are modelled either as split sums of line bundles on
a fixed line or abstractly, by a Hilbert polynomial together with the list
of quotients to test.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (
    AlreadySemistable,
    InvalidModel,
    ParseError,
    TooManyGenerators,
    ZeroQuotient,
)
from .gitwalls import Stability
from .ratpoly import IntPoly

__all__ = [
    "MAX_GENERATORS",
    "Abstract",
    "HilbPoly1D",
    "HilbertResult",
    "LineSum",
    "MonomialIdeal",
    "SheafModel",
    "SheafVerdict",
    "classify",
    "format_sheaf",
    "hilb_line_sum",
    "hilb_monomial",
    "hilbert_function",
    "hn_first",
    "parse_ideal",
    "parse_sheaf",
]

MAX_GENERATORS = 20


@dataclass(frozen=True, order=True)
class HilbPoly1D:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1:
            raise InvalidModel(f"leading coefficient must be >= 1, got {self.a}")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.b, self.a)

    def __sub__(self, other: HilbPoly1D) -> HilbPoly1D:
        return HilbPoly1D(self.a - other.a, self.b - other.b)

    def __str__(self) -> str:
        head = "m" if self.a == 1 else f"{self.a}m"
        if self.b > 0:
            return f"{head}+{self.b}"
        if self.b < 0:
            return f"{head}-{-self.b}"
        return head


@dataclass(frozen=True)
class LineSum:
    """Direct sum of O_L(a_i) on a line."""

    twists: tuple[int, ...]

    def __init__(self, twists: Sequence[int]):
        twists = tuple(int(x) for x in twists)
        if not twists:
            raise InvalidModel("a line-bundle sum needs at least one summand")
        object.__setattr__(self, "twists", twists)


@dataclass(frozen=True)
class Abstract:
    """A pure sheaf known only through its Hilbert polynomial and candidate quotients."""

    hilb: HilbPoly1D
    quotients: tuple[HilbPoly1D, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "quotients", tuple(self.quotients))
        for q in self.quotients:
            if not 1 <= q.a <= self.hilb.a or q == self.hilb:
                raise InvalidModel(f"{q} is not a nontrivial pure quotient of {self.hilb}")


SheafModel = LineSum | Abstract


@dataclass(frozen=True)
class SheafVerdict:
    verdict: Stability
    # destabilizing subsheaf, present only for Unstable
    destabilizer: LineSum | HilbPoly1D | None = None
    destabilizer_hilb: HilbPoly1D | None = None


def hilb_line_sum(twists: Sequence[int]) -> HilbPoly1D:
    return HilbPoly1D(len(twists), sum(a + 1 for a in twists))


def hn_first(model: LineSum) -> LineSum:
    """Maximal-slope subsheaf: the summands of largest twist."""
    top = max(model.twists)
    if min(model.twists) == top:
        raise AlreadySemistable(f"{format_sheaf(model)} is already semistable")
    return LineSum([a for a in model.twists if a == top])


def _line_quotients(twists: tuple[int, ...]):
    n = len(twists)
    seen = set()
    for size in range(1, n):
        for idx in itertools.combinations(range(n), size):
            sub = tuple(sorted(twists[i] for i in idx))
            if sub not in seen:
                seen.add(sub)
                yield sub


def classify(model: SheafModel) -> SheafVerdict:
    if isinstance(model, LineSum):
        slope = hilb_line_sum(model.twists).slope
        quotient_slopes = [hilb_line_sum(q).slope for q in _line_quotients(model.twists)]
        if not quotient_slopes:
            return SheafVerdict(Stability.STABLE)
        lowest = min(quotient_slopes)
        if lowest < slope:
            sub = hn_first(model)
            return SheafVerdict(Stability.UNSTABLE, sub, hilb_line_sum(sub.twists))
        if lowest == slope:
            return SheafVerdict(Stability.STRICTLY_SEMISTABLE)
        return SheafVerdict(Stability.STABLE)

    if isinstance(model, Abstract):
        slope = model.hilb.slope
        if not model.quotients:
            return SheafVerdict(Stability.STABLE)
        lowest = min(q.slope for q in model.quotients)
        if lowest < slope:
            kernels = [
                model.hilb - q for q in model.quotients if q.slope == lowest and q.a < model.hilb.a
            ]
            if kernels:
                kernel = max(kernels, key=lambda k: (k.slope, k.a))
            else:
                kernel = None
            return SheafVerdict(Stability.UNSTABLE, kernel, kernel)
        if lowest == slope:
            return SheafVerdict(Stability.STRICTLY_SEMISTABLE)
        return SheafVerdict(Stability.STABLE)

    raise TypeError(f"not a sheaf model: {model!r}")


# -- monomial ideals ------------------------------------------------------

@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    gens: tuple[tuple[int, ...], ...]

    def __init__(self, nvars: int, gens: Sequence[Sequence[int]] = ()):
        if nvars < 2:
            raise InvalidModel("a projective coordinate ring needs at least two variables")
        gens = {tuple(int(e) for e in g) for g in gens}
        for g in gens:
            if len(g) != nvars or any(e < 0 for e in g):
                raise InvalidModel(f"bad exponent vector {g} for {nvars} variables")
        minimal = [
            g for g in gens
            if not any(h != g and all(x <= y for x, y in zip(h, g)) for h in gens)
        ]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "gens", tuple(sorted(minimal)))


@dataclass(frozen=True)
class HilbertResult:
    dimension: int
    # coefficients of the Hilbert polynomial in m, ascending
    hilb: tuple[Fraction, ...]
    numerator: IntPoly
    ideal: MonomialIdeal

    def __call__(self, m: int) -> Fraction:
        return sum((c * m**i for i, c in enumerate(self.hilb)), Fraction(0))

    def hilbert_function(self, m: int) -> int:
        return hilbert_function(self.ideal, m)

    def format(self) -> str:
        return format_linear(self.hilb)


def _series_numerator(ideal: MonomialIdeal) -> IntPoly:
    """Sum over subsets T of generators of (-1)^|T| q^deg(lcm T)."""
    if len(ideal.gens) > MAX_GENERATORS:
        raise TooManyGenerators(f"{len(ideal.gens)} generators exceeds the limit of {MAX_GENERATORS}")
    if any(sum(g) == 0 for g in ideal.gens):
        raise ZeroQuotient("the ideal contains 1")
    coeffs: dict[int, int] = {}
    n = ideal.nvars
    stack = [(0, (0,) * n, 1)]
    gens = ideal.gens
    # depth-first over subsets, carrying the running lcm
    while stack:
        start, lcm_vec, sign = stack.pop()
        deg = sum(lcm_vec)
        coeffs[deg] = coeffs.get(deg, 0) + sign
        for j in range(start, len(gens)):
            stack.append((j + 1, tuple(max(x, y) for x, y in zip(lcm_vec, gens[j])), -sign))
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return IntPoly(out)


def _reduce(numerator: IntPoly, power: int) -> tuple[IntPoly, int]:
    one_minus_q = IntPoly((1, -1))
    while power > 0 and numerator(1) == 0:
        numerator = numerator.exquo(one_minus_q)
        power -= 1
    return numerator, power


def hilb_monomial(ideal: MonomialIdeal) -> HilbertResult:
    num, power = _reduce(_series_numerator(ideal), ideal.nvars)
    d = power - 1
    if d < 0:
        return HilbertResult(d, (), num, ideal)
    # K(q)/(1-q)^(d+1) = sum_j k_j q^j sum_m C(m+d, d) q^m,
    # so for large m the value is sum_j k_j C(m - j + d, d).
    poly = [Fraction(0)] * (d + 1)
    for j, k in enumerate(num.coeffs):
        if k:
            for i, c in enumerate(_binomial_in_m(d, d - j)):
                poly[i] += k * c
    while poly and poly[-1] == 0:
        poly.pop()
    return HilbertResult(d, tuple(poly), num, ideal)


def _binomial_in_m(d: int, shift: int) -> list[Fraction]:
    """Coefficients in m of C(m + shift, d) = (m+shift)(m+shift-1)...(m+shift-d+1)/d!."""
    coeffs = [Fraction(1)]
    for i in range(d):
        root = shift - i
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c * root
            nxt[k + 1] += c
        coeffs = nxt
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    return [c / fact for c in coeffs]


def hilbert_function(ideal: MonomialIdeal, m: int) -> int:
    """dim (S/I)_m read off the Hilbert series."""
    if m < 0:
        return 0
    num = _series_numerator(ideal)
    n = ideal.nvars
    return sum(k * comb(m - j + n - 1, n - 1) for j, k in enumerate(num.coeffs) if k and m >= j)


def format_linear(coeffs: Sequence[Fraction]) -> str:
    """Render ascending Hilbert-polynomial coefficients as ``3m+1``."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        mag = str(abs(c)) if abs(c).denominator == 1 else f"({abs(c)})"
        mono = "" if i == 0 else "m" if i == 1 else f"m^{i}"
        body = mono if mono and mag == "1" else mag + mono
        if parts:
            parts.append(("-" if c < 0 else "+") + body)
        else:
            parts.append(("-" if c < 0 else "") + body)
    return "".join(parts) or "0"


# -- text syntax ----------------------------------------------------------

_HILB = re.compile(r"^\s*(\d*)\s*m\s*(?:([+-])\s*(\d+))?\s*$")
_LINE = re.compile(r"^\s*line\s*:\s*\[(.*)\]\s*$")
_ABS = re.compile(r"^\s*abs\s*:(.*?)(?:;\s*quot\s*:(.*))?$")
_VAR = re.compile(r"\s*x(\d+)(?:\^(\d+))?\s*")


def _parse_hilb(text: str, offset: int, full: str) -> HilbPoly1D:
    m = _HILB.match(text)
    if not m:
        raise ParseError(offset, ["a*m+b"], full)
    a = int(m.group(1)) if m.group(1) else 1
    b = int(m.group(3)) if m.group(3) else 0
    if m.group(2) == "-":
        b = -b
    return HilbPoly1D(a, b)


def parse_sheaf(text: str) -> SheafModel:
    """``line:[0,-1,-1]`` or ``abs:3m+1;quot:m+1,2m+1``."""
    m = _LINE.match(text)
    if m:
        body = m.group(1)
        try:
            twists = [int(x) for x in body.split(",")] if body.strip() else []
        except ValueError:
            raise ParseError(text.index("[") + 1, ["integer list"], text) from None
        return LineSum(twists)
    m = _ABS.match(text)
    if m:
        hilb = _parse_hilb(m.group(1), m.start(1), text)
        quots = []
        if m.group(2) is not None:
            pos = m.start(2)
            for piece in m.group(2).split(","):
                quots.append(_parse_hilb(piece, pos, text))
                pos += len(piece) + 1
        return Abstract(hilb, quots)
    raise ParseError(0, ["'line:'", "'abs:'"], text)


def format_sheaf(model: SheafModel) -> str:
    if isinstance(model, LineSum):
        return "line:[" + ",".join(map(str, model.twists)) + "]"
    quot = ",".join(map(str, model.quotients))
    return f"abs:{model.hilb}" + (f";quot:{quot}" if quot else "")


def parse_ideal(text: str, nvars: int) -> MonomialIdeal:
    """``x2^2, x2*x3, x3^2`` in variables x0..x(nvars-1); ``1`` denotes the unit monomial."""
    gens = []
    offset = 0
    for piece in text.split(",") if text.strip() else []:
        vec = [0] * nvars
        if piece.strip() != "1":
            pos = offset
            for factor in piece.split("*"):
                m = _VAR.fullmatch(factor)
                if not m:
                    raise ParseError(pos, ["x<index>[^<power>]"], text)
                i = int(m.group(1))
                if i >= nvars:
                    raise ParseError(pos, [f"variable index < {nvars}"], text)
                vec[i] += int(m.group(2)) if m.group(2) else 1
                pos += len(factor) + 1
        gens.append(vec)
        offset += len(piece) + 1
    return MonomialIdeal(nvars, gens)
