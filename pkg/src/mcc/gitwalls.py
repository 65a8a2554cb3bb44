"""Hilbert-Mumford analysis for SL(2) acting on products of projectivized
spaces of binary-form tuples.

A factor ``Sym^d(C^2) (x) C^k`` is a point given by ``k`` binary forms of
degree ``d``.  For a point p of P^1 and the one-parameter subgroup fixing
p, the numerical function is

    mu(p) = sum_i  lambda_i * (d_i - 2 * ord_p(factor i))

where ``ord_p`` of a factor is the smallest vanishing order at p among its
forms.  Every one-parameter subgroup of SL(2) is conjugate to one of these,
so a point is stable iff ``min_p mu(p) > 0`` and semistable iff it is >= 0.

Vanishing orders are decided exactly: p has order >= a in g iff p is a
common root of g, g', ..., g^(a-1).  Points of P^1 are handled in the chart
z1/z0 plus the point at infinity z0 = 0.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm

from ._scan import Scanner
from .errors import (
    AllFormsZero,
    DegreeMismatch,
    MultipleFreeSlots,
    NoFreeSlot,
    ParseError,
)
from .ratpoly import IntPoly, format_poly, poly_gcd

__all__ = [
    "BinFormTuple",
    "LinearizedSetup",
    "RepFactor",
    "Stability",
    "StabilityVerdict",
    "candidate_walls",
    "classify_point",
    "parse_factors",
    "parse_form",
    "parse_point",
    "wall_scan",
    "weight_multiset",
]


@dataclass(frozen=True)
class RepFactor:
    """``Sym^degree(C^2)`` tensored with a trivial ``copies``-dimensional space."""

    degree: int
    copies: int = 1

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")


@dataclass(frozen=True)
class LinearizedSetup:
    """Factors with linearization weights; ``None`` marks the free slot."""

    factors: tuple[RepFactor, ...]
    lin_weights: tuple[Fraction | None, ...]

    def __init__(self, factors: Sequence[RepFactor], lin_weights=None):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a setup needs at least one factor")
        if lin_weights is None:
            lin_weights = (1,) * len(factors)
        lin_weights = tuple(None if w is None else Fraction(w) for w in lin_weights)
        if len(lin_weights) != len(factors):
            raise ValueError("one linearization weight per factor is required")
        if any(w is not None and w <= 0 for w in lin_weights):
            raise ValueError(f"linearization weights must be positive: {lin_weights}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "lin_weights", lin_weights)

    def with_weight(self, slot: int, value) -> LinearizedSetup:
        w = list(self.lin_weights)
        w[slot] = Fraction(value)
        return LinearizedSetup(self.factors, w)

    def free_slot(self) -> int:
        free = [i for i, w in enumerate(self.lin_weights) if w is None]
        if not free:
            raise NoFreeSlot("no linearization weight is marked free")
        if len(free) > 1:
            raise MultipleFreeSlots(f"slots {free} are all free")
        return free[0]


@dataclass(frozen=True)
class BinFormTuple:
    """Binary forms of a common degree; ``forms[k][j]`` multiplies z0^(d-j) z1^j."""

    degree: int
    forms: tuple[tuple[Fraction, ...], ...]

    def __init__(self, degree: int, forms):
        forms = tuple(tuple(Fraction(c) for c in f) for f in forms)
        for f in forms:
            if len(f) != degree + 1:
                raise DegreeMismatch(f"form {f} has {len(f)} coefficients, degree {degree} needs {degree + 1}")
        if not any(any(f) for f in forms):
            raise AllFormsZero("all forms of the tuple vanish")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "forms", forms)

    def swapped(self) -> BinFormTuple:
        """Apply (z0, z1) -> (z1, z0)."""
        return BinFormTuple(self.degree, [f[::-1] for f in self.forms])


class Stability(str, Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class Witness:
    orders: tuple[int, ...]
    mu: Fraction
    # "infinity" (z0 = 0), "any", or an equation in x = z1/z0 whose roots carry the orders
    locus: str


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Stability
    min_mu: Fraction
    witness: Witness | None = field(default=None)


def weight_multiset(f: RepFactor) -> list[int]:
    return [f.degree - 2 * j for j in range(f.degree + 1) for _ in range(f.copies)]


def candidate_walls(setup: LinearizedSetup, free_slot: int | None = None) -> list[Fraction]:
    """All lambda > 0 at which some weight combination sums to zero."""
    if free_slot is None:
        free_slot = setup.free_slot()
    else:
        others = [i for i, w in enumerate(setup.lin_weights) if w is None and i != free_slot]
        if others:
            raise MultipleFreeSlots(f"slots {others} are free besides {free_slot}")
    fixed = [
        (i, f.degree, setup.lin_weights[i])
        for i, f in enumerate(setup.factors)
        if i != free_slot
    ]
    d_free = setup.factors[free_slot].degree
    free_weights = {d_free - 2 * a for a in range(d_free + 1)} - {0}
    partial_sums = {Fraction(0)}
    for _, d, lam in fixed:
        partial_sums = {s + lam * (d - 2 * a) for s in partial_sums for a in range(d + 1)}
    walls = set()
    for s in partial_sums:
        for w in free_weights:
            lam = -s / w
            if lam > 0:
                walls.add(lam)
    return sorted(walls)


# -- exact vanishing-order machinery -------------------------------------

def _integral(form: Sequence[Fraction]) -> IntPoly:
    """Dehomogenize to x = z1/z0 and clear denominators."""
    den = lcm(*(c.denominator for c in form)) if form else 1
    return IntPoly(int(c * den) for c in form)


def _order_at_infinity(form: Sequence[Fraction]) -> int:
    # at z0 = 0 the order is d - (largest j with nonzero coefficient of z0^(d-j) z1^j)
    d = len(form) - 1
    top = max(j for j, c in enumerate(form) if c)
    return d - top


class _FactorData:
    def __init__(self, tup: BinFormTuple):
        nonzero = [f for f in tup.forms if any(f)]
        g = IntPoly()
        for f in nonzero:
            g = poly_gcd(g, _integral(f))
        self.common = g
        self.inf_order = min(_order_at_infinity(f) for f in nonzero)
        self._chain = [g]

    def chain(self, a: int) -> IntPoly:
        """gcd(g, g', ..., g^(a-1)): vanishes exactly where ord >= a."""
        while len(self._chain) < a:
            k = len(self._chain)
            deriv = self.common
            for _ in range(k):
                deriv = deriv.derivative()
            self._chain.append(poly_gcd(self._chain[-1], deriv))
        return self._chain[a - 1]


def _realized(data: Sequence[_FactorData], orders: Sequence[int]) -> str | None:
    """Where ord_p(factor i) >= orders[i] holds for every i at one p, or None."""
    if not any(orders):
        return "any"
    if all(a <= fd.inf_order for fd, a in zip(data, orders)):
        return "infinity"
    g = IntPoly()
    for fd, a in zip(data, orders):
        if a:
            g = poly_gcd(g, fd.chain(a))
            if g.degree < 1:
                return None
    return format_poly(g, "x") + " = 0"


def classify_point(points: Sequence[BinFormTuple], setup: LinearizedSetup) -> StabilityVerdict:
    if len(points) != len(setup.factors):
        raise DegreeMismatch(f"{len(points)} tuples given for {len(setup.factors)} factors")
    if any(w is None for w in setup.lin_weights):
        raise NoFreeSlot("all linearization weights must be concrete to classify")
    for tup, fac in zip(points, setup.factors):
        if tup.degree != fac.degree:
            raise DegreeMismatch(f"forms of degree {tup.degree} given for Sym^{fac.degree}")
        if len(tup.forms) > fac.copies:
            raise DegreeMismatch(f"{len(tup.forms)} forms given for {fac.copies} copies")
    data = [_FactorData(p) for p in points]
    lams = setup.lin_weights
    best = None
    for orders in itertools.product(*(range(f.degree + 1) for f in setup.factors)):
        mu = sum((lam * (f.degree - 2 * a) for lam, f, a in zip(lams, setup.factors, orders)), Fraction(0))
        if best is not None and mu >= best[0]:
            continue
        locus = _realized(data, orders)
        if locus is not None:
            best = (mu, orders, locus)
    mu, orders, locus = best
    witness = Witness(tuple(orders), mu, locus)
    if mu > 0:
        return StabilityVerdict(Stability.STABLE, mu, None)
    if mu == 0:
        return StabilityVerdict(Stability.STRICTLY_SEMISTABLE, mu, witness)
    return StabilityVerdict(Stability.UNSTABLE, mu, witness)


def wall_scan(points, setup: LinearizedSetup, free_slot: int | None, samples) -> list[tuple[Fraction, StabilityVerdict]]:
    if free_slot is None:
        free_slot = setup.free_slot()
    out = []
    for lam in samples:
        lam = Fraction(lam)
        if lam <= 0:
            raise ValueError(f"lambda samples must be positive, got {lam}")
        out.append((lam, classify_point(points, setup.with_weight(free_slot, lam))))
    return out


# -- text syntax ---------------------------------------------------------

def _rational(sc: Scanner) -> Fraction:
    n = sc.expect_integer()
    if sc.accept("/"):
        d = sc.expect_integer()
        if d == 0:
            sc.fail("nonzero denominator")
        return Fraction(n, d)
    return Fraction(n)


def _monomial(sc: Scanner) -> tuple[Fraction, int, int]:
    coeff = Fraction(1)
    if not sc.peek("z"):
        coeff = _rational(sc)
        if not sc.accept("*"):
            return coeff, 0, 0
    e0 = e1 = 0
    while True:
        if sc.accept("z0"):
            e0 += sc.expect_integer() if sc.accept("^") else 1
        elif sc.accept("z1"):
            e1 += sc.expect_integer() if sc.accept("^") else 1
        else:
            sc.fail()
        if not sc.accept("*"):
            return coeff, e0, e1


def _form(sc: Scanner) -> dict[tuple[int, int], Fraction]:
    terms: dict[tuple[int, int], Fraction] = {}
    sign = -1 if sc.accept("-") else 1
    while True:
        c, e0, e1 = _monomial(sc)
        terms[(e0, e1)] = terms.get((e0, e1), Fraction(0)) + sign * c
        if sc.accept("+"):
            sign = 1
        elif sc.accept("-"):
            sign = -1
        else:
            return {k: v for k, v in terms.items() if v}


def _form_to_coeffs(terms: dict[tuple[int, int], Fraction], degree: int | None) -> tuple[int, list[Fraction]]:
    degrees = {e0 + e1 for (e0, e1) in terms}
    if degree is None:
        if len(degrees) > 1:
            raise DegreeMismatch(f"form is not homogeneous: degrees {sorted(degrees)}")
        if not degrees:
            raise DegreeMismatch("cannot infer the degree of the zero form")
        degree = degrees.pop()
    elif degrees - {degree}:
        raise DegreeMismatch(f"form has terms of degree {sorted(degrees)}, expected {degree}")
    coeffs = [Fraction(0)] * (degree + 1)
    for (_, e1), c in terms.items():
        coeffs[e1] = c
    return degree, coeffs


def parse_form(text: str, degree: int | None = None) -> list[Fraction]:
    sc = Scanner(text)
    terms = _form(sc)
    sc.expect_end()
    return _form_to_coeffs(terms, degree)[1]


def parse_point(text: str, factors: Sequence[RepFactor] | None = None) -> list[BinFormTuple]:
    """Parse ``z0^3; z0^2*z1 | z1``: ``;`` separates forms, ``|`` separates factors."""
    groups = text.split("|")
    if factors is not None and len(groups) != len(factors):
        raise DegreeMismatch(f"{len(groups)} factor groups given for {len(factors)} factors")
    out = []
    offset = 0
    for gi, group in enumerate(groups):
        degree = factors[gi].degree if factors is not None else None
        forms = []
        for piece in group.split(";"):
            sc = Scanner(piece)
            try:
                terms = _form(sc)
                sc.expect_end()
            except ParseError as exc:
                raise ParseError(offset + exc.offset, exc.expected, text) from None
            degree, coeffs = _form_to_coeffs(terms, degree)
            forms.append(coeffs)
            offset += len(piece) + 1
        if factors is not None:
            forms += [[Fraction(0)] * (degree + 1)] * (factors[gi].copies - len(forms))
        out.append(BinFormTuple(degree, forms))
    return out


def parse_factors(text: str) -> list[RepFactor]:
    """Parse ``sym:3,copies:2|sym:1,copies:4``."""
    out = []
    offset = 0
    for piece in text.split("|"):
        sc = Scanner(piece)
        try:
            sc.expect("sym")
            sc.expect(":")
            d = sc.expect_integer()
            k = 1
            if sc.accept(","):
                sc.expect("copies")
                sc.expect(":")
                k = sc.expect_integer()
            sc.expect_end()
        except ParseError as exc:
            raise ParseError(offset + exc.offset, exc.expected, text) from None
        if k < 1:
            raise ParseError(offset, ["copies >= 1"], text)
        out.append(RepFactor(d, k))
        offset += len(piece) + 1
    return out
