"""Betti numbers of the Simpson space of rational cubics in P^r.

The Simpson space S is reached from the Kontsevich space M of stable maps by
three blow-ups followed by three blow-downs.  Its Poincaré polynomial is
P(M) plus three exceptional-divisor contributions minus three contracted
fiber contributions.

Every closed-form expression below is written once as a function of a
generic ``t`` so that it can be evaluated either symbolically (``t`` a
:class:`RatFun`) or numerically (``t`` a :class:`Fraction`).  The numeric
route never simplifies a quotient, which makes it an independent guard on
the symbolic one.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import Bundle, Proj, SpaceExpr, WProj, dimension, poincare
from .dsl import format_space, parse_space
from .errors import InvalidDimension, UnsupportedIndex, UnsupportedR
from .ratpoly import IntPoly, RatFun, to_polynomial

__all__ = [
    "EPS_R3",
    "TowerReport",
    "TowerTerm",
    "center_space",
    "evaluate_terms_at",
    "h_equals_s_check",
    "poincare_M",
    "poincare_M_expr",
    "poincare_S",
    "reconstruct_term",
    "tower_terms",
]

# Betti numbers of S (equivalently of the Hilbert scheme component) for r = 3,
# listed by even degree t^0, t^2, ..., t^24.
EPS_R3 = (1, 2, 6, 10, 16, 19, 22, 19, 16, 10, 6, 2, 1)

CENTER_LABELS = {1: "Γ¹", 2: "Γ²₁", 3: "Γ³₂", 4: "Γ²₄", 5: "Γ³₅", 6: "Γ¹₆"}

# Codimension of each blow-up center, dimension of each contracted fiber.
_BLOWUP_CODIM = {1: lambda r: 2 * r - 2, 2: lambda r: r, 3: lambda r: r - 1}
_BLOWDOWN_FIBER = {4: WProj(1, 2, 2), 5: WProj(1, 2, 2, 3, 3), 6: Proj(7)}


def _frac(num, den):
    return num / den


# -- closed forms -------------------------------------------------------

def _m0_p1(t):
    # Poincaré polynomial of the stable-map space of P^1 in degree 3
    return 1 + t**2 + 2 * t**4 + t**6 + t**8


def _pM(t, r):
    return (
        (_frac(1 - t**(2*r + 10), 1 - t**6) + 2 * _frac(t**4 - t**(2*r + 4), 1 - t**4))
        * _frac(1 - t**(2*r + 2), 1 - t**2)
        * _frac((1 - t**(2*r + 2)) * (1 - t**(2*r)), (1 - t**2) * (1 - t**4))
    )


def _term1(t, r):
    center = (
        _m0_p1(t)
        * _frac(1 - t**(2*r + 2), 1 - t**2)
        * _frac(1 - t**(2*r), 1 - t**4)
    )
    return center, _frac(t**2 - t**(4*r - 4), 1 - t**2)


def _term2(t, r):
    center = (
        (1 + t**2 + t**4)
        * _frac(1 - t**(2*r), 1 - t**2)
        * (_frac(1 - t**(2*r), 1 - t**2) + _frac(t**2 - t**(2*r - 2), 1 - t**2))
        * _frac(1 - t**(2*r + 2), 1 - t**2)
    )
    return center, _frac(t**2 - t**(2*r), 1 - t**2)


def _term3(t, r):
    bracket = (1 + t**2) * _m0_p1(t) + t**2 * (1 + t**2) * (1 + t**2 + t**4)
    center = (
        bracket
        * _frac(1 - t**(2*r - 2), 1 - t**2)
        * _frac(1 - t**(2*r + 2), 1 - t**2)
        * _frac(1 - t**(2*r), 1 - t**4)
    )
    return center, _frac(t**2 - t**(2*r - 2), 1 - t**2)


def _term4(t, r):
    bracket = (
        _frac(1 - t**(2*r), 1 - t**2)
        * (_frac(1 - t**(2*r), 1 - t**2) + _frac(t**2 - t**(2*r - 2), 1 - t**2))
        + (1 + t**2) * _frac(1 - t**(2*r - 2), 1 - t**2) * _frac(t**2 - t**(2*r - 2), 1 - t**2)
    )
    center = bracket * _frac(1 - t**(2*r), 1 - t**2) * _frac(1 - t**(2*r + 2), 1 - t**2)
    return center, t**2 + t**4


def _term5(t, r):
    center = (
        (1 + t**2)
        * _frac(1 - t**(2*r - 2), 1 - t**2) ** 2
        * _frac(1 - t**(2*r + 2), 1 - t**2)
        * _frac(1 - t**(2*r), 1 - t**4)
    )
    return center, _frac(t**2 - t**10, 1 - t**2)


def _term6(t, r):
    center = (
        _frac(1 - t**(2*r - 2), 1 - t**2)
        * _frac(1 - t**(2*r - 4), 1 - t**4)
        * _frac(1 - t**(2*r + 2), 1 - t**2)
        * _frac(1 - t**(2*r), 1 - t**4)
    )
    return center, _frac(t**2 - t**16, 1 - t**2)


_TERMS: dict[int, Callable] = {1: _term1, 2: _term2, 3: _term3, 4: _term4, 5: _term5, 6: _term6}


# -- geometric descriptions of the centers ------------------------------

# Centers written in the space DSL.  The fiber of the first center over
# Gr(2, r+1) is the degree-3 stable-map space of a line.
_CENTER_TEXT = {
    1: "bundle(fiber=lit({m0}), base=Gr(2,r+1))",
    2: (
        "bundle(fiber=WP(1,2,2),"
        " base=bundle(fiber=blowup(prod(P(r-1),P(r-1)), center=P(r-1), codim=r-1),"
        " base=P(r)))"
    ),
    4: (
        "bundle(fiber=blowup(blowup(prod(P(r-1),P(r-1)), center=P(r-1), codim=r-1),"
        " center=prod(P(1),P(r-2)), codim=r-1),"
        " base=prod(P(r-1),P(r)))"
    ),
    5: "bundle(fiber=prod(P(1),prod(P(r-2),P(r-2))), base=Gr(2,r+1))",
    6: "bundle(fiber=Gr(2,r-1), base=Gr(2,r+1))",
}


def _check_r(r: int, minimum: int = 3) -> None:
    if not isinstance(r, int) or r < minimum:
        raise InvalidDimension(f"r must be an integer >= {minimum}, got {r!r}")


def center_space(index: int) -> SpaceExpr:
    """SpaceExpr of the center (blow-ups) or contracted base (blow-downs)."""
    if index not in _CENTER_TEXT:
        raise UnsupportedIndex(f"no geometric reconstruction for term {index}")
    return parse_space(_CENTER_TEXT[index].format(m0=str(poincare_M(1))))


# -- public operations --------------------------------------------------

def poincare_M_expr(r: int) -> RatFun:
    """The closed form for P_t(M) as an unconverted rational function."""
    _check_r(r, 1)
    return _pM(RatFun.t(), r)


def poincare_M(r: int) -> IntPoly:
    return to_polynomial(poincare_M_expr(r))


@dataclass(frozen=True)
class TowerTerm:
    index: int
    kind: str
    literal: RatFun
    center_label: str
    center: RatFun
    factor: RatFun
    exponent: int

    @property
    def sign(self) -> int:
        return 1 if self.kind == "blowup" else -1


@dataclass(frozen=True)
class TowerReport:
    r: int
    pM: IntPoly
    terms: tuple[TowerTerm, ...]
    pS: IntPoly
    degree: int
    palindromic: bool
    euler: int
    nonnegative: bool


def tower_terms(r: int) -> list[TowerTerm]:
    """The six corrections at ``r``: three blow-ups then three blow-downs."""
    _check_r(r)
    t = RatFun.t()
    out = []
    for i in range(1, 7):
        center, factor = _TERMS[i](t, r)
        if i <= 3:
            kind, exponent = "blowup", _BLOWUP_CODIM[i](r)
        else:
            kind, exponent = "blowdown", dimension(_BLOWDOWN_FIBER[i], r)
        out.append(TowerTerm(i, kind, center * factor, CENTER_LABELS[i], center, factor, exponent))
    return out


def poincare_S(r: int) -> TowerReport:
    _check_r(r)
    pM_expr = poincare_M_expr(r)
    terms = tower_terms(r)
    total = pM_expr
    for term in terms:
        total = total + term.sign * term.literal
    pS = to_polynomial(total)
    return TowerReport(
        r=r,
        pM=to_polynomial(pM_expr),
        terms=tuple(terms),
        pS=pS,
        degree=pS.degree,
        palindromic=pS.is_palindromic(),
        euler=pS(1),
        nonnegative=all(c >= 0 for c in pS.coeffs),
    )


def reconstruct_term(index: int, r: int) -> RatFun:
    """Rebuild term ``index`` from the geometry of its center.

    A blow-up along Z of codimension c adds the exceptional divisor, a
    P^(c-1)-bundle over Z, minus Z itself.  A blow-down collapsing a
    fiber F over B removes the F-bundle over B minus B.
    """
    if index == 3 or index not in _TERMS:
        raise UnsupportedIndex(f"term {index} is carried as a literal only")
    _check_r(r)
    base = center_space(index)
    if index <= 3:
        fiber = Proj(_BLOWUP_CODIM[index](r) - 1)
    else:
        fiber = _BLOWDOWN_FIBER[index]
    divisor = poincare(Bundle(fiber, base), r)
    return RatFun(divisor - poincare(base, r))


def h_equals_s_check(r: int, table=EPS_R3) -> bool:
    """At r = 3 the Hilbert and Simpson compactifications agree; compare against ``table``."""
    if r != 3:
        raise UnsupportedR(f"the Hilbert/Simpson comparison is only available at r = 3, not {r}")
    expected = [0] * (2 * len(table) - 1)
    expected[::2] = list(table)
    return poincare_S(3).pS == IntPoly(expected)


def evaluate_terms_at(r: int, x) -> tuple[Fraction, list[Fraction]]:
    """Evaluate P(M) and the six corrections at the rational point ``x``.

    Each factor is evaluated as a number before any division, so no
    polynomial simplification is involved.  Returns ``(pM, [term1..term6])``.
    """
    _check_r(r)
    x = Fraction(x)
    pM = _pM(x, r)
    vals = []
    for i in range(1, 7):
        center, factor = _TERMS[i](x, r)
        vals.append(center * factor)
    return pM, vals


def describe_center(index: int) -> str:
    return format_space(center_space(index))
