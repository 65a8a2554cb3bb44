"""Poincaré polynomials of spaces built from projective pieces.

A space is described by a small immutable AST (:class:`SpaceExpr` and its
variants).  Integer parameters are affine in a global ``r`` and are only
checked when the expression is evaluated at a concrete ``r``.

Conventions used by :func:`poincare`:

* weighted projective spaces have the rational cohomology of ordinary
  projective space of the same dimension;
* bundles are multiplicative (fibers have even cohomology);
* ``BlowUp(X, Z, c)`` adds ``P(Z) * (t^2 + ... + t^(2c-2))``;
* ``Contract(X, B, k)`` removes ``P(B) * (t^2 + ... + t^(2k))`` (a P^k-bundle
  divisor collapsed onto ``B``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .errors import InvalidDimension
from .ratpoly import IntPoly, RatFun, geo_sum, to_polynomial

__all__ = [
    "BlowUp",
    "Bundle",
    "Contract",
    "Grass",
    "IntExpr",
    "Literal",
    "Point",
    "Product",
    "Proj",
    "SpaceExpr",
    "WProj",
    "dimension",
    "gaussian_binomial",
    "poincare",
    "proj_poly",
]


@dataclass(frozen=True)
class IntExpr:
    """The affine expression ``a*r + b``."""

    a: int
    b: int

    @classmethod
    def of(cls, value: int | IntExpr) -> IntExpr:
        return value if isinstance(value, IntExpr) else cls(0, int(value))

    def __call__(self, r: int) -> int:
        return self.a * r + self.b

    def __str__(self) -> str:
        if self.a == 0:
            return str(self.b)
        head = "r" if self.a == 1 else f"{self.a}*r"
        if self.b > 0:
            return f"{head}+{self.b}"
        if self.b < 0:
            return f"{head}-{-self.b}"
        return head


R = IntExpr(1, 0)


def _ie(x) -> IntExpr:
    return IntExpr.of(x)


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class Proj:
    n: IntExpr

    def __init__(self, n):
        object.__setattr__(self, "n", _ie(n))


@dataclass(frozen=True)
class WProj:
    weights: tuple[int, ...]

    def __init__(self, *weights):
        if len(weights) == 1 and isinstance(weights[0], (list, tuple)):
            weights = tuple(weights[0])
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))


@dataclass(frozen=True)
class Grass:
    k: IntExpr
    n: IntExpr

    def __init__(self, k, n):
        object.__setattr__(self, "k", _ie(k))
        object.__setattr__(self, "n", _ie(n))


@dataclass(frozen=True)
class Product:
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Bundle:
    fiber: SpaceExpr
    base: SpaceExpr


@dataclass(frozen=True)
class BlowUp:
    ambient: SpaceExpr
    center: SpaceExpr
    codim: IntExpr

    def __init__(self, ambient, center, codim):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "codim", _ie(codim))


@dataclass(frozen=True)
class Contract:
    total: SpaceExpr
    base: SpaceExpr
    fiber_dim: IntExpr

    def __init__(self, total, base, fiber_dim):
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "fiber_dim", _ie(fiber_dim))


@dataclass(frozen=True)
class Literal:
    value: RatFun

    def __init__(self, value):
        if not isinstance(value, RatFun):
            value = RatFun(value)
        object.__setattr__(self, "value", value)


SpaceExpr = Point | Proj | WProj | Grass | Product | Bundle | BlowUp | Contract | Literal


@cache
def proj_poly(n: int) -> IntPoly:
    """1 + t^2 + ... + t^(2n)."""
    if n < 0:
        raise InvalidDimension(f"P^{n} needs n >= 0")
    return IntPoly([1 if i % 2 == 0 else 0 for i in range(2 * n + 1)])


@cache
def gaussian_binomial(k: int, n: int) -> IntPoly:
    """Gaussian binomial [n choose k] in q = t^2, via the product formula."""
    if k < 0 or k > n:
        raise InvalidDimension(f"Gr({k},{n}) needs 0 <= k <= n")
    t = RatFun.t()
    q = t ** 2
    acc = RatFun(1)
    for i in range(1, k + 1):
        acc = acc * (1 - q ** (n - k + i)) / (1 - q ** i)
    return to_polynomial(acc)


def _positive(value: int, what: str, minimum: int) -> int:
    if value < minimum:
        raise InvalidDimension(f"{what} must be >= {minimum}, got {value}")
    return value


def poincare(s: SpaceExpr, r: int) -> IntPoly:
    """Rational Poincaré polynomial of ``s`` at the concrete parameter ``r``."""
    if r < 1:
        raise InvalidDimension(f"r must be >= 1, got {r}")
    return to_polynomial(_poincare(s, r))


def _poincare(s: SpaceExpr, r: int) -> IntPoly:
    if isinstance(s, Point):
        return IntPoly.const(1)
    if isinstance(s, Proj):
        return proj_poly(_positive(s.n(r), "projective dimension", 0))
    if isinstance(s, WProj):
        if not s.weights:
            raise InvalidDimension("weighted projective space needs at least one weight")
        if any(w < 1 for w in s.weights):
            raise InvalidDimension(f"weights must be positive: {s.weights}")
        return proj_poly(len(s.weights) - 1)
    if isinstance(s, Grass):
        k, n = s.k(r), s.n(r)
        if k < 0 or k > n:
            raise InvalidDimension(f"Gr({k},{n}) needs 0 <= k <= n")
        return gaussian_binomial(k, n)
    if isinstance(s, Product):
        return _poincare(s.left, r) * _poincare(s.right, r)
    if isinstance(s, Bundle):
        return _poincare(s.fiber, r) * _poincare(s.base, r)
    if isinstance(s, BlowUp):
        c = _positive(s.codim(r), "blow-up codimension", 1)
        return _poincare(s.ambient, r) + _poincare(s.center, r) * to_polynomial(geo_sum(1, c))
    if isinstance(s, Contract):
        k = _positive(s.fiber_dim(r), "contracted fiber dimension", 1)
        return _poincare(s.total, r) - _poincare(s.base, r) * to_polynomial(geo_sum(1, k + 1))
    if isinstance(s, Literal):
        return to_polynomial(s.value)
    raise TypeError(f"not a space expression: {s!r}")


def dimension(s: SpaceExpr, r: int) -> int:
    """Complex dimension of ``s`` at ``r`` (for literals, half the polynomial degree)."""
    if isinstance(s, Point):
        return 0
    if isinstance(s, Proj):
        return _positive(s.n(r), "projective dimension", 0)
    if isinstance(s, WProj):
        return len(s.weights) - 1
    if isinstance(s, Grass):
        k, n = s.k(r), s.n(r)
        if k < 0 or k > n:
            raise InvalidDimension(f"Gr({k},{n}) needs 0 <= k <= n")
        return k * (n - k)
    if isinstance(s, (Product,)):
        return dimension(s.left, r) + dimension(s.right, r)
    if isinstance(s, Bundle):
        return dimension(s.fiber, r) + dimension(s.base, r)
    if isinstance(s, BlowUp):
        return dimension(s.ambient, r)
    if isinstance(s, Contract):
        return dimension(s.total, r)
    if isinstance(s, Literal):
        return to_polynomial(s.value).degree // 2
    raise TypeError(f"not a space expression: {s!r}")
