"""Exact polynomials and rational functions in one variable ``t``.

Coefficients are Python integers, stored densely in ascending order.  A
:class:`RatFun` is always kept in canonical form: numerator and denominator
coprime in Z[t], integer contents coprime, positive leading coefficient on
the denominator.  Structural equality therefore decides equality.

>>> t = RatFun.t()
>>> (1 - t**6) / (1 - t**2)
RatFun('1 + t^2 + t^4')
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from math import gcd

from ._scan import Scanner
from .errors import DivisionByZero, InvalidRange, NotPolynomial, PoleAtPoint

__all__ = [
    "IntPoly",
    "RatFun",
    "eval_rational",
    "geo_sum",
    "parse_poly",
    "parse_ratfun",
    "poly_arith",
    "poly_gcd",
    "rat_arith",
    "to_polynomial",
]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Dense integer polynomial in ``t``; ``coeffs[i]`` is the coefficient of t**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _strip(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise TypeError(f"IntPoly coefficients must be int, got {type(x).__name__}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> IntPoly:
        if n < 0:
            raise ValueError("negative exponent")
        return cls([0] * n + [c])

    @classmethod
    def t(cls) -> IntPoly:
        return cls((0, 1))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations -----------------------------------------------

    @staticmethod
    def _coerce(x) -> IntPoly:
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation at an int, Fraction or anything supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- integer-specific helpers --------------------------------------

    def content(self) -> int:
        """Gcd of the coefficients, signed like the leading coefficient (0 for zero)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return -g if self.lead < 0 else g

    def primitive(self) -> IntPoly:
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly(x // c for x in self.coeffs)

    def scale_div(self, c: int) -> IntPoly:
        """Divide every coefficient by ``c``; the division must be exact."""
        out = []
        for x in self.coeffs:
            q, rem = divmod(x, c)
            if rem:
                raise ArithmeticError(f"{c} does not divide {self}")
            out.append(q)
        return IntPoly(out)

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def pseudo_rem(self, other: IntPoly) -> IntPoly:
        """Pseudo-remainder of ``self`` by ``other`` (lead(other)^k * self mod other)."""
        if other.is_zero():
            raise DivisionByZero("pseudo-remainder by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db, lb = len(b) - 1, b[-1]
        while len(r) - 1 >= db and r:
            lr = r[-1]
            shift = len(r) - 1 - db
            r = [x * lb for x in r]
            for j, y in enumerate(b):
                r[shift + j] -= lr * y
            r = list(_strip(r))
        return IntPoly(r)

    def exquo(self, other: IntPoly) -> IntPoly:
        """Exact quotient in Z[t]; raises ArithmeticError if ``other`` does not divide."""
        if other.is_zero():
            raise DivisionByZero("division by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db, lb = len(b) - 1, b[-1]
        if len(r) - 1 < db:
            if r:
                raise ArithmeticError(f"{other} does not divide {self}")
            return IntPoly()
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c, rem = divmod(r[k + db], lb)
            if rem:
                raise ArithmeticError(f"{other} does not divide {self}")
            q[k] = c
            if c:
                for j, y in enumerate(b):
                    r[k + j] -= c * y
        if any(r):
            raise ArithmeticError(f"{other} does not divide {self}")
        return IntPoly(q)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd in Z[t] with positive leading coefficient (0 iff both are 0).

    Primitive polynomial remainder sequence; the integer content of the result
    is the gcd of the contents of the inputs.
    """
    if a.is_zero():
        return -b if b.lead < 0 else b
    if b.is_zero():
        return -a if a.lead < 0 else a
    ca, cb = abs(a.content()), abs(b.content())
    f, g = a.primitive(), b.primitive()
    if f.degree < g.degree:
        f, g = g, f
    while not g.is_zero():
        r = f.pseudo_rem(g)
        f, g = g, r.primitive()
    f = f.primitive()
    if f.lead < 0:
        f = -f
    return f * gcd(ca, cb)


class RatFun:
    """Reduced quotient ``num / den`` of integer polynomials."""

    __slots__ = ("den", "num")

    def __init__(self, num, den=1, *, _reduced: bool = False):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def t(cls) -> RatFun:
        return cls(IntPoly.t(), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.coeffs == (1,)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, IntPoly)):
            other = RatFun(other)
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RatFun", self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        return f"RatFun({format_ratfun(self)!r})"

    def __str__(self) -> str:
        return format_ratfun(self)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, IntPoly)):
            return RatFun(x, _reduced=True)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by the zero function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> RatFun:
        if n >= 0:
            return RatFun(self.num ** n, self.den ** n, _reduced=True)
        if self.is_zero():
            raise DivisionByZero("negative power of zero")
        return RatFun(self.den ** -n, self.num ** -n)

    def __call__(self, x):
        return eval_rational(self, x)


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.const(x)
    if isinstance(x, (list, tuple)):
        return IntPoly(x)
    raise TypeError(f"cannot interpret {x!r} as an integer polynomial")


def _canonical(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if num.is_zero():
        return IntPoly(), IntPoly.const(1)
    if den.degree > 0 and num.degree >= 0:
        g = poly_gcd(num.primitive(), den.primitive())
        if g.degree > 0:
            num, den = num.exquo(g), den.exquo(g)
    c = gcd(num.content(), den.content())
    if den.lead < 0:
        c = -c
    if c != 1:
        num, den = num.scale_div(c), den.scale_div(c)
    return num, den


# -- the module's operation surface -------------------------------------

def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def rat_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational operation {op!r}")


def to_polynomial(f: RatFun | IntPoly) -> IntPoly:
    """Return ``f`` as an IntPoly, or raise NotPolynomial."""
    if isinstance(f, IntPoly):
        return f
    if f.is_polynomial():
        return f.num
    raise NotPolynomial(f, f.num.pseudo_rem(f.den))


def geo_sum(lo: int, hi: int) -> RatFun:
    """(t^(2 lo) - t^(2 hi)) / (1 - t^2), i.e. t^(2 lo) + ... + t^(2 (hi-1))."""
    if lo < 0 or hi < 0 or lo > hi:
        raise InvalidRange(f"geo_sum needs 0 <= lo <= hi, got lo={lo}, hi={hi}")
    return RatFun(
        IntPoly.monomial(2 * lo) - IntPoly.monomial(2 * hi),
        IntPoly((1, 0, -1)),
    )


def eval_rational(f: RatFun | IntPoly, x) -> Fraction:
    x = Fraction(x)
    if isinstance(f, IntPoly):
        return Fraction(f(x))
    d = f.den(x)
    if d == 0:
        raise PoleAtPoint(f"{f} has a pole at t={x}")
    return Fraction(f.num(x)) / d


# -- text format --------------------------------------------------------

def format_poly(p: IntPoly, var: str = "t") -> str:
    """Render as ``1 + 2*t^2 - t^4`` (ascending powers, zero terms omitted)."""
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def format_ratfun(f: RatFun, var: str = "t") -> str:
    if f.is_polynomial():
        return format_poly(f.num, var)
    return f"({format_poly(f.num, var)})/({format_poly(f.den, var)})"


def _parse_poly(sc: Scanner, var: str = "t") -> IntPoly:
    coeffs: dict[int, int] = {}
    first = True
    while True:
        if sc.accept("-"):
            sign = -1
        elif sc.accept("+") or first:
            sign = 1
        else:
            break
        first = False
        c = sc.integer()
        if c is not None:
            if sc.accept("*"):
                sc.expect(var)
                e = _parse_exponent(sc)
            elif sc.accept(var):
                e = _parse_exponent(sc)
            else:
                e = 0
        else:
            sc.expect(var)
            c, e = 1, _parse_exponent(sc)
        coeffs[e] = coeffs.get(e, 0) + sign * c
    if not coeffs:
        return IntPoly()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return IntPoly(out)


def _parse_exponent(sc: Scanner) -> int:
    if sc.accept("^"):
        return sc.expect_integer()
    return 1


def _parse_ratfun(sc: Scanner, var: str = "t") -> RatFun:
    if sc.accept("("):
        num = _parse_poly(sc, var)
        sc.expect(")")
        if sc.accept("/"):
            sc.expect("(")
            den = _parse_poly(sc, var)
            sc.expect(")")
            if den.is_zero():
                sc.fail("nonzero denominator")
            return RatFun(num, den)
        return RatFun(num)
    return RatFun(_parse_poly(sc, var))


def parse_poly(text: str, var: str = "t") -> IntPoly:
    sc = Scanner(text)
    p = _parse_poly(sc, var)
    sc.expect_end()
    return p


def parse_ratfun(text: str, var: str = "t") -> RatFun:
    sc = Scanner(text)
    f = _parse_ratfun(sc, var)
    sc.expect_end()
    return f
