"""The acceptance battery, shared by ``mcc verify`` and the test-suite.

Each criterion returns ``(passed, detail)``; :func:`run_all` collects them in
order.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import Grass, gaussian_binomial, poincare
from .gitwalls import (
    LinearizedSetup,
    RepFactor,
    Stability,
    candidate_walls,
    parse_point,
    wall_scan,
)
from .oracles import gaussian_by_inversions, standard_monomial_count
from .ratpoly import IntPoly, RatFun, eval_rational
from .sheafstab import (
    Abstract,
    HilbPoly1D,
    LineSum,
    MonomialIdeal,
    classify,
    hilb_monomial,
)
from .tower import (
    EPS_R3,
    evaluate_terms_at,
    poincare_M,
    poincare_S,
    reconstruct_term,
    tower_terms,
)

# Sum of the r = 3 Betti numbers as listed in the source table.
EULER_R3 = 130


@dataclass
class Context:
    rmax: int = 12
    eps_table: Sequence[int] = EPS_R3


@dataclass(frozen=True)
class Outcome:
    name: str
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} {self.title}: {self.detail}"


def _even_poly(table: Sequence[int]) -> IntPoly:
    coeffs = [0] * (2 * len(table) - 1)
    coeffs[::2] = list(table)
    return IntPoly(coeffs)


def a1(ctx: Context):
    start = time.perf_counter()
    ps = poincare_S(3).pS
    elapsed = time.perf_counter() - start
    ok = ps == _even_poly(ctx.eps_table) and elapsed < 1.0
    return ok, f"P_t(S) at r=3 = {ps} ({elapsed:.3f}s)"


def a2(ctx: Context):
    rep = poincare_S(3)
    ok = rep.degree == 24 and rep.palindromic and rep.euler == EULER_R3 and rep.pS[0] == 1
    return ok, f"degree {rep.degree}, palindromic {rep.palindromic}, euler {rep.euler}, constant {rep.pS[0]}"


def a3(ctx: Context):
    start = time.perf_counter()
    bad = []
    for r in range(3, ctx.rmax + 1):
        rep = poincare_S(r)
        pm = rep.pM
        checks = (
            pm.degree == 8 * r and pm[0] == 1 and all(c >= 0 for c in pm),
            rep.degree == 8 * r and rep.pS[0] == 1 and rep.nonnegative and rep.palindromic,
        )
        if not all(checks):
            bad.append(r)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10.0
    return ok, f"r=3..{ctx.rmax}, failures {bad}, {elapsed:.2f}s"


def a4(ctx: Context):
    bad = []
    top = min(8, ctx.rmax)
    for r in range(3, top + 1):
        terms = tower_terms(r)
        for i in (1, 2, 4, 5, 6):
            if reconstruct_term(i, r) != terms[i - 1].literal:
                bad.append((r, i))
    return not bad, f"r=3..{top}, terms 1,2,4,5,6, mismatches {bad}"


def a5(ctx: Context):
    expected = IntPoly([1, 0, 1, 0, 2, 0, 1, 0, 1])
    pm1 = poincare_M(1)
    # the fiber of the first blow-up center over Gr(2, r+1)
    term1 = tower_terms(3)[0]
    fiber = term1.center / RatFun(poincare(Grass(2, 4), 3))
    ok = pm1 == expected and fiber == RatFun(expected)
    return ok, f"P_t(M) at r=1 = {pm1}; first-center fiber = {fiber}"


def a6(ctx: Context):
    problems = []
    for k in range(1, 6):
        setup = LinearizedSetup([RepFactor(3, 2), RepFactor(1, k)], [1, None])
        walls = candidate_walls(setup)
        if walls != [1, 3]:
            problems.append(f"k={k}: {walls}")
    walls = candidate_walls(LinearizedSetup([RepFactor(1, 1), RepFactor(2, 2)], [1, None]))
    if walls != [Fraction(1, 2)]:
        problems.append(f"Sym1+Sym2x2: {walls}")
    factors = [RepFactor(3, 2), RepFactor(1, 1)]
    point = parse_point("z0^3; z0^2*z1 | z1", factors)
    scan = wall_scan(point, LinearizedSetup(factors, [1, None]), 1,
                     [Fraction(1, 2), 1, 2, 3, 4])
    got = [v.verdict for _, v in scan]
    U, SS, S = Stability.UNSTABLE, Stability.STRICTLY_SEMISTABLE, Stability.STABLE
    if got != [U, SS, S, SS, U]:
        problems.append(f"scan {[g.value for g in got]}")
    return not problems, "walls {1,3} and {1/2}; scan U/SS/S/SS/U" if not problems else "; ".join(problems)


def a7(ctx: Context):
    problems = []
    v = classify(Abstract(HilbPoly1D(3, 1), [HilbPoly1D(1, 1), HilbPoly1D(2, 1)]))
    if v.verdict is not Stability.STABLE:
        problems.append(f"O_C: {v.verdict.value}")
    v = classify(LineSum([0, -1, -1]))
    if v.verdict is not Stability.UNSTABLE or v.destabilizer_hilb != HilbPoly1D(1, 1):
        problems.append(f"O_L+O_L(-1)^2: {v}")
    v = classify(Abstract(HilbPoly1D(3, 1), [HilbPoly1D(1, 0), HilbPoly1D(1, 1)]))
    if v.verdict is not Stability.UNSTABLE or v.destabilizer_hilb != HilbPoly1D(2, 1):
        problems.append(f"F+O_L(-1): {v}")
    return not problems, "Stable / Unstable (m+1) / Unstable (2m+1)" if not problems else "; ".join(problems)


_IDEALS = [
    (4, [(0, 0, 2, 0), (0, 0, 1, 1), (0, 0, 0, 2)], (1, 3)),
    (3, [(3, 0, 0)], (0, 3)),
    (3, [(2, 0, 0)], (1, 2)),
]


def a8(ctx: Context):
    problems = []
    for nvars, gens, expected in _IDEALS:
        res = hilb_monomial(MonomialIdeal(nvars, gens))
        if res.dimension != 1 or res.hilb != tuple(Fraction(c) for c in expected):
            problems.append(f"{gens}: {res.format()}")
        for m in range(11):
            brute = standard_monomial_count(nvars, gens, m)
            if res.hilbert_function(m) != brute:
                problems.append(f"{gens}: h({m}) {res.hilbert_function(m)} vs {brute}")
            reg = max(sum(g) for g in gens)
            if m >= reg and res(m) != brute:
                problems.append(f"{gens}: HP({m}) {res(m)} vs {brute}")
    return not problems, "3m+1, 3m, 2m+1 match brute-force counts for m<=10" if not problems else "; ".join(problems)


def a9(ctx: Context):
    bad = [
        (k, n)
        for n in range(9)
        for k in range(n + 1)
        if gaussian_binomial(k, n) != gaussian_by_inversions(k, n)
    ]
    return not bad, f"0<=k<=n<=8, mismatches {bad}"


def a10(ctx: Context):
    bad = []
    top = min(8, ctx.rmax)
    for r in range(3, top + 1):
        ps = poincare_S(r).pS
        for x in (Fraction(1, 2), Fraction(2), Fraction(3)):
            pm, vals = evaluate_terms_at(r, x)
            total = pm + vals[0] + vals[1] + vals[2] - vals[3] - vals[4] - vals[5]
            if total != eval_rational(ps, x):
                bad.append((r, x))
    return not bad, f"r=3..{top}, t in 1/2,2,3, mismatches {bad}"


CRITERIA: list[tuple[str, str, Callable]] = [
    ("A1", "r=3 exactness", a1),
    ("A2", "r=3 derived checks", a2),
    ("A3", "polynomiality sweep", a3),
    ("A4", "term reconstruction", a4),
    ("A5", "P_t(M) anchor", a5),
    ("A6", "GIT walls", a6),
    ("A7", "stability oracle", a7),
    ("A8", "monomial Hilbert polynomials", a8),
    ("A9", "Gaussian binomial oracle", a9),
    ("A10", "numeric guard", a10),
]


def run_one(name: str, ctx: Context | None = None) -> Outcome:
    ctx = ctx or Context()
    for key, title, fn in CRITERIA:
        if key == name:
            try:
                ok, detail = fn(ctx)
            except Exception as exc:  # noqa: BLE001 - a crash is a failure, reported on its line
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return Outcome(key, title, bool(ok), detail)
    raise KeyError(name)


def run_all(ctx: Context | None = None) -> list[Outcome]:
    ctx = ctx or Context()
    return [run_one(key, ctx) for key, _, _ in CRITERIA]
