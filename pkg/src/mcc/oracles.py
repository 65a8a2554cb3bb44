"""Brute-force reference computations.

These are deliberately naive and share no code with the routines they
check: Gaussian binomials by counting inversions of 0/1 words, Hilbert
functions by listing monomials.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence

from .ratpoly import IntPoly


def inversions(word: Sequence[int]) -> int:
    """Pairs i < j with word[i] > word[j]."""
    return sum(1 for i, j in itertools.combinations(range(len(word)), 2) if word[i] > word[j])


def gaussian_by_inversions(k: int, n: int) -> IntPoly:
    """Sum of q^inv(w) over 0/1 words with k ones and n-k zeros, q = t^2."""
    coeffs: dict[int, int] = {}
    for ones in itertools.combinations(range(n), k):
        word = [1 if i in ones else 0 for i in range(n)]
        e = 2 * inversions(word)
        coeffs[e] = coeffs.get(e, 0) + 1
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return IntPoly(out)


def monomials(nvars: int, degree: int):
    """All exponent vectors of total degree ``degree``."""
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev, vec = -1, []
        for b in bars:
            vec.append(b - prev - 1)
            prev = b
        vec.append(degree + nvars - 2 - prev)
        yield tuple(vec)


def standard_monomial_count(nvars: int, gens: Sequence[Sequence[int]], degree: int) -> int:
    """Number of degree-``degree`` monomials divisible by no generator."""
    return sum(
        1
        for mono in monomials(nvars, degree)
        if not any(all(x >= g for x, g in zip(mono, gen)) for gen in gens)
    )
