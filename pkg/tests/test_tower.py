import json
from fractions import Fraction
from pathlib import Path

import pytest

from mcc.cohomology import Grass, Proj, dimension, poincare
from mcc.errors import InvalidDimension, UnsupportedIndex, UnsupportedR
from mcc.ratpoly import IntPoly, RatFun, eval_rational, geo_sum, parse_poly
from mcc.tower import (
    EPS_R3,
    center_space,
    evaluate_terms_at,
    h_equals_s_check,
    poincare_M,
    poincare_S,
    reconstruct_term,
    tower_terms,
)

GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_tower.json").read_text())
R_RANGE = range(3, 13)

S_R3 = ("1 + 2*t^2 + 6*t^4 + 10*t^6 + 16*t^8 + 19*t^10 + 22*t^12"
        " + 19*t^14 + 16*t^16 + 10*t^18 + 6*t^20 + 2*t^22 + t^24")


def test_r3_exact():
    rep = poincare_S(3)
    assert rep.pS == parse_poly(S_R3)
    assert str(rep.pS) == S_R3
    assert rep.euler == 130
    assert rep.degree == 24
    assert rep.palindromic and rep.nonnegative


def test_eps_table_matches_display():
    assert list(poincare_S(3).pS.coeffs[::2]) == list(EPS_R3)


def test_pM_r1_anchor():
    assert poincare_M(1) == parse_poly("1 + t^2 + 2*t^4 + t^6 + t^8")


def test_pM_r2_still_polynomial():
    assert poincare_M(2).degree == 16


@pytest.mark.parametrize("r", R_RANGE)
def test_golden_regression(r):
    assert list(poincare_M(r)) == GOLDEN["pM"][str(r)]
    assert list(poincare_S(r).pS) == GOLDEN["pS"][str(r)]


@pytest.mark.parametrize("r", R_RANGE)
def test_invariants(r):
    rep = poincare_S(r)
    assert rep.degree == 8 * r
    assert rep.pS[0] == 1
    assert rep.palindromic and rep.nonnegative
    pm = rep.pM
    assert pm.degree == 8 * r and pm[0] == 1
    assert all(c >= 0 for c in pm.coeffs)
    # empirical: M has only quotient singularities
    assert pm.is_palindromic()


def test_r4_checked_at_plus_minus_one():
    ps = poincare_S(4).pS
    for x in (Fraction(1, 3), Fraction(-1, 2), Fraction(5, 7)):
        pm, vals = evaluate_terms_at(4, x)
        assert pm + sum(vals[:3]) - sum(vals[3:]) == eval_rational(RatFun(ps), x)
    # t = +-1 are removable singularities of the unsimplified forms
    assert ps(1) == ps(-1)


@pytest.mark.parametrize("r", range(3, 9))
def test_numeric_guard(r):
    ps = poincare_S(r).pS
    for x in (Fraction(1, 2), Fraction(2), Fraction(3)):
        pm, vals = evaluate_terms_at(r, x)
        assert pm + vals[0] + vals[1] + vals[2] - vals[3] - vals[4] - vals[5] == ps(x)


def test_numeric_guard_pole():
    with pytest.raises(ZeroDivisionError):
        evaluate_terms_at(3, 1)


def test_terms_shape():
    terms = tower_terms(3)
    assert [t.index for t in terms] == [1, 2, 3, 4, 5, 6]
    assert [t.kind for t in terms] == ["blowup"] * 3 + ["blowdown"] * 3
    assert [t.sign for t in terms] == [1, 1, 1, -1, -1, -1]
    assert [t.center_label for t in terms] == ["Γ¹", "Γ²₁", "Γ³₂", "Γ²₄", "Γ³₅", "Γ¹₆"]
    for term in terms:
        assert term.literal == term.center * term.factor


@pytest.mark.parametrize("r", [3, 5, 8])
def test_exponents(r):
    terms = tower_terms(r)
    assert [t.exponent for t in terms] == [2 * r - 2, r, r - 1, 2, 4, 7]
    for term in terms:
        assert term.factor == geo_sum(1, term.exponent + (term.kind == "blowdown"))


def test_exponent_examples():
    terms = tower_terms(3)
    assert terms[0].factor == RatFun(parse_poly("t^2 + t^4 + t^6"))
    assert terms[3].factor == RatFun(parse_poly("t^2 + t^4"))
    assert terms[5].factor == RatFun(parse_poly("t^2 + t^4 + t^6 + t^8 + t^10 + t^12 + t^14"))


@pytest.mark.parametrize("r", range(3, 9))
@pytest.mark.parametrize("index", [1, 2, 4, 5, 6])
def test_reconstruction(index, r):
    assert reconstruct_term(index, r) == tower_terms(r)[index - 1].literal


def test_reconstruction_term1_by_hand():
    r = 3
    expected = poincare_M(1) * poincare(Grass(2, 4), r) * geo_sum(1, 4)
    assert reconstruct_term(1, r) == expected


def test_reconstruction_term6_degenerate():
    # Gr(2, r-1) is a point at r = 3
    r = 3
    assert reconstruct_term(6, r) == RatFun(poincare(Grass(2, 4), r)) * geo_sum(1, 8)


def test_term3_literal_only():
    with pytest.raises(UnsupportedIndex):
        reconstruct_term(3, 3)
    with pytest.raises(UnsupportedIndex):
        center_space(3)
    with pytest.raises(UnsupportedIndex):
        reconstruct_term(7, 3)


@pytest.mark.parametrize("r", range(3, 9))
def test_dimension_audit(r):
    for index, codim in ((1, 2 * r - 2), (2, r)):
        assert dimension(center_space(index), r) + codim == 4 * r
    # the first center: a 4-dimensional fiber over Gr(2, r+1)
    assert dimension(center_space(1), r) == 4 + 2 * (r - 1)
    # the third center, read off its Poincaré polynomial, has codimension r-1
    center3 = tower_terms(r)[2].center
    assert (center3.num.degree - center3.den.degree) // 2 + (r - 1) == 4 * r
    for index, fiber in ((4, 2), (5, 4), (6, 7)):
        assert dimension(center_space(index), r) + fiber + 1 == 4 * r


def test_h_equals_s():
    assert h_equals_s_check(3) is True
    with pytest.raises(UnsupportedR):
        h_equals_s_check(4)
    perturbed = list(EPS_R3)
    perturbed[6] += 1
    assert h_equals_s_check(3, perturbed) is False


@pytest.mark.parametrize("r", [0, 1, 2])
def test_r_too_small(r):
    with pytest.raises(InvalidDimension):
        poincare_S(r)
    with pytest.raises(InvalidDimension):
        tower_terms(r)


def test_pM_needs_positive_r():
    with pytest.raises(InvalidDimension):
        poincare_M(0)


def test_center_shapes():
    assert poincare(center_space(2), 3) == (
        poincare(Proj(2), 3) * poincare(Proj(3), 3)
        * (poincare(Proj(2), 3) ** 2 + poincare(Proj(2), 3) * IntPoly([0, 0, 1]))
    )
