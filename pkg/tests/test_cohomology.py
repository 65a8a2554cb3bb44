import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcc.cohomology import (
    BlowUp,
    Bundle,
    Contract,
    Grass,
    IntExpr,
    Literal,
    Point,
    Product,
    Proj,
    WProj,
    dimension,
    gaussian_binomial,
    poincare,
    proj_poly,
)
from mcc.dsl import format_space, load_msd, parse_space
from mcc.errors import InvalidDimension, NotPolynomial, ParseError
from mcc.oracles import gaussian_by_inversions, inversions
from mcc.ratpoly import IntPoly, RatFun, parse_poly

t = RatFun.t()


def P(text):
    return parse_poly(text)


# -- poincare ------------------------------------------------------------

def test_proj():
    for r in (1, 4, 9):
        assert poincare(Proj(2), r) == P("1 + t^2 + t^4")


def test_grass_2_4_brute_force():
    counts = {}
    for ones in itertools.combinations(range(4), 2):
        word = [1 if i in ones else 0 for i in range(4)]
        e = 2 * inversions(word)
        counts[e] = counts.get(e, 0) + 1
    brute = IntPoly([counts.get(i, 0) for i in range(9)])
    assert poincare(Grass(2, 4), 1) == brute == P("1 + t^2 + 2*t^4 + t^6 + t^8")


def test_point_blowup():
    assert poincare(BlowUp(Proj(2), Point(), 2), 1) == P("1 + 2*t^2 + t^4")


def test_weighted_projective():
    assert poincare(WProj(1, 2, 2), 1) == P("1 + t^2 + t^4")
    assert poincare(WProj(1, 2, 2, 3, 3), 1) == proj_poly(4)


def test_contract_literal():
    s = Contract(Literal(P("1 + 2*t^2 + t^4")), Point(), 1)
    assert poincare(s, 1) == P("1 + t^2 + t^4")


def test_r_dependent_dimensions():
    s = Product(Proj(IntExpr(1, -1)), Grass(2, IntExpr(1, 1)))
    assert poincare(s, 3) == proj_poly(2) * gaussian_binomial(2, 4)
    assert dimension(s, 3) == 2 + 4


@pytest.mark.parametrize(
    "space,r",
    [
        (Proj(IntExpr(1, -2)), 1),
        (Grass(3, 2), 1),
        (Grass(-1, 2), 1),
        (WProj(), 1),
        (WProj(1, 0), 1),
        (BlowUp(Proj(2), Point(), 0), 1),
        (Contract(Proj(2), Point(), 0), 1),
        (Proj(1), 0),
    ],
)
def test_invalid_dimension(space, r):
    with pytest.raises(InvalidDimension):
        poincare(space, r)


def test_invariants_checked_at_evaluation_not_construction():
    s = Proj(IntExpr(1, -3))
    with pytest.raises(InvalidDimension):
        poincare(s, 2)
    assert poincare(s, 3) == IntPoly([1])


def test_literal_not_polynomial():
    with pytest.raises(NotPolynomial):
        poincare(Literal(1 / (1 - t**2)), 1)


# -- gaussian binomial ---------------------------------------------------

def test_gaussian_examples():
    r = 3
    assert gaussian_binomial(2, r + 1) == P("1 + t^2 + 2*t^4 + t^6 + t^8")
    assert gaussian_binomial(0, 7) == IntPoly([1])
    r = 5
    assert gaussian_binomial(2, r - 1) == P("1 + t^2 + 2*t^4 + t^6 + t^8")
    with pytest.raises(InvalidDimension):
        gaussian_binomial(3, 2)


@pytest.mark.parametrize("n", range(9))
def test_gaussian_properties(n):
    for k in range(n + 1):
        g = gaussian_binomial(k, n)
        assert g == gaussian_binomial(n - k, n)
        assert g.degree == 2 * k * (n - k)
        assert g.is_palindromic()
        assert g == gaussian_by_inversions(k, n)


@pytest.mark.parametrize("n", range(9))
def test_grass_one_is_projective(n):
    assert poincare(Grass(1, n + 1), 1) == poincare(Proj(n), 1)


# -- random expressions --------------------------------------------------

small = st.integers(0, 3)
affine = st.builds(IntExpr, st.integers(0, 1), st.integers(0, 2))

leaves = st.one_of(
    st.just(Point()),
    st.builds(Proj, affine),
    st.lists(st.integers(1, 4), min_size=1, max_size=4).map(WProj),
    st.tuples(small, st.integers(3, 5)).map(lambda kn: Grass(kn[0], kn[1])),
)


def _grow(children):
    return st.one_of(
        st.builds(Product, children, children),
        st.builds(Bundle, children, children),
        st.builds(BlowUp, children, children, st.integers(1, 3)),
    )


spaces = st.recursive(leaves, _grow, max_leaves=6)


def _depth(s):
    if isinstance(s, (Product, Bundle)):
        return 1 + max(_depth(getattr(s, f)) for f in s.__dataclass_fields__)
    if isinstance(s, BlowUp):
        return 1 + max(_depth(s.ambient), _depth(s.center))
    return 0


@given(spaces, spaces, st.integers(1, 6))
@settings(max_examples=200, deadline=None)
def test_product_multiplicative(a, b, r):
    if _depth(a) > 3 or _depth(b) > 3:
        return
    assert poincare(Product(a, b), r) == poincare(a, r) * poincare(b, r)


@given(spaces, st.integers(1, 6))
@settings(max_examples=200, deadline=None)
def test_nonnegative_constant_one(s, r):
    p = poincare(s, r)
    assert p[0] == 1
    assert all(c >= 0 for c in p.coeffs)


@given(spaces, spaces, st.integers(2, 5), st.integers(1, 6))
@settings(max_examples=150, deadline=None)
def test_contract_inverts_blowup(x, z, c, r):
    s = Contract(BlowUp(x, z, c), z, c - 1)
    assert poincare(s, r) == poincare(x, r)


@given(spaces)
@settings(max_examples=200, deadline=None)
def test_dsl_roundtrip(s):
    text = format_space(s)
    assert parse_space(text) == s
    assert format_space(parse_space(text)) == text


# -- DSL -----------------------------------------------------------------

def test_parse_examples():
    assert parse_space("P(2)") == Proj(2)
    r1 = IntExpr(1, -1)
    assert parse_space("blowup(prod(P(r-1),P(r-1)), center=P(r-1), codim=r-1)") == BlowUp(
        Product(Proj(r1), Proj(r1)), Proj(r1), r1
    )
    assert parse_space("WP(1,2,2,3,3)") == WProj(1, 2, 2, 3, 3)


@pytest.mark.parametrize(
    "text,expr",
    [
        ("pt", Point()),
        ("Gr(2, r+1)", Grass(2, IntExpr(1, 1))),
        ("P(2*r-3)", Proj(IntExpr(2, -3))),
        ("P( 4 )", Proj(4)),
        ("bundle(fiber = WP(1,2,2), base = P(r))", Bundle(WProj(1, 2, 2), Proj(IntExpr(1, 0)))),
        ("contract(P(3),base=pt,fiberdim=1)", Contract(Proj(3), Point(), 1)),
        ("lit(1 + t^2)", Literal(RatFun(P("1 + t^2")))),
        ("lit((1 - t^4)/(1 - t^2))", Literal(RatFun(P("1 + t^2")))),
    ],
)
def test_parse_more(text, expr):
    assert parse_space(text) == expr


def test_whitespace_and_comments():
    text = """
    # two blown-up planes
    prod(
        blowup(P(2), center=pt, codim=2),   # one point
        P(1)
    )
    """
    s = parse_space(text)
    assert poincare(s, 1) == P("1 + 2*t^2 + t^4") * P("1 + t^2")


@pytest.mark.parametrize(
    "text,offset",
    [
        ("P(", 2),
        ("Q(2)", 0),
        ("P(2", 3),
        ("prod(P(1) P(2))", 10),
        ("P(2) extra", 5),
        ("bundle(base=P(1), fiber=pt)", 7),
        ("WP()", 3),
    ],
)
def test_parse_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_space(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_load_msd(tmp_path):
    f = tmp_path / "center.msd"
    f.write_text("# the second center\nbundle(fiber=WP(1,2,2),\n  base=P(r))  # over P^r\n")
    assert poincare(load_msd(f), 3) == proj_poly(2) * proj_poly(3)
