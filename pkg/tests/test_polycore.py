from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sacdecide.errors import NonInvertibleLead
from sacdecide.notation import parse_poly, parse_poly_over
from sacdecide.polycore import NEG_INF, QQ, Poly2, UniPoly, divide_by, leading_form, substitute, total_degree
from sacdecide.tower import FieldCtx, adjoin

P = parse_poly
X, Y = Poly2.x(), Poly2.y()

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
monomials = st.tuples(st.integers(0, 6), st.integers(0, 6))
polys = st.dictionaries(monomials, coeffs, max_size=8).map(Poly2.from_rationals)
nonzero = polys.filter(bool)


def test_rational_is_normalized():
    r = Fraction(6, -4)
    assert (r.numerator, r.denominator) == (-3, 2)
    assert Fraction(0, 5) == Fraction(0, 1)


def test_add_cancels():
    assert P("x + y") + P("x - y") == P("2x")


def test_mul_over_gaussian_tower():
    K = adjoin(FieldCtx(), UniPoly.from_rationals([1, 0, 1]))
    xb = parse_poly_over("x + b1", K)
    xm = parse_poly_over("x - b1", K)
    assert xb * xm == parse_poly_over("x^2 + 1", K)


def test_mul_hand_expansion_and_points():
    p = P("x y + 1") * P("x")
    assert p == P("x^2 y + x")
    for pt in [(Fraction(1, 2), Fraction(3)), (Fraction(-2), Fraction(5, 7)), (0, 1), (3, -3), (Fraction(1, 9), 2)]:
        assert p.evaluate(*pt) == (pt[0] * pt[1] + 1) * pt[0]


@pytest.mark.parametrize(
    "text, deg",
    [
        ("x^4y^2 - 2x^3y + x^2 + xy", 6),
        ("x^6y^3 - 3x^5y^2 + 3x^4y + 2x^3y^2 - x^3 - 3x^2y + x + y", 9),
        ("0", NEG_INF),
    ],
)
def test_total_degree(text, deg):
    assert total_degree(P(text)) == deg


@pytest.mark.parametrize(
    "text, form",
    [("x^2y + x + 1", "x^2y"), ("x^2 + xy + y", "x^2 + xy"), ("y x^2 + y", "y x^2")],
)
def test_leading_form(text, form):
    assert leading_form(P(text)) == P(form)


def test_leading_form_of_zero_raises():
    from sacdecide.errors import ZeroPolynomialError

    with pytest.raises(ZeroPolynomialError):
        leading_form(Poly2())


def test_term_order_is_graded_lex():
    p = P("y^3 + x y^2 + x^2 y + x^3 + x + y + 1")
    assert list(p.terms) == [(3, 0), (2, 1), (1, 2), (0, 3), (1, 0), (0, 1), (0, 0)]
    assert p.leading_monomial == (3, 0)


@pytest.mark.parametrize(
    "p, sx, sy, out",
    [
        ("xy", "x", "xy", "x^2y"),
        ("x", "x(y + 0) - 0", "y", "xy"),  # the contraction with a = b = 0 is tau, not the identity
        ("x^2 + y", "x + 1", "y - 1", "x^2 + 2x + y"),
    ],
)
def test_substitute(p, sx, sy, out):
    assert substitute(P(p), P(sx), P(sy)) == P(out)


@pytest.mark.parametrize(
    "p, d, q, r",
    [("x^2y + x", "xy", "x", "x"), ("y x^2 + y", "x^2 + 1", "y", "0"), ("3x^2 - 1/2 y + 7", "1", "3x^2 - 1/2 y + 7", "0")],
)
def test_divide_by_examples(p, d, q, r):
    assert divide_by(P(p), P(d)) == (P(q), P(r))


def test_divide_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        P("x").divide_by(Poly2())


def test_divide_by_zero_divisor_lead_raises():
    L = adjoin(FieldCtx(), UniPoly.from_rationals([-1, 0, 1]))
    d = parse_poly_over("(b1 - 1) x + y", L)
    with pytest.raises(NonInvertibleLead):
        parse_poly_over("x^2", L).divide_by(d)


def test_unipoly_zero_degree_sentinel():
    assert UniPoly().degree == NEG_INF
    assert UniPoly.from_rationals([0, 0]).coeffs == ()
    assert UniPoly.from_rationals([1, 2, 3]).degree == 2


def test_unipoly_divmod_and_compose():
    f = UniPoly.from_rationals([-1, 0, 1])
    q, r = divmod(f, UniPoly.from_rationals([1, 1]))
    assert (q, r) == (UniPoly.from_rationals([-1, 1]), UniPoly())
    assert f.compose(P("x + y")) == P("x^2 + 2xy + y^2 - 1")
    assert f(Fraction(3)) == 8


# -- properties -------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(polys, nonzero)
def test_division_identity_and_reduced_remainder(p, d):
    q, r = p.divide_by(d)
    assert q * d + r == p
    lm = d.leading_monomial
    assert all(not (m[0] >= lm[0] and m[1] >= lm[1]) for m in r.terms)


@settings(max_examples=100, deadline=None)
@given(polys, nonzero)
def test_remainder_zero_iff_divisible(q, d):
    assert (q * d).divide_by(d) == (q, Poly2())


@settings(max_examples=100, deadline=None)
@given(polys)
def test_identity_substitution(p):
    assert p.substitute(X, Y) == p


@settings(max_examples=100, deadline=None)
@given(nonzero, nonzero)
def test_degree_and_leading_form_multiply(p, q):
    assert (p * q).total_degree() == p.total_degree() + q.total_degree()
    assert (p * q).leading_form() == p.leading_form() * q.leading_form()


@settings(max_examples=100, deadline=None)
@given(polys)
def test_canonical_form_is_idempotent(p):
    again = Poly2(dict(p.terms), QQ)
    assert again == p and again.terms == p.terms
    assert all(c for c in p.terms.values())


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_substitute_is_a_ring_map(p, sx, sy):
    point = (Fraction(2, 3), Fraction(-5, 4))
    inner = (sx.evaluate(*point), sy.evaluate(*point))
    assert p.substitute(sx, sy).evaluate(*point) == p.evaluate(*inner)
