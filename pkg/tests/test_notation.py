from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sacdecide.errors import ExponentOverflow, PolySyntaxError
from sacdecide.notation import parse_elem, parse_poly, parse_poly_over, parse_uni, render_elem, render_poly, render_uni
from sacdecide.polycore import Poly2, UniPoly
from sacdecide.tower import FieldCtx, adjoin

EX1_U = "x^4y^2 - 2x^3y + x^2 + xy"
EX1_V = "x^6y^3 - 3x^5y^2 + 3x^4y + 2x^3y^2 - x^3 - 3x^2y + x + y"


def test_parse_example_one_u():
    assert parse_poly(EX1_U) == Poly2.from_rationals({(4, 2): 1, (3, 1): -2, (2, 0): 1, (1, 1): 1})


def test_parse_example_two_v():
    assert parse_poly("y x^2 + y") == Poly2.from_rationals({(2, 1): 1, (0, 1): 1})


def test_parse_negated_square():
    assert parse_poly("-(x - y)^2") == Poly2.from_rationals({(2, 0): -1, (1, 1): 2, (0, 2): -1})


@pytest.mark.parametrize(
    "text, same",
    [
        ("2x^3y", "2*x^3*y"),
        ("x y", "x*y"),
        ("(x+1)(x-1)", "x^2 - 1"),
        ("  3/4 x ", "3/4*x"),
        ("-x^2", "-(x^2)"),
        ("2^3 x", "8x"),
        ("x^0", "1"),
        ("--x", "x"),
        ("x - -y", "x + y"),
        ("6/4", "3/2"),
    ],
)
def test_parse_equivalences(text, same):
    assert parse_poly(text) == parse_poly(same)


@pytest.mark.parametrize(
    "p, text",
    [
        (Poly2(), "0"),
        (parse_poly("y+x"), "x + y"),
        (parse_poly(EX1_U), "x^4*y^2 - 2*x^3*y + x^2 + x*y"),
        (parse_poly("-x + 1/2"), "-x + 1/2"),
        (parse_poly("-3"), "-3"),
        (parse_poly("y^2 + x y + x^2"), "x^2 + x*y + y^2"),
    ],
)
def test_render_examples(p, text):
    assert render_poly(p) == text


def test_example_polys_are_stable_after_one_round_trip():
    for text in (EX1_U, EX1_V):
        once = render_poly(parse_poly(text))
        assert render_poly(parse_poly(once)) == once


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 1),
        ("x +", 4),
        ("x + * y", 5),
        ("(x + y", 7),
        ("x ^ y", 5),
        ("x^-1", 3),
        ("x % y", 3),
        ("x + z", 5),
        ("1/0", 1),
        ("x)", 2),
        ("3 /4", 3),
    ],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text)
    assert info.value.position == position


def test_exponent_overflow():
    with pytest.raises(ExponentOverflow) as info:
        parse_poly("x^10001")
    assert info.value.position == 3
    assert parse_poly("x^12", max_exponent=12).total_degree() == 12
    with pytest.raises(ExponentOverflow):
        parse_poly("y^13", max_exponent=12)


def test_generators_only_in_tower_contexts():
    with pytest.raises(PolySyntaxError, match="unknown variable"):
        parse_poly("x + b1")
    K = adjoin(FieldCtx(), UniPoly.from_rationals([1, 0, 1]))
    p = parse_poly_over("b1 x + y - 2 b1", K)
    assert render_poly(p) == "x*b1 + y - 2*b1"
    assert parse_poly_over(render_poly(p), K) == p
    e = parse_elem("b1^3", K)
    assert render_elem(e, K) == "-b1"
    assert render_uni(parse_uni("b1 t^2 - t", K)) == "t^2*b1 - t"


# -- properties -------------------------------------------------------------------

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=12)
monomials = st.tuples(st.integers(0, 12), st.integers(0, 12)).filter(lambda m: sum(m) <= 12)
polys = st.dictionaries(monomials, coeffs, max_size=20).map(Poly2.from_rationals)


@settings(max_examples=300, deadline=None)
@given(polys)
def test_parse_render_round_trip(p):
    assert parse_poly(render_poly(p)) == p


@settings(max_examples=300, deadline=None)
@given(polys, polys)
def test_render_is_injective(p, q):
    assert (render_poly(p) == render_poly(q)) == (p == q)


@settings(max_examples=100, deadline=None)
@given(st.lists(coeffs, max_size=8))
def test_uni_round_trip(cs):
    f = UniPoly.from_rationals(cs)
    assert parse_uni(render_uni(f), FieldCtx()) == f


def test_rationals_render_reduced():
    assert render_elem(Fraction(-6, 4)) == "-3/2"
    assert render_elem(Fraction(0)) == "0"
