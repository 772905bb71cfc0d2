import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app_managers.core.errors import FieldMismatchError, InputError, ParseError
from arith_managers.fields import RATIONALS, finite_field
from poly_managers.parser import parse_poly, serialize_poly
from poly_managers.polynomials import MultiPoly, monomial_basis


def test_parses_both_power_operators():
    assert parse_poly("x0^2 - x1**2", 2) == parse_poly("(x0 - x1)*(x0 + x1)", 2)


def test_rational_literals_and_division_by_constants():
    f = parse_poly("2/3*x0 - x1/4", 2)
    assert f.terms == {(1, 0): Fraction(2, 3), (0, 1): Fraction(-1, 4)}


def test_literals_reduce_modulo_p():
    f = parse_poly("12*x0 + 1/2*x1", 2, finite_field(11))
    assert f.terms == {(1, 0): 1, (0, 1): 6}


def test_encoded_literal_over_extension_field():
    f9 = finite_field(3, 2)
    f = parse_poly("#4*x0", 1, f9)
    assert f.terms == {(1,): 4}
    assert serialize_poly(f) == "#4*x0"
    with pytest.raises(ParseError):
        parse_poly("#4*x0", 1, RATIONALS)


def test_encoded_literal_outside_a_prime_field_is_a_field_mismatch():
    with pytest.raises(FieldMismatchError) as info:
        parse_poly("x0 + #15*x1", 2, finite_field(11))
    assert "position 5" in str(info.value)


def test_negative_coefficients_print_symmetric_residues():
    f = parse_poly("x0 - 2*x1", 2, finite_field(7))
    assert f.to_text() == "x0 - 2*x1"


@pytest.mark.parametrize(
    "text,position",
    [
        ("x0 + + ", 7),
        ("x0 * (x1 + x2", 13),
        ("2x0", 1),
        ("x0 $ x1", 3),
        ("x0 / x1", 3),
        ("x0^x1", 3),
    ],
)
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_poly(text, 3)
    assert info.value.position == position
    assert info.value.text == text


def test_variable_out_of_range():
    with pytest.raises(ParseError) as info:
        parse_poly("x0 + x5", 3)
    assert info.value.position == 5


def test_non_homogeneous_input_is_rejected():
    with pytest.raises(InputError) as info:
        parse_poly("x0^2 + x1", 2)
    assert "x1" in str(info.value)


def test_division_by_zero():
    with pytest.raises(ParseError):
        parse_poly("x0/0", 1)


def test_degree_override():
    assert parse_poly("0", 5, degree=4) == MultiPoly.zero(5, 4, RATIONALS)
    with pytest.raises(InputError):
        parse_poly("x0^3", 2, degree=4)


@settings(max_examples=30, derandomize=True, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([RATIONALS, finite_field(13), finite_field(3, 2)]))
def test_serialized_text_parses_back(seed, field):
    rng = random.Random(seed)
    vector = [field.random_element(rng) if rng.random() < 0.4 else field.zero for _ in monomial_basis(4, 3)]
    f = MultiPoly.from_vector(4, 3, field, vector)
    assert parse_poly(serialize_poly(f), 4, field, degree=3) == f
