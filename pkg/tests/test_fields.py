from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app_managers.core.errors import FieldMismatchError, InputError
from arith_managers.fields import RATIONALS, finite_field, parse_field_spec

PROPERTY_SETTINGS = settings(max_examples=60, derandomize=True, deadline=None)


def test_field_descriptors():
    assert str(RATIONALS) == "QQ"
    assert str(finite_field(11)) == "GF(11)"
    assert str(finite_field(11, 2)) == "GF(11^2)"


@pytest.mark.parametrize(
    "spec, expected",
    [
        ("q", "QQ"),
        ("QQ", "QQ"),
        ("p=11", "GF(11)"),
        ("p=11,k=2", "GF(11^2)"),
        ("GF(5^3)", "GF(5^3)"),
        ("121", "GF(11^2)"),
        (7, "GF(7)"),
    ],
)
def test_parse_field_spec(spec, expected):
    assert str(parse_field_spec(spec)) == expected


@pytest.mark.parametrize("spec", ["p=2", "p=6", "", "GF(x)", "12"])
def test_parse_field_spec_rejects(spec):
    with pytest.raises(InputError):
        parse_field_spec(spec)


def test_rational_conversion_is_literal():
    assert RATIONALS.convert("3/6") == Fraction(1, 2)
    assert RATIONALS.div(Fraction(1), Fraction(3)) == Fraction(1, 3)
    assert RATIONALS.to_json(Fraction(4, 2)) == 2
    assert RATIONALS.to_json(Fraction(-1, 3)) == "-1/3"


def test_prime_field_conversion_reduces_fractions():
    f = finite_field(7)
    assert f.convert(10) == 3
    assert f.convert(Fraction(1, 2)) == 4
    with pytest.raises(InputError):
        f.convert(Fraction(1, 7))


def test_extension_canonical_rejects_out_of_range_encodings():
    f = finite_field(3, 2)
    assert f.canonical(8) == 8
    with pytest.raises(InputError):
        f.canonical(9)


def test_prime_field_rejects_extension_encodings():
    f = finite_field(7)
    assert f.from_encoding(6) == 6
    with pytest.raises(FieldMismatchError):
        f.from_encoding(10)
    assert finite_field(7, 2).from_encoding(10) == 10


def test_extension_prime_subfield_is_residues():
    f = finite_field(5, 2)
    for a in range(1, 5):
        for b in range(1, 5):
            assert f.mul(a, b) == a * b % 5
            assert f.add(a, b) == (a + b) % 5


def test_scalars_from_different_fields_do_not_mix():
    a = finite_field(5).scalar(2)
    b = finite_field(7).scalar(2)
    with pytest.raises(FieldMismatchError):
        a + b
    assert a != b


def test_sqrt_of_non_residue_is_none():
    f = finite_field(11)
    assert f.sqrt(2) is None
    root = f.sqrt(5)
    assert f.mul(root, root) == 5


@PROPERTY_SETTINGS
@given(st.sampled_from([(3, 1), (5, 1), (3, 2), (5, 2), (7, 2), (3, 3)]), st.data())
def test_field_axioms(pk, data):
    f = finite_field(*pk)
    a, b, c = (data.draw(st.integers(0, f.order - 1)) for _ in range(3))
    assert f.add(a, f.neg(a)) == 0
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    if a:
        assert f.mul(a, f.inv(a)) == 1
    assert f.pow(a, f.order) == a


@PROPERTY_SETTINGS
@given(st.sampled_from([(3, 2), (5, 2), (7, 2)]), st.data())
def test_frobenius_is_additive(pk, data):
    f = finite_field(*pk)
    a = data.draw(st.integers(0, f.order - 1))
    b = data.draw(st.integers(0, f.order - 1))
    assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))


@PROPERTY_SETTINGS
@given(st.fractions(), st.fractions())
def test_rational_arithmetic_matches_fraction(a, b):
    assert RATIONALS.add(a, b) == a + b
    assert RATIONALS.mul(a, b) == a * b
    if b:
        assert RATIONALS.div(a, b) == a / b
