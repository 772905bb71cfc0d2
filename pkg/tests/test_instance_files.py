import dataclasses

import pytest

from app_managers.core.errors import FieldMismatchError, InputError, ParseError
from arith_managers.fields import RATIONALS, finite_field
from geometry_managers.point_files import parse_points
from poly_managers.parser import parse_poly
from quartic_managers.instance_files import format_instance, parse_instance, read_instance, write_instance

DECOMPOSED = """field GF(11)
# X = Q*Q' - L*C
Q: x0*x1 - x2^2
Q': x3^2 + 2*x0*x4
L: x4
C: x0^3 + x1*x2*x3
   - 5*x4^3
"""


def test_decomposition_blocks_build_F():
    inp = parse_instance(DECOMPOSED)
    f11 = finite_field(11)
    assert inp.field == f11
    assert inp.decomposition.C == parse_poly("x0^3 + x1*x2*x3 - 5*x4^3", 5, f11)
    expected = parse_poly("(x0*x1 - x2^2)*(x3^2 + 2*x0*x4) - x4*(x0^3 + x1*x2*x3 - 5*x4^3)", 5, f11)
    assert inp.F == expected


def test_F_only_and_field_override():
    inp = parse_instance("F: x0^4 + x1^4 + x2^4 + x3^4 + x4^4\n")
    assert inp.field == RATIONALS and inp.decomposition is None
    assert parse_instance("F: x0^4 - x4^4\n", field=finite_field(5)).field == finite_field(5)


def test_F_must_agree_with_the_decomposition():
    consistent = DECOMPOSED + "F: (x0*x1 - x2^2)*(x3^2 + 2*x0*x4) - x4*(x0^3 + x1*x2*x3 - 5*x4^3)\n"
    assert parse_instance(consistent).decomposition is not None
    with pytest.raises(InputError):
        parse_instance(DECOMPOSED + "F: x0^4\n")


def test_encoded_continuation_lines_are_kept():
    text = "field GF(3^2)\nF: x0^4 +\n   #4*x1^4\n"
    inp = parse_instance(text)
    assert inp.F.terms[(0, 1, 0, 0, 0)] == 4


@pytest.mark.parametrize(
    "text,needle",
    [
        ("", "no polynomial"),
        ("Q: x0*x1\nL: x4\n", "blocks"),
        ("Z: x0\n", "Line 1"),
        ("  x0\n", "continuation"),
        ("F: x0^4\nF: x1^4\n", "twice"),
        ("F: x0^4\nfield p=7\n", "header"),
        ("F: x0^3\n", "Block F (line 1)"),
    ],
)
def test_malformed_instances(text, needle):
    with pytest.raises(InputError) as info:
        parse_instance(text)
    assert needle in str(info.value)


def test_parse_errors_name_the_block():
    with pytest.raises(ParseError) as info:
        parse_instance("F: x0^4 +\n")
    assert "Block F" in str(info.value)


def test_write_and_read_back(tmp_path):
    inp = parse_instance(DECOMPOSED)
    points = parse_points("field p=11\n0, 0, 0, 0, 1\n")
    inp = dataclasses.replace(inp, supplied_points=points)
    path = tmp_path / "nested" / "instance.txt"
    write_instance(str(path), inp, ["written by a test"])
    text = path.read_text()
    assert "# written by a test" in text
    assert "# node: 0, 0, 0, 0, 1" in text
    again = read_instance(str(path))
    assert again.F == inp.F
    assert format_instance(again, ["written by a test"]).splitlines()[:6] == text.splitlines()[:6]


def test_supplied_points_must_share_the_field():
    inp = parse_instance(DECOMPOSED)
    with pytest.raises(FieldMismatchError):
        dataclasses.replace(inp, supplied_points=parse_points("0, 0, 0, 0, 1\n"))
