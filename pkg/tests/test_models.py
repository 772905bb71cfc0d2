from pathlib import Path

import pytest

from app_managers.core.errors import InputError
from arith_managers.fields import RATIONALS
from geometry_managers.points import ProjPoint
from poly_managers.parser import parse_poly
from quartic_managers.instance_files import read_instance
from quartic_managers.models import (
    birational_models,
    lines_through_node,
    map_to_model,
    node_on_Y,
    on_model,
    project_from_node,
)
from quartic_managers.types import QuarticInput

SAMPLE = Path(__file__).resolve().parents[1] / "configurations" / "sample_quartic.txt"


@pytest.fixture(scope="module")
def sample():
    return read_instance(str(SAMPLE))


def test_models_share_the_linear_form(sample):
    Y, Yp = birational_models(sample)
    assert (Y.name, Yp.name) == ("Y", "Y'")
    assert Y.linear == Yp.linear == sample.decomposition.L
    assert Y.numerator == sample.decomposition.Q
    assert Yp.numerator == sample.decomposition.Qp
    assert Y.to_json()["degrees"] == [2, 3]
    assert Y.to_json()["node"] == [0, 0, 0, 0, 0, 1]


def test_models_need_a_decomposition():
    with pytest.raises(InputError):
        birational_models(QuarticInput(F=parse_poly("x0^4 + x1^4 + x2^4 + x3^4 + x4^4", 5)))


def test_node_on_both_models(sample):
    Y, Yp = birational_models(sample)
    check = node_on_Y(Y)
    assert check.on_model and check.lowest_terms_match
    assert check.restricted_rank == 4 and check.full_rank == 5
    assert check.is_node
    other = node_on_Y(Yp)
    assert other.is_node
    assert other.to_json()["nonsingular_tangent_quadric"] is False


def test_points_of_X_map_onto_the_model(sample):
    Y, _ = birational_models(sample)
    x = ProjPoint.from_values(RATIONALS, (0, 0, 0, 0, 1))
    assert sample.F.evaluate(x.coords) == 0
    image = map_to_model(Y, x)
    assert image.coords == (0, 0, 0, 0, 1, 0)
    assert on_model(Y, image)
    assert project_from_node(Y, image) == x
    off = map_to_model(Y, ProjPoint.from_values(RATIONALS, (1, 0, 0, 0, 1)))
    assert Y.eq_quadric.evaluate(off.coords) == 0
    assert not on_model(Y, off)
    with pytest.raises(InputError):
        map_to_model(Y, ProjPoint.from_values(RATIONALS, (1, 0, 0, 0, 0)))
    with pytest.raises(InputError):
        project_from_node(Y, x)


def test_line_search_needs_a_finite_field(sample):
    Y, _ = birational_models(sample)
    result = lines_through_node(Y)
    assert result.label == "indeterminate"
    assert result.total_with_multiplicity is None
