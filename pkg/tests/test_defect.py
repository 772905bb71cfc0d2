import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app_managers.core.errors import InputError
from arith_managers.fields import RATIONALS, finite_field
from geometry_managers.configurations import eisenbud_koh_check
from geometry_managers.points import PointConfig, ProjPoint
from quartic_managers.defect import (
    TAG_AT_MOST_8,
    TAG_AT_MOST_11,
    TAG_NINE_NO_PLANE,
    TAG_TWELVE_EXCEPTION,
    TAG_TWELVE_NO_QUADRIC,
    TheoremPath,
    defect_of_points,
    evaluation_matrix,
    factoriality_verdict,
    point_dependencies,
    separating_form,
)


def _normal_curve(s):
    """s points on the rational normal quartic; they impose independent conditions on cubics."""
    return PointConfig.of([ProjPoint.from_values(RATIONALS, (1, t, t**2, t**3, t**4)) for t in range(s)])


COLLINEAR = PointConfig.of(
    [ProjPoint.from_values(RATIONALS, (1, t, 0, 0, 0)) for t in range(4)] + [ProjPoint.from_values(RATIONALS, (0, 1, 0, 0, 0))]
)


def test_evaluation_matrix_shape():
    ev = evaluation_matrix(_normal_curve(6), 3)
    assert ev.matrix.nrows == 6
    assert ev.matrix.ncols == 35
    assert ev.rank == 6


def test_defect_of_general_and_collinear_points():
    assert defect_of_points(_normal_curve(12)) == 0
    assert defect_of_points(COLLINEAR) == 1
    assert defect_of_points(COLLINEAR, d=4) == 0
    relations = point_dependencies(COLLINEAR)
    assert len(relations) == 1
    assert set(relations[0]) == {0, 1, 2, 3, 4}


def test_separating_forms():
    cfg = _normal_curve(9)
    for i in range(len(cfg)):
        g = separating_form(cfg, i)
        assert g is not None and g.degree == 3
        for j, pt in enumerate(cfg):
            assert (g.evaluate(pt.coords) == 0) == (j != i)
    assert separating_form(COLLINEAR, 0) is None
    with pytest.raises(InputError):
        separating_form(cfg, 9)


@pytest.mark.parametrize(
    "s,plane,quadric,nodal,path,tag",
    [
        (0, None, None, True, TheoremPath.q_factorial, TAG_AT_MOST_8),
        (8, True, True, True, TheoremPath.q_factorial, TAG_AT_MOST_8),
        (9, False, None, True, TheoremPath.q_factorial, TAG_NINE_NO_PLANE),
        (9, True, None, True, TheoremPath.outside_hypotheses, None),
        (10, None, None, True, TheoremPath.outside_hypotheses, None),
        (10, False, None, True, TheoremPath.q_factorial, TAG_AT_MOST_11),
        (11, False, None, True, TheoremPath.q_factorial, TAG_AT_MOST_11),
        (12, False, False, True, TheoremPath.q_factorial, TAG_TWELVE_NO_QUADRIC),
        (12, False, True, True, TheoremPath.exception_case, TAG_TWELVE_EXCEPTION),
        (12, False, None, True, TheoremPath.outside_hypotheses, None),
        (13, False, False, True, TheoremPath.outside_hypotheses, None),
        (5, False, False, False, TheoremPath.outside_hypotheses, None),
    ],
)
def test_decision_tree(s, plane, quadric, nodal, path, tag):
    cfg = _normal_curve(s) if s else PointConfig.of([], field=RATIONALS, ambient=4)
    verdict = factoriality_verdict(s, plane, quadric, cfg, nodal=nodal)
    assert verdict.theorem_path is path
    assert verdict.citation == tag
    if s <= 13:
        assert verdict.defect_value == 0
        assert verdict.consistent


def test_defect_contradicting_the_tree_is_flagged():
    verdict = factoriality_verdict(5, None, None, COLLINEAR)
    assert verdict.theorem_path is TheoremPath.q_factorial
    assert verdict.defect_value == 1
    assert not verdict.consistent
    assert verdict.claim == "non-factorial (defect evidence)"
    out = verdict.to_json()
    assert out["witnesses"]["eisenbud_koh"]["passed"] is False
    assert len(out["witnesses"]["dependencies"]) == 1


def test_node_count_must_match_points():
    with pytest.raises(InputError):
        factoriality_verdict(3, False, False, _normal_curve(4))


F101 = finite_field(101)
PROPERTY_SETTINGS = settings(max_examples=100, derandomize=True, deadline=None)


def _random_config(seed):
    """Up to 13 points of P^4(GF(101)); some runs crowd points onto a line or a plane."""
    rng = random.Random(seed)
    s = rng.randint(1, 13)
    anchors = [[rng.randrange(101) for _ in range(5)] for _ in range(3)]
    crowd = rng.choice((0, 1, 2))
    points = {}
    while len(points) < s:
        if crowd and rng.random() < 0.6:
            coeffs = [rng.randrange(101) for _ in range(crowd + 1)]
            values = [sum(c * a[j] for c, a in zip(coeffs, anchors)) % 101 for j in range(5)]
        else:
            values = [rng.randrange(101) for _ in range(5)]
        if any(values):
            points.setdefault(ProjPoint.from_values(F101, values), None)
    return PointConfig.of(list(points))


@PROPERTY_SETTINGS
@given(st.integers(0, 100_000))
def test_incidence_bounds_imply_independence(seed):
    cfg = _random_config(seed)
    if eisenbud_koh_check(cfg, 3).passed:
        assert defect_of_points(cfg) == 0


@PROPERTY_SETTINGS
@given(st.integers(0, 100_000))
def test_separating_forms_exist_exactly_without_defect(seed):
    cfg = _random_config(seed)
    separated = all(separating_form(cfg, i) is not None for i in range(len(cfg)))
    assert separated == (defect_of_points(cfg) == 0)
