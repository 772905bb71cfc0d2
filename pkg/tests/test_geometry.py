import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app_managers.core.errors import BudgetExceededError, DimensionError, FieldMismatchError, InputError
from arith_managers.fields import RATIONALS, finite_field
from geometry_managers.configurations import (
    configuration_route,
    densest_subspace,
    eisenbud_koh_check,
    lemma_six_points_report,
    max_in_subspace,
    pencil_of_quadrics_test,
    span_dim,
    twisted_cubic_test,
    vanishing_system_dim,
)
from geometry_managers.enumeration import gaussian_binomial, projective_points, projective_zeros, rref_subspaces
from geometry_managers.point_files import format_points, parse_points, read_points
from geometry_managers.points import PointConfig, ProjPoint
from poly_managers.batch_eval import fibred_common_zeros
from poly_managers.parser import parse_poly
from poly_managers.polynomials import MultiPoly, monomial_basis


def _config(field, rows):
    return PointConfig.of([ProjPoint.from_values(field, r) for r in rows])


GENERAL_POINTS = [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (1, 1, 1, 1, 1)]


def test_points_are_normalized():
    p = ProjPoint.from_values(RATIONALS, (0, 2, 4))
    assert p.coords == (0, 1, 2)
    assert p == ProjPoint.from_values(RATIONALS, ("0", "1/2", "1"))
    with pytest.raises(InputError):
        ProjPoint.from_values(RATIONALS, (0, 0))


def test_config_rejects_duplicates_and_dimension_mix():
    with pytest.raises(InputError):
        _config(RATIONALS, [(1, 2), (2, 4)])
    with pytest.raises(DimensionError):
        PointConfig.of([ProjPoint.from_values(RATIONALS, (1, 0)), ProjPoint.from_values(RATIONALS, (1, 0, 0))])


def test_gaussian_binomials():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(5, 1, 3) == 121
    assert gaussian_binomial(3, 4, 5) == 0


def test_projective_points_are_lex_ordered():
    pts = list(projective_points(finite_field(3), 3))
    assert len(pts) == 13
    assert pts[0] == (0, 0, 1)
    assert pts == sorted(pts)


def test_projective_zeros_of_a_conic():
    f5 = finite_field(5)
    conic = parse_poly("x0*x1 - x2^2", 3, f5)
    zeros = projective_zeros([conic])
    assert len(zeros) == 6
    assert all(conic.evaluate(z) == 0 for z in zeros)


def test_projective_zeros_respects_budget():
    with pytest.raises(BudgetExceededError):
        projective_zeros([parse_poly("x0", 5, finite_field(7))], budget=10)
    with pytest.raises(BudgetExceededError):
        projective_zeros([parse_poly("x0", 2, RATIONALS)])


@settings(max_examples=25, derandomize=True, deadline=None)
@given(st.integers(0, 10_000))
def test_projective_zeros_matches_brute_force(seed):
    rng = random.Random(seed)
    f5 = finite_field(5)
    forms = [
        MultiPoly.from_vector(4, d, f5, [rng.randrange(5) if rng.random() < 0.5 else 0 for _ in monomial_basis(4, d)])
        for d in (2, 3)
    ]
    expected = [p for p in projective_points(f5, 4) if all(f.evaluate(p) == 0 for f in forms)]
    assert projective_zeros(forms) == sorted(expected)


@settings(max_examples=20, derandomize=True, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([(5, 1), (3, 2), (3, 3)]), st.integers(1, 3))
def test_fibred_common_zeros_matches_brute_force(seed, pk, screen):
    rng = random.Random(seed)
    field = finite_field(*pk)
    forms = [
        MultiPoly.from_vector(
            4, d, field, [field.random_element(rng) if rng.random() < 0.4 else 0 for _ in monomial_basis(4, d)]
        )
        for d in (2, 3, 3)
    ]
    expected = [p for p in projective_points(field, 4) if all(f.evaluate(p) == 0 for f in forms)]
    assert fibred_common_zeros(field, forms, screen=screen, block_size=17) == sorted(expected)


def test_fibred_common_zeros_finds_the_apex_and_checks_budget():
    f9 = finite_field(3, 2)
    cone = parse_poly("x0*x1 - x2^2", 4, f9)
    zeros = fibred_common_zeros(f9, cone.gradient())
    assert zeros == [(0, 0, 0, 1)]
    with pytest.raises(BudgetExceededError):
        fibred_common_zeros(f9, cone.gradient(), budget=100)


def test_rref_subspaces_counts_lines():
    f2 = finite_field(2)
    assert sum(1 for _ in rref_subspaces(f2, 2, 4)) == 35
    filtered = list(rref_subspaces(f2, 1, 3, row_filter=lambda row: row[0] == 1))
    assert len(filtered) == 4


def test_span_and_densest_subspace():
    cfg = _config(RATIONALS, [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (1, 1, 0, 0, 0), (1, 2, 0, 0, 0), (0, 0, 1, 0, 0)])
    assert span_dim(cfg, [0, 1, 2]) == 1
    assert span_dim(cfg) == 2
    assert densest_subspace(cfg, 1) == (4, (0, 1, 2, 3))
    assert max_in_subspace(cfg, 1) == 4
    assert max_in_subspace(cfg, 3) == 5
    with pytest.raises(InputError):
        max_in_subspace(cfg, 4)
    ek = eisenbud_koh_check(cfg, 1)
    assert not ek.passed
    assert ek.violation_k == 1 and ek.violation_bound == 2
    assert eisenbud_koh_check(cfg, 3).passed


def test_general_points_take_the_eisenbud_koh_route():
    cfg = _config(RATIONALS, GENERAL_POINTS)
    route = configuration_route(cfg)
    assert route["route"] == "eisenbud-koh"
    assert route["eisenbud_koh"]["passed"] is True


def test_quadric_system_in_a_three_space():
    spanning = _config(RATIONALS, GENERAL_POINTS[:5])
    assert pencil_of_quadrics_test(spanning).label == "no common P3"
    assert vanishing_system_dim(spanning, None, 2) == 10
    assert vanishing_system_dim(spanning, [0, 1], 1) == 3
    in_hyperplane = _config(RATIONALS, [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (1, 1, 1, 1, 0)])
    verdict = pencil_of_quadrics_test(in_hyperplane)
    assert verdict.dimension == 5
    for q in verdict.quadrics:
        assert q.nvars == 4 and q.degree == 2


def test_seven_coplanar_points_are_reported():
    plane = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    cfg = _config(RATIONALS, [p + (0, 0) for p in plane] + [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
    report = lemma_six_points_report(cfg)
    assert report.plane_with_7
    assert report.plane_witness == tuple(range(7))
    assert len(report.coplanar_six) == 7
    assert report.twisted_cubic_with_10 is False


TWISTED_CUBIC_TEN = [(1, t, t * t % 13, t**3 % 13, 0) for t in range(10)]


def test_ten_points_on_a_twisted_cubic():
    f13 = finite_field(13)
    cfg = _config(f13, TWISTED_CUBIC_TEN)
    verdict = twisted_cubic_test(cfg)
    assert verdict.label == "yes"
    assert verdict.quadric_dimension == 3
    assert verdict.base_locus_counts == {f13.descriptor: 14}
    report = lemma_six_points_report(cfg)
    assert report.twisted_cubic_with_10 is True
    assert report.twisted_cubic_witness == tuple(range(10))


def test_twisted_cubic_test_is_indeterminate_over_rationals():
    cfg = _config(RATIONALS, [(1, t, t * t, t**3, 0) for t in range(10)])
    assert twisted_cubic_test(cfg).label == "indeterminate"
    assert twisted_cubic_test(_config(finite_field(13), TWISTED_CUBIC_TEN[:6])).label == "indeterminate"


def test_point_file_parsing(tmp_path):
    text = "# nodes\nfield GF(3^2)\n1, #4, 0\n\n0, 1, 2\n"
    cfg = parse_points(text)
    assert cfg.field == finite_field(3, 2)
    assert len(cfg) == 2 and cfg[0].coords == (1, 4, 0)
    path = tmp_path / "points.txt"
    path.write_text(format_points(cfg))
    assert read_points(str(path)).points == cfg.points


def test_point_file_errors_name_the_line():
    with pytest.raises(InputError) as info:
        parse_points("1, 2\n1, x\n")
    assert "Line 2" in str(info.value)
    with pytest.raises(InputError):
        parse_points("1, 0\nfield p=5\n")
    with pytest.raises(InputError):
        read_points("/nonexistent/points.txt")


def test_point_file_header_must_agree_with_the_requested_field():
    f11 = finite_field(11)
    assert parse_points("field GF(11)\n1, #15, 0\n", field=finite_field(11, 2)).field == finite_field(11, 2)
    with pytest.raises(FieldMismatchError):
        parse_points("field GF(11^2)\n1, #15, 0\n", field=f11)
    with pytest.raises(FieldMismatchError):
        parse_points("field GF(13)\n1, 2, 0\n", field=f11)
    with pytest.raises(FieldMismatchError) as info:
        parse_points("1, 0, 0\n1, #15, 0\n", field=f11)
    assert "Line 2" in str(info.value)
