import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app_managers.core.errors import FieldMismatchError, InputError
from arith_managers.fields import RATIONALS, finite_field
from arith_managers.matrices import ExactMatrix, kernel_basis, rank
from geometry_managers.enumeration import projective_zeros
from geometry_managers.points import PointConfig, ProjPoint
from poly_managers.parser import parse_poly
from poly_managers.polynomials import MultiPoly, monomial_basis
from poly_managers.subspaces import LinearSubspaceParam, restrict_to_subspace
from quartic_managers.analysis import analyze_quartic
from quartic_managers.containment import contains_plane, contains_quadric_surface, quadric_membership
from quartic_managers.defect import TAG_AT_MOST_8, TAG_AT_MOST_11, TheoremPath, defect_of_points
from quartic_managers.plane_sections import classify_plane_section
from quartic_managers.singularities import certify_node, singular_points_enumerate
from quartic_managers.family import build_qqlc, random_form
from quartic_managers.types import Decomposition, QuarticInput

F7 = finite_field(7)
NODE = (0, 0, 0, 0, 1)
NODAL = "x4^2*(x0*x1 + x2*x3) + x0^4 + 2*x1^4 + 3*x2^4 - x3^4"
FERMAT = "x0^4 + x1^4 + x2^4 + x3^4 + x4^4"
COORDINATE_PLANE = [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)]


def test_certify_node():
    F = parse_poly(NODAL, 5, F7)
    record = certify_node(F, ProjPoint.from_values(F7, NODE))
    assert record.gradient_zero and record.hessian_rank == 4 and record.is_node
    smooth = certify_node(F, ProjPoint.from_values(F7, (1, 0, 0, 0, 0)))
    assert not smooth.gradient_zero
    cusp = certify_node(parse_poly("x4^2*x0*x1 + x2^4 + x3^4", 5, F7), ProjPoint.from_values(F7, NODE))
    assert cusp.gradient_zero and cusp.hessian_rank == 2 and not cusp.is_node


def test_certify_node_lifts_to_an_extension():
    F = parse_poly(NODAL, 5, F7)
    record = certify_node(F, ProjPoint.from_values(finite_field(7, 2), NODE))
    assert record.is_node
    with pytest.raises(FieldMismatchError):
        certify_node(F, ProjPoint.from_values(finite_field(5), NODE))


def test_singular_point_search_finds_the_node():
    records = singular_points_enumerate(parse_poly(NODAL, 5, F7), budget=10_000)
    points = [r.point.coords for r in records]
    assert NODE in points
    assert points == sorted(points)
    assert all(r.gradient_zero for r in records)
    with pytest.raises(InputError):
        singular_points_enumerate(parse_poly(NODAL, 5, RATIONALS))


def _quartic_singular_at_the_apex(rng: random.Random, field) -> MultiPoly:
    coeffs = [field.random_element(rng) if e[4] < 3 and rng.random() < 0.5 else 0 for e in monomial_basis(5, 4)]
    return MultiPoly.from_vector(5, 4, field, coeffs)


@settings(max_examples=60, derandomize=True, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([3, 5]))
def test_node_certification_is_sound_on_random_quartics(seed, p):
    F = _quartic_singular_at_the_apex(random.Random(seed), finite_field(p))
    if F.is_zero:
        return
    records = singular_points_enumerate(F)
    gradient = [g for g in F.gradient() if not g.is_zero]
    assert {r.point.coords for r in records} == set(projective_zeros(gradient))
    assert NODE in {r.point.coords for r in records}
    for record in records:
        x = record.point.coords
        assert record.gradient_zero
        assert F.evaluate(x) == 0
        assert record.hessian_rank == rank(F.hessian_matrix(x)) <= 4
        assert record.is_node == (record.hessian_rank == 4)


def test_square_of_a_quadric_is_singular_without_nodes():
    records = singular_points_enumerate(parse_poly("(x0*x1 - x2*x3)^2", 5, F7))
    # the cone over a split quadric surface: 7 * 8^2 points plus the apex
    assert len(records) == 449
    assert all(r.gradient_zero for r in records)
    assert not any(r.is_node for r in records)
    assert max(r.hessian_rank for r in records) == 1


def test_decomposition_must_reproduce_F():
    Q, Qp, L, C = (parse_poly(t, 5) for t in ("x0*x1", "x2^2", "x4", "x3^3"))
    d = Decomposition(Q=Q, Qp=Qp, L=L, C=C)
    assert QuarticInput(F=d.quartic(), decomposition=d).decomposition is d
    with pytest.raises(InputError):
        QuarticInput(F=parse_poly(FERMAT, 5), decomposition=d)
    with pytest.raises(InputError):
        Decomposition(Q=Q, Qp=Qp, L=parse_poly("x4^2", 5), C=C)


def test_build_qqlc_flags_a_squared_linear_factor():
    Q, Qp, L, C = (parse_poly(t, 5) for t in ("x0*x1", "x2^2", "x4", "x3^3"))
    inp = build_qqlc(Q, Qp, L, C)
    assert inp.F == Q * Qp - L * C
    assert not inp.degenerate
    assert build_qqlc(parse_poly("-3*x4^2", 5), Qp, L, C).degenerate


def test_plane_containment_over_a_finite_field():
    f3 = finite_field(3)
    with_plane = parse_poly("x3*x0^3 + x4*x1^3 + x3*x4*x2^2 + x3^4 - x4^4", 5, f3)
    found = contains_plane(with_plane)
    assert found.value is True
    assert restrict_to_subspace(with_plane, found.witness).is_zero
    assert contains_plane(parse_poly(FERMAT, 5, f3)).value is False


def test_plane_containment_over_the_rationals_needs_candidates():
    F = parse_poly("x3*x0^3 + x4*x1^3", 5)
    assert contains_plane(F).label == "budget-exceeded"
    candidate = LinearSubspaceParam.from_points(RATIONALS, COORDINATE_PLANE)
    assert contains_plane(F, candidates=[candidate]).value is True
    other = LinearSubspaceParam.from_points(RATIONALS, [(1, 0, 0, 1, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)])
    result = contains_plane(F, candidates=[other])
    assert result.label == "not-found" and result.value is None


def test_quadric_membership():
    L, Q = parse_poly("x0", 5), parse_poly("x1*x2 - x3*x4", 5)
    F = L * parse_poly("x1^3 + x4^3", 5) + Q * parse_poly("x2^2 + x0*x4", 5)
    result = quadric_membership(F, L, Q)
    assert result.value is True
    assert L * result.A + Q * result.B == F
    missing = contains_quadric_surface(parse_poly(FERMAT, 5), (L, Q))
    assert missing.label == "no" and missing.value is None
    with pytest.raises(InputError):
        quadric_membership(F, Q, L)


def test_quadric_surface_search_finds_a_surface_in_the_ideal():
    f3 = finite_field(3)
    L, Q = parse_poly("x0", 5, f3), parse_poly("x1*x2 - x3*x4", 5, f3)
    # L = Q = B = 0 is a cycle of four lines carrying 12 rational points
    B = parse_poly("x1*x2 + x3*x4", 5, f3)
    F = L * parse_poly("x1^3 - x2^3 + x3^3 + x0*x4^2", 5, f3) + Q * B
    result = contains_quadric_surface(F, None)
    assert result.label == "yes" and result.definitive and result.value is True
    assert result.hyperplanes_checked >= 1
    assert result.linear * result.A + result.quadric * result.B == F


def test_quadric_surface_search_on_a_generic_quartic_is_not_definitive():
    F = random_form(random.Random(0), finite_field(5), 5, 4)
    result = contains_quadric_surface(F, None)
    assert result.label == "not-found"
    assert result.definitive is False and result.value is None
    rational = contains_quadric_surface(parse_poly(FERMAT, 5), None)
    assert rational.label == "not-found" and "unavailable" in rational.reason


def test_double_conic_section():
    F = parse_poly("(x0*x1 - x2^2)^2 + x3*x0^3 + x4*x1*x2^2", 5)
    plane = LinearSubspaceParam.from_points(RATIONALS, COORDINATE_PLANE)
    section = classify_plane_section(F, plane)
    assert section.kind == "double_conic"
    assert section.conic.is_proportional(parse_poly("x0*x1 - x2^2", 3))


def test_four_lines_section():
    F = parse_poly("x0*x1*x2*(x0 + x1 + x2) + x3^4 + x4^4", 5, F7)
    plane = LinearSubspaceParam.from_points(F7, COORDINATE_PLANE)
    section = classify_plane_section(F, plane)
    assert section.kind == "four_lines"
    assert section.line_field == F7
    assert len(set(section.intersections)) == 6
    assert ProjPoint.from_values(F7, (0, 0, 1, 0, 0)) in section.intersections
    assert section.to_json()["distinct_intersections"] == 6


def test_other_sections():
    plane = LinearSubspaceParam.from_points(F7, COORDINATE_PLANE)
    assert classify_plane_section(parse_poly(FERMAT, 5, F7), plane, max_extension=2).kind == "other"
    assert classify_plane_section(parse_poly("x3*x0^3 + x4^4", 5, F7), plane).kind == "plane_contained"
    rational_plane = LinearSubspaceParam.from_points(RATIONALS, COORDINATE_PLANE)
    assert classify_plane_section(parse_poly(FERMAT, 5), rational_plane).kind == "indeterminate"


def _general_points(rng: random.Random, field, s: int):
    """s distinct points imposing independent conditions on cubics."""
    while True:
        chosen = set()
        while len(chosen) < s:
            coords = [field.random_element(rng) for _ in range(5)]
            if any(coords):
                chosen.add(ProjPoint.from_values(field, coords))
        points = sorted(chosen)
        if defect_of_points(PointConfig.of(points, ambient=4)) == 0:
            return points


def _nodal_quartic_through(rng: random.Random, field, s: int):
    """A quartic whose singular points over ``field`` are exactly s general points, all nodes."""
    basis = monomial_basis(5, 4)
    partials = [
        [MultiPoly.from_vector(5, 4, field, [int(e == m) for e in basis]).partial(i) for m in basis] for i in range(5)
    ]
    for _ in range(5):
        points = _general_points(rng, field, s)
        rows = [[d.evaluate(x.coords) for d in partials[i]] for x in points for i in range(5)]
        kernel = kernel_basis(ExactMatrix(field=field, rows=rows, ncols=len(basis)))
        for _ in range(20):
            vector = [0] * len(basis)
            for v in kernel:
                r = field.random_element(rng)
                vector = [field.add(a, field.mul(r, b)) for a, b in zip(vector, v)]
            F = MultiPoly.from_vector(5, 4, field, vector)
            if F.is_zero:
                continue
            records = singular_points_enumerate(F)
            if [r.point for r in records] == points and all(r.is_node for r in records):
                return F, points
    raise AssertionError(f"no quartic over {field} is singular exactly at {s} chosen points")


@pytest.mark.slow
@pytest.mark.parametrize("s, citation", [(8, TAG_AT_MOST_8), (10, TAG_AT_MOST_11), (11, TAG_AT_MOST_11)])
def test_quartics_with_general_nodes_are_factorial(s, citation):
    F, points = _nodal_quartic_through(random.Random(s), F7, s)
    analysis = analyze_quartic(QuarticInput(F=F), max_extension=1)
    verdict = analysis.verdict
    assert analysis.node_source == "singular-search"
    assert [n.point for n in analysis.nodes] == points
    assert analysis.plane.value is False
    assert verdict.s == s
    assert verdict.theorem_path is TheoremPath.q_factorial
    assert verdict.citation == citation
    assert verdict.defect_value == 0 and verdict.consistent
    supplied = QuarticInput(F=F, supplied_points=PointConfig.of(points, ambient=4))
    again = analyze_quartic(supplied, max_extension=1).verdict
    assert again.to_json() == verdict.to_json()
