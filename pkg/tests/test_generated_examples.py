import pytest

from arith_managers.fields import finite_field
from geometry_managers.points import ProjPoint
from poly_managers.batch_eval import fibred_common_zeros
from quartic_managers.analysis import analyze_quartic, find_nodes
from quartic_managers.defect import TAG_TWELVE_EXCEPTION, TheoremPath
from quartic_managers.family import generate_example
from quartic_managers.instance_files import format_instance, parse_instance
from quartic_managers.models import birational_models, lines_through_node, map_to_model, node_on_Y, on_model

pytestmark = pytest.mark.slow

F11 = finite_field(11)


@pytest.fixture(scope="module")
def example():
    return generate_example(seed=1, p=11)


def test_generator_is_deterministic(example):
    again = generate_example(seed=1, p=11)
    assert again.instance.F == example.instance.F
    assert again.attempts == example.attempts


@pytest.mark.parametrize("seed, p", [(2, 11), (3, 11), (1, 13), (2, 13)])
def test_twelve_rational_nodes(seed, p):
    generated = generate_example(seed=seed, p=p)
    assert len(generated.nodes) == 12
    assert all(n.is_node for n in generated.nodes)
    certification = generated.certification
    assert certification["singular_points_found"] == 12
    assert certification["extension_field"] == f"GF({p}^2)"
    assert certification["extension_search_exhaustive"] is True
    assert certification["gradient_zeros_over_extension"] == 12
    assert certification["extension_zeros_are_base_points"] is True


def test_singular_locus_over_the_quadratic_extension_is_the_twelve_nodes(example):
    f121 = finite_field(11, 2)
    gradient = example.instance.F.lift(f121).gradient()
    zeros = fibred_common_zeros(f121, gradient)
    assert zeros == sorted(n.point.coords for n in example.nodes)
    assert all(c < 11 for z in zeros for c in z)


def test_nodes_lie_on_the_base_locus(example):
    d = example.instance.decomposition
    assert not example.instance.degenerate
    assert example.instance.F == d.Q * d.Qp - d.L * d.C
    for node in example.nodes:
        assert all(poly.evaluate(node.point.coords) == 0 for poly in d.named().values())


def test_lines_through_the_node_are_the_base_points(example):
    nodes = {n.point.coords for n in example.nodes}
    for model in birational_models(example.instance):
        check = node_on_Y(model)
        assert check.on_model and check.lowest_terms_match
        assert check.is_node == (check.restricted_rank == 4)
        lines = lines_through_node(model)
        assert lines.label == "complete"
        assert lines.expected == 12
        assert lines.total_with_multiplicity == 12
        assert lines.counts == {str(F11): 12}
        assert {line.direction.coords for line in lines.lines} == nodes
        assert all(line.simple and line.verified and line.in_tangent_hyperplane for line in lines.lines)


def test_surface_points_map_to_the_model(example):
    Y, _ = birational_models(example.instance)
    F, L = example.instance.F, example.instance.decomposition.L
    units = [tuple(int(i == j) for j in range(5)) for i in range(5)]
    candidates = units + [(1, a, b, 0, 0) for a in range(11) for b in range(11)]
    mapped = 0
    for coords in candidates:
        x = ProjPoint.from_values(F11, coords)
        if L.evaluate(x.coords) == 0:
            continue
        assert on_model(Y, map_to_model(Y, x)) == (F.evaluate(x.coords) == 0)
        mapped += 1
    assert mapped > 0


def test_instance_text_round_trip(example):
    text = format_instance(example.instance, ["seed 1"])
    parsed = parse_instance(text)
    assert parsed.F == example.instance.F
    assert parsed.decomposition.C == example.instance.decomposition.C
    assert parsed.field == F11


def test_analysis_reaches_the_exception_case(example):
    nodes, source, field = find_nodes(example.instance)
    assert source == "singular-search" and field == F11 and len(nodes) == 12
    analysis = analyze_quartic(example.instance)
    verdict = analysis.verdict
    assert verdict.s == 12
    assert analysis.plane.value is False
    assert analysis.quadric.value is True
    assert verdict.theorem_path is TheoremPath.exception_case
    assert verdict.citation == TAG_TWELVE_EXCEPTION
    assert verdict.defect_value == 1
    assert verdict.consistent
    assert analysis.route["route"] == "pencil-in-hyperplane"
    report = analysis.to_json()
    assert report["s"] == 12 and report["all_nodes"] is True
