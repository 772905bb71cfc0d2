"""End-to-end analysis of a nodal quartic threefold."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from app_managers.core.errors import BudgetExceededError, InputError
from app_managers.helpers import printline, status
from arith_managers.fields import ExactField
from geometry_managers.configurations import ConfigurationReport, configuration_route, lemma_six_points_report
from geometry_managers.points import PointConfig
from poly_managers.subspaces import LinearSubspaceParam, complete_to_dimension
from quartic_managers.containment import (
    PlaneContainment,
    QuadricContainment,
    contains_plane,
    contains_quadric_surface,
)
from quartic_managers.defect import DEFECT_DEGREE, FactorialityVerdict, factoriality_verdict, separating_form
from quartic_managers.plane_sections import MAX_LINE_SEARCH_EXTENSION, classify_plane_section
from quartic_managers.singularities import certify_node, singular_points_enumerate
from quartic_managers.types import NodeRecord, QuarticInput, node_config


@dataclass(kw_only=True)
class QuarticAnalysis:
    instance: QuarticInput
    nodes: List[NodeRecord]
    node_source: str
    node_field: ExactField
    plane: PlaneContainment
    quadric: QuadricContainment
    verdict: FactorialityVerdict
    incidences: Optional[ConfigurationReport] = None
    plane_sections: List[Dict] = field(default_factory=list)
    route: Optional[Dict] = None
    separating_forms: Dict[str, Optional[str]] = field(default_factory=dict)
    findings: List[str] = field(default_factory=list)

    @property
    def configuration(self) -> PointConfig:
        return node_config(self.nodes, self.node_field)

    def to_json(self) -> Dict:
        return {
            "field": str(self.instance.field),
            "instance": self.instance.to_json(),
            "node_source": self.node_source,
            "node_field": str(self.node_field),
            "s": len(self.nodes),
            "nodes": [n.to_json() for n in self.nodes],
            "all_nodes": all(n.is_node for n in self.nodes),
            "contains_plane": self.plane.to_json(),
            "contains_quadric_surface": self.quadric.to_json(),
            "incidences": None if self.incidences is None else self.incidences.to_json(),
            "plane_sections": self.plane_sections,
            "configuration_route": self.route,
            "separating_forms": self.separating_forms,
            "verdict": self.verdict.to_json(),
            "findings": list(self.findings),
        }


def find_nodes(inp: QuarticInput, search_field: ExactField = None, budget: int = None) -> tuple:
    """Certify the supplied points, or search P^4 over a finite field for singular points."""
    F = inp.F
    if inp.supplied_points is not None:
        records = [certify_node(F, pt) for pt in inp.supplied_points]
        smooth = [repr(r.point) for r in records if not r.gradient_zero]
        if smooth:
            raise InputError(f"Supplied points are not singular on X: {', '.join(smooth)}")
        return records, "supplied", inp.supplied_points.field
    working = search_field or F.field
    if not working.is_finite:
        raise BudgetExceededError(
            f"Singular points over {working} cannot be enumerated; supply them or choose a finite field"
        )
    records = singular_points_enumerate(F, working, budget)
    return records, "singular-search", working


def _plane_sections(inp: QuarticInput, cfg: PointConfig, report: ConfigurationReport, max_extension: int, budget: int) -> List[Dict]:
    F = inp.F.lift(cfg.field) if cfg.field != inp.F.field else inp.F
    sections = []
    for members in report.coplanar_planes:
        basis = complete_to_dimension(cfg.field, cfg.coordinates(members), 3)
        plane = LinearSubspaceParam.from_points(cfg.field, basis)
        result = classify_plane_section(F, plane, max_extension, budget)
        entry = {"members": list(members), **result.to_json()}
        if result.kind == "four_lines":
            nodes_here = {cfg[i].lift(result.line_field) for i in members}
            entry["nodes_at_intersections"] = nodes_here <= set(result.intersections)
        sections.append(entry)
    return sections


def _base_locus_findings(inp: QuarticInput, nodes: List[NodeRecord]) -> List[str]:
    d = inp.decomposition
    if d is None:
        return []
    findings = []
    for record in nodes:
        forms = {name: poly.lift(record.point.field) for name, poly in d.named().items()}
        nonzero = [name for name, poly in forms.items() if not record.point.field.is_zero(poly.evaluate(record.point.coords))]
        if nonzero:
            findings.append(f"singular point {record.point!r} is off the base locus: {', '.join(nonzero)} nonzero")
    return findings


def analyze_quartic(
    inp: QuarticInput,
    search_field: ExactField = None,
    budget: int = None,
    max_extension: int = MAX_LINE_SEARCH_EXTENSION,
) -> QuarticAnalysis:
    printline()
    status(f"Analyzing a quartic over {inp.field}")
    nodes, source, node_field = find_nodes(inp, search_field, budget)
    cfg = node_config(nodes, node_field)
    nodal = all(n.is_node for n in nodes)
    status(f"{len(nodes)} singular point(s) from {source}, all nodes: {nodal}")

    plane = contains_plane(inp.F, budget)
    status(f"Plane containment: {plane.label}")
    candidate = None if inp.decomposition is None else (inp.decomposition.L, inp.decomposition.Q)
    quadric = contains_quadric_surface(inp.F, candidate, budget)
    status(f"Quadric surface containment: {quadric.label}")

    incidences, sections, route, forms = None, [], None, {}
    if len(cfg):
        incidences = lemma_six_points_report(cfg, budget)
        sections = _plane_sections(inp, cfg, incidences, max_extension, budget)
        route = configuration_route(cfg, DEFECT_DEGREE)
        for i in range(len(cfg)):
            g = separating_form(cfg, i, DEFECT_DEGREE)
            forms[str(i)] = None if g is None else g.to_text()

    verdict = factoriality_verdict(len(nodes), plane.value, quadric.value, cfg, nodal=nodal)
    status(f"Verdict: {verdict.theorem_path.value} ({verdict.citation}), defect {verdict.defect_value}")
    findings = _base_locus_findings(inp, nodes)
    if not verdict.consistent:
        findings.append(f"verdict {verdict.theorem_path.value} contradicts defect {verdict.defect_value}")
    for entry in sections:
        if entry.get("nodes_at_intersections") is False:
            findings.append(f"plane through nodes {entry['members']} splits into lines that miss some of its nodes")
    printline()
    return QuarticAnalysis(
        instance=inp,
        nodes=nodes,
        node_source=source,
        node_field=node_field,
        plane=plane,
        quadric=quadric,
        verdict=verdict,
        incidences=incidences,
        plane_sections=sections,
        route=route,
        separating_forms=forms,
        findings=findings,
    )
