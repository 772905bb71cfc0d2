"""Cubic sections of a quadric surface in P^3 through ten points and missing an eleventh."""
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from app_managers.core.errors import DimensionError, InputError
from arith_managers.matrices import ExactMatrix, kernel_basis, rank, solve_linear
from geometry_managers.configurations import densest_subspace, twisted_cubic_test
from geometry_managers.points import PointConfig, ProjPoint
from poly_managers.polynomials import MultiPoly, evaluation_rows, monomial_basis


@dataclass(kw_only=True)
class QuadricDivisorResult:
    cubic: Optional[MultiPoly]
    quadric_rank: int
    vertex_case: str
    hypotheses: Dict = field(default_factory=dict)
    finding: bool = False
    diagnostic: str = ""

    @property
    def hypotheses_hold(self) -> Optional[bool]:
        return self.hypotheses.get("hold")

    def to_json(self) -> Dict:
        return {
            "cubic": None if self.cubic is None else self.cubic.to_text(),
            "quadric_rank": self.quadric_rank,
            "vertex_case": self.vertex_case,
            "hypotheses": dict(self.hypotheses),
            "finding": self.finding,
            "diagnostic": self.diagnostic,
        }


def _vertex(Y: MultiPoly):
    matrix = Y.hessian_matrix((Y.field.zero,) * Y.nvars)
    kernel = kernel_basis(matrix)
    return rank(matrix), kernel


def quadric_hypotheses(cfg: PointConfig, budget: int = None) -> Dict:
    line_count, line_members = densest_subspace(cfg, 1)
    plane_count, plane_members = densest_subspace(cfg, 2)
    tc = twisted_cubic_test(cfg, None, budget)
    if line_count >= 4 or plane_count >= 7 or tc.label == "yes":
        hold = False
    elif tc.label == "no":
        hold = True
    else:
        hold = None
    return {
        "line_with_4": line_count >= 4,
        "line_witness": list(line_members) if line_count >= 4 else [],
        # points of Y in a plane lie on the conic cut out by that plane
        "conic_with_7": plane_count >= 7,
        "conic_witness": list(plane_members) if plane_count >= 7 else [],
        "twisted_cubic": tc.label,
        "twisted_cubic_reason": tc.reason,
        "hold": hold,
    }


def separating_divisor_on_quadric(
    Y: MultiPoly, points: PointConfig, q: ProjPoint, budget: int = None
) -> QuadricDivisorResult:
    if Y.nvars != 4 or Y.degree != 2:
        raise DimensionError(f"Expected a quadric form in 4 variables, got degree {Y.degree} in {Y.nvars}")
    if points.ambient != 3 or q.dimension != 3:
        raise DimensionError("Points must lie in P^3")
    field_ = Y.field
    for i, pt in enumerate(points):
        if not field_.is_zero(Y.evaluate(pt.coords)):
            raise InputError(f"Point {i} {pt!r} is not on the quadric")
    if not field_.is_zero(Y.evaluate(q.coords)):
        raise InputError(f"q {q!r} is not on the quadric")
    for i, pt in enumerate(points):
        if pt == q:
            raise InputError(f"q duplicates point {i} {pt!r}")

    quadric_rank, kernel = _vertex(Y)
    if quadric_rank <= 2:
        vertex_case = "reducible"
    elif quadric_rank == 4:
        vertex_case = "smooth"
    else:
        vertex = ProjPoint(field=field_, coords=kernel[0])
        if vertex == q:
            vertex_case = "cone-q-at-vertex"
        elif vertex in points.points:
            vertex_case = "cone-p-at-vertex"
        else:
            vertex_case = "cone"

    hypotheses = quadric_hypotheses(points, budget)
    if quadric_rank <= 2:
        hypotheses["hold"] = False

    basis = monomial_basis(4, 3)
    rows = evaluation_rows(field_, points.coordinates() + [q.coords], basis)
    rhs = [field_.zero] * len(points) + [field_.one]
    solution = solve_linear(ExactMatrix(field=field_, rows=rows, ncols=len(basis)), rhs)
    if solution is None:
        finding = hypotheses["hold"] is True
        return QuadricDivisorResult(
            cubic=None,
            quadric_rank=quadric_rank,
            vertex_case=vertex_case,
            hypotheses=hypotheses,
            finding=finding,
            diagnostic="q imposes no condition independent of the points on cubic forms",
        )
    cubic = MultiPoly.from_vector(4, 3, field_, solution)
    return QuadricDivisorResult(
        cubic=cubic,
        quadric_rank=quadric_rank,
        vertex_case=vertex_case,
        hypotheses=hypotheses,
        diagnostic="cubic vanishes at every point and not at q",
    )


def cubic_separates(cubic: MultiPoly, points: Sequence[ProjPoint], q: ProjPoint) -> bool:
    f = cubic.field
    return all(f.is_zero(cubic.evaluate(pt.coords)) for pt in points) and not f.is_zero(cubic.evaluate(q.coords))
