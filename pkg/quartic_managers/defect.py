"""Defect of a node configuration and the factoriality decision tree.

The defect is s minus the rank of the matrix of degree-d monomials evaluated at
the s points. For nodal quartic threefolds (d = 3) it vanishes exactly when
the variety is factorial.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from app_managers.core.errors import InputError
from arith_managers.matrices import ExactMatrix, kernel_basis, rank, solve_linear
from geometry_managers.configurations import eisenbud_koh_check
from geometry_managers.points import PointConfig
from poly_managers.polynomials import Exponent, MultiPoly, evaluation_rows, monomial_basis

DEFECT_DEGREE = 3


@dataclass(frozen=True)
class EvaluationMatrix:
    matrix: ExactMatrix
    degree: int
    monomials: Tuple[Exponent, ...]
    points: Tuple

    @property
    def rank(self) -> int:
        return rank(self.matrix)


def evaluation_matrix(cfg: PointConfig, d: int) -> EvaluationMatrix:
    if d < 1:
        raise InputError(f"Degree must be at least 1, got {d}")
    basis = monomial_basis(cfg.ambient + 1, d)
    rows = evaluation_rows(cfg.field, cfg.coordinates(), basis)
    return EvaluationMatrix(
        matrix=ExactMatrix(field=cfg.field, rows=rows, ncols=len(basis)),
        degree=d,
        monomials=basis,
        points=tuple(cfg.points),
    )


def defect_of_points(cfg: PointConfig, d: int = DEFECT_DEGREE) -> int:
    return len(cfg) - evaluation_matrix(cfg, d).rank


def separating_form(cfg: PointConfig, i: int, d: int = DEFECT_DEGREE) -> MultiPoly | None:
    """Degree-d form vanishing at every point except point i, or None."""
    if not 0 <= i < len(cfg):
        raise InputError(f"Index {i} is out of range for {len(cfg)} points")
    ev = evaluation_matrix(cfg, d)
    f = cfg.field
    order = [j for j in range(len(cfg)) if j != i] + [i]
    rows = [ev.matrix.rows[j] for j in order]
    rhs = [f.zero] * (len(cfg) - 1) + [f.one]
    solution = solve_linear(ExactMatrix(field=f, rows=rows, ncols=ev.matrix.ncols), rhs)
    if solution is None:
        return None
    return MultiPoly.from_vector(cfg.ambient + 1, d, f, solution)


def point_dependencies(cfg: PointConfig, d: int = DEFECT_DEGREE) -> List[Dict[int, object]]:
    """Linear relations among the evaluation rows (left kernel), as {index: coefficient}."""
    ev = evaluation_matrix(cfg, d)
    relations = kernel_basis(ev.matrix.transpose())
    return [{i: c for i, c in enumerate(rel) if not cfg.field.is_zero(c)} for rel in relations]


class TheoremPath(Enum):
    q_factorial = "QFactorial"
    exception_case = "ExceptionCase"
    outside_hypotheses = "OutsideHypotheses"


# citation tags of the decision-tree leaves
TAG_AT_MOST_8 = "Thm1.1-s≤8"
TAG_NINE_NO_PLANE = "Thm1.1-s=9-noplane"
TAG_AT_MOST_11 = "Thm1.3-s≤11"
TAG_TWELVE_NO_QUADRIC = "Thm1.3-s=12-noquadric"
TAG_TWELVE_EXCEPTION = "Thm1.3-s=12-exception"


@dataclass(kw_only=True)
class FactorialityVerdict:
    s: int
    theorem_path: TheoremPath
    citation: Optional[str]
    reason: str
    defect_value: int
    field: str
    consistent: bool
    claim: str
    witnesses: Dict = field(default_factory=dict)

    def to_json(self) -> Dict:
        return {
            "s": self.s,
            "theorem_path": self.theorem_path.value,
            "citation": self.citation,
            "reason": self.reason,
            "defect": self.defect_value,
            "field": self.field,
            "consistent": self.consistent,
            "claim": self.claim,
            "witnesses": self.witnesses,
        }


def _theorem_path(
    s: int, contains_plane: Optional[bool], contains_quadric: Optional[bool], nodal: bool
) -> Tuple[TheoremPath, Optional[str], str]:
    if not nodal:
        return TheoremPath.outside_hypotheses, None, "a singular point is not a node"
    if s <= 8:
        return TheoremPath.q_factorial, TAG_AT_MOST_8, "at most 8 nodes"
    if s > 12:
        return TheoremPath.outside_hypotheses, None, f"{s} nodes exceed 12"
    if contains_plane is None:
        return TheoremPath.outside_hypotheses, None, "plane containment undetermined"
    if contains_plane:
        return TheoremPath.outside_hypotheses, None, "contains a plane"
    if s == 9:
        return TheoremPath.q_factorial, TAG_NINE_NO_PLANE, "9 nodes and no plane"
    if s <= 11:
        return TheoremPath.q_factorial, TAG_AT_MOST_11, f"{s} nodes and no plane"
    if contains_quadric is None:
        return TheoremPath.outside_hypotheses, None, "12 nodes, quadric surface containment undetermined"
    if contains_quadric:
        return TheoremPath.exception_case, TAG_TWELVE_EXCEPTION, "12 nodes on a quartic containing a quadric surface"
    return TheoremPath.q_factorial, TAG_TWELVE_NO_QUADRIC, "12 nodes, no plane and no quadric surface"


def factoriality_verdict(
    s: int,
    contains_plane: Optional[bool],
    contains_quadric: Optional[bool],
    node_config: PointConfig,
    nodal: bool = True,
) -> FactorialityVerdict:
    if s != len(node_config):
        raise InputError(f"Node count {s} does not match the {len(node_config)} supplied points")
    path, citation, reason = _theorem_path(s, contains_plane, contains_quadric, nodal)
    defect = defect_of_points(node_config, DEFECT_DEGREE) if s else 0
    consistent = not (path is TheoremPath.q_factorial and defect > 0)
    claim = "factorial (defect evidence)" if defect == 0 else "non-factorial (defect evidence)"
    witnesses = {}
    if node_config.ambient >= 2 and s:
        ek = eisenbud_koh_check(node_config, DEFECT_DEGREE)
        witnesses["eisenbud_koh"] = ek.to_json()
    if defect:
        witnesses["dependencies"] = [
            {str(i): node_config.field.to_json(c) for i, c in rel.items()}
            for rel in point_dependencies(node_config, DEFECT_DEGREE)
        ]
    return FactorialityVerdict(
        s=s,
        theorem_path=path,
        citation=citation,
        reason=reason,
        defect_value=defect,
        field=str(node_config.field),
        consistent=consistent,
        claim=claim,
        witnesses=witnesses,
    )
