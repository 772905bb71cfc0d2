from dataclasses import dataclass, field
from typing import Dict, List, Optional

from app_managers.core.errors import DimensionError, FieldMismatchError, InputError
from arith_managers.fields import ExactField
from geometry_managers.points import PointConfig, ProjPoint
from poly_managers.polynomials import MultiPoly

QUARTIC_NVARS = 5
DECOMPOSITION_DEGREES = {"Q": 2, "Q'": 2, "L": 1, "C": 3}


@dataclass(kw_only=True)
class Decomposition:
    Q: MultiPoly
    Qp: MultiPoly
    L: MultiPoly
    C: MultiPoly

    def __post_init__(self) -> None:
        fields = {self.Q.field, self.Qp.field, self.L.field, self.C.field}
        if len(fields) != 1:
            raise FieldMismatchError("Q, Q', L and C must share one field")
        for name, poly in self.named().items():
            if poly.nvars != QUARTIC_NVARS:
                raise DimensionError(f"{name} must be a form in {QUARTIC_NVARS} variables, got {poly.nvars}")
            expected = DECOMPOSITION_DEGREES[name]
            if poly.is_zero or poly.degree != expected:
                raise InputError(f"{name} must be a nonzero form of degree {expected}, got degree {poly.degree}")

    def named(self) -> Dict[str, MultiPoly]:
        return {"Q": self.Q, "Q'": self.Qp, "L": self.L, "C": self.C}

    @property
    def field(self) -> ExactField:
        return self.L.field

    def quartic(self) -> MultiPoly:
        return self.Q * self.Qp - self.L * self.C

    def to_json(self) -> Dict[str, str]:
        return {name: poly.to_text() for name, poly in self.named().items()}


@dataclass(kw_only=True)
class QuarticInput:
    F: MultiPoly
    decomposition: Optional[Decomposition] = None
    supplied_points: Optional[PointConfig] = None
    degenerate: bool = False

    def __post_init__(self) -> None:
        if self.F.nvars != QUARTIC_NVARS or self.F.degree != 4:
            raise InputError(f"F must be a quartic form in 5 variables, got degree {self.F.degree} in {self.F.nvars}")
        if self.F.is_zero:
            raise InputError("F is the zero polynomial")
        if self.decomposition is not None:
            if self.decomposition.field != self.F.field:
                raise FieldMismatchError("The decomposition lives over a different field than F")
            if self.decomposition.quartic() != self.F:
                raise InputError("F differs from Q*Q' - L*C")
        if self.supplied_points is not None:
            if self.supplied_points.field != self.F.field:
                raise FieldMismatchError(f"Supplied points live over {self.supplied_points.field}, F over {self.F.field}")
            if self.supplied_points.ambient != 4:
                raise DimensionError("Supplied points must lie in P^4")

    @property
    def field(self) -> ExactField:
        return self.F.field

    def to_json(self) -> Dict:
        out = {"F": self.F.to_text(), "field": str(self.field), "degenerate": self.degenerate}
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json()
        return out


@dataclass(kw_only=True)
class NodeRecord:
    point: ProjPoint
    gradient_zero: bool
    hessian_rank: int
    is_node: bool = field(init=False)

    def __post_init__(self) -> None:
        self.is_node = self.gradient_zero and self.hessian_rank == 4

    def to_json(self) -> Dict:
        return {
            "point": self.point.to_json(),
            "gradient_zero": self.gradient_zero,
            "hessian_rank": self.hessian_rank,
            "is_node": self.is_node,
        }


def node_config(records: List[NodeRecord], field_: ExactField) -> PointConfig:
    return PointConfig(field=field_, ambient=4, points=tuple(r.point for r in records))
