from dataclasses import dataclass
from typing import List, Sequence, Tuple

from app_managers.core.errors import DimensionError, FieldMismatchError, InputError
from arith_managers.fields import ExactField, FiniteField


@dataclass(frozen=True, eq=False)
class ProjPoint:
    field: ExactField
    coords: Tuple

    def __post_init__(self) -> None:
        f = self.field
        coords = [f.canonical(c) for c in self.coords]
        pivot = next((c for c in coords if not f.is_zero(c)), None)
        if pivot is None:
            raise InputError("The zero vector is not a projective point")
        inv = f.inv(pivot)
        object.__setattr__(self, "coords", tuple(f.mul(inv, c) for c in coords))

    @classmethod
    def from_values(cls, field: ExactField, values: Sequence) -> "ProjPoint":
        """Build from literals (ints, Fractions, numeric strings)."""
        return cls(field=field, coords=tuple(field.convert(v) for v in values))

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def lift(self, target: ExactField) -> "ProjPoint":
        if target == self.field:
            return self
        if isinstance(self.field, FiniteField) and self.field.subfield_of(target):
            return ProjPoint(field=target, coords=self.coords)
        raise FieldMismatchError(f"Cannot lift a point over {self.field} to {target}")

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and other.field == self.field and other.coords == self.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __lt__(self, other: "ProjPoint") -> bool:
        return self.coords < other.coords

    def to_json(self) -> List:
        return [self.field.to_json(c) for c in self.coords]

    def __repr__(self) -> str:
        return "(" + ":".join(str(v) for v in self.to_json()) + ")"


@dataclass(frozen=True, eq=False)
class PointConfig:
    field: ExactField
    ambient: int
    points: Tuple[ProjPoint, ...] = ()

    def __post_init__(self) -> None:
        points = tuple(self.points)
        seen = {}
        for i, pt in enumerate(points):
            if pt.field != self.field:
                raise FieldMismatchError(f"Point {i} lives over {pt.field}, configuration over {self.field}")
            if pt.dimension != self.ambient:
                raise DimensionError(f"Point {i} lives in P^{pt.dimension}, configuration in P^{self.ambient}")
            if pt in seen:
                raise InputError(f"Point {i} duplicates point {seen[pt]}: {pt!r}")
            seen[pt] = i
        object.__setattr__(self, "points", points)

    @classmethod
    def of(cls, points: Sequence[ProjPoint], field: ExactField = None, ambient: int = None) -> "PointConfig":
        if not points and (field is None or ambient is None):
            raise InputError("An empty configuration needs an explicit field and ambient dimension")
        field = field or points[0].field
        ambient = ambient if ambient is not None else points[0].dimension
        return cls(field=field, ambient=ambient, points=tuple(points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> ProjPoint:
        return self.points[i]

    def coordinates(self, subset: Sequence[int] = None) -> List[Tuple]:
        indices = range(len(self.points)) if subset is None else subset
        return [self.points[i].coords for i in indices]

    def subconfig(self, subset: Sequence[int]) -> "PointConfig":
        return PointConfig(field=self.field, ambient=self.ambient, points=tuple(self.points[i] for i in subset))

    def to_json(self) -> List[List]:
        return [pt.to_json() for pt in self.points]
