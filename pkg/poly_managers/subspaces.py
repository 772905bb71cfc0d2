"""Linear subspaces of projective space given by a parametrization matrix."""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from app_managers.core.errors import DimensionError, FieldMismatchError, InputError
from arith_managers.fields import ExactField, FiniteField
from arith_managers.matrices import ExactMatrix, kernel_basis, rank, solve_linear
from poly_managers.polynomials import MultiPoly


@dataclass(frozen=True, eq=False)
class LinearSubspaceParam:
    """Columns of ``matrix`` (ambient x params) span the subspace; x = matrix · t."""

    field: ExactField
    matrix: Tuple[Tuple, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(self.field.canonical(v) for v in row) for row in self.matrix)
        if not rows or not rows[0]:
            raise DimensionError("A subspace parametrization needs at least one row and one column")
        object.__setattr__(self, "matrix", rows)
        m = ExactMatrix(field=self.field, rows=rows)
        if rank(m) != m.ncols:
            raise DimensionError(f"Parametrization columns are dependent (rank {rank(m)} < {m.ncols})")

    @classmethod
    def from_points(cls, field: ExactField, points: Sequence[Sequence]) -> "LinearSubspaceParam":
        """Subspace spanned by the given points (which must be independent)."""
        lengths = {len(p) for p in points}
        if len(lengths) != 1:
            raise DimensionError("Points spanning a subspace must share their ambient dimension")
        return cls(field=field, matrix=tuple(zip(*points)))

    @classmethod
    def hyperplane(cls, linear_form: MultiPoly) -> "LinearSubspaceParam":
        """The hyperplane {linear_form = 0}."""
        if linear_form.degree != 1 or linear_form.is_zero:
            raise InputError("A hyperplane needs a nonzero linear form")
        row = linear_form.coefficient_vector()
        basis = kernel_basis(ExactMatrix(field=linear_form.field, rows=[row]))
        return cls.from_points(linear_form.field, basis)

    @classmethod
    def cut_out_by(cls, field: ExactField, linear_forms: Sequence[Sequence]) -> "LinearSubspaceParam":
        """Common zero set of linear forms given by coefficient rows."""
        basis = kernel_basis(ExactMatrix(field=field, rows=[[field.canonical(v) for v in row] for row in linear_forms]))
        if not basis:
            raise DimensionError("Linear forms have no common projective zero")
        return cls.from_points(field, basis)

    @property
    def ambient_nvars(self) -> int:
        return len(self.matrix)

    @property
    def params(self) -> int:
        return len(self.matrix[0])

    @property
    def projective_dimension(self) -> int:
        return self.params - 1

    def columns(self) -> List[Tuple]:
        return [tuple(row[j] for row in self.matrix) for j in range(self.params)]

    def point(self, t: Sequence) -> Tuple:
        if len(t) != self.params:
            raise DimensionError(f"Expected {self.params} parameters, got {len(t)}")
        return ExactMatrix(field=self.field, rows=self.matrix).apply(t)

    def linear_forms(self) -> List[MultiPoly]:
        """x_i as a linear form in the parameters t_0..t_{m-1}."""
        return [MultiPoly.linear(row, self.field) for row in self.matrix]

    def contains(self, point: Sequence) -> bool:
        return self.coordinates_of(point) is not None

    def coordinates_of(self, point: Sequence) -> Tuple | None:
        if len(point) != self.ambient_nvars:
            raise DimensionError(f"Point has {len(point)} coordinates, ambient space has {self.ambient_nvars}")
        return solve_linear(ExactMatrix(field=self.field, rows=self.matrix), list(point))

    def lift(self, target: ExactField) -> "LinearSubspaceParam":
        if target == self.field:
            return self
        if not (isinstance(self.field, FiniteField) and self.field.subfield_of(target)):
            raise FieldMismatchError(f"Cannot lift a subspace over {self.field} to {target}")
        return LinearSubspaceParam(field=target, matrix=self.matrix)


def restrict_to_subspace(f: MultiPoly, s: LinearSubspaceParam) -> MultiPoly:
    """Pullback f∘s in the subspace parameters (possibly the zero form)."""
    if f.field != s.field:
        raise FieldMismatchError(f"Cannot restrict a polynomial over {f.field} to a subspace over {s.field}")
    if f.nvars != s.ambient_nvars:
        raise DimensionError(f"Polynomial has {f.nvars} variables, subspace lives in {s.ambient_nvars}")
    restricted = f.compose(s.linear_forms())
    if restricted.is_zero:
        return MultiPoly.zero(s.params, f.degree, f.field)
    return restricted


def complete_to_dimension(field: ExactField, vectors: Sequence[Sequence], size: int) -> List[Tuple]:
    """An independent subset of ``vectors`` extended by standard basis vectors to ``size`` vectors."""
    chosen: List[Tuple] = []
    n = len(vectors[0]) if vectors else 0
    for v in vectors:
        candidate = chosen + [tuple(v)]
        if rank(ExactMatrix(field=field, rows=candidate)) == len(candidate):
            chosen = candidate
    for i in range(n):
        if len(chosen) >= size:
            break
        e = tuple(field.one if j == i else field.zero for j in range(n))
        candidate = chosen + [e]
        if rank(ExactMatrix(field=field, rows=candidate)) == len(candidate):
            chosen = candidate
    if len(chosen) > size:
        raise DimensionError(f"Vectors span more than {size} dimensions")
    return chosen
