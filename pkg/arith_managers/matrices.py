"""Exact dense matrices and Gaussian elimination over an ExactField.

Elimination always pivots on the first nonzero entry of a column, scanning
rows top to bottom, so every result is deterministic for a given input.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from app_managers.core.errors import DimensionError, FieldMismatchError
from arith_managers.fields import ExactField, FieldScalar


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    field: ExactField
    rows: Tuple[Tuple, ...]
    ncols: int = None

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.rows)
        ncols = self.ncols
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionError(f"Row {i} has {len(row)} entries, expected {ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_values(cls, field: ExactField, grid: Sequence[Sequence], ncols: int = None) -> "ExactMatrix":
        """Build from literals (ints, Fractions, strings) interpreted in ``field``."""
        return cls(field=field, rows=[[field.convert(v) for v in row] for row in grid], ncols=ncols)

    @classmethod
    def from_scalars(cls, grid: Sequence[Sequence[FieldScalar]]) -> "ExactMatrix":
        fields = {entry.field for row in grid for entry in row}
        if len(fields) != 1:
            raise FieldMismatchError(f"Matrix entries come from {len(fields)} different fields: {sorted(map(str, fields))}")
        field = fields.pop()
        return cls(field=field, rows=[[entry.value for entry in row] for row in grid])

    @classmethod
    def identity(cls, field: ExactField, n: int) -> "ExactMatrix":
        return cls(field=field, rows=[[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> FieldScalar:
        return FieldScalar(value=self.rows[i][j], field=self.field)

    def transpose(self) -> "ExactMatrix":
        columns = [tuple(row[j] for row in self.rows) for j in range(self.ncols)]
        return ExactMatrix(field=self.field, rows=columns, ncols=self.nrows)

    def apply(self, vector: Sequence) -> Tuple:
        if len(vector) != self.ncols:
            raise DimensionError(f"Vector of length {len(vector)} does not match {self.ncols} columns")
        f = self.field
        vector = [f.canonical(v) for v in vector]
        out = []
        for row in self.rows:
            acc = f.zero
            for a, b in zip(row, vector):
                if not f.is_zero(a) and not f.is_zero(b):
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.field != self.field:
            raise FieldMismatchError(f"Cannot multiply matrices over {self.field} and {other.field}")
        if self.ncols != other.nrows:
            raise DimensionError(f"Cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        columns = other.transpose().rows
        return ExactMatrix(
            field=self.field, rows=[[self._dot(row, col) for col in columns] for row in self.rows], ncols=other.ncols
        )

    def _dot(self, row, col):
        f = self.field
        acc = f.zero
        for a, b in zip(row, col):
            acc = f.add(acc, f.mul(a, b))
        return acc

    def to_json(self) -> List[List]:
        return [[self.field.to_json(v) for v in row] for row in self.rows]


def _check_field(m: ExactMatrix) -> ExactField:
    if not isinstance(m, ExactMatrix):
        raise FieldMismatchError("Expected an ExactMatrix with entries in a single field")
    return m.field


def row_reduce(field: ExactField, rows: Sequence[Sequence], ncols: int, max_col: int = None) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form. Pivots are only taken in columns < ``max_col``."""
    max_col = ncols if max_col is None else max_col
    work = [list(row) for row in rows]
    pivots = []
    r = 0
    if field.is_finite and field.is_prime_field:
        p = field.p
        for c in range(max_col):
            pivot = next((i for i in range(r, len(work)) if work[i][c] % p), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv = pow(work[r][c], -1, p)
            prow = [v * inv % p for v in work[r]]
            work[r] = prow
            for i in range(len(work)):
                if i != r:
                    factor = work[i][c] % p
                    if factor:
                        work[i] = [(a - factor * b) % p for a, b in zip(work[i], prow)]
            pivots.append(c)
            r += 1
            if r == len(work):
                break
        return work, pivots
    for c in range(max_col):
        pivot = next((i for i in range(r, len(work)) if not field.is_zero(work[i][c])), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = field.inv(work[r][c])
        prow = [field.mul(inv, v) for v in work[r]]
        work[r] = prow
        for i in range(len(work)):
            if i != r and not field.is_zero(work[i][c]):
                factor = work[i][c]
                work[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, List[int]]:
    field = _check_field(m)
    rows, pivots = row_reduce(field, m.rows, m.ncols)
    return ExactMatrix(field=field, rows=rows, ncols=m.ncols), pivots


def rank(m: ExactMatrix) -> int:
    field = _check_field(m)
    _, pivots = row_reduce(field, m.rows, m.ncols)
    return len(pivots)


def kernel_basis(m: ExactMatrix) -> List[Tuple]:
    """Basis of the right null space, one vector per free column in increasing order."""
    field = _check_field(m)
    rows, pivots = row_reduce(field, m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = [field.zero] * m.ncols
        vec[free] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(rows[i][free])
        basis.append(tuple(vec))
    return basis


def solve_linear(m: ExactMatrix, b: Sequence) -> Tuple | None:
    """Some x with m·x = b (free variables set to zero), or None when inconsistent."""
    field = _check_field(m)
    if len(b) != m.nrows:
        raise DimensionError(f"Right-hand side has length {len(b)}, matrix has {m.nrows} rows")
    b = [field.canonical(v) for v in b]
    augmented = [list(row) + [v] for row, v in zip(m.rows, b)]
    rows, pivots = row_reduce(field, augmented, m.ncols + 1, max_col=m.ncols)
    for row in rows[len(pivots):]:
        if not field.is_zero(row[-1]):
            return None
    x = [field.zero] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][-1]
    return tuple(x)
