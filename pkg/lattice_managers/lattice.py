"""Rank-3 divisor-class lattice with basis (h, f, e) and the involution audit.

The audit recomputes the action matrix of the involution on (h, f, e), its
square, the isometry condition and the quadratic (A + m·B)^2 that fixes the
unknown coefficient m. It reports what it finds and asserts nothing.
"""
import json
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
import yaml

from app_managers.core.errors import DimensionError, InconsistencyError, InputError

BASIS = ("h", "f", "e")
PROOF_GRAM = ((4, 0, 2), (0, -2, 1), (2, 1, -2))
# images of h, f, e under the involution, in the basis (h, f, e)
STATEMENT_IMAGES = ((15, -8, -16), (14, -7, -16), (0, 0, 1))
PRINTED_EXPANSION = (-122, 8)
PRINTED_EXPANSION_TEXT = "-122+8m"
AUDIT_TARGETS = (4, 6)
DEFAULT_WINDOW = 1000


@dataclass(frozen=True)
class LatticeClass:
    coefficients: Tuple[int, int, int]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coefficients)
        if len(coeffs) != len(BASIS):
            raise DimensionError(f"A class needs {len(BASIS)} coefficients, got {len(coeffs)}")
        if any(isinstance(c, bool) or int(c) != c for c in coeffs):
            raise InputError(f"Class coefficients must be integers, got {coeffs}")
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @classmethod
    def of(cls, h: int = 0, f: int = 0, e: int = 0) -> "LatticeClass":
        return cls((h, f, e))

    def __add__(self, other: "LatticeClass") -> "LatticeClass":
        return LatticeClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "LatticeClass") -> "LatticeClass":
        return LatticeClass(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __rmul__(self, n: int) -> "LatticeClass":
        return LatticeClass(tuple(n * a for a in self.coefficients))

    def to_text(self) -> str:
        pieces = []
        for c, name in zip(self.coefficients, BASIS):
            if not c:
                continue
            body = name if abs(c) == 1 else f"{abs(c)}{name}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("-" if c < 0 else "+") + body)
        return "".join(pieces) or "0"


H = LatticeClass.of(h=1)
F = LatticeClass.of(f=1)
E = LatticeClass.of(e=1)


@dataclass(frozen=True)
class GramTable:
    entries: Tuple[Tuple[int, ...], ...]
    label: str = "proof"

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        if len(rows) != len(BASIS) or any(len(row) != len(BASIS) for row in rows):
            raise DimensionError(f"A Gram table must be {len(BASIS)}x{len(BASIS)}")
        if any(rows[i][j] != rows[j][i] for i in range(3) for j in range(3)):
            raise InputError("Gram table is not symmetric")
        object.__setattr__(self, "entries", rows)

    @property
    def matrix(self) -> sympy.Matrix:
        return sympy.Matrix(self.entries)

    def to_json(self) -> Dict:
        return {"label": self.label, "gram": [list(row) for row in self.entries]}


def proof_gram() -> GramTable:
    return GramTable(entries=PROOF_GRAM, label="proof")


def load_gram(path: str) -> GramTable:
    """Gram table from a JSON or YAML file with keys ``gram`` and optional ``label``."""
    file = Path(path)
    if not file.is_file():
        raise InputError(f"Gram file {path} does not exist")
    text = file.read_text(encoding="utf-8")
    try:
        data = json.loads(text) if file.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise InputError(f"Cannot parse Gram file {path}: {exc}") from exc
    if not isinstance(data, dict) or "gram" not in data:
        raise InputError(f"Gram file {path} needs a 'gram' key")
    return GramTable(entries=tuple(tuple(row) for row in data["gram"]), label=str(data.get("label", file.stem)))


def pairing(a: LatticeClass, b: LatticeClass, g: GramTable) -> int:
    return sum(a.coefficients[i] * g.entries[i][j] * b.coefficients[j] for i in range(3) for j in range(3))


def statement_action_matrix() -> sympy.Matrix:
    """Columns are the images of h, f and e."""
    return sympy.Matrix(STATEMENT_IMAGES).T


def apply(M: sympy.Matrix, a: LatticeClass) -> LatticeClass:
    return LatticeClass(tuple(int(v) for v in M * sympy.Matrix(a.coefficients)))


def _rows(M: sympy.Matrix) -> List[List[int]]:
    return [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


@dataclass(kw_only=True)
class InvolutionAudit:
    matrix: List[List[int]]
    square: List[List[int]]
    is_involution: bool
    fixes_e: bool
    fixes_h_minus_f_minus_e: bool
    pullback_gram: Optional[List[List[int]]] = None
    is_isometry: Optional[bool] = None

    def to_json(self) -> Dict:
        return {
            "action_matrix": self.matrix,
            "m_squared": self.square,
            "is_involution": self.is_involution,
            "fixes_e": self.fixes_e,
            "fixes_h_minus_f_minus_e": self.fixes_h_minus_f_minus_e,
            "pullback_gram": self.pullback_gram,
            "is_isometry": self.is_isometry,
        }


def audit_involution(M: sympy.Matrix, g: GramTable = None) -> InvolutionAudit:
    if M.shape != (3, 3):
        raise DimensionError(f"Action matrix must be 3x3, got {M.shape}")
    square = M * M
    fixed = H - F - E
    audit = InvolutionAudit(
        matrix=_rows(M),
        square=_rows(square),
        is_involution=square == sympy.eye(3),
        fixes_e=apply(M, E) == E,
        fixes_h_minus_f_minus_e=apply(M, fixed) == fixed,
    )
    if g is not None:
        pulled = M.T * g.matrix * M
        audit.pullback_gram = _rows(pulled)
        audit.is_isometry = pulled == g.matrix
    return audit


def expand_quadratic(A: LatticeClass, B: LatticeClass, g: GramTable) -> Tuple[int, int, int]:
    """(c0, c1, c2) with (A + m·B)^2 = c0 + c1·m + c2·m^2."""
    return pairing(A, A, g), 2 * pairing(A, B, g), pairing(B, B, g)


@dataclass(kw_only=True)
class MSolutions:
    target: int
    identically_satisfied: bool
    solutions: List[int] = field(default_factory=list)
    window: int = DEFAULT_WINDOW

    def to_json(self) -> Dict:
        return {
            "target": self.target,
            "identically_satisfied": self.identically_satisfied,
            "solutions": "all" if self.identically_satisfied else list(self.solutions),
            "window": self.window,
        }


def _integer_roots(c0: int, c1: int, c2: int) -> List[int]:
    """Integer roots of c2·m^2 + c1·m + c0, not all coefficients zero."""
    if c2 == 0:
        if c1 == 0:
            return []
        return [-c0 // c1] if c0 % c1 == 0 else []
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    root = isqrt(disc)
    if root * root != disc:
        return []
    roots = set()
    for num in (-c1 + root, -c1 - root):
        if num % (2 * c2) == 0:
            roots.add(num // (2 * c2))
    return sorted(roots)


def solve_for_m(A: LatticeClass, B: LatticeClass, g: GramTable, target: int, window: int = DEFAULT_WINDOW) -> MSolutions:
    c0, c1, c2 = expand_quadratic(A, B, g)
    if c1 == 0 and c2 == 0:
        return MSolutions(target=target, identically_satisfied=c0 == target, window=window)
    found = [m for m in _integer_roots(c0 - target, c1, c2) if abs(m) <= window]
    for m in found:
        shifted = A + m * B
        if pairing(shifted, shifted, g) != target:
            raise InconsistencyError(f"m = {m} does not reproduce the target {target}")
    return MSolutions(target=target, identically_satisfied=False, solutions=found, window=window)


def printed_solutions(target: int, printed: Sequence[int] = PRINTED_EXPANSION) -> List[int]:
    """Integer m with printed[0] + printed[1]·m = target."""
    return _integer_roots(printed[0] - target, printed[1], 0)


def audit_lattice(g: GramTable = None, window: int = DEFAULT_WINDOW) -> Dict:
    g = g or proof_gram()
    M = statement_action_matrix()
    involution = audit_involution(M, g)
    A = 8 * F - H
    B = H - F - E
    c0, c1, c2 = expand_quadratic(A, B, g)
    report = {
        "gram": [list(row) for row in g.entries],
        "gram_label": g.label,
        "A": A.to_text(),
        "B": B.to_text(),
        "expansion": {"c0": c0, "c1": c1, "c2": c2},
        "paper_printed": PRINTED_EXPANSION_TEXT,
        "matches_printed": (c0, c1, c2) == (PRINTED_EXPANSION[0], PRINTED_EXPANSION[1], 0),
        "integer_solutions": {
            f"target{t}": solve_for_m(A, B, g, t, window).to_json()["solutions"] for t in AUDIT_TARGETS
        },
        "printed_solutions": {f"target{t}": printed_solutions(t) for t in AUDIT_TARGETS},
        "window": window,
        "label": "finding" if not (involution.is_involution and involution.is_isometry) else "consistent",
    }
    report.update(involution.to_json())
    return report
