"""Planes and quadric surfaces contained in a quartic threefold."""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from app_managers.core.errors import BudgetExceededError, DimensionError, InputError
from app_managers.helpers import status
from arith_managers.fields import FiniteField
from arith_managers.matrices import ExactMatrix, kernel_basis, solve_linear
from geometry_managers.enumeration import rref_subspaces
from poly_managers.batch_eval import evaluate_forms
from poly_managers.polynomials import MultiPoly, evaluation_rows, monomial_basis
from poly_managers.subspaces import LinearSubspaceParam, restrict_to_subspace
from quartic_managers.singularities import surface_points


@dataclass(kw_only=True)
class PlaneContainment:
    label: str
    witness: Optional[LinearSubspaceParam] = None
    planes_checked: int = 0
    reason: str = ""

    @property
    def value(self) -> Optional[bool]:
        return {"yes": True, "no": False}.get(self.label)

    def to_json(self) -> Dict:
        return {
            "label": self.label,
            "witness": None if self.witness is None else [list(map(self.witness.field.to_json, c)) for c in self.witness.columns()],
            "planes_checked": self.planes_checked,
            "reason": self.reason,
        }


def _plane_from_rows(F: MultiPoly, rows: Sequence[Tuple]) -> LinearSubspaceParam:
    return LinearSubspaceParam.from_points(F.field, rows)


def contains_plane(
    F: MultiPoly, budget: int = None, candidates: Sequence[LinearSubspaceParam] = None
) -> PlaneContainment:
    """Exhaustive over the 2-planes of P^4(GF(q)); over QQ only the supplied candidates are tested."""
    if F.nvars != 5:
        raise DimensionError(f"Plane search expects a form in 5 variables, got {F.nvars}")
    checked = 0
    for plane in candidates or []:
        if plane.params != 3:
            raise DimensionError(f"Candidate has {plane.params} parameters, a plane needs 3")
        checked += 1
        if restrict_to_subspace(F, plane).is_zero:
            return PlaneContainment(label="yes", witness=plane, planes_checked=checked, reason="candidate plane")
    field = F.field
    if not isinstance(field, FiniteField):
        if candidates:
            return PlaneContainment(label="not-found", planes_checked=checked, reason="no candidate plane lies on X")
        return PlaneContainment(
            label="budget-exceeded", reason=f"exhaustive plane search is unavailable over {field}; supply candidates"
        )
    try:
        points = surface_points(F, budget)
    except BudgetExceededError as exc:
        return PlaneContainment(label="budget-exceeded", planes_checked=checked, reason=str(exc))
    on_surface = {tuple(int(v) for v in row) for row in points}
    status(f"Scanning planes through {len(on_surface)} points of X over {field}")

    def normalized(vec: Tuple) -> Tuple:
        pivot = next(v for v in vec if v)
        inv = field.inv(pivot)
        return tuple(field.mul(inv, v) for v in vec)

    def combination_on_surface(rows: Tuple) -> bool:
        for mix in ((0, 1), (0, 2), (1, 2), (0, 1, 2)):
            vec = rows[mix[0]]
            for i in mix[1:]:
                vec = tuple(field.add(a, b) for a, b in zip(vec, rows[i]))
            if any(vec) and normalized(vec) not in on_surface:
                return False
        return True

    for rows in rref_subspaces(field, 3, 5, row_filter=lambda row: row in on_surface):
        checked += 1
        if not combination_on_surface(rows):
            continue
        plane = _plane_from_rows(F, rows)
        if restrict_to_subspace(F, plane).is_zero:
            return PlaneContainment(label="yes", witness=plane, planes_checked=checked, reason="exhaustive search")
    return PlaneContainment(label="no", planes_checked=checked, reason=f"no plane of P^4({field}) lies on X")


@dataclass(kw_only=True)
class QuadricContainment:
    label: str
    definitive: bool
    linear: Optional[MultiPoly] = None
    quadric: Optional[MultiPoly] = None
    A: Optional[MultiPoly] = None
    B: Optional[MultiPoly] = None
    hyperplanes_checked: int = 0
    reason: str = ""

    @property
    def value(self) -> Optional[bool]:
        if self.label == "yes":
            return True
        return False if self.label == "no" and self.definitive else None

    def to_json(self) -> Dict:
        out = {
            "label": self.label,
            "definitive": self.definitive,
            "hyperplanes_checked": self.hyperplanes_checked,
            "reason": self.reason,
        }
        for name in ("linear", "quadric", "A", "B"):
            poly = getattr(self, name)
            out[name] = None if poly is None else poly.to_text()
        return out


def _shifted_columns(factor: MultiPoly, degree: int, target: Dict) -> List[List]:
    columns = []
    for m in monomial_basis(factor.nvars, degree):
        col = [factor.field.zero] * len(target)
        for e, c in factor.terms.items():
            col[target[tuple(a + b for a, b in zip(e, m))]] = c
        columns.append(col)
    return columns


def quadric_membership(F: MultiPoly, linear: MultiPoly, quadric: MultiPoly) -> QuadricContainment:
    """Solve F = linear·A + quadric·B for a cubic A and a quadric B."""
    if linear.degree != 1 or quadric.degree != 2 or F.degree != 4:
        raise InputError(
            f"Membership needs degrees (4, 1, 2), got ({F.degree}, {linear.degree}, {quadric.degree})"
        )
    if linear.is_zero or quadric.is_zero:
        raise InputError("Candidate forms must be nonzero")
    n = F.nvars
    field = F.field
    target = {e: i for i, e in enumerate(monomial_basis(n, 4))}
    columns = _shifted_columns(linear, 3, target) + _shifted_columns(quadric, 2, target)
    rows = [[col[i] for col in columns] for i in range(len(target))]
    solution = solve_linear(ExactMatrix(field=field, rows=rows, ncols=len(columns)), F.coefficient_vector())
    if solution is None:
        return QuadricContainment(
            label="no", definitive=False, linear=linear, quadric=quadric, reason="F is not in the ideal of the candidate"
        )
    ncubic = len(monomial_basis(n, 3))
    A = MultiPoly.from_vector(n, 3, field, solution[:ncubic])
    B = MultiPoly.from_vector(n, 2, field, solution[ncubic:])
    return QuadricContainment(
        label="yes", definitive=True, linear=linear, quadric=quadric, A=A, B=B, reason="F = L'*A + Q''*B"
    )


def _normalize(field: FiniteField, vec: Sequence[int]) -> Tuple | None:
    vec = [int(v) for v in vec]
    pivot = next((v for v in vec if v), None)
    if pivot is None:
        return None
    inv = field.inv(pivot)
    return tuple(field.mul(inv, v) for v in vec)


def _pencil_members(field: FiniteField, basis: List[MultiPoly]) -> List[MultiPoly]:
    if len(basis) != 2:
        return list(basis)
    q1, q2 = basis
    return [q2] + [q1 + q2.scale(lam) for lam in field.elements()]


def search_quadric_surface(F: MultiPoly, budget: int = None, min_points: int = 9) -> QuadricContainment:
    """Fit quadrics through the singular points of tangent hyperplane sections and test them.

    A quadric surface S in X lies in a hyperplane H with X ∩ H = S ∪ S', singular
    along S ∩ S'. The search only sees hyperplanes tangent to X at a rational point.
    """
    field = F.field
    if not isinstance(field, FiniteField):
        return QuadricContainment(label="not-found", definitive=False, reason=f"search is unavailable over {field}")
    try:
        points = surface_points(F, budget)
    except BudgetExceededError as exc:
        return QuadricContainment(label="not-found", definitive=False, reason=str(exc))
    grads = evaluate_forms(field, points, F.gradient())
    nodes: List[Tuple] = []
    tangent: Dict[Tuple, List[Tuple]] = {}
    for row, grad in zip(points, grads):
        pt = tuple(int(v) for v in row)
        normal = _normalize(field, grad)
        if normal is None:
            nodes.append(pt)
        else:
            tangent.setdefault(normal, []).append(pt)

    checked = 0
    for normal in sorted(tangent):
        linear = MultiPoly.linear(normal, field)
        in_h = tangent[normal] + [pt for pt in nodes if field.is_zero(linear.evaluate(pt))]
        if len(in_h) < min_points:
            continue
        checked += 1
        pivot = next(i for i, v in enumerate(normal) if v)
        keep = [i for i in range(5) if i != pivot]
        coords = [tuple(pt[i] for i in keep) for pt in in_h]
        basis4 = monomial_basis(4, 2)
        kernel = kernel_basis(ExactMatrix(field=field, rows=evaluation_rows(field, coords, basis4), ncols=len(basis4)))
        if not kernel or len(kernel) > 2:
            continue
        restricted = [MultiPoly.from_vector(4, 2, field, v) for v in kernel]
        variables = [MultiPoly.variable(i, 5, field) for i in keep]
        for member in _pencil_members(field, restricted):
            if member.is_zero:
                continue
            result = quadric_membership(F, linear, member.compose(variables))
            if result.label == "yes":
                result.hyperplanes_checked = checked
                result.reason = "quadric fitted through singular points of a hyperplane section"
                return result
    return QuadricContainment(
        label="not-found",
        definitive=False,
        hyperplanes_checked=checked,
        reason="no fitted quadric lies on X; absence is not proven",
    )


def contains_quadric_surface(
    F: MultiPoly, candidate: Tuple[MultiPoly, MultiPoly] = None, budget: int = None
) -> QuadricContainment:
    if candidate is not None:
        linear, quadric = candidate
        return quadric_membership(F, linear, quadric)
    return search_quadric_surface(F, budget)
