"""The two models Y, Y' in P^5 of a quartic Q·Q' - L·C and the lines through their node.

Y is cut out by y·L - Q and y·Q' - C, Y' by y·L - Q' and y·Q - C, with y the
sixth coordinate. Both contain the point (0:0:0:0:0:1).
"""
from dataclasses import dataclass, field
from math import prod
from typing import Dict, List, Optional, Tuple

from app_managers.core.errors import BudgetExceededError, InputError
from app_managers.helpers import status
from arith_managers.fields import EXTENSION_TABLE_LIMIT, ExactField, FiniteField, finite_field
from arith_managers.matrices import ExactMatrix, rank
from geometry_managers.enumeration import projective_zeros
from geometry_managers.points import ProjPoint
from poly_managers.polynomials import MultiPoly
from poly_managers.subspaces import LinearSubspaceParam, restrict_to_subspace
from quartic_managers.types import QUARTIC_NVARS, QuarticInput

MODEL_NVARS = QUARTIC_NVARS + 1
MAX_LINE_SEARCH_EXTENSION = 4
VARIABLE_NAMES = ["x0", "x1", "x2", "x3", "x4", "y"]


@dataclass(kw_only=True)
class ModelY:
    name: str
    linear: MultiPoly
    numerator: MultiPoly
    tangent_quadric: MultiPoly
    cubic: MultiPoly
    eq_quadric: MultiPoly = field(init=False)
    eq_cubic: MultiPoly = field(init=False)

    def __post_init__(self) -> None:
        y = MultiPoly.variable(QUARTIC_NVARS, MODEL_NVARS, self.field)
        L, num, tq, C = (f.extend_variables(MODEL_NVARS) for f in (self.linear, self.numerator, self.tangent_quadric, self.cubic))
        self.eq_quadric = y * L - num
        self.eq_cubic = y * tq - C
        if self.eq_quadric.degree != 2 or self.eq_cubic.degree != 3:
            raise InputError(f"Model {self.name} needs equations of degrees (2, 3)")

    @property
    def field(self) -> ExactField:
        return self.linear.field

    @property
    def equations(self) -> List[MultiPoly]:
        return [self.eq_quadric, self.eq_cubic]

    @property
    def node(self) -> Tuple:
        f = self.field
        return (f.zero,) * QUARTIC_NVARS + (f.one,)

    def to_json(self) -> Dict:
        return {
            "name": self.name,
            "equations": [eq.to_text(VARIABLE_NAMES) for eq in self.equations],
            "degrees": [eq.degree for eq in self.equations],
            "node": [self.field.to_json(c) for c in self.node],
        }


def birational_models(inp: QuarticInput) -> Tuple[ModelY, ModelY]:
    d = inp.decomposition
    if d is None:
        raise InputError("The models Y and Y' need a decomposition F = Q*Q' - L*C")
    first = ModelY(name="Y", linear=d.L, numerator=d.Q, tangent_quadric=d.Qp, cubic=d.C)
    second = ModelY(name="Y'", linear=d.L, numerator=d.Qp, tangent_quadric=d.Q, cubic=d.C)
    return first, second


def map_to_model(model: ModelY, x: ProjPoint) -> ProjPoint:
    """x ↦ (x : numerator(x)/L(x)), defined where L(x) ≠ 0."""
    f = model.field
    lx = model.linear.evaluate(x.coords)
    if f.is_zero(lx):
        raise InputError(f"L vanishes at {x!r}; the map to {model.name} is not defined there")
    y = f.div(model.numerator.evaluate(x.coords), lx)
    return ProjPoint(field=f, coords=tuple(x.coords) + (y,))


def project_from_node(model: ModelY, point: ProjPoint) -> ProjPoint:
    """Projection of Y from its node back to P^4."""
    if point.dimension != QUARTIC_NVARS:
        raise InputError(f"Expected a point of P^5, got one in P^{point.dimension}")
    return ProjPoint(field=point.field, coords=point.coords[:QUARTIC_NVARS])


def on_model(model: ModelY, point: ProjPoint) -> bool:
    return all(model.field.is_zero(eq.evaluate(point.coords)) for eq in model.equations)


def _y_parts(G: MultiPoly) -> Dict[int, MultiPoly]:
    """G = sum_j y^j·G_j(x0..x4)."""
    parts: Dict[int, Dict] = {}
    for exp, c in G.terms.items():
        parts.setdefault(exp[-1], {})[exp[:-1]] = c
    return {
        j: MultiPoly(nvars=QUARTIC_NVARS, degree=G.degree - j, field=G.field, terms=terms)
        for j, terms in parts.items()
    }


def _lowest_part(G: MultiPoly) -> MultiPoly:
    parts = _y_parts(G)
    return parts[max(parts)]


def _quadric_rank(q: MultiPoly) -> int:
    if q.is_zero:
        return 0
    return rank(q.hessian_matrix((q.field.zero,) * q.nvars))


@dataclass(kw_only=True)
class NodeOnModel:
    model: str
    on_model: bool
    lowest_terms_match: bool
    restricted_rank: int
    full_rank: int
    is_node: bool
    tangent_hyperplane: MultiPoly

    def to_json(self) -> Dict:
        return {
            "model": self.model,
            "on_model": self.on_model,
            "lowest_terms_match": self.lowest_terms_match,
            "restricted_rank": self.restricted_rank,
            "full_rank": self.full_rank,
            "nonsingular_tangent_quadric": self.full_rank == QUARTIC_NVARS,
            "is_node": self.is_node,
            "tangent_hyperplane": self.tangent_hyperplane.to_text(),
        }


def node_on_Y(model: ModelY) -> NodeOnModel:
    """Node test at (0:…:0:1) in the chart y = 1.

    The quadric equation starts with L, so Y is locally a hypersurface of the
    hyperplane {L = 0} whose tangent cone is the restriction of the quadratic
    lowest term of the cubic equation.
    """
    f = model.field
    on = all(f.is_zero(eq.evaluate(model.node)) for eq in model.equations)
    first, second = _lowest_part(model.eq_quadric), _lowest_part(model.eq_cubic)
    matches = first == model.linear and second == model.tangent_quadric
    restricted = restrict_to_subspace(model.tangent_quadric, LinearSubspaceParam.hyperplane(model.linear))
    restricted_rank = _quadric_rank(restricted)
    return NodeOnModel(
        model=model.name,
        on_model=on,
        lowest_terms_match=matches,
        restricted_rank=restricted_rank,
        full_rank=_quadric_rank(model.tangent_quadric),
        is_node=on and matches and restricted_rank == QUARTIC_NVARS - 1,
        tangent_hyperplane=model.linear,
    )


@dataclass(kw_only=True)
class NodeLine:
    direction: ProjPoint
    simple: bool
    verified: bool
    in_tangent_hyperplane: bool

    def to_json(self) -> Dict:
        return {
            "direction": self.direction.to_json(),
            "simple": self.simple,
            "verified": self.verified,
            "in_tangent_hyperplane": self.in_tangent_hyperplane,
        }


@dataclass(kw_only=True)
class LinesThroughNode:
    model: str
    label: str
    expected: Optional[int] = None
    counts: Dict[str, int] = field(default_factory=dict)
    line_field: Optional[ExactField] = None
    lines: List[NodeLine] = field(default_factory=list)
    reason: str = ""

    @property
    def total_with_multiplicity(self) -> Optional[int]:
        """Only known when every line found is a simple solution."""
        if self.label != "complete":
            return None
        return len(self.lines)

    def to_json(self) -> Dict:
        return {
            "model": self.model,
            "label": self.label,
            "expected": self.expected,
            "counts": dict(self.counts),
            "line_field": None if self.line_field is None else str(self.line_field),
            "lines": [line.to_json() for line in self.lines],
            "total_with_multiplicity": self.total_with_multiplicity,
            "all_in_tangent_hyperplane": all(line.in_tangent_hyperplane for line in self.lines),
            "reason": self.reason,
        }


def _line_conditions(model: ModelY) -> List[MultiPoly]:
    """A line {(s·x : t)} lies on Y iff every y-coefficient form vanishes at x."""
    conditions = []
    for eq in model.equations:
        for j, part in sorted(_y_parts(eq).items()):
            if part.degree == 0:
                if not part.is_zero:
                    raise InputError(f"The point (0:…:0:1) does not lie on {model.name}")
                continue
            conditions.append(part)
    return conditions


def _verify_line(model: ModelY, working: FiniteField, x: Tuple) -> bool:
    images = [MultiPoly.linear((c, working.zero), working) for c in x]
    images.append(MultiPoly.variable(1, 2, working))
    return all(eq.lift(working).compose(images).is_zero for eq in model.equations)


def _in_tangent_hyperplane(model: ModelY, working: FiniteField, x: Tuple) -> bool:
    direction = tuple(x) + (working.zero,)
    node = model.node
    for eq in model.equations:
        grad = [g.lift(working).evaluate(node) for g in eq.gradient()]
        if all(working.is_zero(v) for v in grad):
            continue
        acc = working.zero
        for a, b in zip(grad, direction):
            acc = working.add(acc, working.mul(a, b))
        if not working.is_zero(acc):
            return False
    return True


def _search_fields(field: ExactField, max_extension: int) -> List[Tuple[int, Optional[FiniteField]]]:
    if not field.is_prime_field:
        return [(1, field)]
    out = []
    for j in range(1, max_extension + 1):
        if field.p**j > EXTENSION_TABLE_LIMIT:
            out.append((j, None))
        else:
            out.append((j, finite_field(field.p, j)))
    return out


def lines_through_node(
    model: ModelY, max_extension: int = MAX_LINE_SEARCH_EXTENSION, budget: int = None
) -> LinesThroughNode:
    """Directions x in P^4 with the line through (0:…:0:1) and (x:0) on the model.

    The extension degree grows until the number of simple solutions reaches the
    Bézout number of the condition system.
    """
    field = model.field
    if not isinstance(field, FiniteField):
        return LinesThroughNode(model=model.name, label="indeterminate", reason=f"line search needs a finite field, got {field}")
    field.check_odd_characteristic("line search")
    conditions = _line_conditions(model)
    linear = [c for c in conditions if c.degree == 1]
    higher = [c for c in conditions if c.degree > 1]
    if linear:
        space = LinearSubspaceParam.cut_out_by(field, [c.coefficient_vector() for c in linear])
    else:
        space = LinearSubspaceParam.cut_out_by(field, [[field.zero] * QUARTIC_NVARS])
    restricted = [restrict_to_subspace(c, space) for c in higher]
    expected = None
    if len(restricted) == space.projective_dimension and all(not r.is_zero for r in restricted):
        expected = prod(r.degree for r in restricted)

    result = LinesThroughNode(model=model.name, label="incomplete", expected=expected)
    for j, working in _search_fields(field, max_extension):
        if working is None:
            result.reason = f"extension degree {j} is too large for table arithmetic"
            break
        status(f"Searching lines through the node of {model.name} over {working}")
        lifted_space = space.lift(working)
        try:
            if restricted:
                zeros = projective_zeros([r.lift(working) for r in restricted], budget)
            else:
                zeros = projective_zeros([MultiPoly.zero(space.params, 1, working)], budget)
        except BudgetExceededError as exc:
            result.label = "budget-exceeded"
            result.reason = str(exc)
            break
        jacobian_forms = [c.lift(working) for c in conditions]
        lines = []
        for t in zeros:
            x = lifted_space.point(t)
            jac = ExactMatrix(field=working, rows=[[g.evaluate(x) for g in c.gradient()] for c in jacobian_forms])
            lines.append(
                NodeLine(
                    direction=ProjPoint(field=working, coords=x),
                    simple=rank(jac) == QUARTIC_NVARS - 1,
                    verified=_verify_line(model, working, x),
                    in_tangent_hyperplane=_in_tangent_hyperplane(model, working, x),
                )
            )
        result.counts[str(working)] = len(lines)
        result.lines = lines
        result.line_field = working
        if expected is not None and len(lines) == expected and all(line.simple for line in lines):
            result.label = "complete"
            result.reason = f"{expected} simple lines found over {working}"
            break
        if expected is not None and len(lines) > expected:
            result.label = "infinite"
            result.reason = f"more than {expected} lines over {working}; the lines through the node form a family"
            break
    if result.label == "incomplete" and not result.reason:
        result.reason = "simple line count stayed below the expected number"
    return result
