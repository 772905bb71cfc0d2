"""Point configurations: spans, incidence bounds and quadric systems.

Subspaces are only ever enumerated as spans of configuration points; a span is
identified by its reduced row-echelon basis, so each subspace is counted once.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from app_managers.core.errors import BudgetExceededError, InputError
from arith_managers.fields import ExactField, FiniteField, finite_field
from arith_managers.matrices import ExactMatrix, kernel_basis, row_reduce
from geometry_managers.enumeration import projective_zeros
from geometry_managers.points import PointConfig
from poly_managers.batch_eval import count_projective_points
from poly_managers.polynomials import MultiPoly, evaluation_rows, monomial_basis
from poly_managers.subspaces import LinearSubspaceParam, complete_to_dimension


class _Span:
    def __init__(self, field: ExactField, vectors: Sequence[Sequence]) -> None:
        self.field = field
        ncols = len(vectors[0])
        rows, pivots = row_reduce(field, vectors, ncols)
        self.rows = [tuple(r) for r in rows[: len(pivots)]]
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.pivots) - 1

    @property
    def key(self) -> Tuple:
        return tuple(self.rows)

    def contains(self, vector: Sequence) -> bool:
        f = self.field
        v = list(vector)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return all(f.is_zero(a) for a in v)


def _subset(cfg: PointConfig, subset: Sequence[int] = None) -> List[int]:
    indices = list(range(len(cfg))) if subset is None else list(subset)
    for i in indices:
        if not 0 <= i < len(cfg):
            raise InputError(f"Index {i} is out of range for {len(cfg)} points")
    return indices


def span_dim(cfg: PointConfig, subset: Sequence[int] = None) -> int:
    indices = _subset(cfg, subset)
    if not indices:
        raise InputError("Cannot take the span of an empty subset")
    return _Span(cfg.field, cfg.coordinates(indices)).dim


def densest_subspace(cfg: PointConfig, k: int) -> Tuple[int, Tuple[int, ...]]:
    """(count, member indices) of a k-dimensional subspace containing the most points."""
    if not 0 <= k <= cfg.ambient:
        raise InputError(f"Subspace dimension {k} is out of range for P^{cfg.ambient}")
    s = len(cfg)
    if s == 0:
        return 0, ()
    coords = cfg.coordinates()
    if _Span(cfg.field, coords).dim <= k:
        return s, tuple(range(s))
    best: Tuple[int, Tuple[int, ...]] = (0, ())
    seen = set()
    for subset in combinations(range(s), k + 1):
        span = _Span(cfg.field, [coords[i] for i in subset])
        if span.dim != k or span.key in seen:
            continue
        seen.add(span.key)
        members = tuple(i for i in range(s) if span.contains(coords[i]))
        if len(members) > best[0]:
            best = (len(members), members)
    return best


def subspaces_with_points(cfg: PointConfig, k: int, minimum: int) -> List[Tuple[int, ...]]:
    """Member sets of every k-dimensional span holding at least ``minimum`` points."""
    s = len(cfg)
    coords = cfg.coordinates()
    if s == 0:
        return []
    if _Span(cfg.field, coords).dim <= k:
        return [tuple(range(s))] if s >= minimum else []
    found, seen = [], set()
    for subset in combinations(range(s), k + 1):
        span = _Span(cfg.field, [coords[i] for i in subset])
        if span.dim != k or span.key in seen:
            continue
        seen.add(span.key)
        members = tuple(i for i in range(s) if span.contains(coords[i]))
        if len(members) >= minimum:
            found.append(members)
    return sorted(found)


def max_in_subspace(cfg: PointConfig, k: int) -> int:
    if not 1 <= k <= cfg.ambient - 1:
        raise InputError(f"k must satisfy 1 <= k <= {cfg.ambient - 1}, got {k}")
    return densest_subspace(cfg, k)[0]


@dataclass(kw_only=True)
class EisenbudKohResult:
    degree: int
    passed: bool
    counts: Dict[int, int] = field(default_factory=dict)
    violation_k: Optional[int] = None
    violation_bound: Optional[int] = None
    witness: Tuple[int, ...] = ()

    def to_json(self) -> Dict:
        return {
            "degree": self.degree,
            "passed": self.passed,
            "max_in_subspace": {str(k): v for k, v in self.counts.items()},
            "violation": None
            if self.passed
            else {"k": self.violation_k, "bound": self.violation_bound, "subset": list(self.witness)},
        }


def eisenbud_koh_check(cfg: PointConfig, d: int) -> EisenbudKohResult:
    """Pass iff every k-dimensional subspace holds at most d·k+1 points, 1 <= k <= n-1."""
    if d < 1:
        raise InputError(f"Degree must be at least 1, got {d}")
    result = EisenbudKohResult(degree=d, passed=True)
    for k in range(1, cfg.ambient):
        count, members = densest_subspace(cfg, k)
        result.counts[k] = count
        if result.passed and count > d * k + 1:
            result.passed = False
            result.violation_k = k
            result.violation_bound = d * k + 1
            result.witness = members
    return result


def _coordinates_in(cfg: PointConfig, indices: Sequence[int], subspace: LinearSubspaceParam = None) -> List[Tuple]:
    if subspace is None:
        return cfg.coordinates(indices)
    coords = []
    for i in indices:
        t = subspace.coordinates_of(cfg[i].coords)
        if t is None:
            raise InputError(f"Point {i} does not lie in the given subspace")
        coords.append(t)
    return coords


def vanishing_system(
    cfg: PointConfig, subset: Sequence[int], d: int, subspace: LinearSubspaceParam = None
) -> List[MultiPoly]:
    """Basis of the degree-d forms vanishing on the subset (in subspace coordinates if given)."""
    indices = _subset(cfg, subset)
    nvars = subspace.params if subspace is not None else cfg.ambient + 1
    basis = monomial_basis(nvars, d)
    rows = evaluation_rows(cfg.field, _coordinates_in(cfg, indices, subspace), basis)
    matrix = ExactMatrix(field=cfg.field, rows=rows, ncols=len(basis))
    return [MultiPoly.from_vector(nvars, d, cfg.field, v) for v in kernel_basis(matrix)]


def vanishing_system_dim(
    cfg: PointConfig, subset: Sequence[int], d: int, subspace: LinearSubspaceParam = None
) -> int:
    return len(vanishing_system(cfg, subset, d, subspace))


def common_p3(cfg: PointConfig, subset: Sequence[int] = None) -> LinearSubspaceParam | None:
    """A 3-space containing the subset, or None when the subset spans more."""
    indices = _subset(cfg, subset)
    if cfg.ambient < 3:
        raise InputError(f"Configuration in P^{cfg.ambient} has no 3-space")
    if span_dim(cfg, indices) > 3:
        return None
    basis = complete_to_dimension(cfg.field, cfg.coordinates(indices), 4)
    return LinearSubspaceParam.from_points(cfg.field, basis)


@dataclass(kw_only=True)
class QuadricSystemVerdict:
    label: str
    dimension: Optional[int] = None
    quadrics: List[MultiPoly] = field(default_factory=list)
    subspace: Optional[LinearSubspaceParam] = None

    def to_json(self) -> Dict:
        return {
            "label": self.label,
            "dimension": self.dimension,
            "quadrics": [q.to_text() for q in self.quadrics],
        }


def pencil_of_quadrics_test(cfg: PointConfig, subset: Sequence[int] = None) -> QuadricSystemVerdict:
    indices = _subset(cfg, subset)
    subspace = common_p3(cfg, indices)
    if subspace is None:
        return QuadricSystemVerdict(label="no common P3")
    quadrics = vanishing_system(cfg, indices, 2, subspace)
    dim = len(quadrics)
    label = "no quadric" if dim == 0 else "unique quadric" if dim == 1 else "pencil"
    return QuadricSystemVerdict(label=label, dimension=dim, quadrics=quadrics, subspace=subspace)


@dataclass(kw_only=True)
class TwistedCubicVerdict:
    label: str
    reason: str
    quadric_dimension: Optional[int] = None
    base_locus_counts: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> Dict:
        return {
            "label": self.label,
            "reason": self.reason,
            "quadric_dimension": self.quadric_dimension,
            "base_locus_counts": dict(self.base_locus_counts),
        }


# A zero-dimensional base locus of a net of quadrics has at most 8 points.
_NET_BASE_POINT_BOUND = 8


def twisted_cubic_test(cfg: PointConfig, subset: Sequence[int] = None, budget: int = None) -> TwistedCubicVerdict:
    indices = _subset(cfg, subset)
    field = cfg.field
    if not isinstance(field, FiniteField):
        return TwistedCubicVerdict(label="indeterminate", reason=f"exhaustive enumeration unavailable over {field}")
    if not indices:
        return TwistedCubicVerdict(label="indeterminate", reason="empty subset")
    dim = span_dim(cfg, indices)
    if dim > 3:
        return TwistedCubicVerdict(label="no", reason="points do not lie in a common P3")
    if len(indices) >= 4 and dim < 3:
        return TwistedCubicVerdict(label="no", reason="four or more points of a twisted cubic span P3")
    if len(indices) < 7:
        return TwistedCubicVerdict(label="indeterminate", reason="fewer than seven points leave the quadric net undetermined")
    for triple in combinations(indices, 3):
        if span_dim(cfg, triple) == 1:
            return TwistedCubicVerdict(label="no", reason=f"points {list(triple)} are collinear")
    subspace = common_p3(cfg, indices)
    quadrics = vanishing_system(cfg, indices, 2, subspace)
    qdim = len(quadrics)
    if qdim != 3:
        return TwistedCubicVerdict(label="no", reason=f"quadric system has dimension {qdim}", quadric_dimension=qdim)
    q = field.order
    try:
        base = projective_zeros(quadrics, budget)
    except BudgetExceededError as exc:
        return TwistedCubicVerdict(label="indeterminate", reason=str(exc), quadric_dimension=qdim)
    counts = {field.descriptor: len(base)}
    if len(base) != q + 1:
        return TwistedCubicVerdict(
            label="no",
            reason=f"base locus has {len(base)} points over {field}, a twisted cubic has {q + 1}",
            quadric_dimension=qdim,
            base_locus_counts=counts,
        )
    if field.is_prime_field and budget is not None and count_projective_points(q * q, 3) <= budget:
        extension = finite_field(field.p, 2)
        lifted = [f.lift(extension) for f in quadrics]
        count2 = len(projective_zeros(lifted, budget))
        counts[extension.descriptor] = count2
        if count2 != q * q + 1:
            return TwistedCubicVerdict(
                label="no",
                reason=f"base locus has {count2} points over {extension}, a twisted cubic has {q * q + 1}",
                quadric_dimension=qdim,
                base_locus_counts=counts,
            )
        return TwistedCubicVerdict(
            label="yes", reason="net of quadrics cuts out a twisted cubic", quadric_dimension=qdim, base_locus_counts=counts
        )
    if q + 1 > _NET_BASE_POINT_BOUND:
        return TwistedCubicVerdict(
            label="yes", reason="net of quadrics cuts out a twisted cubic", quadric_dimension=qdim, base_locus_counts=counts
        )
    return TwistedCubicVerdict(
        label="indeterminate",
        reason="base locus size cannot separate a curve from isolated points over this field",
        quadric_dimension=qdim,
        base_locus_counts=counts,
    )


@dataclass(kw_only=True)
class ConfigurationReport:
    line_with_4: bool
    line_witness: Tuple[int, ...]
    plane_with_7: bool
    plane_witness: Tuple[int, ...]
    twisted_cubic_with_10: Optional[bool]
    twisted_cubic_witness: Tuple[int, ...] = ()
    twisted_cubic_reason: str = ""
    coplanar_six: List[Tuple[int, ...]] = field(default_factory=list)
    coplanar_planes: List[Tuple[int, ...]] = field(default_factory=list)

    def to_json(self) -> Dict:
        return {
            "line_with_4": self.line_with_4,
            "line_witness": list(self.line_witness) if self.line_with_4 else [],
            "plane_with_7": self.plane_with_7,
            "plane_witness": list(self.plane_witness) if self.plane_with_7 else [],
            "twisted_cubic_with_10": "indeterminate"
            if self.twisted_cubic_with_10 is None
            else self.twisted_cubic_with_10,
            "twisted_cubic_witness": list(self.twisted_cubic_witness),
            "twisted_cubic_reason": self.twisted_cubic_reason,
            "coplanar_six": [list(s) for s in self.coplanar_six],
        }


def lemma_six_points_report(cfg: PointConfig, budget: int = None) -> ConfigurationReport:
    """Line/plane/twisted-cubic incidences of a node configuration in P^4."""
    if cfg.ambient != 4:
        raise InputError(f"The incidence report expects points in P^4, got P^{cfg.ambient}")
    line_count, line_members = densest_subspace(cfg, 1)
    plane_count, plane_members = densest_subspace(cfg, 2)

    tc_flag: Optional[bool] = False
    tc_witness: Tuple[int, ...] = ()
    tc_reason = "no 3-space holds ten of the points"
    undetermined = None
    for members in subspaces_with_points(cfg, 3, 10):
        tc_reason = "no ten points lie on a twisted cubic"
        for ten in combinations(members, 10):
            verdict = twisted_cubic_test(cfg, ten, budget)
            if verdict.label == "yes":
                tc_flag, tc_witness, tc_reason = True, ten, verdict.reason
                break
            if verdict.label == "indeterminate" and undetermined is None:
                undetermined = (ten, verdict.reason)
        if tc_flag:
            break
    if not tc_flag and undetermined is not None:
        tc_flag, tc_witness, tc_reason = None, undetermined[0], undetermined[1]

    planes = subspaces_with_points(cfg, 2, 6)
    six = sorted({six for members in planes for six in combinations(members, 6)})
    return ConfigurationReport(
        line_with_4=line_count >= 4,
        line_witness=line_members,
        plane_with_7=plane_count >= 7,
        plane_witness=plane_members,
        twisted_cubic_with_10=tc_flag,
        twisted_cubic_witness=tc_witness,
        twisted_cubic_reason=tc_reason,
        coplanar_six=six,
        coplanar_planes=planes,
    )


def configuration_route(cfg: PointConfig, d: int = 3) -> Dict:
    """Which independence argument applies to a configuration in P^4."""
    ek = eisenbud_koh_check(cfg, d)
    hyper_count, hyper_members = densest_subspace(cfg, 3) if cfg.ambient >= 4 else (len(cfg), tuple(range(len(cfg))))
    system = pencil_of_quadrics_test(cfg, hyper_members) if hyper_count >= 11 else None
    if ek.passed:
        route = "eisenbud-koh"
    elif system is not None and system.label == "pencil":
        route = "pencil-in-hyperplane"
    elif hyper_count >= 11:
        route = "eleven-in-hyperplane"
    else:
        route = "span-full-space"
    return {
        "route": route,
        "eisenbud_koh": ek.to_json(),
        "hyperplane_points": hyper_count,
        "hyperplane_quadric_system": None if system is None else system.to_json(),
    }
