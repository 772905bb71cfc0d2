"""Divisor classes on Hirzebruch surfaces F_r and the global-generation checks.

Points of F_r are given in toric coordinates (t0, t1, y0, y1). A class
a·s + b·f has the sections g_i(t)·y0^(a-i)·y1^i, deg g_i = b - i·r, so the
exceptional section s is {y0 = 0}. F_0 is P^1 x P^1 with t and y the two
factors; F_2 maps onto the quadric cone z0·z2 = z1^2 by the sections of s + 2f.
"""
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from app_managers.core.errors import InputError
from arith_managers.fields import ExactField
from arith_managers.matrices import ExactMatrix, rank, solve_linear
from poly_managers.polynomials import monomial_values

SUPPORTED_R = (0, 2)


@dataclass(frozen=True)
class RuledClass:
    r: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.r < 0:
            raise InputError(f"Hirzebruch index must be non-negative, got {self.r}")

    def _check(self, other: "RuledClass") -> None:
        if other.r != self.r:
            raise InputError(f"Classes on F_{self.r} and F_{other.r} cannot be combined")

    def __add__(self, other: "RuledClass") -> "RuledClass":
        self._check(other)
        return RuledClass(r=self.r, a=self.a + other.a, b=self.b + other.b)

    def __sub__(self, other: "RuledClass") -> "RuledClass":
        self._check(other)
        return RuledClass(r=self.r, a=self.a - other.a, b=self.b - other.b)

    def __neg__(self) -> "RuledClass":
        return RuledClass(r=self.r, a=-self.a, b=-self.b)

    def __mul__(self, n: int) -> "RuledClass":
        return RuledClass(r=self.r, a=n * self.a, b=n * self.b)

    __rmul__ = __mul__

    def to_json(self) -> List:
        return [self.a, self.b]


def section_class(r: int) -> RuledClass:
    return RuledClass(r=r, a=1, b=0)


def fiber_class(r: int) -> RuledClass:
    return RuledClass(r=r, a=0, b=1)


def pair_classes(r: int, c1: RuledClass, c2: RuledClass) -> int:
    """Intersection number with s^2 = -r, s·f = 1, f^2 = 0."""
    if c1.r != r or c2.r != r:
        raise InputError(f"Classes must live on F_{r}")
    return c1.a * c2.a * (-r) + c1.a * c2.b + c2.a * c1.b


def canonical_class(r: int) -> RuledClass:
    return RuledClass(r=r, a=-2, b=-(r + 2))


def h0_ruled(r: int, c: RuledClass) -> int:
    if c.a < 0:
        return 0
    return sum(max(0, c.b - i * r + 1) for i in range(c.a + 1))


def class_monomials(c: RuledClass) -> List[Tuple[int, int, int, int]]:
    """Exponents (t0, t1, y0, y1) of a basis of the sections of class c."""
    exponents = []
    if c.a < 0:
        return exponents
    for i in range(c.a + 1):
        deg = c.b - i * c.r
        for j in range(deg, -1, -1):
            exponents.append((j, deg - j, c.a - i, i))
    return exponents


@dataclass(frozen=True)
class BeseInvariants:
    rho: int
    h: int
    d_squared: int
    dk: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return self.rho, self.h, self.d_squared


def bese_invariants(r: int, D: RuledClass) -> BeseInvariants:
    if D.a <= 0 or D.b <= 0:
        raise InputError(f"Class ({D.a},{D.b}) must have a, b > 0")
    K = canonical_class(r)
    rho = h0_ruled(r, D - K) - 1
    d2 = pair_classes(r, D, D)
    dk = pair_classes(r, D, K)
    numerator = d2 - 3 * dk + 16
    if numerator % 2:
        raise InputError(f"Class ({D.a},{D.b}) on F_{r} gives a non-integral h")
    return BeseInvariants(rho=rho, h=rho - numerator // 2, d_squared=d2, dk=dk)


def condition_iii_bound(r: int, D: RuledClass, C: RuledClass):
    """Maximum number of points a curve of class C may contain."""
    if C.a == 0 and C.b == 0:
        raise InputError("Condition (iii) excludes the zero class")
    K = canonical_class(r)
    return pair_classes(r, C, D - K - C) - 2


def theorem_ranges(r: int, D: RuledClass, include_r: bool = True) -> Tuple[int, int]:
    y_max = (D.b + 2 + r) // 2 if include_r else (D.b + 2) // 2
    return D.a + 2, y_max


def bound_table(r: int, D: RuledClass, x_range: Sequence[int], y_range: Sequence[int]) -> Dict[Tuple[int, int], int]:
    return {
        (x, y): condition_iii_bound(r, D, RuledClass(r=r, a=x, b=y))
        for x in x_range
        for y in y_range
        if (x, y) != (0, 0)
    }


def cone_map(field: ExactField, point: Sequence) -> Tuple:
    """F_2 -> quadric cone z0·z2 = z1^2 in P^3."""
    t0, t1, y0, y1 = point
    m = field.mul
    return (m(m(t0, t0), y0), m(m(t0, t1), y0), m(m(t1, t1), y0), y1)


def cone_to_f2(field: ExactField, z: Sequence) -> Tuple:
    """Toric coordinates of the preimage of a cone point other than the vertex."""
    z = [field.canonical(v) for v in z]
    z0, z1, z2, z3 = z
    if not field.is_zero(field.sub(field.mul(z0, z2), field.mul(z1, z1))):
        raise InputError(f"Point {z} is not on the cone z0*z2 = z1^2")
    if not field.is_zero(z0):
        return (field.one, field.div(z1, z0), field.one, field.div(z3, z0))
    if not field.is_zero(z2):
        return (field.zero, field.one, field.one, field.div(z3, z2))
    raise InputError("The vertex of the cone has no well-defined preimage on F_2")


def _normalize(field: ExactField, values: Sequence) -> Tuple:
    pivot = next(v for v in values if not field.is_zero(v))
    inv = field.inv(pivot)
    return tuple(field.mul(inv, v) for v in values)


@dataclass(kw_only=True)
class BeseInstance:
    field: ExactField
    r: int
    D: RuledClass
    points: List[Tuple] = dc_field(default_factory=list)

    def __post_init__(self) -> None:
        if self.r not in SUPPORTED_R:
            raise InputError(f"unsupported r: {self.r} (points are only accepted on F_0 and F_2)")
        if self.D.r != self.r:
            raise InputError(f"Class lives on F_{self.D.r}, instance on F_{self.r}")
        if self.D.a <= 0 or self.D.b <= 0:
            raise InputError(f"Class ({self.D.a},{self.D.b}) must have a, b > 0")
        points = [tuple(self.field.canonical(v) for v in pt) for pt in (self.points or [])]
        seen = {}
        for i, pt in enumerate(points):
            if len(pt) != 4:
                raise InputError(f"Point {i} needs toric coordinates (t0, t1, y0, y1)")
            key = self.point_key(pt)
            if key in seen:
                raise InputError(f"Point {i} duplicates point {seen[key]}")
            seen[key] = i
        self.points = points

    def point_key(self, pt: Tuple) -> Tuple:
        f = self.field
        if all(f.is_zero(v) for v in pt[:2]) or all(f.is_zero(v) for v in pt[2:]):
            raise InputError(f"{pt} is not a point of F_{self.r}")
        if self.r == 0:
            return _normalize(f, pt[:2]) + _normalize(f, pt[2:])
        if f.is_zero(pt[2]):
            # on the exceptional section only the fibre coordinate matters
            return ("s",) + _normalize(f, pt[:2])
        return _normalize(f, cone_map(f, pt))

    @classmethod
    def from_product_points(cls, field: ExactField, D: Sequence[int], pairs: Sequence) -> "BeseInstance":
        points = [tuple(field.convert(v) for v in u) + tuple(field.convert(v) for v in w) for u, w in pairs]
        return cls(field=field, r=0, D=RuledClass(r=0, a=D[0], b=D[1]), points=points)

    @classmethod
    def from_cone_points(cls, field: ExactField, D: Sequence[int], cone_points: Sequence) -> "BeseInstance":
        points = [cone_to_f2(field, z) for z in cone_points]
        return cls(field=field, r=2, D=RuledClass(r=2, a=D[0], b=D[1]), points=points)

    @property
    def n_points(self) -> int:
        return len(self.points)


def _evaluation(field: ExactField, C: RuledClass, points: Sequence[Tuple]) -> ExactMatrix:
    exponents = class_monomials(C)
    return ExactMatrix(field=field, rows=[monomial_values(field, pt, exponents) for pt in points], ncols=len(exponents))


def curve_through(field: ExactField, C: RuledClass, points: Sequence[Tuple]) -> bool:
    """True when some nonzero section of class C vanishes at every point."""
    n = h0_ruled(C.r, C)
    if n == 0:
        return False
    if not points:
        return True
    return rank(_evaluation(field, C, points)) < n


@dataclass(kw_only=True)
class ConditionReport:
    condition: str
    passed: bool
    bound: int
    value: Optional[int] = None
    curve_class: Optional[Tuple[int, int]] = None
    violating_subset: Optional[Tuple[int, ...]] = None

    def to_json(self) -> Dict:
        out = {"condition": self.condition, "passed": self.passed, "bound": self.bound}
        if self.value is not None:
            out["value"] = self.value
        if self.curve_class is not None:
            out["class"] = list(self.curve_class)
        if self.violating_subset is not None:
            out["violating_subset"] = list(self.violating_subset)
        return out


@dataclass(kw_only=True)
class BeseReport:
    r: int
    D: RuledClass
    invariants: BeseInvariants
    ranges: Tuple[int, int]
    conditions: List[ConditionReport] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def first_violation(self) -> Optional[ConditionReport]:
        return next((c for c in self.conditions if not c.passed), None)

    def to_json(self) -> Dict:
        violation = self.first_violation
        return {
            "r": self.r,
            "D": self.D.to_json(),
            "rho": self.invariants.rho,
            "h": self.invariants.h,
            "D2": self.invariants.d_squared,
            "ranges": {"x_max": self.ranges[0], "y_max": self.ranges[1]},
            "passed": self.passed,
            "conditions": [c.to_json() for c in self.conditions],
            "first_violation": None if violation is None else violation.to_json(),
        }


def bese_check(inst: BeseInstance, ranges: Tuple[int, int] = None) -> BeseReport:
    """Check conditions (i)-(iii); (iii) tests every subset of size bound+1."""
    r, D = inst.r, inst.D
    inv = bese_invariants(r, D)
    ranges = ranges or theorem_ranges(r, D)
    report = BeseReport(r=r, D=D, invariants=inv, ranges=ranges)
    n = inst.n_points
    bound_i = (inv.rho - 4) // 3
    report.conditions.append(ConditionReport(condition="i", passed=n <= bound_i, bound=bound_i, value=n))
    bound_ii = 7 + 4 * inv.h
    report.conditions.append(
        ConditionReport(condition="ii", passed=inv.d_squared >= bound_ii, bound=bound_ii, value=inv.d_squared)
    )
    x_max, y_max = ranges
    for x in range(x_max + 1):
        for y in range(y_max + 1):
            if (x, y) == (0, 0):
                continue
            C = RuledClass(r=r, a=x, b=y)
            bound = condition_iii_bound(r, D, C)
            size = max(bound + 1, 0)
            entry = ConditionReport(condition="iii", passed=True, bound=bound, curve_class=(x, y))
            if size <= n:
                for subset in combinations(range(n), size):
                    if curve_through(inst.field, C, [inst.points[i] for i in subset]):
                        entry.passed = False
                        entry.violating_subset = subset
                        break
            report.conditions.append(entry)
    return report


@dataclass(kw_only=True)
class RuledCurve:
    curve_class: RuledClass
    exponents: List[Tuple[int, int, int, int]]
    coefficients: Tuple

    def evaluate(self, field: ExactField, point: Sequence):
        values = monomial_values(field, [field.canonical(v) for v in point], self.exponents)
        acc = field.zero
        for c, v in zip(self.coefficients, values):
            acc = field.add(acc, field.mul(c, v))
        return acc


def separating_curve_on_ruled(inst: BeseInstance, q: Sequence) -> RuledCurve | None:
    """A section of class D vanishing at the instance points and not at q."""
    f = inst.field
    q = tuple(f.canonical(v) for v in q)
    q_key = inst.point_key(q)
    for i, pt in enumerate(inst.points):
        if inst.point_key(pt) == q_key:
            raise InputError(f"q coincides with point {i}")
    exponents = class_monomials(inst.D)
    rows = [monomial_values(f, pt, exponents) for pt in inst.points] + [monomial_values(f, q, exponents)]
    rhs = [f.zero] * inst.n_points + [f.one]
    solution = solve_linear(ExactMatrix(field=f, rows=rows, ncols=len(exponents)), rhs)
    if solution is None:
        return None
    return RuledCurve(curve_class=inst.D, exponents=exponents, coefficients=solution)


# Instances whose invariants and bound polynomials are audited, with the
# (x, y) rectangles used when checking them by hand.
AUDITED_INSTANCES = (
    {"name": "ten-points-on-F0", "r": 0, "D": (3, 3), "points": 10, "printed_bound": "5*x+5*y-2*x*y-2", "ranges": (5, 2)},
    {"name": "ten-points-on-F2", "r": 2, "D": (3, 6), "points": 10, "printed_bound": "2*x**2+5*y-2*x*y-2", "ranges": (5, 5)},
    {"name": "eight-points-on-F2", "r": 2, "D": (2, 5), "points": 8, "printed_bound": "2*x**2+x+4*y-2*x*y-2", "ranges": (4, 4)},
)


def symbolic_bound(r: int, D: RuledClass) -> sympy.Expr:
    x, y = sympy.symbols("x y")
    return sympy.expand(condition_iii_bound(r, D, RuledClass(r=r, a=x, b=y)))


def audit_instance(spec: Dict) -> Dict:
    r = spec["r"]
    D = RuledClass(r=r, a=spec["D"][0], b=spec["D"][1])
    inv = bese_invariants(r, D)
    printed = sympy.sympify(spec["printed_bound"])
    derived = symbolic_bound(r, D)
    x_max, y_max = spec["ranges"]
    table = bound_table(r, D, range(x_max + 1), range(y_max + 1))
    x, y = sympy.symbols("x y")
    table_matches = all(int(printed.subs({x: a, y: b})) == v for (a, b), v in table.items())
    theorem = theorem_ranges(r, D)
    without_r = theorem_ranges(r, D, include_r=False)
    return {
        "name": spec["name"],
        "r": r,
        "D": D.to_json(),
        "rho": inv.rho,
        "h": inv.h,
        "D2": inv.d_squared,
        "DK": inv.dk,
        "condition_i_bound": (inv.rho - 4) // 3,
        "condition_i_holds": spec["points"] <= (inv.rho - 4) // 3,
        "condition_ii_holds": inv.d_squared >= 7 + 4 * inv.h,
        "points": spec["points"],
        "printed_bound": spec["printed_bound"],
        "derived_bound": str(derived),
        "symbolic_match": sympy.expand(derived - printed) == 0,
        "table_matches_printed": table_matches,
        "bound_table": {f"{a},{b}": v for (a, b), v in sorted(table.items())},
        "ranges": {
            "checked": {"x_max": x_max, "y_max": y_max},
            "theorem": {"x_max": theorem[0], "y_max": theorem[1]},
            "theorem_without_r": {"x_max": without_r[0], "y_max": without_r[1]},
            "checked_equals_theorem": (x_max, y_max) == theorem,
        },
    }


def bese_audit() -> Dict:
    return {"instances": [audit_instance(spec) for spec in AUDITED_INSTANCES]}
