"""Classification of the plane quartic curve cut out on X by a plane.

A plane through six nodes meets a nodal quartic either in a double conic or in
four distinct lines whose six pairwise intersections are the nodes.
"""
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

from app_managers.core.errors import BudgetExceededError
from arith_managers.fields import EXTENSION_TABLE_LIMIT, ExactField, FiniteField, finite_field
from arith_managers.univariate import poly_gcd, poly_roots, trim
from geometry_managers.enumeration import projective_points
from geometry_managers.points import ProjPoint
from poly_managers.polynomials import MultiPoly
from poly_managers.subspaces import LinearSubspaceParam, restrict_to_subspace

MAX_LINE_SEARCH_EXTENSION = 4


@dataclass(kw_only=True)
class PlaneSection:
    kind: str
    reason: str
    section: Optional[MultiPoly] = None
    conic: Optional[MultiPoly] = None
    lines: List[Tuple] = field(default_factory=list)
    line_field: Optional[ExactField] = None
    intersections: List[ProjPoint] = field(default_factory=list)

    def to_json(self) -> Dict:
        out = {
            "kind": self.kind,
            "reason": self.reason,
            "section": None if self.section is None else self.section.to_text(["u0", "u1", "u2"]),
        }
        if self.conic is not None:
            out["conic"] = self.conic.to_text(["u0", "u1", "u2"])
        if self.lines:
            out["line_field"] = str(self.line_field)
            out["lines"] = [[self.line_field.to_json(c) for c in line] for line in self.lines]
            out["intersections"] = [pt.to_json() for pt in self.intersections]
            out["distinct_intersections"] = len(set(self.intersections))
        return out


def _triple_line_factor(g: MultiPoly) -> Optional[Tuple[MultiPoly, MultiPoly]]:
    """(l, m) with g = l^3·m for a line l over the field of g."""
    field = g.field
    for coeffs in projective_points(field, 3):
        line = MultiPoly.linear(coeffs, field)
        quotient = g.exact_divide(line**3)
        if quotient is not None:
            return line, quotient
    return None


def _lines_in_charts(g: MultiPoly) -> List[Tuple]:
    """All lines over the field of g (as normalized coefficient triples) contained in g = 0."""
    field = g.field
    lines = []
    terms = list(g.terms.items())
    # u0 = 0
    if all(e[0] > 0 for e, _ in terms):
        lines.append((field.one, field.zero, field.zero))
    for a in field.elements():
        # u1 = a·u0
        residual = {}
        for e, c in terms:
            v = field.mul(c, field.pow(a, e[1]))
            residual[e[2]] = field.add(residual.get(e[2], field.zero), v)
        if all(field.is_zero(v) for v in residual.values()):
            lines.append((field.neg(a), field.one, field.zero))
        # u2 = a·u0 + b·u1
        rows: Dict[int, List] = {}
        for e, c in terms:
            for k in range(e[2] + 1):
                i = e[1] + k
                coeff = field.mul(field.mul(c, field.convert(comb(e[2], k))), field.pow(a, e[2] - k))
                row = rows.setdefault(i, [field.zero] * (g.degree + 1))
                row[k] = field.add(row[k], coeff)
        common = None
        for row in rows.values():
            row = trim(field, row)
            if not row:
                continue
            common = row if common is None else poly_gcd(field, common, row)
            if len(common) == 1:
                break
        if common is None:
            roots = list(field.elements())
        elif len(common) > 1:
            roots = poly_roots(field, common)
        else:
            roots = []
        for b in roots:
            lines.append((field.neg(a), field.neg(b), field.one))
    return lines


def _cross(field: ExactField, l1: Tuple, l2: Tuple) -> Tuple:
    m, s = field.mul, field.sub
    return (
        s(m(l1[1], l2[2]), m(l1[2], l2[1])),
        s(m(l1[2], l2[0]), m(l1[0], l2[2])),
        s(m(l1[0], l2[1]), m(l1[1], l2[0])),
    )


def _line_search_fields(field: ExactField, max_extension: int, budget: int = None) -> List[Tuple[int, Optional[FiniteField]]]:
    """(j, GF(p^j)) for each extension degree to try; None marks an unaffordable one."""
    if not isinstance(field, FiniteField):
        return []
    if not field.is_prime_field:
        # lines are only searched over the working field itself
        return [(1, field), (2, None)]
    out = []
    for j in range(1, max_extension + 1):
        order = field.p**j
        if order > EXTENSION_TABLE_LIMIT or (budget is not None and order > budget):
            out.append((j, None))
            continue
        out.append((j, finite_field(field.p, j)))
    return out


def classify_plane_section(
    F: MultiPoly, plane: LinearSubspaceParam, max_extension: int = MAX_LINE_SEARCH_EXTENSION, budget: int = None
) -> PlaneSection:
    g = restrict_to_subspace(F, plane)
    if g.is_zero:
        return PlaneSection(kind="plane_contained", reason="the plane lies on X")
    field = g.field
    field.check_odd_characteristic("plane section classification")
    conic = g.monic().square_root()
    if conic is not None:
        return PlaneSection(kind="double_conic", reason="section is a perfect square", section=g, conic=conic)
    if not field.is_finite:
        return PlaneSection(
            kind="indeterminate", reason=f"line factors cannot be searched over {field}", section=g
        )
    triple = _triple_line_factor(g)
    if triple is not None:
        line, other = triple
        return PlaneSection(
            kind="double_conic", reason="section is a triple line times a line", section=g, conic=line * other
        )

    skipped = []
    for j, working in _line_search_fields(field, max_extension, budget):
        if working is None:
            skipped.append(j)
            continue
        lifted = g.lift(working)
        lines = _lines_in_charts(lifted)
        if len(lines) < 4:
            continue
        product = MultiPoly.linear(lines[0], working)
        for line in lines[1:]:
            product = product * MultiPoly.linear(line, working)
        if len(lines) != 4 or not product.is_proportional(lifted):
            continue
        lifted_plane = plane.lift(working)
        intersections = [
            ProjPoint(field=working, coords=lifted_plane.point(_cross(working, l1, l2)))
            for l1, l2 in combinations(lines, 2)
        ]
        return PlaneSection(
            kind="four_lines",
            reason=f"section splits into four lines over {working}",
            section=g,
            lines=lines,
            line_field=working,
            intersections=intersections,
        )
    if skipped:
        return PlaneSection(
            kind="indeterminate",
            reason=f"line search skipped extension degrees {skipped} over {field}",
            section=g,
        )
    return PlaneSection(kind="other", reason="section is neither a double conic nor four lines", section=g)
