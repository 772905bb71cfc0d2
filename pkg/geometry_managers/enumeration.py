"""Enumeration over finite projective spaces.

``projective_zeros`` finds the common zeros of a set of forms without visiting
every point: it fibres P^{n} over the first n coordinates and solves a
univariate system in the last coordinate on each fibre.
"""
from itertools import combinations, product
from typing import Callable, Iterator, List, Sequence, Tuple

from app_managers.core.errors import BudgetExceededError, FieldMismatchError, InputError
from arith_managers.fields import ExactField, FiniteField
from arith_managers.univariate import poly_gcd, poly_roots, trim
from poly_managers.batch_eval import count_projective_points
from poly_managers.polynomials import MultiPoly


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= 1 - q ** (n - i)
        den *= 1 - q ** (i + 1)
    return num // den


def _finite(field: ExactField) -> FiniteField:
    if not isinstance(field, FiniteField):
        raise BudgetExceededError(f"Exhaustive enumeration is not available over {field}")
    return field


def projective_points(field: ExactField, nvars: int) -> Iterator[Tuple[int, ...]]:
    """Normalized points of P^{nvars-1}(GF(q)) in lexicographic order."""
    q = _finite(field).order
    for pivot in range(nvars - 1, -1, -1):
        head = (0,) * pivot + (1,)
        for tail in product(range(q), repeat=nvars - 1 - pivot):
            yield head + tail


def projective_zeros(forms: Sequence[MultiPoly], budget: int = None) -> List[Tuple]:
    """Common zeros in P^{n-1}(GF(q)) of forms in n variables, sorted lexicographically."""
    if not forms:
        raise InputError("Need at least one form")
    field = _finite(forms[0].field)
    nvars = forms[0].nvars
    for f in forms:
        if f.field != field:
            raise FieldMismatchError(f"Forms over {f.field} and {field} cannot be solved together")
        if f.nvars != nvars:
            raise InputError("All forms must share their variables")
    forms = [f for f in forms if not f.is_zero]
    q = field.order
    if not forms:
        total = count_projective_points(q, nvars)
        if budget is not None and total > budget:
            raise BudgetExceededError("Every point is a zero", required=total, budget=budget)
        return sorted(projective_points(field, nvars))
    if nvars == 1:
        return [(1,)] if all(field.is_zero(f.evaluate((1,))) for f in forms) else []
    fibres = count_projective_points(q, nvars - 1)
    if budget is not None and fibres > budget:
        raise BudgetExceededError("Fibre enumeration for common zeros", required=fibres, budget=budget)

    # per form: t-degree -> list of (exponent of the first n-1 variables, coefficient)
    grouped = []
    top = 0
    for f in forms:
        by_t = {}
        for exp, c in f.terms.items():
            by_t.setdefault(exp[-1], []).append((exp[:-1], c))
            top = max(top, max(exp[:-1]))
        grouped.append((f.degree, by_t))

    zeros = []
    infinity = (0,) * (nvars - 1) + (1,)
    if all(field.is_zero(f.evaluate(infinity)) for f in forms):
        zeros.append(infinity)
    for a in projective_points(field, nvars - 1):
        powers = []
        for x in a:
            row = [field.one]
            for _ in range(top):
                row.append(field.mul(row[-1], x))
            powers.append(row)
        common = None
        for degree, by_t in grouped:
            coeffs = [field.zero] * (degree + 1)
            for j, entries in by_t.items():
                acc = field.zero
                for prefix, c in entries:
                    v = c
                    for i, e in enumerate(prefix):
                        if e:
                            v = field.mul(v, powers[i][e])
                    acc = field.add(acc, v)
                coeffs[j] = acc
            coeffs = trim(field, coeffs)
            if not coeffs:
                continue
            common = coeffs if common is None else poly_gcd(field, common, coeffs)
            if len(common) == 1:
                break
        if common is None:
            zeros.extend(a + (t,) for t in field.elements())
        elif len(common) > 1:
            zeros.extend(a + (t,) for t in poly_roots(field, common))
    return sorted(zeros)


def rref_subspaces(
    field: ExactField, dim: int, nvars: int, row_filter: Callable[[Tuple], bool] = None
) -> Iterator[Tuple[Tuple, ...]]:
    """Reduced row-echelon bases of the ``dim``-dimensional subspaces of GF(q)^nvars.

    Every basis row is itself a normalized projective point; ``row_filter``
    prunes candidates row by row.
    """
    q = _finite(field).order
    for pivots in combinations(range(nvars), dim):
        pivot_set = set(pivots)

        def rows_for(i: int) -> Iterator[Tuple]:
            free = [j for j in range(pivots[i] + 1, nvars) if j not in pivot_set]
            for values in product(range(q), repeat=len(free)):
                row = [0] * nvars
                row[pivots[i]] = 1
                for j, v in zip(free, values):
                    row[j] = v
                row = tuple(row)
                if row_filter is None or row_filter(row):
                    yield row

        def extend(i: int, chosen: Tuple) -> Iterator[Tuple[Tuple, ...]]:
            if i == dim:
                yield chosen
                return
            for row in rows_for(i):
                yield from extend(i + 1, chosen + (row,))

        yield from extend(0, ())
