"""Vectorized evaluation of forms over blocks of finite-field points.

Points are numpy int64 arrays of raw encodings, one point per row. Prime
fields use plain modular arithmetic; extension fields go through the field's
exp/log/digit tables.
"""
from typing import Iterator, List, Sequence

import numpy as np

from app_managers.core.errors import BudgetExceededError, FieldMismatchError, InputError
from arith_managers.fields import ExactField, FiniteField
from poly_managers.polynomials import Exponent, MultiPoly

DEFAULT_BLOCK = 1 << 15


def count_projective_points(q: int, nvars: int) -> int:
    """|P^{nvars-1}(GF(q))|."""
    return (q**nvars - 1) // (q - 1)


def _require_finite(field: ExactField) -> FiniteField:
    if not isinstance(field, FiniteField):
        raise InputError(f"Point enumeration needs a finite field, got {field}")
    return field


def check_budget(field: ExactField, nvars: int, budget: int, what: str = "Projective point enumeration") -> int:
    total = count_projective_points(_require_finite(field).order, nvars)
    if budget is not None and total > budget:
        raise BudgetExceededError(f"{what} over {field} in {nvars} coordinates", required=total, budget=budget)
    return total


def projective_point_blocks(field: ExactField, nvars: int, block_size: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
    """Normalized points of P^{nvars-1}(GF(q)) in lexicographic order, in blocks."""
    q = _require_finite(field).order
    for pivot in range(nvars - 1, -1, -1):
        free = nvars - 1 - pivot
        total = q**free
        for start in range(0, total, block_size):
            idx = np.arange(start, min(total, start + block_size), dtype=np.int64)
            block = np.zeros((len(idx), nvars), dtype=np.int64)
            block[:, pivot] = 1
            for j in range(nvars - 1, pivot, -1):
                block[:, j] = idx % q
                idx = idx // q
            yield block


def monomial_table(field: FiniteField, points: np.ndarray, exponents: Sequence[Exponent]) -> np.ndarray:
    """Matrix of monomial values, one row per point and one column per exponent."""
    npts = points.shape[0]
    table = np.zeros((npts, len(exponents)), dtype=np.int64)
    if field.k == 1:
        p = field.p
        top = max((max(e) for e in exponents if e), default=0)
        powers = [np.ones_like(points)]
        for _ in range(top):
            powers.append(powers[-1] * points % p)
        for j, exp in enumerate(exponents):
            col = np.ones(npts, dtype=np.int64)
            for i, e in enumerate(exp):
                if e:
                    col = col * powers[e][:, i] % p
            table[:, j] = col
        return table
    exp_tab, log_tab, _ = field.numpy_tables
    m = field.order - 1
    logs = log_tab[points]
    zero = points == 0
    for j, exp in enumerate(exponents):
        total = np.zeros(npts, dtype=np.int64)
        vanishes = np.zeros(npts, dtype=bool)
        for i, e in enumerate(exp):
            if e:
                total = (total + e * logs[:, i]) % m
                vanishes |= zero[:, i]
        col = exp_tab[total]
        col[vanishes] = 0
        table[:, j] = col
    return table


def evaluate_forms(field: ExactField, points: np.ndarray, forms: Sequence[MultiPoly]) -> np.ndarray:
    """Values of each form at each point; shape (npts, nforms)."""
    field = _require_finite(field)
    if not forms:
        return np.zeros((points.shape[0], 0), dtype=np.int64)
    for form in forms:
        if form.field != field:
            raise FieldMismatchError(f"Cannot evaluate a form over {form.field} on points over {field}")
    out = np.zeros((points.shape[0], len(forms)), dtype=np.int64)
    by_degree = {}
    for idx, form in enumerate(forms):
        by_degree.setdefault(form.degree, []).append(idx)
    for degree, indices in by_degree.items():
        exponents: List[Exponent] = sorted({e for i in indices for e in forms[i].terms}, reverse=True)
        if not exponents:
            continue
        position = {e: j for j, e in enumerate(exponents)}
        table = monomial_table(field, points, exponents)
        if field.k == 1:
            coeffs = np.zeros((len(exponents), len(indices)), dtype=np.int64)
            for col, i in enumerate(indices):
                for e, c in forms[i].terms.items():
                    coeffs[position[e], col] = c
            out[:, indices] = table @ coeffs % field.p
            continue
        exp_tab, log_tab, digits = field.numpy_tables
        m = field.order - 1
        weights = np.array([field.p**i for i in range(field.k)], dtype=np.int64)
        for i in indices:
            acc = np.zeros((points.shape[0], field.k), dtype=np.int64)
            for e, c in forms[i].terms.items():
                col = table[:, position[e]]
                nz = col != 0
                prod = np.zeros(points.shape[0], dtype=np.int64)
                prod[nz] = exp_tab[(log_tab[col[nz]] + log_tab[c]) % m]
                acc += digits[prod]
            out[:, i] = (acc % field.p) @ weights
    return out


def zero_rows(values: np.ndarray) -> np.ndarray:
    """Boolean mask of rows where every value vanishes."""
    return ~values.any(axis=1)


def common_zeros(field: ExactField, forms: Sequence[MultiPoly], budget: int = None, block_size: int = DEFAULT_BLOCK) -> List[tuple]:
    """All points of projective space where every form vanishes, in lexicographic order."""
    if not forms:
        raise InputError("Need at least one form")
    nvars = forms[0].nvars
    check_budget(field, nvars, budget)
    found = []
    for block in projective_point_blocks(field, nvars, block_size):
        mask = zero_rows(evaluate_forms(field, block, forms))
        found.extend(tuple(int(v) for v in row) for row in block[mask])
    return found


def _digits(field: FiniteField, values: np.ndarray) -> np.ndarray:
    """Base-p digit vectors of encodings; one extra trailing axis of length k."""
    if field.k == 1:
        return values[..., None]
    return field.numpy_tables[2][values]


def _multiplier(field: FiniteField, s: int) -> np.ndarray:
    """Matrix R over GF(p) with digits(c * s) = digits(c) @ R."""
    basis = [field.p**i for i in range(field.k)]
    return _digits(field, np.array([field.mul(b, s) for b in basis], dtype=np.int64))


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 products are exact while the inner sums stay below 2**52
    if a.shape[1] * (p - 1) ** 2 < 2**52:
        out = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    else:
        out = a @ b
    return out % p


def _power_matrix(field: FiniteField, degree: int) -> np.ndarray:
    """Rows (j, digit), columns (t, digit): multiplication by t^j for every t in GF(q)."""
    k = field.k
    table = np.zeros(((degree + 1) * k, field.order * k), dtype=np.int64)
    for t in field.elements():
        for j in range(degree + 1):
            table[j * k : (j + 1) * k, t * k : (t + 1) * k] = _multiplier(field, field.pow(t, j))
    return table


def _coefficient_matrix(field: FiniteField, form: MultiPoly, prefixes: Sequence[Exponent]) -> np.ndarray:
    """Rows (prefix monomial, digit), columns (power of the last variable, digit)."""
    k = field.k
    position = {e: i for i, e in enumerate(prefixes)}
    table = np.zeros((len(prefixes) * k, (form.degree + 1) * k), dtype=np.int64)
    for exp, c in form.terms.items():
        row, j = position[exp[:-1]], exp[-1]
        table[row * k : (row + 1) * k, j * k : (j + 1) * k] = _multiplier(field, c)
    return table


def fibred_common_zeros(
    field: ExactField, forms: Sequence[MultiPoly], budget: int = None, screen: int = 2, block_size: int = 1 << 13
) -> List[tuple]:
    """Common projective zeros of ``forms``, searched line by line through the last coordinate.

    Each point is (prefix, t) with the prefix normalized in P^{n-2} and t running over the
    whole field, plus the point (0, ..., 0, 1). For every prefix block the first ``screen``
    forms are evaluated at all t at once: multiplication by a fixed element is GF(p)-linear
    on digit vectors, so the evaluation is two integer matrix products. The remaining forms
    are only evaluated at the surviving points. Finds the same points as ``common_zeros``,
    sorted.
    """
    field = _require_finite(field)
    if not forms:
        raise InputError("Need at least one form")
    nvars = forms[0].nvars
    for form in forms:
        if form.field != field:
            raise FieldMismatchError(f"Cannot evaluate a form over {form.field} on points over {field}")
    check_budget(field, nvars, budget, "Fibred zero search")
    p, q, k = field.p, field.order, field.k
    apex = (0,) * (nvars - 1) + (1,)
    found = [apex] if all(form.evaluate(apex) == 0 for form in forms) else []
    screened, rest = list(forms[:screen]), list(forms[screen:])
    prefixes: List[Exponent] = sorted({e[:-1] for form in screened for e in form.terms}, reverse=True)
    coefficients = [_coefficient_matrix(field, form, prefixes) for form in screened]
    powers = {d: _power_matrix(field, d) for d in {form.degree for form in screened}}
    for block in projective_point_blocks(field, nvars - 1, block_size):
        mask = np.ones((block.shape[0], q), dtype=bool)
        if prefixes:
            monomials = _digits(field, monomial_table(field, block, prefixes)).reshape(block.shape[0], -1)
        for form, coeffs in zip(screened, coefficients):
            if not form.terms:
                continue
            in_t = _matmul_mod(monomials, coeffs, p)
            values = _matmul_mod(in_t, powers[form.degree], p).reshape(block.shape[0], q, k)
            mask &= ~values.any(axis=2)
        rows, ts = np.nonzero(mask)
        if not len(rows):
            continue
        points = np.concatenate([block[rows], ts[:, None].astype(np.int64)], axis=1)
        if rest:
            points = points[zero_rows(evaluate_forms(field, points, rest))]
        found.extend(tuple(int(v) for v in row) for row in points)
    return sorted(found)
