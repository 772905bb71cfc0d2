"""Dense univariate polynomials over an exact field.

A polynomial is a list of raw coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is the empty list).
"""
from fractions import Fraction
from typing import List

import sympy

from arith_managers.fields import ExactField


def trim(field: ExactField, coeffs: List) -> List:
    coeffs = list(coeffs)
    while coeffs and field.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def poly_eval(field: ExactField, coeffs: List, t):
    result = field.zero
    for c in reversed(coeffs):
        result = field.add(field.mul(result, t), c)
    return result


def poly_monic(field: ExactField, coeffs: List) -> List:
    coeffs = trim(field, coeffs)
    if not coeffs:
        return coeffs
    lead = field.inv(coeffs[-1])
    return [field.mul(lead, c) for c in coeffs]


def poly_divmod(field: ExactField, num: List, den: List):
    num, den = trim(field, num), trim(field, den)
    if not den:
        raise ZeroDivisionError("Division by the zero polynomial")
    rem = list(num)
    quot = [field.zero] * max(len(num) - len(den) + 1, 0)
    lead_inv = field.inv(den[-1])
    while len(rem) >= len(den) and rem:
        shift = len(rem) - len(den)
        factor = field.mul(rem[-1], lead_inv)
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] = field.sub(rem[shift + i], field.mul(factor, c))
        rem = trim(field, rem)
    return trim(field, quot), rem


def poly_gcd(field: ExactField, a: List, b: List) -> List:
    a, b = trim(field, a), trim(field, b)
    while b:
        _, r = poly_divmod(field, a, b)
        a, b = b, r
    return poly_monic(field, a)


def poly_roots(field: ExactField, coeffs: List) -> List:
    """Distinct roots in the field itself, sorted by encoding (or numerically over QQ)."""
    coeffs = poly_monic(field, coeffs)
    degree = len(coeffs) - 1
    if degree <= 0:
        return []
    if degree == 1:
        return [field.neg(coeffs[0])]
    if degree == 2 and field.characteristic != 2:
        c, b = coeffs[0], coeffs[1]
        half_b = field.div(b, field.convert(2))
        disc = field.sub(field.mul(half_b, half_b), c)
        root = field.sqrt(disc)
        if root is None:
            return []
        roots = {field.sub(root, half_b), field.sub(field.neg(root), half_b)}
        return sorted(roots)
    if field.is_finite:
        return [t for t in field.elements() if field.is_zero(poly_eval(field, coeffs, t))]
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain=sympy.QQ)
    return sorted(Fraction(int(r.p), int(r.q)) for r in set(poly.ground_roots().keys()))
