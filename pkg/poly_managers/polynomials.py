"""Homogeneous multivariate polynomials with exact coefficients.

A MultiPoly is a sparse map from exponent tuples to raw field values. Every
stored exponent sums to ``degree`` and zero coefficients are never stored.
Canonical order is graded lexicographic, i.e. descending lexicographic order
on exponent tuples since all terms share one degree.
"""
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from app_managers.core.errors import DimensionError, FieldMismatchError, InputError
from arith_managers.fields import ExactField, FieldScalar, FiniteField
from arith_managers.matrices import ExactMatrix

Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, d: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of total degree d in graded-lex order, x0^d first."""
    if d < 0:
        raise InputError(f"Degree must be non-negative, got {d}")
    exponents = set()
    for combo in combinations_with_replacement(range(nvars), d):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        exponents.add(tuple(exp))
    basis = tuple(sorted(exponents, reverse=True))
    return basis


def monomial_values(field: ExactField, point: Sequence, exponents: Sequence[Exponent]) -> List:
    """Values of the given monomials at a point (raw values)."""
    top = max((max(e) for e in exponents if e), default=0)
    powers = []
    for x in point:
        row = [field.one]
        for _ in range(top):
            row.append(field.mul(row[-1], x))
        powers.append(row)
    values = []
    for exp in exponents:
        v = field.one
        for i, e in enumerate(exp):
            if e:
                v = field.mul(v, powers[i][e])
                if field.is_zero(v):
                    break
        values.append(v)
    return values


@dataclass(frozen=True, eq=False)
class MultiPoly:
    nvars: int
    degree: int
    field: ExactField
    terms: Dict[Exponent, object] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for exp, coeff in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars:
                raise DimensionError(f"Exponent {exp} does not have {self.nvars} entries")
            if any(e < 0 for e in exp):
                raise InputError(f"Negative exponent in {exp}")
            if sum(exp) != self.degree:
                raise InputError(f"Term with exponent {exp} has degree {sum(exp)}, expected {self.degree}")
            value = self.field.canonical(coeff)
            if not self.field.is_zero(value):
                clean[exp] = value
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _trusted(cls, nvars: int, degree: int, field: ExactField, terms: Dict) -> "MultiPoly":
        poly = object.__new__(cls)
        object.__setattr__(poly, "nvars", nvars)
        object.__setattr__(poly, "degree", degree)
        object.__setattr__(poly, "field", field)
        object.__setattr__(poly, "terms", {e: c for e, c in terms.items() if not field.is_zero(c)})
        return poly

    @classmethod
    def zero(cls, nvars: int, degree: int, field: ExactField) -> "MultiPoly":
        return cls._trusted(nvars, degree, field, {})

    @classmethod
    def constant(cls, value, nvars: int, field: ExactField) -> "MultiPoly":
        return cls._trusted(nvars, 0, field, {(0,) * nvars: field.convert(value)})

    @classmethod
    def variable(cls, i: int, nvars: int, field: ExactField) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise DimensionError(f"Variable x{i} does not exist in {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._trusted(nvars, 1, field, {tuple(exp): field.one})

    @classmethod
    def linear(cls, coefficients: Sequence, field: ExactField) -> "MultiPoly":
        """Linear form sum c_i x_i from raw coefficients."""
        n = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = field.canonical(c)
        return cls._trusted(n, 1, field, terms)

    @classmethod
    def from_vector(cls, nvars: int, degree: int, field: ExactField, vector: Sequence) -> "MultiPoly":
        basis = monomial_basis(nvars, degree)
        if len(vector) != len(basis):
            raise DimensionError(f"Vector of length {len(vector)} does not match {len(basis)} monomials")
        return cls._trusted(nvars, degree, field, dict(zip(basis, vector)))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_vector(self) -> List:
        return [self.terms.get(exp, self.field.zero) for exp in monomial_basis(self.nvars, self.degree)]

    def coefficient(self, exp: Exponent) -> FieldScalar:
        return FieldScalar(value=self.terms.get(tuple(exp), self.field.zero), field=self.field)

    def sorted_terms(self) -> List[Tuple[Exponent, object]]:
        return sorted(self.terms.items(), reverse=True)

    @property
    def leading_exponent(self) -> Exponent:
        return max(self.terms)

    @property
    def leading_coefficient(self):
        return self.terms[self.leading_exponent]

    def _check_compatible(self, other: "MultiPoly") -> None:
        if not isinstance(other, MultiPoly):
            raise TypeError(f"Cannot combine a polynomial with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"Cannot combine polynomials over {self.field} and {other.field}")
        if other.nvars != self.nvars:
            raise DimensionError(f"Cannot combine polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if other.degree != self.degree:
            raise InputError(f"Cannot add forms of degree {self.degree} and {other.degree}")
        f = self.field
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = f.add(terms[exp], c) if exp in terms else c
        return MultiPoly._trusted(self.nvars, self.degree, f, terms)

    def __neg__(self) -> "MultiPoly":
        f = self.field
        return MultiPoly._trusted(self.nvars, self.degree, f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        f = self.field
        c = f.canonical(c)
        return MultiPoly._trusted(self.nvars, self.degree, f, {e: f.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_compatible(other)
        f = self.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = f.mul(c1, c2)
                terms[exp] = f.add(terms[exp], prod) if exp in terms else prod
        return MultiPoly._trusted(self.nvars, self.degree + other.degree, f, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise InputError("Negative powers of polynomials are not supported")
        result = MultiPoly.constant(1, self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.field != self.field or other.nvars != self.nvars:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence):
        """Exact raw value at a point given by raw coordinates."""
        if len(point) != self.nvars:
            raise DimensionError(f"Point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        f = self.field
        exps = list(self.terms)
        if not exps:
            return f.zero
        values = monomial_values(f, [f.canonical(x) for x in point], exps)
        acc = f.zero
        for exp, v in zip(exps, values):
            acc = f.add(acc, f.mul(self.terms[exp], v))
        return acc

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise DimensionError(f"Variable x{i} does not exist in {self.nvars} variables")
        f = self.field
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                terms[tuple(new)] = f.mul(c, f.convert(exp[i]))
        return MultiPoly._trusted(self.nvars, max(self.degree - 1, 0), f, terms)

    def gradient(self) -> List["MultiPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``images[i]`` for x_i; all images share variables, field and degree."""
        if len(images) != self.nvars:
            raise DimensionError(f"Expected {self.nvars} images, got {len(images)}")
        first = images[0]
        for img in images:
            if img.field != self.field:
                raise FieldMismatchError(f"Cannot substitute polynomials over {img.field} into {self.field}")
            if img.nvars != first.nvars:
                raise DimensionError("Substituted polynomials must share their variables")
            if not img.is_zero and img.degree != first.degree:
                raise InputError("Substituted polynomials must share their degree")
        e = next((img.degree for img in images if not img.is_zero), first.degree)
        f = self.field
        result = MultiPoly.zero(first.nvars, self.degree * e, f)
        powers = [[MultiPoly.constant(1, first.nvars, f)] for _ in images]
        for exp, c in self.terms.items():
            term = MultiPoly.constant(1, first.nvars, f).scale(c)
            for i, k in enumerate(exp):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    term = term * powers[i][k]
            result = result + term
        if result.is_zero:
            return MultiPoly.zero(first.nvars, self.degree * e, f)
        return result

    def extend_variables(self, nvars: int) -> "MultiPoly":
        """The same form viewed in ``nvars`` >= current variables (new variables appended)."""
        if nvars < self.nvars:
            raise DimensionError(f"Cannot embed {self.nvars} variables into {nvars}")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly._trusted(nvars, self.degree, self.field, {e + pad: c for e, c in self.terms.items()})

    def monic(self) -> "MultiPoly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.leading_coefficient))

    def is_proportional(self, other: "MultiPoly") -> bool:
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.monic() == other.monic()

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Quotient q with self = q·divisor, or None when divisor does not divide self."""
        self._check_compatible(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial")
        f = self.field
        qdeg = self.degree - divisor.degree
        if self.is_zero:
            return MultiPoly.zero(self.nvars, max(qdeg, 0), f)
        if qdeg < 0:
            return None
        lead_exp, lead_inv = divisor.leading_exponent, f.inv(divisor.leading_coefficient)
        quotient = {}
        remainder = self
        while not remainder.is_zero:
            exp = remainder.leading_exponent
            shift = tuple(a - b for a, b in zip(exp, lead_exp))
            if any(s < 0 for s in shift):
                return None
            coeff = f.mul(remainder.leading_coefficient, lead_inv)
            quotient[shift] = coeff
            step = MultiPoly._trusted(self.nvars, qdeg, f, {shift: coeff})
            remainder = remainder - step * divisor
        return MultiPoly._trusted(self.nvars, qdeg, f, quotient)

    def square_root(self) -> "MultiPoly | None":
        """A form h with h² = self, or None. Needs odd characteristic."""
        f = self.field
        f.check_odd_characteristic("square roots of polynomials")
        if self.degree % 2:
            return None if not self.is_zero else MultiPoly.zero(self.nvars, self.degree // 2, f)
        half_degree = self.degree // 2
        if self.is_zero:
            return MultiPoly.zero(self.nvars, half_degree, f)
        lead = self.leading_exponent
        if any(e % 2 for e in lead):
            return None
        root_lc = f.sqrt(self.leading_coefficient)
        if root_lc is None:
            return None
        half = tuple(e // 2 for e in lead)
        two_lead = f.add(root_lc, root_lc)
        root_terms = {half: root_lc}
        limit = len(monomial_basis(self.nvars, half_degree))
        for _ in range(limit + 1):
            root = MultiPoly._trusted(self.nvars, half_degree, f, root_terms)
            remainder = self - root * root
            if remainder.is_zero:
                return root
            exp = remainder.leading_exponent
            t_exp = tuple(a - b for a, b in zip(exp, half))
            if any(e < 0 for e in t_exp) or t_exp >= half or t_exp in root_terms:
                return None
            root_terms[t_exp] = f.div(remainder.leading_coefficient, two_lead)
        return None

    def lift(self, target: ExactField) -> "MultiPoly":
        """The same form over an extension of its prime field."""
        if target == self.field:
            return self
        if isinstance(self.field, FiniteField) and self.field.subfield_of(target):
            return MultiPoly._trusted(self.nvars, self.degree, target, dict(self.terms))
        raise FieldMismatchError(f"Cannot lift a polynomial over {self.field} to {target}")

    def hessian_matrix(self, point: Sequence) -> ExactMatrix:
        if len(point) != self.nvars:
            raise DimensionError(f"Point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        grads = self.gradient()
        rows = []
        for i in range(self.nvars):
            second = grads[i].gradient()
            rows.append([second[j].evaluate(point) for j in range(self.nvars)])
        return ExactMatrix(field=self.field, rows=rows)

    def to_text(self, names: Sequence[str] = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if self.is_zero:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            coeff = self.field.to_json(c)
            if isinstance(self.field, FiniteField) and self.field.k > 1 and c >= self.field.p:
                coeff_text, negative = f"#{c}", False
            else:
                if isinstance(self.field, FiniteField) and c > self.field.p // 2:
                    coeff = c - self.field.p
                coeff_text = str(coeff)
                negative = coeff_text.startswith("-")
                coeff_text = coeff_text.lstrip("-")
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            if not factors:
                body = coeff_text
            elif coeff_text == "1":
                body = "*".join(factors)
            else:
                body = "*".join([coeff_text] + factors)
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(("- " if negative else "+ ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r}, degree={self.degree}, field={self.field})"


def eval_poly(f: MultiPoly, x: Sequence) -> FieldScalar:
    return FieldScalar(value=f.evaluate(x), field=f.field)


def gradient(f: MultiPoly) -> List[MultiPoly]:
    return f.gradient()


def hessian_matrix(f: MultiPoly, x: Sequence) -> ExactMatrix:
    return f.hessian_matrix(x)


def evaluation_rows(field: ExactField, points: Sequence[Sequence], exponents: Sequence[Exponent]) -> List[List]:
    return [monomial_values(field, point, exponents) for point in points]
