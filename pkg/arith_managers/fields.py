"""Exact fields: the rationals and the finite fields GF(p^k).

Elements are passed around as raw canonical values (``Fraction`` for QQ, an
integer encoding ``0 <= v < q`` for GF(p^k)) and operated on through the field
object, in the same way sympy domains work. ``FieldScalar`` wraps a raw value
together with its field for user-facing arithmetic.

GF(p^k) elements are encoded by the base-p digits of their coefficient vector
modulo the lexicographically least monic irreducible polynomial of degree k, so
the prime subfield is encoded by the residues ``0..p-1`` in every extension.
"""
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterator, List, Tuple

import numpy as np
import sympy
from sympy.ntheory.residue_ntheory import sqrt_mod

from app_managers.core.errors import BudgetExceededError, FieldMismatchError, InputError

# Largest extension field for which exp/log tables are built.
EXTENSION_TABLE_LIMIT = 250_000


class ExactField(ABC):
    descriptor: str
    characteristic: int
    order: int | None
    zero = None
    one = None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def is_prime_field(self) -> bool:
        return False

    @abstractmethod
    def add(self, a, b):
        pass

    @abstractmethod
    def neg(self, a):
        pass

    @abstractmethod
    def mul(self, a, b):
        pass

    @abstractmethod
    def inv(self, a):
        pass

    @abstractmethod
    def convert(self, value):
        """Interpret a literal (int, Fraction, numeric string or FieldScalar) as a field element."""

    @abstractmethod
    def canonical(self, value):
        """Validate a raw encoded value (or unwrap a FieldScalar) into canonical form."""

    @abstractmethod
    def sqrt(self, a):
        pass

    @abstractmethod
    def random_element(self, rng):
        pass

    @abstractmethod
    def elements(self) -> Iterator:
        pass

    @abstractmethod
    def to_json(self, a):
        pass

    def is_zero(self, a) -> bool:
        return a == 0

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def scalar(self, value) -> "FieldScalar":
        return FieldScalar(value=self.convert(value), field=self)

    def check_odd_characteristic(self, purpose: str) -> None:
        if self.characteristic == 2:
            raise InputError(f"Characteristic 2 is not supported for {purpose}.")

    def __repr__(self) -> str:
        return self.descriptor

    def __str__(self) -> str:
        return self.descriptor


class RationalField(ExactField):
    descriptor = "QQ"
    characteristic = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("Division by zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("Division by zero in QQ")
        return Fraction(a) / b

    def pow(self, a, n: int):
        return Fraction(a) ** n

    def convert(self, value):
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise FieldMismatchError(f"Cannot use an element of {value.field} in QQ")
            return value.value
        if isinstance(value, bool):
            raise InputError(f"Cannot convert {value!r} to a rational number")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise InputError(f"Cannot parse {value!r} as a rational number")
        raise InputError(f"Cannot convert {value!r} to a rational number")

    def canonical(self, value):
        return self.convert(value)

    def sqrt(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        num, den = isqrt(a.numerator), isqrt(a.denominator)
        if num * num == a.numerator and den * den == a.denominator:
            return Fraction(num, den)
        return None

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def elements(self) -> Iterator:
        raise BudgetExceededError("QQ is infinite and cannot be enumerated")

    def to_json(self, a):
        a = Fraction(a)
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


RATIONALS = RationalField()


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Coefficients (highest degree first) of the lexicographically least monic irreducible of degree k."""
    t = sympy.Symbol("t")
    for n in range(p**k):
        tail = [(n // p**i) % p for i in range(k)]
        coeffs = [1] + tail[::-1]
        if sympy.Poly(coeffs, t, modulus=p).is_irreducible:
            return tuple(coeffs)
    raise InputError(f"No irreducible polynomial of degree {k} over GF({p})")


class FiniteField(ExactField):
    def __init__(self, p: int, k: int = 1) -> None:
        if not isinstance(p, int) or not sympy.isprime(p):
            raise InputError(f"Field characteristic must be prime, got {p}.")
        if p == 2:
            raise InputError("Fields of characteristic 2 are not supported.")
        if k < 1:
            raise InputError(f"Extension degree must be at least 1, got {k}.")
        self.p = p
        self.k = k
        self.order = p**k
        self.characteristic = p
        self.descriptor = f"GF({p})" if k == 1 else f"GF({p}^{k})"
        self.zero = 0
        self.one = 1
        self._m = self.order - 1
        if k > 1:
            if self.order > EXTENSION_TABLE_LIMIT:
                raise BudgetExceededError(
                    f"Extension field {self.descriptor} is too large for table arithmetic",
                    required=self.order,
                    budget=EXTENSION_TABLE_LIMIT,
                )
            self.modulus = least_irreducible(p, k)
            self._build_tables()
        else:
            self.modulus = (1, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and other.p == self.p and other.k == self.k

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # digit-level arithmetic, only used while building the tables
    def _digits(self, a: int) -> List[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _encode(self, digits: List[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _mulmod(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        low = list(reversed(self.modulus[1:]))
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i in range(k):
                    prod[deg - k + i] = (prod[deg - k + i] - c * low[i]) % p
        return self._encode(prod[:k])

    def _powmod(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mulmod(result, base)
            base = self._mulmod(base, base)
            n >>= 1
        return result

    def _build_tables(self) -> None:
        m = self._m
        prime_factors = list(sympy.factorint(m).keys())
        generator = None
        for candidate in range(2, self.order):
            if all(self._powmod(candidate, m // r) != 1 for r in prime_factors):
                generator = candidate
                break
        self.generator = generator
        exp = [1] * m
        for i in range(1, m):
            exp[i] = self._mulmod(exp[i - 1], generator)
        log = [0] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        zech = [-1] * m
        p = self.p
        for n, v in enumerate(exp):
            shifted = v - v % p + (v % p + 1) % p
            zech[n] = log[shifted] if shifted else -1
        self._exp, self._log, self._zech = exp, log, zech

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._m]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._m]

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if a == 0:
            return 0
        return self._exp[(self._log[a] + self._m // 2) % self._m]

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._m]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"Division by zero in {self.descriptor}")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % self._m]

    def pow(self, a, n: int):
        if self.k == 1:
            if a == 0:
                if n < 0:
                    raise ZeroDivisionError(f"Division by zero in {self.descriptor}")
                return 1 if n == 0 else 0
            return pow(a, n % self._m, self.p)
        if a == 0:
            if n < 0:
                raise ZeroDivisionError(f"Division by zero in {self.descriptor}")
            return 1 if n == 0 else 0
        return self._exp[self._log[a] * n % self._m]

    def frobenius(self, a):
        return self.pow(a, self.p)

    def convert(self, value):
        if isinstance(value, FieldScalar):
            return self.canonical(value)
        if isinstance(value, bool):
            raise InputError(f"Cannot convert {value!r} to an element of {self.descriptor}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"Denominator of {value} vanishes in {self.descriptor}")
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if isinstance(value, str):
            try:
                return self.convert(Fraction(value.strip()))
            except ValueError:
                raise InputError(f"Cannot parse {value!r} as an element of {self.descriptor}")
        raise InputError(f"Cannot convert {value!r} to an element of {self.descriptor}")

    def canonical(self, value):
        if isinstance(value, FieldScalar):
            if value.field == self:
                return value.value
            if value.field.is_prime_field and value.field.characteristic == self.p:
                return value.value
            raise FieldMismatchError(f"Cannot use an element of {value.field} in {self.descriptor}")
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            value = int(value)
            if self.k == 1:
                return value % self.p
            if 0 <= value < self.order:
                return value
            raise InputError(f"{value} is not an element encoding of {self.descriptor}")
        return self.convert(value)

    def from_encoding(self, n: int):
        if self.k == 1 and n >= self.p:
            raise FieldMismatchError(f"#{n} encodes an element of an extension of {self.descriptor}, not of {self.descriptor}")
        if not 0 <= n < self.order:
            raise InputError(f"{n} is not an element encoding of {self.descriptor}")
        return n

    def sqrt(self, a):
        if a == 0:
            return 0
        if self.k == 1:
            root = sqrt_mod(a, self.p)
            return None if root is None else min(root, self.p - root)
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    def random_element(self, rng):
        return rng.randrange(self.order)

    def elements(self) -> Iterator:
        return iter(range(self.order))

    def to_json(self, a):
        return int(a)

    def subfield_of(self, other: "FiniteField") -> bool:
        """True when raw encodings of this field are valid, identical encodings in ``other``."""
        return self == other or (self.k == 1 and isinstance(other, FiniteField) and other.p == self.p)

    @cached_property
    def numpy_tables(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """exp, log and digit tables as numpy arrays (extension fields only)."""
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        values = np.arange(self.order, dtype=np.int64)
        digits = np.stack([(values // self.p**i) % self.p for i in range(self.k)], axis=1)
        return exp, log, digits


@lru_cache(maxsize=None)
def finite_field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def rationals() -> RationalField:
    return RATIONALS


_FIELD_SPEC = re.compile(r"^\s*p\s*=\s*(\d+)\s*(?:,\s*k\s*=\s*(\d+)\s*)?$", re.IGNORECASE)
_GF_SPEC = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$", re.IGNORECASE)


def parse_field_spec(spec) -> ExactField:
    """Accepts ``QQ``/``q``, ``p=11``, ``p=11,k=2``, ``GF(11^2)`` or a prime power such as ``121``."""
    if isinstance(spec, ExactField):
        return spec
    if isinstance(spec, int):
        spec = str(spec)
    if spec is None or not str(spec).strip():
        raise InputError("Field specification is empty.")
    text = str(spec).strip()
    if text.lower() in ("q", "qq", "rationals", "rational"):
        return RATIONALS
    match = _FIELD_SPEC.match(text) or _GF_SPEC.match(text)
    if match:
        p = int(match.group(1))
        k = int(match.group(2)) if match.group(2) else 1
        if not sympy.isprime(p):
            factors = sympy.factorint(p)
            if len(factors) == 1 and k == 1:
                (p, k), = factors.items()
            else:
                raise InputError(f"Field characteristic must be prime, got {p}.")
        return finite_field(p, k)
    if text.isdigit():
        factors = sympy.factorint(int(text))
        if len(factors) != 1:
            raise InputError(f"{text} is not a prime power.")
        (p, k), = factors.items()
        return finite_field(p, k)
    raise InputError(f"Cannot parse field specification {spec!r}.")


@dataclass(frozen=True, eq=False)
class FieldScalar:
    value: object
    field: ExactField

    def _unwrap(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"Cannot combine elements of {self.field} and {other.field}")
            return other.value
        return self.field.convert(other)

    def _wrap(self, value) -> "FieldScalar":
        return FieldScalar(value=value, field=self.field)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._unwrap(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._unwrap(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._unwrap(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._unwrap(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._unwrap(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._unwrap(other), self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def __eq__(self, other) -> bool:
        try:
            return self.value == self._unwrap(other)
        except (FieldMismatchError, InputError):
            return False

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def to_json(self):
        return self.field.to_json(self.value)

    def __repr__(self) -> str:
        return f"{self.to_json()} in {self.field}"
