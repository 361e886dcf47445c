"""Exact scalar arithmetic: prime fields GF(p) and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 2**61 - 1
MAX_PRIME = 2**62


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers every supported modulus)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """GF(p) for an odd prime p < 2^62. Raw values are ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if p < 3 or p >= MAX_PRIME or not is_probable_prime(p):
            raise ValueError(f"modulus must be an odd prime below 2^62, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    is_prime = True

    def __call__(self, value) -> FieldElement:
        return FieldElement(self.reduce(value), self)

    def reduce(self, value) -> int:
        if isinstance(value, Fraction):
            return value.numerator % self.p * self.inv(value.denominator % self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def to_signed(self, a) -> int:
        """Symmetric representative in (-p/2, p/2], used for printing."""
        return a - self.p if a > self.p // 2 else a


class RationalField:
    """The rationals; raw values are normalized fractions.Fraction instances."""

    is_prime = False
    name = "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def __call__(self, value) -> FieldElement:
        return FieldElement(self.reduce(value), self)

    def reduce(self, value) -> Fraction:
        return Fraction(value)

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
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def to_signed(self, a):
        return a


QQ = RationalField()


@dataclass(frozen=True)
class FieldElement:
    """A value bound to its field. Arithmetic between different fields is an error."""

    value: object
    field: object

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.reduce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.add(self.value, o), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.sub(self.value, o), self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.sub(o, self.value), self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.mul(self.value, o), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def inv(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.mul(self.value, self.field.inv(o)), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.reduce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __repr__(self):
        return f"{self.value} in {self.field.name}"


def make_field(kind: str = "prime", p: int = DEFAULT_PRIME):
    if kind == "prime":
        return PrimeField(p)
    if kind == "rational":
        return QQ
    raise ValueError(f"unknown field kind {kind!r}")
