"""Exact scalars: rationals (``fractions.Fraction``), residues mod m, and the
extended degree value ``NEG_INF``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import RingError


class NegInf:
    """The degree of the zero polynomial / identity map.

    Compares below every integer; adding anything to it gives itself.
    Only one instance exists (``NEG_INF``).
    """

    _instance: NegInf | None = None

    def __new__(cls) -> NegInf:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "-inf"

    __str__ = __repr__

    def __reduce__(self):
        return (NegInf, ())

    def __hash__(self) -> int:
        return hash("nilpoly.NEG_INF")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __le__(self, other) -> bool:
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    def __gt__(self, other) -> bool:
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __ge__(self, other) -> bool:
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__


NEG_INF = NegInf()

Degree = Union[int, NegInf]


def degree_to_json(d: Degree):
    return "-inf" if d is NEG_INF else d


def degree_from_json(value) -> Degree:
    if value == "-inf":
        return NEG_INF
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise ValueError(f"not a degree: {value!r}")


class ModInt:
    """Residue class ``value mod modulus`` with ``modulus >= 2``."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 2:
            raise RingError(f"modulus must be >= 2, got {modulus}")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingError(f"non-integral value {value} cannot be reduced mod {modulus}")
            value = value.numerator
        self.value = int(value) % modulus
        self.modulus = modulus

    def _coerce(self, other) -> ModInt:
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise RingError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, int):
            return ModInt(other, self.modulus)
        raise RingError(f"cannot combine Z/{self.modulus} with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return ModInt(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return ModInt(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return ModInt(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __pow__(self, e: int):
        return ModInt(pow(self.value, e, self.modulus), self.modulus)

    def inverse(self) -> ModInt:
        try:
            return ModInt(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError:
            raise RingError(f"{self.value} is not a unit mod {self.modulus}") from None

    def __eq__(self, other) -> bool:
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"ModInt({self.value}, {self.modulus})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, ModInt]

_COEFF_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; rejects zero denominators and decimals."""
    if not isinstance(text, str):
        raise ValueError(f"coefficient must be a string, got {type(text).__name__}")
    m = _COEFF_RE.match(text)
    if m is None:
        raise ValueError(f"malformed coefficient {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_scalar(x, modulus: int | None = None) -> Scalar:
    """Coerce ints/Fractions into the ring given by ``modulus`` (None = Q)."""
    if modulus is None:
        if isinstance(x, ModInt):
            raise RingError("expected a rational, got a residue")
        return Fraction(x)
    if isinstance(x, ModInt):
        if x.modulus != modulus:
            raise RingError(f"modulus mismatch: {x.modulus} vs {modulus}")
        return x
    return ModInt(x, modulus)
