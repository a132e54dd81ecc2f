"""Finite-precision p-adic integers and numbers.

A :class:`PAdicInt` stores its canonical residue in ``[0, p**N)``; digits are
extracted on demand and are the serialized form.  Precision is explicit and
mixed-precision arithmetic is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class PrecisionError(ValueError):
    """Operands disagree on prime or precision, or precision is too small."""


class NotAUnitError(ValueError):
    pass


class ZeroDecompositionError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    return p


def digits_of(value: int, p: int, count: int) -> tuple[int, ...]:
    out = []
    for _ in range(count):
        value, d = divmod(value, p)
        out.append(d)
    return tuple(out)


def value_of(digits: Iterable[int], p: int) -> int:
    total = 0
    for i, d in enumerate(digits):
        total += d * p**i
    return total


@dataclass(frozen=True)
class PAdicInt:
    """Element of the p-adic integers known modulo ``p**precision``."""

    p: int
    precision: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if self.precision < 1:
            raise PrecisionError("precision must be >= 1")
        if not 0 <= self.residue < self.p**self.precision:
            raise ValueError(f"residue {self.residue} outside [0, {self.p}^{self.precision})")

    @classmethod
    def from_digits(cls, p: int, digits: Sequence[int]) -> "PAdicInt":
        check_prime(p)
        digits = tuple(digits)
        if not digits:
            raise PrecisionError("at least one digit is required")
        for d in digits:
            if not isinstance(d, int) or not 0 <= d < p:
                raise ValueError(f"digit {d!r} outside [0, {p - 1}]")
        return cls(p, len(digits), value_of(digits, p))

    @classmethod
    def from_int(cls, p: int, precision: int, value: int) -> "PAdicInt":
        check_prime(p)
        return cls(p, precision, value % p**precision)

    @classmethod
    def one(cls, p: int, precision: int) -> "PAdicInt":
        return cls(p, precision, 1 % p**precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def digits(self) -> tuple[int, ...]:
        return digits_of(self.residue, self.p, self.precision)

    @property
    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def __int__(self):
        return self.residue

    def __add__(self, other):
        return padd(self, other)

    def __mul__(self, other):
        return pmul(self, other)

    def __neg__(self):
        return PAdicInt(self.p, self.precision, (-self.residue) % self.modulus)

    def to_json(self) -> dict:
        return {"p": self.p, "digits": list(self.digits)}

    @classmethod
    def from_json(cls, data: dict) -> "PAdicInt":
        return cls.from_digits(int(data["p"]), [int(d) for d in data["digits"]])

    def __repr__(self):
        return f"PAdicInt(p={self.p}, digits={self.digits})"


def _check_compatible(a: PAdicInt, b: PAdicInt) -> None:
    if a.p != b.p or a.precision != b.precision:
        raise PrecisionError(
            f"mismatched operands: (p={a.p}, N={a.precision}) vs (p={b.p}, N={b.precision})"
        )


def padd(a: PAdicInt, b: PAdicInt) -> PAdicInt:
    _check_compatible(a, b)
    return PAdicInt(a.p, a.precision, (a.residue + b.residue) % a.modulus)


def pmul(a: PAdicInt, b: PAdicInt) -> PAdicInt:
    _check_compatible(a, b)
    return PAdicInt(a.p, a.precision, (a.residue * b.residue) % a.modulus)


def pinv(u: PAdicInt) -> PAdicInt:
    if not u.is_unit:
        raise NotAUnitError(f"{u!r} has leading digit 0 and is not invertible")
    return PAdicInt(u.p, u.precision, pow(u.residue, -1, u.modulus))


@dataclass(frozen=True)
class PAdicNumber:
    """``p**valuation * unit``; ``unit`` is None for zero."""

    p: int
    valuation: int
    unit: PAdicInt | None

    def __post_init__(self):
        check_prime(self.p)
        if self.unit is not None:
            if self.unit.p != self.p:
                raise PrecisionError("unit has a different prime")
            if not self.unit.is_unit:
                raise NotAUnitError("leading digit of the unit part must be nonzero")

    @property
    def is_zero(self) -> bool:
        return self.unit is None

    @classmethod
    def zero(cls, p: int) -> "PAdicNumber":
        return cls(p, 0, None)

    @classmethod
    def from_digits(cls, p: int, digits: Sequence[int], start: int = 0) -> "PAdicNumber":
        """Build from digits ``x_start, x_{start+1}, ...``; ``start`` may be negative."""
        digits = tuple(digits)
        if not any(digits):
            return cls.zero(p)
        k, c = decompose(digits, p=p)
        return cls(p, start + k, c)

    def digits(self, start: int | None = None) -> tuple[int, tuple[int, ...]]:
        """Return ``(first_index, digits)`` of the stored expansion."""
        if self.unit is None:
            raise ZeroDecompositionError("zero has no stored digit expansion")
        if start is None:
            start = min(self.valuation, 0)
        if start > self.valuation:
            raise PrecisionError("start index above the valuation would drop digits")
        return start, (0,) * (self.valuation - start) + self.unit.digits

    def to_json(self) -> dict:
        if self.unit is None:
            return {"p": self.p, "valuation": 0, "digits": []}
        return {"p": self.p, "valuation": self.valuation, "digits": list(self.unit.digits)}

    @classmethod
    def from_json(cls, data: dict) -> "PAdicNumber":
        p = int(data["p"])
        digits = [int(d) for d in data["digits"]]
        if not digits:
            return cls.zero(p)
        return cls(p, int(data["valuation"]), PAdicInt.from_digits(p, digits))


def decompose(g, p: int | None = None) -> tuple[int, PAdicInt]:
    """Split a nonzero element into ``(k, c)`` with ``g = p**k * c`` and ``c_0 != 0``.

    ``g`` may be a :class:`PAdicNumber`, a :class:`PAdicInt` or a raw digit
    sequence (which then needs ``p``).  For digit input the unit keeps the
    digits after the first nonzero one, so its precision is ``len - k``.
    """
    if isinstance(g, PAdicNumber):
        if g.unit is None:
            raise ZeroDecompositionError("zero has no decomposition p^k c")
        return g.valuation, g.unit
    if isinstance(g, PAdicInt):
        p, digits = g.p, g.digits
    else:
        if p is None:
            raise ValueError("p is required for raw digit input")
        check_prime(p)
        digits = tuple(g)
        for d in digits:
            if not 0 <= d < p:
                raise ValueError(f"digit {d!r} outside [0, {p - 1}]")
    for k, d in enumerate(digits):
        if d != 0:
            return k, PAdicInt.from_digits(p, digits[k:])
    raise ZeroDecompositionError("all stored digits are zero")


def compose(k: int, c: PAdicInt) -> PAdicInt:
    """Inverse of :func:`decompose` for ``k >= 0``: digits of ``p**k * c``."""
    if k < 0:
        raise ValueError("negative valuation does not give a p-adic integer")
    return PAdicInt(c.p, c.precision + k, c.residue * c.p**k)


def unit_multiplier(c: PAdicInt, n: int) -> int:
    """``s_n = c_0 + c_1 p + ... + c_{n-1} p^{n-1}``, the action of ``c`` on ``Z(p^n)``."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if n > c.precision:
        raise PrecisionError(f"level {n} exceeds the precision {c.precision} of c")
    return c.residue % c.p**n


@dataclass(frozen=True)
class Automorphism:
    """Multiplication by ``p**k * c`` on the p-adic numbers."""

    p: int
    k: int
    c: PAdicInt

    def __post_init__(self):
        check_prime(self.p)
        if self.c.p != self.p:
            raise PrecisionError("unit has a different prime")
        if not self.c.is_unit:
            raise NotAUnitError("c_0 must be nonzero")

    @classmethod
    def from_digits(cls, p: int, k: int, c_digits: Sequence[int], precision: int | None = None):
        """Unit digits are zero-padded up to ``precision`` when given."""
        c_digits = list(c_digits)
        if precision is not None:
            if len(c_digits) > precision:
                raise PrecisionError("more unit digits than the requested precision")
            c_digits += [0] * (precision - len(c_digits))
        return cls(p, k, PAdicInt.from_digits(p, c_digits))

    def inverse(self) -> "Automorphism":
        return Automorphism(self.p, -self.k, pinv(self.c))

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        if other.p != self.p:
            raise PrecisionError("mismatched primes")
        return Automorphism(self.p, self.k + other.k, pmul(self.c, other.c))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "c": list(self.c.digits)}
