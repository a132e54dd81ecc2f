"""Finite quotients of the p-adic tower and their duals.

Both ``Δ_p / p^n Δ_p`` and its dual ``Z(p^n)`` are stored as residues modulo
``p**n``; the residue ``l`` of the dual stands for the fraction ``l / p**n``
and the pairing is ``exp(2πi x y / p^n)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .padic import Automorphism, PrecisionError, check_prime, digits_of, unit_multiplier


class MustNormalizeError(ValueError):
    """Raised for automorphisms with negative valuation; see ``engine.normalize_case``."""


def _valuation(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class QuotientElement:
    p: int
    level: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} outside [0, {self.modulus})")

    @property
    def modulus(self) -> int:
        return self.p**self.level

    def _same(self, other: "QuotientElement"):
        if (other.p, other.level) != (self.p, self.level):
            raise PrecisionError("level mismatch")

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        self._same(other)
        return QuotientElement(self.p, self.level, (self.residue + other.residue) % self.modulus)

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        self._same(other)
        return QuotientElement(self.p, self.level, (self.residue - other.residue) % self.modulus)

    def __neg__(self) -> "QuotientElement":
        return QuotientElement(self.p, self.level, (-self.residue) % self.modulus)

    def scale(self, t: int) -> "QuotientElement":
        return QuotientElement(self.p, self.level, (t * self.residue) % self.modulus)

    def as_fraction(self) -> Fraction:
        """The dual reading ``l / p^n`` in ``Z(p^∞)``."""
        return Fraction(self.residue, self.modulus)


@dataclass(frozen=True)
class Multiplier:
    """Endomorphism ``y -> t*y`` of ``Z(p^n)`` induced by ``p^k c``."""

    p: int
    level: int
    t: int

    def __post_init__(self):
        check_prime(self.p)
        if not 0 <= self.t < self.p**self.level:
            raise ValueError("t must be a residue mod p^level")

    @property
    def modulus(self) -> int:
        return self.p**self.level

    @property
    def is_invertible(self) -> bool:
        return self.t % self.p != 0

    def __call__(self, y: int) -> int:
        return (self.t * y) % self.modulus

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        if (other.p, other.level) != (self.p, self.level):
            raise PrecisionError("level mismatch")
        return Multiplier(self.p, self.level, (self.t * other.t) % self.modulus)


def tau(p: int, digits: Sequence[int], l: int, start: int = 0) -> Fraction:
    """Image of ``x + p^l Δ_p`` in ``Z(p^∞)``.

    ``digits[i]`` is the digit ``x_{start+i}``; only digits with index below
    ``l`` contribute.  The result is ``Σ_{n<l} x_n p^{n-l}`` reduced mod 1.
    """
    check_prime(p)
    total = Fraction(0)
    for i, d in enumerate(digits):
        idx = start + i
        if idx >= l:
            break
        if not 0 <= d < p:
            raise ValueError(f"digit {d!r} outside [0, {p - 1}]")
        total += Fraction(d) * Fraction(p) ** (idx - l)
    return total - (total.numerator // total.denominator)


def tau_inverse(p: int, y: Fraction, l: int) -> tuple[int, tuple[int, ...]]:
    """Canonical coset representative of ``y`` as ``(start, digits)``; inverse of :func:`tau`."""
    check_prime(p)
    y = Fraction(y) % 1
    if y == 0:
        return l, ()
    den = y.denominator
    n = _valuation(den, p, 0)
    if p**n != den:
        raise ValueError(f"{y} is not in Z({p}^∞)")
    return l - n, digits_of(y.numerator, p, n)


def pairing_index(x: QuotientElement, y: QuotientElement) -> int:
    """Exact root-of-unity index: ``pairing(x, y) = ζ^(result)`` with ``ζ = exp(2πi/p^n)``."""
    x._same(y)
    return (x.residue * y.residue) % x.modulus


def pairing(x: QuotientElement, y: QuotientElement) -> complex:
    return cmath.exp(2j * cmath.pi * pairing_index(x, y) / x.modulus)


def induced_endomorphism(alpha: Automorphism, n: int) -> Multiplier:
    if alpha.k < 0:
        raise MustNormalizeError(
            f"k = {alpha.k} < 0; normalize the automorphism before passing to the quotient"
        )
    mod = alpha.p**n
    return Multiplier(alpha.p, n, (alpha.p**alpha.k * unit_multiplier(alpha.c, n)) % mod)


@dataclass(frozen=True)
class Subgroup:
    """The order-``p**order_exponent`` subgroup of the cyclic group of order ``p**level``."""

    p: int
    level: int
    order_exponent: int

    def __post_init__(self):
        check_prime(self.p)
        if not 0 <= self.order_exponent <= self.level:
            raise ValueError("order exponent must lie in [0, level]")

    @property
    def order(self) -> int:
        return self.p**self.order_exponent

    @property
    def step(self) -> int:
        return self.p ** (self.level - self.order_exponent)

    @property
    def is_trivial(self) -> bool:
        return self.order_exponent == 0

    @property
    def is_full(self) -> bool:
        return self.order_exponent == self.level

    def elements(self) -> tuple[int, ...]:
        return tuple(range(0, self.p**self.level, self.step))

    def __contains__(self, y: int) -> bool:
        return y % self.step == 0

    def to_json(self) -> dict:
        return {"p": self.p, "level": self.level, "order_exponent": self.order_exponent}

    @classmethod
    def from_json(cls, data: dict) -> "Subgroup":
        return cls(int(data["p"]), int(data["level"]), int(data["order_exponent"]))


def annihilator(p: int, m: int, n: int) -> Subgroup:
    """Characters of ``Z/p^n`` trivial on the image of ``p^m Δ_p``, i.e. ``{y : p^m y ≡ 0}``."""
    if not 0 <= m <= n:
        raise ValueError(f"subgroup index m={m} must satisfy 0 <= m <= n={n}")
    return Subgroup(p, n, m)


def generated_subgroup(p: int, n: int, elements: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``Z/p^n`` containing ``elements``."""
    mod = p**n
    g = mod
    for e in elements:
        g = gcd(g, e % mod)
    v = _valuation(g, p, n) if g != mod else n
    return Subgroup(p, n, n - v)


def is_subgroup(p: int, n: int, elements: Iterable[int]) -> bool:
    s = frozenset(e % p**n for e in elements)
    return bool(s) and s == frozenset(generated_subgroup(p, n, s).elements())
