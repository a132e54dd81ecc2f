"""Exact distributions on ``Δ_p / p^n Δ_p`` and their characteristic functions.

Probabilities are :class:`fractions.Fraction` throughout.  Floats only appear
in :class:`CharTable` values produced by :func:`char_fn`; accept/reject logic
in this package never reads them where an exact route exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .padic import PrecisionError, check_prime
from .quotient import Subgroup, annihilator

MAX_GROUP_ORDER = 2**20


def parse_rational(value) -> Fraction:
    """Accept ``Fraction``, ``int`` or ``"num/den"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    # "1/3", and plain "0" / "1" for integers
    return str(Fraction(q))


def _group_order(p: int, n: int) -> int:
    check_prime(p)
    if n < 1:
        raise ValueError("level must be >= 1")
    order = p**n
    if order > MAX_GROUP_ORDER:
        raise ValueError(f"p^n = {order} exceeds the dense-vector cap {MAX_GROUP_ORDER}")
    return order


@dataclass(frozen=True)
class FiniteDistribution:
    p: int
    level: int
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        order = _group_order(self.p, self.level)
        probs = tuple(parse_rational(q) for q in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != order:
            raise ValueError(f"expected {order} probabilities, got {len(probs)}")
        if any(q < 0 for q in probs):
            raise ValueError("probabilities must be nonnegative")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")

    @property
    def order(self) -> int:
        return self.p**self.level

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(x for x, q in enumerate(self.probs) if q)

    def integer_weights(self) -> tuple[list[int], int]:
        """``(weights, D)`` with ``probs[x] == weights[x] / D`` and ``D`` minimal."""
        den = lcm(*(q.denominator for q in self.probs))
        return [q.numerator * (den // q.denominator) for q in self.probs], den

    def to_json(self) -> dict:
        return {"p": self.p, "level": self.level, "probs": [format_rational(q) for q in self.probs]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteDistribution":
        return cls(int(data["p"]), int(data["level"]), tuple(parse_rational(q) for q in data["probs"]))

    def _same(self, other: "FiniteDistribution"):
        if (self.p, self.level) != (other.p, other.level):
            raise PrecisionError(
                f"distributions live on different quotients: ({self.p}, {self.level}) vs ({other.p}, {other.level})"
            )


@dataclass(frozen=True)
class SubgroupMixture:
    """``Σ a_i m_{p^{m_i} Δ_p}`` pushed to level ``n``."""

    p: int
    level: int
    terms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        _group_order(self.p, self.level)
        terms = tuple((int(m), parse_rational(a)) for m, a in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("a mixture needs at least one term")
        for m, a in terms:
            if not 0 <= m <= self.level:
                raise ValueError(f"subgroup index {m} outside [0, {self.level}]")
            if a <= 0:
                raise ValueError("mixture weights must be positive")
        if sum(a for _, a in terms) != 1:
            raise ValueError("mixture weights must sum to 1")

    def to_distribution(self) -> FiniteDistribution:
        probs = [Fraction(0)] * self.p**self.level
        for m, a in self.terms:
            h = haar_on_subgroup(self.p, m, self.level)
            for x in h.support:
                probs[x] += a * h.probs[x]
        return FiniteDistribution(self.p, self.level, tuple(probs))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "level": self.level,
            "terms": [{"m": m, "a": format_rational(a)} for m, a in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubgroupMixture":
        return cls(
            int(data["p"]),
            int(data["level"]),
            tuple((int(t["m"]), parse_rational(t["a"])) for t in data["terms"]),
        )


@dataclass(frozen=True, eq=False)
class CharTable:
    """Characteristic-function values on ``Z(p^n)``, indexed by residue.

    ``exact`` tables hold Fractions (real rational values); otherwise
    ``values`` is a complex numpy array.
    """

    p: int
    level: int
    values: object
    exact: bool = False

    @property
    def order(self) -> int:
        return self.p**self.level

    def __getitem__(self, y: int):
        return self.values[y % self.order]

    def as_complex(self) -> np.ndarray:
        if self.exact:
            return np.array([float(v) for v in self.values], dtype=complex)
        return np.asarray(self.values, dtype=complex)

    def to_json(self) -> dict:
        if self.exact:
            vals = [format_rational(v) for v in self.values]
        else:
            vals = [[float(v.real), float(v.imag)] for v in self.values]
        return {"p": self.p, "level": self.level, "exact": self.exact, "values": vals}


def haar_on_subgroup(p: int, m: int, n: int) -> FiniteDistribution:
    """Uniform distribution on the image of ``p^m Δ_p`` (residues divisible by ``p^m``)."""
    order = _group_order(p, n)
    if not 0 <= m <= n:
        raise ValueError(f"subgroup index m={m} must satisfy 0 <= m <= n={n}")
    step = p**m
    w = Fraction(1, p ** (n - m))
    return FiniteDistribution(p, n, tuple(w if x % step == 0 else Fraction(0) for x in range(order)))


def point_mass(p: int, x: int, n: int) -> FiniteDistribution:
    order = _group_order(p, n)
    x %= order
    return FiniteDistribution(p, n, tuple(Fraction(int(i == x)) for i in range(order)))


def uniform(p: int, n: int) -> FiniteDistribution:
    return haar_on_subgroup(p, 0, n)


def convolve(mu: FiniteDistribution, nu: FiniteDistribution) -> FiniteDistribution:
    mu._same(nu)
    order = mu.order
    out = [Fraction(0)] * order
    for x in mu.support:
        a = mu.probs[x]
        for z in nu.support:
            out[(x + z) % order] += a * nu.probs[z]
    return FiniteDistribution(mu.p, mu.level, tuple(out))


def reflect(mu: FiniteDistribution) -> FiniteDistribution:
    order = mu.order
    return FiniteDistribution(mu.p, mu.level, tuple(mu.probs[(-x) % order] for x in range(order)))


def symmetrize(mu: FiniteDistribution) -> FiniteDistribution:
    """``μ * μ̄``; its characteristic function is ``|μ̂|²``."""
    return convolve(mu, reflect(mu))


def char_fn(mu: FiniteDistribution) -> CharTable:
    # N * ifft(q)[y] = Σ_x q[x] exp(2πi x y / N), matching the pairing convention.
    probs = np.array([float(q) for q in mu.probs])
    return CharTable(mu.p, mu.level, mu.order * np.fft.ifft(probs), exact=False)


def inverse_char_fn(table: CharTable) -> np.ndarray:
    """Recover probabilities (as floats) from a characteristic-function table."""
    return np.fft.fft(table.as_complex()).real / table.order


def char_fn_exact(sigma: SubgroupMixture) -> CharTable:
    """Exact table of a Haar mixture: value at ``y`` is the weight of the terms whose annihilator holds ``y``."""
    order = sigma.p**sigma.level
    values = [Fraction(0)] * order
    for m, a in sigma.terms:
        for y in annihilator(sigma.p, m, sigma.level).elements():
            values[y] += a
    return CharTable(sigma.p, sigma.level, tuple(values), exact=True)


def exact_table(p: int, n: int, values: Sequence) -> CharTable:
    return CharTable(p, n, tuple(parse_rational(v) for v in values), exact=True)


@dataclass(frozen=True)
class IdempotentVerdict:
    """Result of :func:`is_idempotent_shift`: ``μ = m_K * E_shift`` with ``K = p^m Δ_p`` image."""

    idempotent: bool
    subgroup: Subgroup | None = None
    shift: int | None = None

    def __bool__(self):
        return self.idempotent

    def to_json(self) -> dict:
        return {
            "idempotent": self.idempotent,
            "subgroup": None if self.subgroup is None else self.subgroup.to_json(),
            "shift": self.shift,
        }


def is_idempotent_shift(mu: FiniteDistribution) -> IdempotentVerdict:
    """Is ``μ`` uniform on one coset ``x + K`` of a subgroup ``K``?

    The returned subgroup is ``K`` inside ``Z/p^n`` (``order_exponent`` is
    ``log_p |K|``) and ``shift`` is the least residue of the coset.
    """
    support = mu.support
    size = len(support)
    j = 0
    while mu.p**j < size:
        j += 1
    if mu.p**j != size:
        return IdempotentVerdict(False)
    step = mu.p ** (mu.level - j)
    x0 = support[0]
    if any((x - x0) % step for x in support):
        return IdempotentVerdict(False)
    w = mu.probs[x0]
    if any(mu.probs[x] != w for x in support):
        return IdempotentVerdict(False)
    return IdempotentVerdict(True, Subgroup(mu.p, mu.level, j), x0)


def is_degenerate(mu: FiniteDistribution) -> bool:
    return any(q == 1 for q in mu.probs)
