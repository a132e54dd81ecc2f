"""Symmetry of ``L2 = ξ1 + αξ2`` given ``L1 = ξ1 + ξ2`` on ``Z/p^n``.

Two independent routes decide the same question:

* :func:`fourier_symmetry_check` tests ``f(u+v) g(u+tv) = f(u-v) g(u-tv)``
  on the dual group;
* :func:`conditional_symmetry_check` builds the joint law of ``(L1, L2)``
  and tests that it is invariant under ``L2 -> -L2``.

They agree on every input (the joint characteristic function of
``(L1, L2)`` at ``(u, v)`` is ``f(u+v) g(u+tv)``); :func:`lemma1_crosscheck`
asserts exactly that.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import kernels
from .measures import (
    CharTable,
    FiniteDistribution,
    char_fn,
    format_rational,
    is_degenerate,
    is_idempotent_shift,
)
from .padic import Automorphism, PrecisionError, pinv
from .quotient import Multiplier, Subgroup, generated_subgroup, is_subgroup

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_BUDGET = 10**4


class BudgetError(ValueError):
    def __init__(self, count: int, budget: int, p: int, n: int, d: int):
        super().__init__(
            f"{count} grid distributions on Z/{p}^{n} with denominator {d} exceed the budget of {budget} per side"
        )
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class SymmetryReport:
    holds: bool
    max_residual: float
    witness: tuple[int, int] | None = None
    method: str = ""

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a witness is present exactly when the check fails")

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "max_residual": self.max_residual,
            "witness": None if self.witness is None else list(self.witness),
            "method": self.method,
        }


def _t_value(t, p: int, n: int) -> int:
    if isinstance(t, Multiplier):
        if (t.p, t.level) != (p, n):
            raise PrecisionError(f"multiplier lives on Z/{t.p}^{t.level}, tables on Z/{p}^{n}")
        return t.t
    return int(t) % p**n


def normalize_case(alpha: Automorphism) -> tuple[Automorphism, bool]:
    """Return ``(α', swapped)`` with ``α'.k >= 0``.

    For ``k < 0`` the pair ``(μ1, μ2)`` solves the problem for ``α`` iff
    ``(μ2, μ1)`` solves it for ``α^{-1}``, so ``swapped`` tells the caller to
    exchange the two distributions.
    """
    if alpha.k >= 0:
        return alpha, False
    return Automorphism(alpha.p, -alpha.k, pinv(alpha.c)), True


# -- Fourier side ---------------------------------------------------------


def _scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = lcm(*(v.denominator for v in values))
    return [v.numerator * (den // v.denominator) for v in values], den


def _exact_fourier_python(f, g, t, N):
    first, worst = None, Fraction(0)
    for u in range(N):
        for v in range(N):
            d = abs(f[(u + v) % N] * g[(u + t * v) % N] - f[(u - v) % N] * g[(u - t * v) % N])
            if d and first is None:
                first = (u, v)
            worst = max(worst, d)
    return first, worst


def fourier_symmetry_check(f: CharTable, g: CharTable, t, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Check the functional equation on every ``(u, v)``; exact when both tables are exact."""
    if (f.p, f.level) != (g.p, g.level):
        raise PrecisionError("tables live on different levels")
    N = f.order
    tv = _t_value(t, f.p, f.level)
    if f.exact and g.exact:
        F, df = _scaled(f.values)
        G, dg = _scaled(g.values)
        if max(map(abs, F), default=0) * max(map(abs, G), default=0) * 2 < kernels.INT64_SAFE:
            code, worst = kernels.exact_fourier_witness(F, G, tv, N)
            witness = None if code < 0 else divmod(code, N)
            residual = Fraction(worst, df * dg)
        else:
            witness, residual = _exact_fourier_python(f.values, g.values, tv, N)
        return SymmetryReport(witness is None, float(residual), witness, "fourier-exact")
    worst, code = kernels.fourier_residual(f.as_complex(), g.as_complex(), tv, N, tol)
    witness = None if code < 0 else divmod(code, N)
    return SymmetryReport(witness is None, worst, witness, "fourier-float")


# -- probability side -----------------------------------------------------


def _joint_fraction(mu1: FiniteDistribution, mu2: FiniteDistribution, t: int) -> dict:
    N = mu1.order
    J: dict[tuple[int, int], Fraction] = {}
    for x1 in mu1.support:
        for x2 in mu2.support:
            key = ((x1 + x2) % N, (x1 + t * x2) % N)
            J[key] = J.get(key, Fraction(0)) + mu1.probs[x1] * mu2.probs[x2]
    return J


def joint_law(mu1: FiniteDistribution, mu2: FiniteDistribution, t) -> dict:
    """Exact joint law of ``(L1, L2) = (x1 + x2, x1 + t x2)`` as ``{(l, s): prob}``."""
    mu1._same(mu2)
    return _joint_fraction(mu1, mu2, _t_value(t, mu1.p, mu1.level))


def conditional_symmetry_check(
    mu1: FiniteDistribution, mu2: FiniteDistribution, t, method: str = "auto"
) -> SymmetryReport:
    """Exact test that ``J(l, s) = J(l, -s)`` for the joint law ``J`` of ``(L1, L2)``.

    ``method="fraction"`` forces the pure-Fraction route, which shares no
    code with the integer kernel and serves as its oracle.
    """
    mu1._same(mu2)
    N = mu1.order
    tv = _t_value(t, mu1.p, mu1.level)
    if method not in ("auto", "fraction", "kernel"):
        raise ValueError(f"unknown method {method!r}")
    w1, d1 = mu1.integer_weights()
    w2, d2 = mu2.integer_weights()
    fits = max(w1) * max(w2) * N < kernels.INT64_SAFE
    if method == "kernel" or (method == "auto" and fits):
        if not fits:
            raise OverflowError("weights too large for the int64 kernel")
        code, worst = kernels.joint_witness(w1, w2, tv, N)
        witness = None if code < 0 else divmod(code, N)
        return SymmetryReport(witness is None, float(Fraction(worst, d1 * d2)), witness, "conditional-kernel")
    J = _joint_fraction(mu1, mu2, tv)
    witness, worst = None, Fraction(0)
    for l in range(N):
        for s in range(N):
            diff = abs(J.get((l, s), 0) - J.get((l, (-s) % N), 0))
            if diff and witness is None:
                witness = (l, s)
            worst = max(worst, diff)
    return SymmetryReport(witness is None, float(worst), witness, "conditional-fraction")


def lemma1_crosscheck(mu1: FiniteDistribution, mu2: FiniteDistribution, t, tol: float = DEFAULT_TOL) -> bool:
    """True iff the Fourier verdict and the conditional-law verdict coincide."""
    four = fourier_symmetry_check(char_fn(mu1), char_fn(mu2), t, tol)
    cond = conditional_symmetry_check(mu1, mu2, t)
    return four.holds == cond.holds


# -- structure of solutions ----------------------------------------------


def _is_one(v, exact: bool, tol: float) -> bool:
    return v == 1 if exact else abs(complex(v) - 1) <= tol


def _is_zero(v, exact: bool, tol: float) -> bool:
    return v == 0 if exact else abs(complex(v)) <= tol


@dataclass(frozen=True)
class OnesSet:
    elements: tuple[int, ...]
    is_subgroup: bool
    subgroup: Subgroup | None

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "is_subgroup": self.is_subgroup,
            "subgroup": None if self.subgroup is None else self.subgroup.to_json(),
        }


def subgroup_of_ones(f: CharTable, g: CharTable, tol: float = DEFAULT_TOL) -> OnesSet:
    """``E = {y : f(y) = g(y) = 1}`` and whether it is a subgroup of ``Z(p^n)``."""
    if (f.p, f.level) != (g.p, g.level):
        raise PrecisionError("tables live on different levels")
    exact = f.exact and g.exact
    E = tuple(
        y
        for y in range(f.order)
        if _is_one(f.values[y], exact, tol) and _is_one(g.values[y], exact, tol)
    )
    ok = is_subgroup(f.p, f.level, E)
    return OnesSet(E, ok, generated_subgroup(f.p, f.level, E) if ok else None)


def support_subgroup(f: CharTable, g: CharTable, tol: float = DEFAULT_TOL) -> Subgroup:
    """Subgroup generated by the nonzero sets of ``f`` and ``g``; ``is_full`` flags the whole group."""
    if (f.p, f.level) != (g.p, g.level):
        raise PrecisionError("tables live on different levels")
    fe, ge = f.exact, g.exact
    nz = [
        y
        for y in range(f.order)
        if not _is_zero(f.values[y], fe, tol) or not _is_zero(g.values[y], ge, tol)
    ]
    return generated_subgroup(f.p, f.level, nz)


# -- finite differences --------------------------------------------------


def finite_difference(psi, h: int) -> np.ndarray:
    """``Δ_h ψ(y) = ψ(y + h) - ψ(y)`` on ``Z/N`` (``N = len(psi)``)."""
    psi = np.asarray(psi, dtype=float)
    return np.roll(psi, -(h % len(psi))) - psi


def neg_log_table(table) -> np.ndarray:
    if isinstance(table, CharTable):
        vals = table.as_complex()
    else:
        vals = np.asarray(table, dtype=complex)
    if np.any(np.abs(vals.imag) > 1e-12) or np.any(vals.real <= 0):
        raise ValueError("-log needs a strictly positive real table")
    return -np.log(vals.real)


@dataclass(frozen=True)
class DifferenceChainReport:
    eq_residual: float
    step_residuals: tuple[float, float, float]
    triple_difference: float
    shifts: dict = field(default_factory=dict)

    def identities_hold(self, tol: float = 1e-12) -> bool:
        return max(self.step_residuals) <= tol

    def to_json(self) -> dict:
        return {
            "eq_residual": self.eq_residual,
            "step_residuals": list(self.step_residuals),
            "triple_difference": self.triple_difference,
            "shifts": dict(self.shifts),
        }


def difference_chain_check(
    psi1, psi2, t, k1: int, k2: int, k3: int, *, domain: int | None = None, from_char: bool = False, p: int | None = None
) -> DifferenceChainReport:
    """Run the three substitute-and-subtract steps that kill ``ψ2``.

    With ``R(u, v) = ψ1(u+v) + ψ2(u+tv) - ψ1(u-v) - ψ2(u-tv)`` the steps are
    ``(u, v) -> (u + t k1, v + k1)``, ``(u + k2, v + k2)`` and
    ``(u - t k3, v + k3)``; each step residual compares the shifted-minus-
    original expression with its closed form in finite differences, so it
    vanishes for any tables.  ``triple_difference`` is
    ``max |Δ_{(1-t)k3} Δ_{2k2} Δ_{(1+t)k1} ψ1|`` which is zero whenever
    ``R ≡ 0``.

    ``domain`` is the order exponent of the subgroup the variables range
    over (needs ``p``); by default the whole group.  ``from_char`` takes
    ``-log`` of strictly positive characteristic-function tables first.
    """
    if from_char:
        psi1, psi2 = neg_log_table(psi1), neg_log_table(psi2)
    psi1 = np.asarray(psi1, dtype=float)
    psi2 = np.asarray(psi2, dtype=float)
    N = len(psi1)
    if len(psi2) != N:
        raise PrecisionError("tables of different length")
    if isinstance(t, Multiplier):
        t = t.t
    t = int(t) % N
    if domain is None:
        H = np.arange(N)
    else:
        if p is None:
            raise ValueError("p is required with domain")
        level = round(math.log(N, p))
        sub = Subgroup(p, level, domain)
        H = np.array(sub.elements())
        for k in (k1, k2, k3):
            if k % N not in sub:
                raise ValueError(f"shift {k} is not in the domain subgroup")
    U, V = np.meshgrid(H, H, indexing="ij")

    D = finite_difference
    l11, l12, l13 = (t + 1) * k1, 2 * t * k1, (t - 1) * k1
    l21, l22 = 2 * k2, (1 + t) * k2
    l31 = (1 - t) * k3
    d11, d12, d13 = D(psi1, l11), D(psi2, l12), D(psi1, l13)
    d21, d22 = D(d11, l21), D(d12, l22)
    d31 = D(d21, l31)

    def R(u, v):
        return psi1[(u + v) % N] + psi2[(u + t * v) % N] - psi1[(u - v) % N] - psi2[(u - t * v) % N]

    def E5(u, v):
        return d11[(u + v) % N] + d12[(u + t * v) % N] - d13[(u - v) % N]

    def E6(u, v):
        return d21[(u + v) % N] + d22[(u + t * v) % N]

    def E7(u, v):
        return d31[(u + v) % N]

    s1 = np.abs(R(U + t * k1, V + k1) - R(U, V) - E5(U, V)).max()
    s2 = np.abs(E5(U + k2, V + k2) - E5(U, V) - E6(U, V)).max()
    s3 = np.abs(E6(U - t * k3, V + k3) - E6(U, V) - E7(U, V)).max()
    shifts = {"l11": l11 % N, "l12": l12 % N, "l13": l13 % N, "l21": l21 % N, "l22": l22 % N, "l31": l31 % N}
    return DifferenceChainReport(
        float(np.abs(R(U, V)).max()),
        (float(s1), float(s2), float(s3)),
        float(np.abs(E7(U, V)).max()),
        shifts,
    )


# -- exhaustive enumeration ----------------------------------------------


def grid_size(N: int, d: int) -> int:
    return math.comb(d + N - 1, N - 1)


def grid_weights(N: int, d: int) -> np.ndarray:
    """All ``w`` in ``{0..d}^N`` with ``Σ w = d``, in lexicographic order."""
    rows = []
    for bars in itertools.combinations(range(d + N - 1), N - 1):
        prev, row = -1, []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(d + N - 2 - prev)
        rows.append(row)
    rows.sort()
    return np.array(rows, dtype=np.int64).reshape(-1, N)


def pair_class(mu1: FiniteDistribution, mu2: FiniteDistribution) -> str:
    if is_degenerate(mu1) and is_degenerate(mu2):
        return "degenerate-pair"
    if is_idempotent_shift(mu1) and is_idempotent_shift(mu2):
        return "idempotent-pair"
    return "other"


@dataclass(frozen=True)
class EnumerationResult:
    p: int
    level: int
    t: int
    d: int
    candidates: int
    solutions: tuple[tuple[FiniteDistribution, FiniteDistribution], ...]
    summary: dict

    def __post_init__(self):
        if sum(self.summary.values()) != len(self.solutions):
            raise ValueError("summary counts must add up to the number of solutions")

    def to_json(self) -> dict:
        sols = []
        N = self.p**self.level
        for mu1, mu2 in self.solutions:
            entry = {
                "mu1": [format_rational(q) for q in mu1.probs],
                "mu2": [format_rational(q) for q in mu2.probs],
                "class": pair_class(mu1, mu2),
            }
            if entry["class"] == "degenerate-pair":
                x1, x2 = mu1.support[0], mu2.support[0]
                entry["shifts"] = [x1, x2]
                entry["l2_value"] = (x1 + self.t * x2) % N
            sols.append(entry)
        return {
            "p": self.p,
            "level": self.level,
            "t": self.t,
            "d": self.d,
            "candidates_per_side": self.candidates,
            "solutions": sols,
            "summary": dict(sorted(self.summary.items())),
        }

    @classmethod
    def from_json(cls, data: dict) -> "EnumerationResult":
        p, n = int(data["p"]), int(data["level"])
        sols = tuple(
            (
                FiniteDistribution(p, n, tuple(Fraction(q) for q in s["mu1"])),
                FiniteDistribution(p, n, tuple(Fraction(q) for q in s["mu2"])),
            )
            for s in data["solutions"]
        )
        return cls(p, n, int(data["t"]), int(data["d"]), int(data["candidates_per_side"]), sols, dict(data["summary"]))


def _enumerate_chunk(args):
    W, t, N, start, stop = args
    return kernels.enumerate_pairs(W, W, t, N, start, stop)


def enumerate_grid_solutions(p: int, n: int, t, d: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> EnumerationResult:
    """Every pair of distributions with entries in ``{0, 1/d, ..., 1}`` solving the symmetry problem.

    All arithmetic is on integer weights, so the verdicts are exact.  With
    ``jobs > 1`` the rows are split across processes; the merged output is
    sorted lexicographically by ``(μ1, μ2)`` either way.
    """
    N = p**n
    tv = _t_value(t, p, n)
    count = grid_size(N, d)
    if count > budget:
        raise BudgetError(count, budget, p, n, d)
    W = grid_weights(N, d)
    M = len(W)
    if jobs <= 1 or M < 2 * jobs:
        pairs = kernels.enumerate_pairs(W, W, tv, N, 0, M)
    else:
        edges = np.linspace(0, M, jobs + 1).astype(int)
        tasks = [(W, tv, N, int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_enumerate_chunk, tasks))
        pairs = np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)
    pairs = sorted(map(tuple, pairs.tolist()))
    log.debug("p=%d n=%d t=%d d=%d: %d solutions among %d^2 pairs", p, n, tv, d, len(pairs), M)
    dists = {}

    def dist(i):
        if i not in dists:
            dists[i] = FiniteDistribution(p, n, tuple(Fraction(int(w), d) for w in W[i]))
        return dists[i]

    sols = tuple((dist(i), dist(j)) for i, j in pairs)
    summary = {"degenerate-pair": 0, "idempotent-pair": 0, "other": 0}
    for mu1, mu2 in sols:
        summary[pair_class(mu1, mu2)] += 1
    return EnumerationResult(p, n, tv, d, M, sols, summary)


# -- Monte Carlo ---------------------------------------------------------


def monte_carlo_symmetry(mu1: FiniteDistribution, mu2: FiniteDistribution, t, samples: int, seed: int) -> float:
    """Largest total-variation distance between the empirical law of ``L2 | L1 = l`` and its reflection."""
    mu1._same(mu2)
    N = mu1.order
    tv = _t_value(t, mu1.p, mu1.level)
    rng = np.random.default_rng(seed)
    p1 = np.array([float(q) for q in mu1.probs])
    p2 = np.array([float(q) for q in mu2.probs])
    x1 = rng.choice(N, size=samples, p=p1 / p1.sum())
    x2 = rng.choice(N, size=samples, p=p2 / p2.sum())
    L1 = (x1 + x2) % N
    L2 = (x1 + tv * x2) % N
    C = np.bincount(L1 * N + L2, minlength=N * N).reshape(N, N).astype(float)
    rows = C.sum(axis=1)
    neg = (-np.arange(N)) % N
    tvd = 0.5 * np.abs(C - C[:, neg]).sum(axis=1)
    seen = rows > 0
    return float((tvd[seen] / rows[seen]).max())
