"""Case table for ``α = p^k c`` and the explicit non-idempotent solution families.

Case ids follow the statements of the characterization theorem:

* ``1i``   ``p > 2, k = 0, c_0 != p-1``: solutions are ``m_K * E_x`` (degenerate when ``c_0 = 1``)
* ``1ii``  ``p = 2, k = 0, c_0 = 1, c_1 = 0``: degenerate only
* ``1iii`` ``p > 2, |k| = 1``: one of the two is idempotent
* ``2i``   ``p > 2, k = 0, c_0 = p-1``
* ``2ii``  ``p = 2, k = 0, c_0 = c_1 = 1``
* ``2iii`` ``p = 2, |k| = 1``
* ``2iv``  ``|k| >= 2``

The ``2*`` cases admit solutions outside the idempotent class; this module
builds them as Haar mixtures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .engine import conditional_symmetry_check, fourier_symmetry_check, normalize_case
from .measures import SubgroupMixture, char_fn_exact, format_rational, is_idempotent_shift, parse_rational
from .padic import Automorphism, check_prime
from .quotient import induced_endomorphism

CASE_IDS = ("1i", "1ii", "1iii", "2i", "2ii", "2iii", "2iv")
CONSTRUCTIBLE = ("2i", "2ii", "2iii", "2iv")
REMARK_VARIANTS = ("haar-pair", "k1-pair")
GROUPS = ("omega", "delta")


class CaseMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CaseLabel:
    group: str
    case_id: str
    p: int
    k: int
    c0: int
    c1: int
    degenerate_subcase: bool = False

    @property
    def label(self) -> str:
        return "1i-degenerate-subcase" if self.degenerate_subcase else self.case_id

    @property
    def admits_counterexample(self) -> bool:
        return self.case_id.startswith("2")

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "case": self.case_id,
            "degenerate_subcase": self.degenerate_subcase,
            "p": self.p,
            "k": self.k,
            "c0": self.c0,
            "c1": self.c1,
        }


def _c01(p: int, c_digits: Sequence[int]) -> tuple[int, int]:
    digits = list(c_digits) + [0, 0]
    c0, c1 = int(digits[0]), int(digits[1])
    if not 1 <= c0 <= p - 1:
        raise ValueError(f"c_0 = {c0} must lie in [1, p-1]; c must be a unit")
    if not 0 <= c1 <= p - 1:
        raise ValueError(f"c_1 = {c1} must lie in [0, p-1]")
    return c0, c1


def classify_case(group: str, p: int, k: int, c_digits: Sequence[int]) -> CaseLabel:
    """Which statement governs ``α = p^k c``; missing digits of ``c`` read as 0."""
    if group not in GROUPS:
        raise ValueError(f"group must be one of {GROUPS}")
    check_prime(p)
    c0, c1 = _c01(p, c_digits)
    if group == "delta" and k != 0:
        raise ValueError("automorphisms of the p-adic integers have k = 0")
    if abs(k) >= 2:
        case = "2iv"
    elif abs(k) == 1:
        case = "2iii" if p == 2 else "1iii"
    elif p == 2:
        case = "1ii" if c1 == 0 else "2ii"
    elif c0 == p - 1:
        case = "2i"
    else:
        case = "1i"
    return CaseLabel(group, case, p, k, c0, c1, degenerate_subcase=(case == "1i" and c0 == 1))


def branch_conditions(p: int, k: int, c0: int, c1: int) -> dict[str, bool]:
    """Each statement's hypothesis evaluated on its own, for exhaustiveness checks."""
    return {
        "1i": p > 2 and k == 0 and c0 != p - 1,
        "1ii": p == 2 and k == 0 and c0 == 1 and c1 == 0,
        "1iii": p > 2 and abs(k) == 1,
        "2i": p > 2 and k == 0 and c0 == p - 1,
        "2ii": p == 2 and k == 0 and c0 == 1 and c1 == 1,
        "2iii": p == 2 and abs(k) == 1,
        "2iv": p >= 2 and abs(k) >= 2,
    }


def _weight(a) -> Fraction:
    a = parse_rational(a)
    if not 0 < a < 1:
        raise ValueError(f"a = {a} must lie strictly between 0 and 1")
    return a


def _two_tier(p: int, n: int, lo: int, hi: int, a: Fraction) -> SubgroupMixture:
    # a * m_{p^lo Δ_p} + (1-a) * m_{p^hi Δ_p}
    return SubgroupMixture(p, n, ((lo, a), (hi, 1 - a)))


def construct_case(case_id: str, p: int, k: int, a, n: int) -> tuple[SubgroupMixture, SubgroupMixture]:
    """The mixture pair solving the problem in case ``case_id`` with ``k >= 0``."""
    check_prime(p)
    a = _weight(a)
    k = abs(k)
    if case_id == "2i":
        if p == 2 or k != 0:
            raise CaseMismatchError("2i needs p > 2 and k = 0")
        need = 1
    elif case_id == "2ii":
        if p != 2 or k != 0:
            raise CaseMismatchError("2ii needs p = 2 and k = 0")
        need = 1
    elif case_id == "2iii":
        if p != 2 or k != 1:
            raise CaseMismatchError("2iii needs p = 2 and |k| = 1")
        need = 2
    elif case_id == "2iv":
        if k < 2:
            raise CaseMismatchError("2iv needs |k| >= 2")
        need = k + 1
    else:
        raise CaseMismatchError(f"no construction for case {case_id!r}; expected one of {CONSTRUCTIBLE}")
    if n < need:
        raise ValueError(f"level {n} too small for case {case_id}; need n >= {need}")
    if case_id in ("2i", "2ii"):
        mu = _two_tier(p, n, 0, 1, a)
        return mu, mu
    if case_id == "2iii":
        return _two_tier(p, n, 1, 2, a), _two_tier(p, n, 0, 1, a)
    return _two_tier(p, n, k - 1, k, a), _two_tier(p, n, 0, k - 1, a)


def remark1_distribution(variant: str, p: int, a, n: int) -> tuple[SubgroupMixture, SubgroupMixture]:
    """Solutions showing the ``1i`` and ``1iii`` conclusions cannot be strengthened.

    ``haar-pair``: both uniform on ``Δ_p`` (needs some ``c_0`` other than
    ``1`` and ``p-1``, so ``p >= 5``).  ``k1-pair``: a two-tier mixture
    against the uniform distribution, for ``|k| = 1``.
    """
    check_prime(p)
    if variant == "haar-pair":
        if p < 5:
            raise CaseMismatchError(f"no c_0 outside {{1, p-1}} exists for p = {p}")
        h = SubgroupMixture(p, n, ((0, Fraction(1)),))
        return h, h
    if variant == "k1-pair":
        a = _weight(a)
        return _two_tier(p, n, 0, 1, a), SubgroupMixture(p, n, ((0, Fraction(1)),))
    raise ValueError(f"unknown variant {variant!r}; expected one of {REMARK_VARIANTS}")


@dataclass
class ConstructionReport:
    case: str
    p: int
    k: int
    c: tuple[int, ...]
    a: Fraction | None
    level: int
    t: int = 0
    swapped: bool = False
    fourier: dict | None = None
    conditional: dict | None = None
    idempotent: tuple[bool, bool] = (False, False)
    mu1: SubgroupMixture | None = None
    mu2: SubgroupMixture | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "p": self.p,
            "k": self.k,
            "c": list(self.c),
            "a": None if self.a is None else format_rational(self.a),
            "level": self.level,
            "t": self.t,
            "swapped": self.swapped,
            "fourier": self.fourier,
            "conditional": self.conditional,
            "idempotent": list(self.idempotent),
            "mu1": None if self.mu1 is None else self.mu1.to_json(),
            "mu2": None if self.mu2 is None else self.mu2.to_json(),
            "passed": self.passed,
            "failures": list(self.failures),
        }


def default_unit(case_id: str, p: int) -> tuple[int, ...]:
    """A representative ``c`` for a case: ``(p-1, 0, ...)`` for 2i, ``(1, 1)`` for 2ii, else 1."""
    if case_id == "2i":
        return (p - 1,)
    if case_id == "2ii":
        return (1, 1)
    if case_id == "haar-pair":
        return (2,)
    return (1,)


def verify_construction(case: str, p: int, k: int, c_digits: Sequence[int] | None, a, n: int) -> ConstructionReport:
    """Build the pair for ``case`` and check it end to end.

    The pair is built for the normalized automorphism (``k >= 0``); when
    ``k < 0`` the report's ``swapped`` flag says the pair solves the original
    problem with ``μ1`` and ``μ2`` exchanged.  Both symmetry checks run on
    exact tables and exact laws.
    """
    if c_digits is None:
        c_digits = default_unit(case, p)
    rep = ConstructionReport(case, p, k, tuple(c_digits), None if a is None else parse_rational(a), n)
    label = classify_case("omega", p, k, c_digits)
    if case in CONSTRUCTIBLE:
        if label.case_id != case:
            raise CaseMismatchError(f"(p={p}, k={k}, c={tuple(c_digits)}) is case {label.case_id}, not {case}")
        mu1, mu2 = construct_case(case, p, k, a, n)
        expect_idem = (False, False)
    elif case == "haar-pair":
        if label.case_id != "1i" or label.c0 in (1, p - 1):
            raise CaseMismatchError("haar-pair needs p > 2, k = 0 and c_0 outside {1, p-1}")
        mu1, mu2 = remark1_distribution(case, p, a, n)
        expect_idem = (True, True)
    elif case == "k1-pair":
        if abs(k) != 1:
            raise CaseMismatchError("k1-pair needs |k| = 1")
        mu1, mu2 = remark1_distribution(case, p, a, n)
        expect_idem = (False, True)
    else:
        raise CaseMismatchError(f"unknown case {case!r}")

    alpha = Automorphism.from_digits(p, k, c_digits, precision=max(n, len(c_digits)))
    alpha_n, swapped = normalize_case(alpha)
    t = induced_endomorphism(alpha_n, n)
    rep.t, rep.swapped, rep.mu1, rep.mu2 = t.t, swapped, mu1, mu2

    four = fourier_symmetry_check(char_fn_exact(mu1), char_fn_exact(mu2), t)
    cond = conditional_symmetry_check(mu1.to_distribution(), mu2.to_distribution(), t)
    rep.fourier, rep.conditional = four.to_json(), cond.to_json()
    if not four.holds:
        rep.failures.append(f"Fourier equation fails at (u, v) = {four.witness}")
    if not cond.holds:
        rep.failures.append(f"conditional law not symmetric at (l, s) = {cond.witness}")
    idem = (bool(is_idempotent_shift(mu1.to_distribution())), bool(is_idempotent_shift(mu2.to_distribution())))
    rep.idempotent = idem
    for j, (got, want) in enumerate(zip(idem, expect_idem), start=1):
        if got != want:
            rep.failures.append(f"mu{j} idempotent={got}, expected {want}")
    return rep


def tier_description(mix: SubgroupMixture) -> str:
    return " + ".join(f"{a}*m[p^{m}]" for m, a in mix.terms)
