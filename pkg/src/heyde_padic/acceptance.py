"""Exit criteria for the package, runnable from pytest or ``heyde-padic selftest``.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the wall
time limit is part of the verdict.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constructions import (
    branch_conditions,
    classify_case,
    construct_case,
    verify_construction,
)
from .engine import (
    conditional_symmetry_check,
    difference_chain_check,
    enumerate_grid_solutions,
    fourier_symmetry_check,
    grid_weights,
    monte_carlo_symmetry,
    subgroup_of_ones,
    support_subgroup,
)
from .measures import (
    FiniteDistribution,
    SubgroupMixture,
    char_fn,
    char_fn_exact,
    haar_on_subgroup,
    is_degenerate,
    is_idempotent_shift,
    point_mass,
    symmetrize,
)

TOL = 1e-9
SEED = 20240917


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed and self.elapsed < self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.elapsed:.2f}s / {self.limit:.0f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.ok,
            "checks_passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "limit": self.limit,
            "detail": self.detail,
        }


def _timed(number, name, limit, fn) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(number, name, bool(passed), time.perf_counter() - t0, limit, detail)


def _tier_table(p, n, inner, outer, a):
    """Independent tier table: 1 on Z(p^inner), 1-a on Z(p^outer) minus it, 0 outside."""
    N = p**n
    vals = []
    for y in range(N):
        if y % p ** (n - inner) == 0:
            vals.append(Fraction(1))
        elif y % p ** (n - outer) == 0:
            vals.append(1 - a)
        else:
            vals.append(Fraction(0))
    return tuple(vals)


def criterion_1():
    def run():
        bad = []
        cases = 0
        for p in (2, 3, 5):
            for a in (Fraction(1, 3), Fraction(1, 2)):
                for n in (1, 2, 3):
                    got = char_fn_exact(SubgroupMixture(p, n, ((0, a), (1, 1 - a)))).values
                    cases += 1
                    if got != _tier_table(p, n, 0, 1, a):
                        bad.append((p, str(a), n))
        return not bad, {"cases": cases, "mismatches": bad}

    return _timed(1, "two-tier Haar mixture characteristic function", 1, run)


def criterion_2():
    def run():
        bad = []
        for k in (2, 3):
            n = k + 1
            for a in (Fraction(1, 3), Fraction(1, 2)):
                mu1, mu2 = construct_case("2iv", 2, k, a, n)
                if char_fn_exact(mu1).values != _tier_table(2, n, k - 1, k, a):
                    bad.append(("mu1", k, str(a)))
                if char_fn_exact(mu2).values != _tier_table(2, n, 0, k - 1, a):
                    bad.append(("mu2", k, str(a)))
        return not bad, {"mismatches": bad}

    return _timed(2, "case 2iv tier tables at p=2", 1, run)


def _random_instance(rng: random.Random):
    """One (mu1, mu2, t, mixtures-or-None) draw mixing symmetric and asymmetric families."""
    p = rng.choice((2, 3, 5))
    n = rng.randint(1, 3)
    N = p**n
    kind = rng.choice(("grid", "idempotent", "mixture", "construction", "degenerate"))
    t = rng.randrange(N)
    mixtures = None
    if kind == "grid":
        d = rng.randint(1, 6)

        def draw():
            cuts = sorted(rng.randint(0, d) for _ in range(N - 1))
            w = [b - a for a, b in zip([0] + cuts, cuts + [d])]
            return FiniteDistribution(p, n, tuple(Fraction(x, d) for x in w))

        mu1, mu2 = draw(), draw()
    elif kind == "idempotent":
        def draw():
            h = haar_on_subgroup(p, rng.randint(0, n), n)
            x = rng.randrange(N)
            return FiniteDistribution(p, n, tuple(h.probs[(z - x) % N] for z in range(N)))

        mu1, mu2 = draw(), draw()
    elif kind == "mixture":
        def draw():
            ms = sorted(rng.sample(range(n + 1), rng.randint(1, min(3, n + 1))))
            ws = [rng.randint(1, 4) for _ in ms]
            tot = sum(ws)
            return SubgroupMixture(p, n, tuple((m, Fraction(w, tot)) for m, w in zip(ms, ws)))

        mixtures = (draw(), draw())
        mu1, mu2 = mixtures[0].to_distribution(), mixtures[1].to_distribution()
    elif kind == "construction":
        a = Fraction(rng.randint(1, 4), 5)
        if p > 2:
            options = [("2i", 0, (p - 1) + p * rng.randrange(p ** (n - 1)))]
        else:
            options = [("2ii", 0, (3 + 4 * rng.randrange(2**n)) % N)]
            if n >= 2:
                options.append(("2iii", 1, 1 + 2 * rng.randrange(2 ** (n - 1))))
        if n >= 3:
            options.append(("2iv", 2, rng.randrange(1, p)))
        case, k, unit = rng.choice(options)
        mixtures = construct_case(case, p, k, a, n)
        mu1, mu2 = mixtures[0].to_distribution(), mixtures[1].to_distribution()
        # keep the matching multiplier half of the time so both verdicts occur
        if rng.random() < 0.5:
            t = (p**k * unit) % N
    else:
        x1, x2 = rng.randrange(N), rng.randrange(N)
        mu1, mu2 = point_mass(p, x1, n), point_mass(p, x2, n)
    return mu1, mu2, t, mixtures


def criterion_3(instances: int = 1000, seed: int = SEED):
    def run():
        rng = random.Random(seed)
        disagreements = []
        holds = 0
        exact_checked = 0
        max_residual_on_holds = 0.0
        min_residual_on_fails = float("inf")
        for i in range(instances):
            mu1, mu2, t, mixtures = _random_instance(rng)
            cond = conditional_symmetry_check(mu1, mu2, t)
            four = fourier_symmetry_check(char_fn(mu1), char_fn(mu2), t, TOL)
            if cond.holds != four.holds:
                disagreements.append(i)
            if cond.holds:
                holds += 1
                max_residual_on_holds = max(max_residual_on_holds, four.max_residual)
            else:
                min_residual_on_fails = min(min_residual_on_fails, four.max_residual)
            if mixtures is not None:
                exact_checked += 1
                ex = fourier_symmetry_check(char_fn_exact(mixtures[0]), char_fn_exact(mixtures[1]), t)
                if ex.holds != cond.holds:
                    disagreements.append(i)
        ok = not disagreements and 0 < holds < instances
        return ok, {
            "instances": instances,
            "symmetric": holds,
            "exact_path_instances": exact_checked,
            "max_float_residual_on_symmetric": max_residual_on_holds,
            "min_float_residual_on_asymmetric": min_residual_on_fails,
            "disagreements": disagreements,
        }

    return _timed(3, "Fourier and conditional-law checks agree", 60, run)


def criterion_4():
    plan = [("2i", 3, 0, (2,), 2), ("2i", 5, 0, (4,), 2), ("2ii", 2, 0, (1, 1), 3)]
    plan += [("2iii", 2, 1, c, n) for c in ((1,), (1, 1)) for n in (2, 3)]
    plan += [("2iv", p, k, (1,), k + 1) for p in (2, 3) for k in (2, 3)]

    def run():
        failed = []
        count = 0
        for case, p, k, c, n in plan:
            for a in (Fraction(1, 3), Fraction(1, 2)):
                rep = verify_construction(case, p, k, c, a, n)
                count += 1
                if not (rep.passed and rep.idempotent == (False, False)):
                    failed.append({"case": case, "p": p, "k": k, "a": str(a), "failures": rep.failures})
        return not failed, {"verified": count, "failed": failed}

    return _timed(4, "counterexample constructions verified", 10, run)


def _expected_solutions(p, t):
    """Lemma-3 structure at n = 1: point masses with x1 + t x2 = 0, plus the uniform pair if I ± t invertible."""
    N = p
    sols = set()
    for x1 in range(N):
        for x2 in range(N):
            if (x1 + t * x2) % N == 0:
                sols.add((tuple(int(i == x1) for i in range(N)), tuple(int(i == x2) for i in range(N))))
    count_uniform = 1 if (1 + t) % p and (1 - t) % p else 0
    return sols, count_uniform


def _enum_crosscheck(p, n, t, d):
    res = enumerate_grid_solutions(p, n, t, d)
    W = grid_weights(p**n, d)
    dists = [FiniteDistribution(p, n, tuple(Fraction(int(w), d) for w in row)) for row in W]
    oracle = set()
    fourier = set()
    tables = [char_fn(m) for m in dists]
    for i, m1 in enumerate(dists):
        for j, m2 in enumerate(dists):
            if conditional_symmetry_check(m1, m2, t, method="fraction").holds:
                oracle.add((m1.probs, m2.probs))
            if fourier_symmetry_check(tables[i], tables[j], t, TOL).holds:
                fourier.add((m1.probs, m2.probs))
    found = {(a.probs, b.probs) for a, b in res.solutions}
    return res, found, oracle, fourier


def criterion_5():
    def run():
        detail = {}
        ok = True
        for t, want in ((2, 6), (1, 5)):
            res, found, oracle, fourier = _enum_crosscheck(5, 1, t, 5)
            expected_deg, n_uniform = _expected_solutions(5, t)
            deg = {(a.probs, b.probs) for a, b in res.solutions if is_degenerate(a) and is_degenerate(b)}
            deg_int = {(tuple(int(q) for q in a), tuple(int(q) for q in b)) for a, b in deg}
            uniform = tuple(Fraction(1, 5) for _ in range(5))
            has_uniform = (uniform, uniform) in found
            all_idem = all(is_idempotent_shift(a) and is_idempotent_shift(b) for a, b in res.solutions)
            good = (
                len(res.solutions) == want
                and found == oracle == fourier
                and deg_int == expected_deg
                and has_uniform == bool(n_uniform)
                and all_idem
            )
            ok &= good
            detail[f"t={t}"] = {
                "solutions": len(res.solutions),
                "expected": want,
                "summary": res.summary,
                "matches_fraction_oracle": found == oracle,
                "matches_fourier_route": found == fourier,
                "uniform_pair": has_uniform,
                "all_idempotent_shift": all_idem,
            }
        return ok, detail

    return _timed(5, "exhaustive grid enumeration at p=5, n=1, d=5", 120, run)


def criterion_6():
    def run():
        k1 = verify_construction("k1-pair", 3, 1, (1,), Fraction(1, 2), 2)
        ok = k1.passed and k1.idempotent == (False, True)
        detail = {"k1-pair": {"passed": k1.passed, "idempotent": list(k1.idempotent), "t": k1.t}}
        for c0 in (2, 3):
            rep = verify_construction("haar-pair", 5, 0, (c0,), None, 2)
            ok &= rep.passed
            detail[f"haar-pair c0={c0}"] = {"passed": rep.passed, "t": rep.t}
        return ok, detail

    return _timed(6, "one-idempotent and Haar-pair examples", 1, run)


def criterion_7(seed: int = SEED):
    def run():
        detail = {}
        ok = True
        for t in (2, 1):
            res = enumerate_grid_solutions(5, 1, t, 5)
            checked = 0
            for mu1, mu2 in res.solutions:
                s1, s2 = symmetrize(mu1), symmetrize(mu2)
                still = conditional_symmetry_check(s1, s2, t).holds
                f, g = char_fn(s1), char_fn(s2)
                ones = subgroup_of_ones(f, g)
                good = still and ones.is_subgroup
                if not (is_degenerate(mu1) and is_degenerate(mu2)):
                    good &= not support_subgroup(f, g).is_full
                ok &= good
                checked += 1
            detail[f"t={t}"] = checked
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(100):
            p = int(rng.choice([2, 3, 5]))
            n = int(rng.integers(1, 4))
            N = p**n
            psi1, psi2 = rng.normal(size=N), rng.normal(size=N)
            t, k1, k2, k3 = (int(x) for x in rng.integers(0, N, size=4))
            rep = difference_chain_check(psi1, psi2, t, k1, k2, k3)
            worst = max(worst, max(rep.step_residuals))
        detail["max_step_identity_residual"] = worst
        return ok and worst <= 1e-12, detail

    return _timed(7, "solution structure and finite-difference identities", 30, run)


FIXTURES = [
    ((3, 0, (1,)), "1i", True),
    ((5, 0, (2,)), "1i", False),
    ((7, 0, (3, 4)), "1i", False),
    ((2, 0, (1, 0)), "1ii", False),
    ((5, 1, (3,)), "1iii", False),
    ((3, -1, (2, 2)), "1iii", False),
    ((3, 0, (2,)), "2i", False),
    ((2, 0, (1, 1)), "2ii", False),
    ((2, -1, (1,)), "2iii", False),
    ((13, -4, (5,)), "2iv", False),
]


def criterion_8():
    def run():
        bad = []
        total = 0
        for p in (2, 3, 5, 7, 11, 13):
            for k in range(-4, 5):
                for c0 in range(1, p):
                    for c1 in range(p):
                        hits = [cid for cid, hit in branch_conditions(p, k, c0, c1).items() if hit]
                        label = classify_case("omega", p, k, (c0, c1))
                        total += 1
                        if hits != [label.case_id]:
                            bad.append((p, k, c0, c1, hits, label.case_id))
        fixture_bad = []
        for (p, k, c), case, degen in FIXTURES:
            lab = classify_case("omega", p, k, c)
            if (lab.case_id, lab.degenerate_subcase) != (case, degen):
                fixture_bad.append((p, k, c, case))
        return not bad and not fixture_bad, {"combinations": total, "not_single_valued": bad[:5], "fixture_mismatches": fixture_bad}

    return _timed(8, "case table total and single valued", 1, run)


def criterion_9(seed: int = SEED):
    def run():
        mu1, mu2 = construct_case("2i", 3, 0, Fraction(1, 2), 1)
        sym = monte_carlo_symmetry(mu1.to_distribution(), mu2.to_distribution(), 2, 10**5, seed)
        pm = point_mass(3, 1, 1)
        asym = monte_carlo_symmetry(pm, pm, 1, 10**5, seed)
        # informational: one level up, the per-row statistic sits near the
        # 10^5-sample noise floor rather than near 0
        h1, h2 = construct_case("2i", 3, 0, Fraction(1, 2), 2)
        sym2 = monte_carlo_symmetry(h1.to_distribution(), h2.to_distribution(), 8, 10**5, seed)
        detail = {"construction_2i": sym, "point_mass_pair": asym, "seed": seed, "level": 1, "construction_2i_level2": sym2}
        return sym < 0.02 and asym >= 0.5, detail

    return _timed(9, "Monte Carlo symmetry statistic", 30, run)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
