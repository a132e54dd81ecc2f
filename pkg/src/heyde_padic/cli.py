"""Command-line front end.

Every subcommand prints one JSON document (``"schema": 1``) on stdout.  Exit
status is 0 when all requested checks pass, 1 when a check fails and 2 for
usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import acceptance
from .constructions import (
    CONSTRUCTIBLE,
    REMARK_VARIANTS,
    classify_case,
    construct_case,
    default_unit,
    remark1_distribution,
    tier_description,
    verify_construction,
)
from .engine import (
    BudgetError,
    conditional_symmetry_check,
    enumerate_grid_solutions,
    fourier_symmetry_check,
    monte_carlo_symmetry,
    normalize_case,
)
from .measures import FiniteDistribution, SubgroupMixture, char_fn, char_fn_exact, format_rational, parse_rational
from .padic import Automorphism
from .quotient import induced_endomorphism

SCHEMA = 1
log = logging.getLogger("heyde_padic")

DEFAULT_K = {"2i": 0, "2ii": 0, "2iii": 1, "haar-pair": 0, "k1-pair": 1}


class UsageError(Exception):
    pass


def _digits(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated digits, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/2, got {text!r}")


def _emit(command: str, params: dict, payload: dict) -> None:
    doc = {"schema": SCHEMA, "command": command, "params": params}
    doc.update(payload)
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _multiplier(p: int, n: int, k: int, c: list[int]):
    alpha = Automorphism.from_digits(p, k, c, precision=max(n, len(c)))
    alpha_n, swapped = normalize_case(alpha)
    return induced_endomorphism(alpha_n, n), swapped


def _load(path: str):
    """Distribution or mixture file; returns ``(distribution, exact_table_or_None)``."""
    with open(path) as fh:
        data = json.load(fh)
    if "terms" in data:
        mix = SubgroupMixture.from_json(data)
        return mix.to_distribution(), char_fn_exact(mix)
    return FiniteDistribution.from_json(data), None


def cmd_classify(args) -> int:
    label = classify_case(args.group, args.p, args.k, args.c)
    params = {"group": args.group, "p": args.p, "k": args.k, "c": args.c}
    _emit("classify", params, {"case": label.case_id, "label": label.to_json()})
    return 0


def cmd_check(args) -> int:
    mu1, exact1 = _load(args.dist1)
    mu2, exact2 = _load(args.dist2)
    for mu in (mu1, mu2):
        if (mu.p, mu.level) != (mu1.p, args.level):
            raise UsageError(f"distribution files must both be at p={mu1.p}, level={args.level}")
    t, swapped = _multiplier(mu1.p, args.level, args.alpha_k, args.alpha_c)
    if swapped:
        mu1, mu2, exact1, exact2 = mu2, mu1, exact2, exact1
    cond = conditional_symmetry_check(mu1, mu2, t)
    four = fourier_symmetry_check(char_fn(mu1), char_fn(mu2), t, args.tol)
    payload = {"t": t.t, "swapped": swapped, "conditional": cond.to_json(), "fourier": four.to_json()}
    if exact1 is not None and exact2 is not None:
        payload["fourier_exact"] = fourier_symmetry_check(exact1, exact2, t).to_json()
    payload["agree"] = cond.holds == four.holds
    payload["holds"] = cond.holds
    params = {"dist1": args.dist1, "dist2": args.dist2, "alpha_k": args.alpha_k, "alpha_c": args.alpha_c, "level": args.level}
    _emit("check", params, payload)
    return 0 if cond.holds and four.holds else 1


def _build_pair(case: str, p: int, k: int, a, n: int):
    if case in CONSTRUCTIBLE:
        return construct_case(case, p, k, a, n)
    return remark1_distribution(case, p, a, n)


def cmd_construct(args) -> int:
    k = args.k if args.k is not None else DEFAULT_K.get(args.case)
    if k is None:
        raise UsageError(f"--k is required for case {args.case}")
    c = args.c if args.c is not None else list(default_unit(args.case, args.p))
    mu1, mu2 = _build_pair(args.case, args.p, k, args.a, args.level)
    provenance = {
        "case": args.case,
        "p": args.p,
        "k": k,
        "a": None if args.a is None else format_rational(args.a),
        "level": args.level,
        "paper_eq": {"mu1": tier_description(mu1), "mu2": tier_description(mu2)},
    }
    payload = {
        "provenance": provenance,
        "mu1": mu1.to_distribution().to_json(),
        "mu2": mu2.to_distribution().to_json(),
        "mixtures": {"mu1": mu1.to_json(), "mu2": mu2.to_json()},
    }
    code = 0
    if args.verify:
        rep = verify_construction(args.case, args.p, k, c, args.a, args.level)
        v = rep.to_json()
        for key in ("mu1", "mu2"):
            v.pop(key)
        payload["verification"] = v
        code = 0 if rep.passed else 1
    params = {"case": args.case, "p": args.p, "k": k, "c": c, "a": provenance["a"], "level": args.level, "verify": args.verify}
    _emit("construct", params, payload)
    return code


def cmd_enumerate(args) -> int:
    if args.t is not None:
        t, swapped = args.t % args.p**args.level, False
    elif args.alpha_c is not None:
        mult, swapped = _multiplier(args.p, args.level, args.alpha_k, args.alpha_c)
        t = mult.t
    else:
        raise UsageError("give either --t or --alpha-k/--alpha-c")
    try:
        res = enumerate_grid_solutions(args.p, args.level, t, args.d, budget=args.budget, jobs=args.jobs)
    except BudgetError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    params = {"p": args.p, "level": args.level, "t": t, "d": args.d, "budget": args.budget}
    payload = {"swapped": swapped, "result": res.to_json()}
    code = 0
    if args.expect_count is not None:
        payload["expected_count"] = args.expect_count
        code = 0 if len(res.solutions) == args.expect_count else 1
    _emit("enumerate", params, payload)
    return code


def cmd_montecarlo(args) -> int:
    if args.case is not None:
        k = args.k if args.k is not None else DEFAULT_K.get(args.case)
        if k is None:
            raise UsageError(f"--k is required for case {args.case}")
        c = args.alpha_c if args.alpha_c is not None else list(default_unit(args.case, args.p))
        mix1, mix2 = _build_pair(args.case, args.p, k, args.a, args.level)
        mu1, mu2 = mix1.to_distribution(), mix2.to_distribution()
        p = args.p
    elif args.dist1 and args.dist2:
        mu1, _ = _load(args.dist1)
        mu2, _ = _load(args.dist2)
        p, k = mu1.p, args.k if args.k is not None else 0
        c = args.alpha_c if args.alpha_c is not None else [1]
    else:
        raise UsageError("give --case or both --dist1 and --dist2")
    t, swapped = _multiplier(p, args.level, k, c)
    if swapped:
        mu1, mu2 = mu2, mu1
    stat = monte_carlo_symmetry(mu1, mu2, t, args.samples, args.seed)
    params = {"case": args.case, "p": p, "k": k, "c": c, "level": args.level, "samples": args.samples, "seed": args.seed}
    payload = {"t": t.t, "swapped": swapped, "statistic": stat}
    code = 0
    if args.max_statistic is not None:
        payload["max_statistic"] = args.max_statistic
        code = 0 if stat < args.max_statistic else 1
    _emit("montecarlo", params, payload)
    return code


def cmd_selftest(args) -> int:
    results = acceptance.run_all()
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.ok for r in results)
    _emit("selftest", {}, {"criteria": [r.to_json() for r in results], "passed": ok})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heyde-padic", description=__doc__.split("\n\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="which statement governs alpha = p^k c")
    p.add_argument("--group", choices=("omega", "delta"), default="omega")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--c", type=_digits, required=True, help="unit digits c0,c1,...")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check", help="test a pair of distribution files")
    p.add_argument("--dist1", required=True)
    p.add_argument("--dist2", required=True)
    p.add_argument("--alpha-k", type=int, default=0)
    p.add_argument("--alpha-c", type=_digits, default=[1])
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_check)

    cases = CONSTRUCTIBLE + REMARK_VARIANTS
    p = sub.add_parser("construct", help="emit a solution pair for a case")
    p.add_argument("--case", choices=cases, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=_digits)
    p.add_argument("--a", type=_rational)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="exhaustive grid search for solution pairs")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--alpha-k", type=int, default=0)
    p.add_argument("--alpha-c", type=_digits)
    p.add_argument("--d", type=int, required=True, help="grid denominator")
    p.add_argument("--budget", type=int, default=10**4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--expect-count", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("montecarlo", help="sampled symmetry statistic")
    p.add_argument("--case", choices=cases)
    p.add_argument("--dist1")
    p.add_argument("--dist2")
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alpha-c", type=_digits)
    p.add_argument("--a", type=_rational)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-statistic", type=float)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.set_defaults(func=cmd_selftest)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        if args.command == "montecarlo" and args.case is not None and args.p is None:
            raise UsageError("--p is required with --case")
        return args.func(args)
    except (UsageError, ValueError, TypeError, OverflowError) as exc:
        print(f"heyde-padic {args.command}: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except OSError as exc:
        print(f"heyde-padic {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
