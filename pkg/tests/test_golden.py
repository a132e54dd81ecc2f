"""Golden files: re-derived on every run and checked against an independent oracle."""

import contextlib
import io
import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest

from heyde_padic.cli import run
from heyde_padic.engine import enumerate_grid_solutions

DATA = Path(__file__).parent / "data"
ENUM_FILES = sorted(DATA.glob("enum_*.json"))


def oracle_solutions(p, n, t, d):
    """Every grid pair whose joint law is symmetric, by itertools and Fractions only."""
    N = p**n
    grid = [w for w in itertools.product(range(d + 1), repeat=N) if sum(w) == d]
    out = []
    for w1 in grid:
        for w2 in grid:
            J = {}
            for x1, x2 in itertools.product(range(N), repeat=2):
                if w1[x1] and w2[x2]:
                    key = ((x1 + x2) % N, (x1 + t * x2) % N)
                    J[key] = J.get(key, 0) + w1[x1] * w2[x2]
            if all(J.get((l, (-s) % N), 0) == c for (l, s), c in J.items()):
                out.append((w1, w2))
    return sorted(out)


@pytest.mark.parametrize("path", ENUM_FILES, ids=lambda p: p.stem)
def test_enumeration_golden(path):
    gold = json.loads(path.read_text())
    p, n, t, d = gold["p"], gold["level"], gold["t"], gold["d"]
    assert enumerate_grid_solutions(p, n, t, d).to_json() == gold

    def weights(probs):
        return tuple(int(Fraction(q) * d) for q in probs)

    listed = sorted((weights(s["mu1"]), weights(s["mu2"])) for s in gold["solutions"])
    assert listed == oracle_solutions(p, n, t, d)
    assert sum(gold["summary"].values()) == len(gold["solutions"])


def test_enumeration_golden_set_is_nontrivial():
    assert len(ENUM_FILES) >= 5


@pytest.mark.parametrize(
    "name, argv",
    [
        ("construct_2i_p3_n2", "construct --case 2i --p 3 --a 1/2 --level 2 --verify"),
        ("construct_2iv_p2_k2_n3", "construct --case 2iv --p 2 --k 2 --a 1/3 --level 3 --verify"),
    ],
)
def test_cli_golden(name, argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        assert run(argv.split()) == 0
    assert buf.getvalue() == (DATA / f"{name}.json").read_text()
