import cmath
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heyde_padic.measures import (
    FiniteDistribution,
    SubgroupMixture,
    char_fn,
    char_fn_exact,
    convolve,
    format_rational,
    haar_on_subgroup,
    inverse_char_fn,
    is_degenerate,
    is_idempotent_shift,
    parse_rational,
    point_mass,
    reflect,
    symmetrize,
    uniform,
)
from heyde_padic.quotient import annihilator


def dist(p, n, *probs):
    return FiniteDistribution(p, n, tuple(F(q) for q in probs))


def brute_char(mu):
    # direct sum over the pairing, no FFT
    N = mu.order
    return np.array([sum(float(q) * cmath.exp(2j * cmath.pi * x * y / N) for x, q in enumerate(mu.probs)) for y in range(N)])


def test_validation():
    with pytest.raises(ValueError):
        dist(3, 1, "1/2", "1/3", 0)
    with pytest.raises(ValueError):
        dist(2, 1, "3/2", "-1/2")
    with pytest.raises(ValueError):
        dist(3, 1, "1/2", "1/2")
    with pytest.raises((TypeError, ValueError)):
        parse_rational(0.5)
    assert parse_rational("2/6") == F(1, 3)
    assert format_rational(F(1, 3)) == "1/3" and format_rational(F(2, 2)) == "1"


def test_haar_examples():
    assert haar_on_subgroup(3, 2, 2) == point_mass(3, 0, 2)
    assert haar_on_subgroup(3, 0, 2).probs == (F(1, 9),) * 9
    h = haar_on_subgroup(3, 1, 2)
    assert h.support == (0, 3, 6) and h.probs[3] == F(1, 3)
    with pytest.raises(ValueError):
        haar_on_subgroup(3, 3, 2)


def test_point_mass_examples():
    e0 = point_mass(5, 0, 1)
    mu = dist(5, 1, "1/5", "2/5", 0, "1/5", "1/5")
    assert convolve(e0, mu) == mu
    for x in range(9):
        assert np.allclose(np.abs(char_fn(point_mass(3, x, 2)).as_complex()), 1)
    assert char_fn(point_mass(5, 2, 1)).as_complex()[1] == pytest.approx(cmath.exp(4j * cmath.pi / 5))


def test_convolve_examples():
    half = dist(2, 1, "1/2", "1/2")
    assert convolve(half, half) == half
    assert convolve(point_mass(3, 1, 2), point_mass(3, 5, 2)) == point_mass(3, 6, 2)
    with pytest.raises(ValueError):
        convolve(point_mass(3, 0, 1), point_mass(3, 0, 2))


def test_reflect_and_symmetrize_examples():
    mu = dist(3, 1, "1/2", "1/2", 0)
    assert reflect(mu) == dist(3, 1, "1/2", 0, "1/2")
    assert reflect(point_mass(3, 2, 2)) == point_mass(3, 7, 2)
    assert reflect(uniform(5, 1)) == uniform(5, 1)
    assert symmetrize(mu) == dist(3, 1, "1/2", "1/4", "1/4")
    assert symmetrize(point_mass(5, 3, 1)) == point_mass(5, 0, 1)
    h = haar_on_subgroup(2, 1, 3)
    assert symmetrize(h) == h


def test_char_fn_examples():
    assert np.allclose(char_fn(point_mass(3, 0, 2)).as_complex(), 1)
    for p, n in ((2, 3), (3, 2), (5, 1)):
        for m in range(n + 1):
            ann = set(annihilator(p, m, n).elements())
            want = [1.0 if y in ann else 0.0 for y in range(p**n)]
            assert np.allclose(char_fn(haar_on_subgroup(p, m, n)).as_complex(), want, atol=1e-12)
    assert np.allclose(char_fn(uniform(3, 2)).as_complex(), [1] + [0] * 8, atol=1e-12)


def test_char_fn_exact_examples():
    sigma = SubgroupMixture(3, 2, ((0, F(1, 2)), (1, F(1, 2))))
    vals = char_fn_exact(sigma).values
    assert vals[0] == 1
    assert vals[3] == vals[6] == F(1, 2)
    assert all(vals[y] == 0 for y in range(9) if y % 3)
    assert char_fn_exact(SubgroupMixture(3, 2, ((2, F(1)),))).values == (F(1),) * 9


def test_char_fn_exact_matches_float():
    for terms in (((0, F(1, 3)), (2, F(2, 3))), ((1, F(1, 4)), (2, F(1, 4)), (3, F(1, 2)))):
        sigma = SubgroupMixture(2, 3, terms)
        exact = char_fn_exact(sigma).as_complex()
        assert np.allclose(exact, char_fn(sigma.to_distribution()).as_complex(), atol=1e-12)
        assert np.allclose(exact, brute_char(sigma.to_distribution()), atol=1e-12)


def test_idempotent_examples():
    mu = FiniteDistribution(3, 2, tuple(F(1, 3) if x in (1, 4, 7) else F(0) for x in range(9)))
    v = is_idempotent_shift(mu)
    assert v and v.subgroup.elements() == (0, 3, 6) and v.shift == 1
    assert not is_idempotent_shift(dist(3, 1, "1/2", "1/2", 0))
    v = is_idempotent_shift(point_mass(5, 3, 1))
    assert v and v.subgroup.is_trivial and v.shift == 3
    # right size, not a coset
    assert not is_idempotent_shift(dist(3, 2, "1/3", "1/3", 0, 0, "1/3", 0, 0, 0, 0))


def test_degenerate_examples():
    assert is_degenerate(point_mass(3, 4, 2))
    assert not is_degenerate(uniform(3, 1))
    assert not is_degenerate(dist(3, 1, "1/2", "1/2", 0))


def test_json_roundtrip():
    mu = dist(3, 1, "1/2", "1/3", "1/6")
    assert FiniteDistribution.from_json(mu.to_json()) == mu
    sigma = SubgroupMixture(3, 2, ((0, F(1, 2)), (1, F(1, 2))))
    assert SubgroupMixture.from_json(sigma.to_json()) == sigma


@st.composite
def dists(draw, p=None, n=None):
    p = p or draw(st.sampled_from([2, 3, 5]))
    n = n or draw(st.integers(1, 2 if p == 5 else 3))
    N = p**n
    w = draw(st.lists(st.integers(0, 4), min_size=N, max_size=N))
    if sum(w) == 0:
        w[draw(st.integers(0, N - 1))] = 1
    s = sum(w)
    return FiniteDistribution(p, n, tuple(F(x, s) for x in w))


@st.composite
def dist_pairs(draw):
    a = draw(dists())
    return a, draw(dists(a.p, a.level))


@given(dist_pairs())
def test_convolution_theorem(pair):
    mu, nu = pair
    lhs = char_fn(convolve(mu, nu)).as_complex()
    rhs = char_fn(mu).as_complex() * char_fn(nu).as_complex()
    assert np.allclose(lhs, rhs, atol=1e-12)


@given(dists())
def test_char_fn_against_direct_sum(mu):
    table = char_fn(mu).as_complex()
    assert np.allclose(table, brute_char(mu), atol=1e-12)
    assert table[0] == pytest.approx(1)
    assert np.allclose(inverse_char_fn(char_fn(mu)), [float(q) for q in mu.probs], atol=1e-12)


@given(dists())
def test_reflect_conjugates_and_symmetrize_is_abs_squared(mu):
    c = char_fn(mu).as_complex()
    assert np.allclose(char_fn(reflect(mu)).as_complex(), np.conj(c), atol=1e-12)
    s = char_fn(symmetrize(mu)).as_complex()
    assert np.allclose(s, np.abs(c) ** 2, atol=1e-12)
    assert reflect(symmetrize(mu)) == symmetrize(mu)


@given(dists())
def test_idempotent_iff_char_fn_modulus_is_zero_or_one(mu):
    mods = np.abs(char_fn(mu).as_complex())
    flat = bool(np.all((np.abs(mods) < 1e-9) | (np.abs(mods - 1) < 1e-9)))
    assert bool(is_idempotent_shift(mu)) == flat


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_char_values_periodic_on_the_level(p, n, data):
    # a distribution lifted from level n to n+1 (supported on p Z/p^{n+1})
    # has a char table that is periodic with period p^n
    mu = data.draw(dists(p, n))
    N = p**n
    lifted = [F(0)] * (N * p)
    for x, q in enumerate(mu.probs):
        lifted[x * p] = q
    big = char_fn(FiniteDistribution(p, n + 1, tuple(lifted))).as_complex()
    assert np.allclose(big[:N], big[N : 2 * N], atol=1e-12)
    assert np.allclose(big[:N], char_fn(mu).as_complex(), atol=1e-12)
