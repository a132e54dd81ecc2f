import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heyde_padic.padic import Automorphism
from heyde_padic.quotient import (
    MustNormalizeError,
    QuotientElement,
    Subgroup,
    annihilator,
    generated_subgroup,
    induced_endomorphism,
    is_subgroup,
    pairing,
    pairing_index,
    tau,
    tau_inverse,
)


def Q(p, n, r):
    return QuotientElement(p, n, r)


def test_tau_examples():
    assert tau(3, (1, 2), 0, start=-2) == Fraction(1, 9) + Fraction(2, 3) == Fraction(7, 9)
    assert tau(3, (0, 0, 1, 1), 0) == 0
    assert tau(2, (1,), 0, start=-1) == Fraction(1, 2)


def test_tau_level_shift():
    # with l = 2 the digits x_0, x_1 contribute x_0/9 + x_1/3
    assert tau(3, (1, 2, 2), 2) == Fraction(1, 9) + Fraction(2, 3)


@given(st.sampled_from([2, 3, 5]), st.integers(-3, 3), st.lists(st.integers(0, 4), max_size=6))
def test_tau_roundtrip(p, l, digits):
    digits = [d % p for d in digits]
    y = tau(p, digits, l, start=l - len(digits))
    start, back = tau_inverse(p, y, l)
    assert tau(p, back, l, start=start) == y
    assert 0 <= y < 1


def test_pairing_examples():
    assert pairing(Q(2, 2, 3), Q(2, 2, 1)) == pytest.approx(-1j)
    assert pairing(Q(3, 1, 1), Q(3, 1, 1)) == pytest.approx(cmath.exp(2j * cmath.pi / 3))
    assert all(pairing(Q(5, 2, x), Q(5, 2, 0)) == 1 for x in range(25))
    assert pairing_index(Q(2, 2, 3), Q(2, 2, 1)) == 3


def test_pairing_level_mismatch():
    with pytest.raises(ValueError):
        pairing(Q(3, 1, 1), Q(3, 2, 1))


@st.composite
def elems(draw, count=3):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 3))
    return [Q(p, n, draw(st.integers(0, p**n - 1))) for _ in range(count)] + [draw(st.integers(0, p**n - 1))]


@given(elems())
def test_bicharacter_laws(data):
    x, y1, y2, _ = data
    assert abs(pairing(x, y1 + y2) - pairing(x, y1) * pairing(x, y2)) < 1e-12
    assert abs(pairing(x + y1, y2) - pairing(x, y2) * pairing(y1, y2)) < 1e-12
    assert abs(abs(pairing(x, y1)) - 1) < 1e-12


@given(elems())
def test_multiplication_is_self_adjoint(data):
    x, y, _, t = data
    assert pairing(x.scale(t), y) == pairing(x, y.scale(t))
    assert pairing_index(x.scale(t), y) == pairing_index(x, y.scale(t))


def test_induced_endomorphism_examples():
    a = Automorphism.from_digits(3, 1, (2, 1, 0))
    assert induced_endomorphism(a, 3).t == 15
    assert induced_endomorphism(Automorphism.from_digits(5, 0, (1, 0)), 2).t == 1
    m = induced_endomorphism(Automorphism.from_digits(2, 0, (1, 1)), 2)
    assert m.t == 3 == (-1) % 4


def test_induced_endomorphism_needs_normalization():
    with pytest.raises(MustNormalizeError):
        induced_endomorphism(Automorphism.from_digits(3, -1, (1,)), 1)


@given(
    st.sampled_from([2, 3, 5]),
    st.integers(1, 3),
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.data(),
)
def test_induced_endomorphism_multiplicative(p, n, ks, data):
    prec = n + 2
    units = []
    for _ in range(2):
        ds = data.draw(st.lists(st.integers(0, p - 1), min_size=prec, max_size=prec))
        ds[0] = max(1, ds[0])
        units.append(ds)
    a = Automorphism.from_digits(p, ks[0], units[0])
    b = Automorphism.from_digits(p, ks[1], units[1])
    assert induced_endomorphism(a @ b, n) == induced_endomorphism(a, n) * induced_endomorphism(b, n)


def test_annihilator_examples():
    assert annihilator(3, 0, 2).elements() == (0,)
    assert annihilator(3, 2, 2).elements() == tuple(range(9))
    assert annihilator(3, 1, 2).elements() == (0, 3, 6)
    # brute force: solve p^m y = 0 mod p^n
    for p, n in ((2, 3), (3, 2), (5, 2)):
        for m in range(n + 1):
            brute = tuple(y for y in range(p**n) if (p**m * y) % p**n == 0)
            assert annihilator(p, m, n).elements() == brute
    with pytest.raises(ValueError):
        annihilator(3, 3, 2)


@pytest.mark.parametrize("p, n", [(2, 3), (3, 2), (5, 1)])
def test_annihilator_is_subgroup_of_right_order(p, n):
    for m in range(n + 1):
        A = annihilator(p, m, n)
        assert len(A.elements()) == p**m
        assert is_subgroup(p, n, A.elements())
        assert A.to_json() == {"p": p, "level": n, "order_exponent": m}
        assert Subgroup.from_json(A.to_json()) == A


def test_generated_subgroup():
    assert generated_subgroup(3, 2, [6]).elements() == (0, 3, 6)
    assert generated_subgroup(3, 2, [0]).is_trivial
    assert generated_subgroup(3, 2, []).is_trivial
    assert generated_subgroup(2, 3, [4, 6]).order_exponent == 2
    assert generated_subgroup(5, 2, [7]).is_full
    assert not is_subgroup(3, 2, [0, 3])
