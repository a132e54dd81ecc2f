import pytest
from hypothesis import given
from hypothesis import strategies as st

from heyde_padic.padic import (
    Automorphism,
    NotAUnitError,
    PAdicInt,
    PAdicNumber,
    PrecisionError,
    ZeroDecompositionError,
    compose,
    decompose,
    padd,
    pinv,
    pmul,
    unit_multiplier,
)


def D(p, *digits):
    return PAdicInt.from_digits(p, digits)


def residue_oracle(digits, p):
    return sum(d * p**i for i, d in enumerate(digits))


def egcd_inverse(a, m):
    # textbook extended Euclid, independent of pow(a, -1, m)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    assert r0 == 1
    return s0 % m


@pytest.mark.parametrize(
    "p, a, b, want",
    [
        (3, (2, 2), (1, 0), (0, 0)),
        (2, (1, 0, 0), (1, 0, 0), (0, 1, 0)),
        (5, (3,), (4,), (2,)),
    ],
)
def test_padd_examples(p, a, b, want):
    got = padd(D(p, *a), D(p, *b))
    assert got.digits == want
    assert got.residue == (residue_oracle(a, p) + residue_oracle(b, p)) % p ** len(a)


@pytest.mark.parametrize(
    "p, a, b, want",
    [
        (3, (2, 0), (2, 0), (1, 1)),
        (2, (1, 1), (1, 1), (1, 0)),
        (5, (3, 4, 1), (1, 0, 0), (3, 4, 1)),
    ],
)
def test_pmul_examples(p, a, b, want):
    assert pmul(D(p, *a), D(p, *b)).digits == want


@pytest.mark.parametrize("p, u, want", [(5, (2,), (3,)), (3, (2, 0), (2, 1)), (2, (1, 1, 1), (1, 1, 1))])
def test_pinv_examples(p, u, want):
    x = D(p, *u)
    assert pinv(x).digits == want
    assert pinv(x).residue == egcd_inverse(x.residue, p ** len(u))


def test_pinv_rejects_non_units():
    with pytest.raises(NotAUnitError):
        pinv(D(3, 0, 1))


def test_mismatched_operands_rejected():
    with pytest.raises(PrecisionError):
        padd(D(3, 1, 0), D(3, 1, 0, 0))
    with pytest.raises(PrecisionError):
        pmul(D(3, 1), D(5, 1))


def test_digit_range_and_prime_checked():
    with pytest.raises(ValueError):
        D(3, 3)
    with pytest.raises(ValueError):
        PAdicInt.from_digits(4, (1,))


@pytest.mark.parametrize(
    "p, digits, k, unit",
    [
        (3, (0, 0, 2), 2, (2,)),
        (5, (4, 1), 0, (4, 1)),
        (2, (0, 1, 1), 1, (1, 1)),
    ],
)
def test_decompose_examples(p, digits, k, unit):
    got_k, got_c = decompose(digits, p=p)
    assert (got_k, got_c.digits) == (k, unit)
    assert compose(got_k, got_c).digits == digits
    assert decompose(D(p, *digits))[0] == k


def test_decompose_zero():
    with pytest.raises(ZeroDecompositionError):
        decompose((0, 0, 0), p=3)
    with pytest.raises(ZeroDecompositionError):
        decompose(PAdicNumber.zero(3))


def test_padic_number_negative_valuation():
    g = PAdicNumber.from_digits(3, (0, 1, 2), start=-2)
    assert g.valuation == -1
    assert g.unit.digits == (1, 2)
    assert decompose(g) == (-1, g.unit)
    assert g.digits() == (-1, (1, 2))
    assert PAdicNumber.from_json(g.to_json()) == g


@pytest.mark.parametrize("p, c, n, want", [(3, (2, 1, 0), 2, 5), (3, (2, 1, 0), 1, 2), (2, (1, 1), 2, 3)])
def test_unit_multiplier(p, c, n, want):
    assert unit_multiplier(D(p, *c), n) == want == residue_oracle(c[:n], p)


def test_unit_multiplier_precision():
    with pytest.raises(PrecisionError):
        unit_multiplier(D(3, 1, 1), 3)


def test_serialization_roundtrip():
    x = D(5, 1, 4, 0, 3)
    assert x.to_json() == {"p": 5, "digits": [1, 4, 0, 3]}
    assert PAdicInt.from_json(x.to_json()) == x


def test_automorphism_inverse_and_compose():
    a = Automorphism.from_digits(3, -1, (2, 1), precision=4)
    inv = a.inverse()
    assert inv.k == 1
    assert (a @ inv).c == PAdicInt.one(3, 4)
    with pytest.raises(NotAUnitError):
        Automorphism.from_digits(3, 0, (0, 1))


primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def triples(draw):
    p = draw(primes)
    N = draw(st.integers(1, 6))
    vals = [draw(st.integers(0, p**N - 1)) for _ in range(3)]
    return p, N, [PAdicInt.from_int(p, N, v) for v in vals]


@given(triples())
def test_ring_laws(data):
    p, N, (a, b, c) = data
    mod = p**N
    assert padd(padd(a, b), c) == padd(a, padd(b, c))
    assert pmul(pmul(a, b), c) == pmul(a, pmul(b, c))
    assert padd(a, b) == padd(b, a) and pmul(a, b) == pmul(b, a)
    assert pmul(a, padd(b, c)) == padd(pmul(a, b), pmul(a, c))
    assert pmul(a, b).residue == (a.residue * b.residue) % mod
    assert residue_oracle(padd(a, b).digits, p) == (a.residue + b.residue) % mod


@given(triples())
def test_inverse_of_units(data):
    p, N, (a, _, _) = data
    if a.is_unit:
        assert pmul(a, pinv(a)) == PAdicInt.one(p, N)
        assert pinv(pinv(a)) == a
        assert unit_multiplier(a, N) % p != 0
    else:
        assert unit_multiplier(a, N) % p == 0


@given(primes, st.integers(0, 4), st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_decompose_compose_roundtrip(p, k, tail):
    unit = [max(1, tail[0] % p)] + [d % p for d in tail[1:]]
    c = PAdicInt.from_digits(p, unit)
    g = compose(k, c)
    assert decompose(g) == (k, c)
