from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperweight.errors import CapExceeded, NotPrimePower, ZeroInverse
from hyperweight.gf import field_inverse, is_irreducible, make_field, prime_power, primitive_element

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64]


def naive_mul(a: int, b: int, p: int, modulus: tuple[int, ...]) -> int:
    """Schoolbook product of two base-p digit encodings reduced by ``modulus``."""
    e = len(modulus) - 1
    da = [(a // p**i) % p for i in range(e)]
    db = [(b // p**i) % p for i in range(e)]
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(len(prod) - 1, e - 1, -1):
        c = prod[top]
        if c:
            for i, m in enumerate(modulus):
                prod[top - e + i] = (prod[top - e + i] - c * m) % p
    return sum(prod[i] * p**i for i in range(e))


@pytest.mark.parametrize("q,expected", [(2, (2, 1)), (8, (2, 3)), (9, (3, 2)), (49, (7, 2)), (65536, (2, 16))])
def test_prime_power(q, expected):
    assert prime_power(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_prime_power_rejects(q):
    with pytest.raises(NotPrimePower):
        make_field(q)


def test_cap():
    with pytest.raises(CapExceeded):
        make_field(2**17)
    with pytest.raises(CapExceeded):
        make_field(9, cap=8)


@pytest.mark.parametrize("q,theta", [(2, 1), (3, 2), (5, 2), (7, 3)])
def test_primitive_element_prime_fields(q, theta):
    assert primitive_element(make_field(q)) == theta


def test_f4_modulus_and_theta():
    fs = make_field(4)
    assert fs.modulus == (1, 1, 1)
    assert fs.theta == 2  # x
    # x^3 = 1 and x != 1
    assert fs.pow(2, 3) == 1 and fs.pow(2, 1) != 1


def test_canonical_moduli():
    assert make_field(8).modulus == (1, 1, 0, 1)
    assert make_field(9).modulus == (1, 0, 1)
    assert make_field(9).theta == 4


def test_inverses():
    assert field_inverse(2, make_field(5)) == 3
    assert field_inverse(2, make_field(4)) == 3  # x * (x + 1) = 1
    for q in SMALL_Q:
        assert field_inverse(1, make_field(q)) == 1
    with pytest.raises(ZeroInverse):
        make_field(7).inv(0)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_mul_matches_schoolbook_oracle(q):
    fs = make_field(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert fs.mul(a, b) == naive_mul(a, b, fs.p, fs.modulus)


@pytest.mark.parametrize("q", SMALL_Q)
def test_moduli_are_irreducible_and_smallest(q):
    fs = make_field(q)
    if fs.e == 1:
        return
    assert is_irreducible(list(fs.modulus), fs.p)
    code = sum(c * fs.p**i for i, c in enumerate(fs.modulus[:-1]))
    for smaller in range(code):
        low = [(smaller // fs.p**i) % fs.p for i in range(fs.e)]
        assert not is_irreducible(low + [1], fs.p)


@pytest.mark.parametrize("q", SMALL_Q)
def test_theta_has_full_order(q):
    fs = make_field(q)
    x = 1
    for k in range(1, q):
        x = fs.mul(x, fs.theta)
        assert (x == 1) == (k == q - 1)
    assert fs.order(fs.theta) == q - 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16])
def test_axioms_exhaustive(q):
    fs = make_field(q)
    els = list(fs.elements())
    for a, b in itertools.product(els, repeat=2):
        assert fs.add(a, b) == fs.add(b, a)
        assert fs.mul(a, b) == fs.mul(b, a)
        assert fs.sub(fs.add(a, b), b) == a
        # Frobenius
        assert fs.pow(fs.add(a, b), fs.p) == fs.add(fs.pow(a, fs.p), fs.pow(b, fs.p))
        for c in els:
            assert fs.mul(a, fs.add(b, c)) == fs.add(fs.mul(a, b), fs.mul(a, c))
            assert fs.mul(fs.mul(a, b), c) == fs.mul(a, fs.mul(b, c))
    for a in fs.nonzero():
        assert fs.mul(a, fs.inv(a)) == 1
        assert fs.exp(fs.log(a)) == a


@given(q=st.sampled_from([27, 32, 49, 64, 125, 4096, 8192]), data=st.data())
def test_axioms_sampled(q, data):
    fs = make_field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert fs.mul(a, fs.add(b, c)) == fs.add(fs.mul(a, b), fs.mul(a, c))
    assert fs.mul(fs.mul(a, b), c) == fs.mul(a, fs.mul(b, c))
    if a:
        assert fs.mul(a, fs.inv(a)) == 1
        assert fs.div(fs.mul(a, b), a) == b
        assert fs.pow(a, -1) == fs.inv(a)


@given(q=st.sampled_from(SMALL_Q), data=st.data())
def test_encoding_roundtrip(q, data):
    fs = make_field(q)
    a = data.draw(st.integers(0, q - 1))
    assert fs.from_coeffs(fs.to_coeffs(a)) == a


@pytest.mark.parametrize("q", [3, 4, 9, 16])
def test_vectorised_ops_match_scalar(q):
    fs = make_field(q)
    a, b = np.array(list(itertools.product(range(q), repeat=2))).T
    assert fs.vadd(a, b).tolist() == [fs.add(int(x), int(y)) for x, y in zip(a, b)]
    assert fs.vmul(a, b).tolist() == [fs.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert fs.vsub(a, b).tolist() == [fs.sub(int(x), int(y)) for x, y in zip(a, b)]
    assert fs.vneg(a).tolist() == [fs.neg(int(x)) for x in a]


def test_fields_are_cached_and_equal():
    assert make_field(4) is make_field(4)
    assert make_field(4) == make_field(4) and make_field(4) != make_field(5)
