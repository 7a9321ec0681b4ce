from math import gcd, lcm

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import brute_legendre, exact_min_power, trial_factor
from realquad.arith import primes_up_to
from realquad.errors import DomainError
from realquad.laorder import (
    L,
    in_order,
    is_locally_associated_direct,
    minimal_unit_power,
)
from realquad.quadfield import QuadInt, fundamental_unit, make_field, pow_mod
from realquad.tables import squarefree_range

PRIMES_100 = primes_up_to(100)


def L_reference(n: int, d: int) -> int:
    """Definition-by-cases evaluation with a brute-force Legendre symbol."""
    out = 1
    for p, k in trial_factor(n):
        if p == 2:
            out *= {1: 2 ** (k - 1), 5: 3 * 2 ** (k - 1)}.get(d % 8, 2**k)
        else:
            out *= p ** (k - 1) * (p - brute_legendre(d, p))
    return out


def test_L_examples():
    for d in (-7, 0, 2, 3, 17):
        assert L(1, d) == 1
    assert L(2, 3) == 2
    for p in PRIMES_100:
        if p % 8 == 5:
            assert L(8, p) == 12
        if p > 2:
            assert L(p, p) == p
    assert L(2, 73) == 1


def test_L_rejects_zero():
    with pytest.raises(DomainError):
        L(0, 5)


def test_L_matches_reference():
    for d in range(-30, 60):
        for n in range(1, 200):
            assert L(n, d) == L_reference(n, d)


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.integers(-(10**6), 10**6))
def test_L_multiplicative(m, n, d):
    assume(gcd(m, n) == 1)
    assert L(m * n, d) == L(m, d) * L(n, d)


def test_in_order_examples():
    f = make_field(3)
    for n in (1, 2, 7, 100):
        assert in_order(QuadInt.one(f), n)
    assert not in_order(QuadInt(f, 2, 1), 2)
    assert in_order(QuadInt(f, 7, 4), 2)


def test_in_order_modulus_mismatch():
    f = make_field(3)
    with pytest.raises(DomainError):
        in_order(pow_mod(QuadInt(f, 2, 1), 3, 5), 4)


def test_minimal_unit_power_examples():
    for d in (2, 5, 10, 73):
        r = minimal_unit_power(1, d)
        assert (r.m, r.locally_associated) == (1, True)
    r = minimal_unit_power(2, 5)
    assert (r.m, r.l_value, r.locally_associated) == (3, 3, True)
    r = minimal_unit_power(3, 3)
    assert (r.m, r.l_value, r.locally_associated) == (3, 3, True)


def test_minimal_unit_power_rejects_bad_field():
    with pytest.raises(DomainError):
        minimal_unit_power(3, 12)
    with pytest.raises(DomainError):
        minimal_unit_power(0, 3)


def test_direct_examples():
    assert is_locally_associated_direct(13122, 3)
    assert not is_locally_associated_direct(49, 73)
    assert not is_locally_associated_direct(4, 7)


def test_minimal_power_matches_exact_powering():
    for d in squarefree_range(2, 60):
        u = fundamental_unit(d)
        for n in range(1, 41):
            r = minimal_unit_power(n, d)
            assert r.m == exact_min_power(u.x, u.y, u.field, n, r.l_value)


def test_m_divides_L():
    for d in squarefree_range(2, 200):
        for n in range(1, 121):
            r = minimal_unit_power(n, d)
            assert r.l_value % r.m == 0
            assert r.locally_associated == (r.m == r.l_value)


@given(st.sampled_from(squarefree_range(2, 150)), st.integers(1, 200), st.integers(1, 60))
def test_power_membership_iff_multiple_of_m(d, n, a):
    r = minimal_unit_power(n, d)
    u = fundamental_unit(d)
    assert in_order(pow_mod(u, a, n), n) == (a % r.m == 0)


def test_towers():
    for d in PRIMES_100:
        la = {n: is_locally_associated_direct(n, d) for n in range(1, 121)}
        for n, ok in la.items():
            if ok:
                assert all(la[k] for k in range(1, n + 1) if n % k == 0)


def test_lcm_of_minimal_powers():
    for d in primes_up_to(50):
        m = {n: minimal_unit_power(n, d).m for n in range(1, 61)}
        for a in range(1, 61):
            for b in range(1, 61):
                if gcd(a, b) == 1:
                    assert minimal_unit_power(a * b, d).m == lcm(m[a], m[b])
