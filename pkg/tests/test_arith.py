import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fundcoeff import arith


def kronecker_oracle(d, n):
    """Kronecker symbol from Euler's criterion prime by prime."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        if d < 0:
            out = -out
    m = n
    p = 2
    while p * p <= m or m > 1:
        if p * p > m:
            p = m
        while m % p == 0:
            m //= p
            if p == 2:
                if d % 2 == 0:
                    return 0
                out *= 1 if d % 8 in (1, 7) else -1
            else:
                r = pow(d % p, (p - 1) // 2, p)
                if r == 0:
                    return 0
                out *= 1 if r == 1 else -1
        p += 1
    return out


@given(st.integers(2, 10**12))
def test_factorize_roundtrip(n):
    f = arith.factorize(n)
    assert math.prod(p ** e for p, e in f) == n
    assert all(arith.is_prime(p) for p, _ in f)


@given(st.integers(-500, 500), st.integers(-300, 300))
def test_kronecker_matches_euler_criterion(d, n):
    if d % 4 in (2, 3):
        d = 4 * d
    assert arith.kronecker(d, n) == kronecker_oracle(d, n)


def test_squarefree_and_moebius_tables():
    X = 10000
    sq = arith.squarefree_mask(X)
    mu = arith.moebius_table(X)
    for n in range(1, X + 1):
        brute = all(n % (k * k) for k in range(2, math.isqrt(n) + 1))
        assert sq[n] == brute
        assert mu[n] == arith.moebius(n)


def test_fundamental_discriminants():
    ds = arith.fundamental_discriminants(3, 100)
    assert ds[:8] == [-3, -4, -7, -8, -11, -15, -19, -20]
    assert not arith.is_fundamental(-12) and not arith.is_fundamental(-16)


@pytest.mark.parametrize("d", [-23, -4, -8, -99999971, -99999988, -99999992])
def test_chi_values_both_paths(d):
    m = np.arange(1, 400, dtype=np.int64)
    got = arith.chi_values(d, m)
    assert [int(v) for v in got] == [arith.kronecker(d, int(k)) for k in m]


def test_primes_by_form():
    # principal form of disc -23: the ramified 23, then the completely split primes
    ps = arith.primes_by_form(1, 1, 6, 500)
    assert ps[:2] == [23, 59] and 101 in ps
    assert all(p == 23 or arith.kronecker(-23, p) == 1 for p in ps)
