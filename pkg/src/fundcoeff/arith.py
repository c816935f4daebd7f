"""Integer and multiplicative-function substrate.

Factorization, Moebius / omega / Omega, the Kronecker symbol, fundamental
discriminant tests and primes represented by a positive definite binary
quadratic form.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np

Factorization = List[Tuple[int, int]]

MAX_INT64 = 2**63 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def factorize(n: int) -> Factorization:
    """Exact prime factorization as sorted (prime, exponent) pairs.

    >>> factorize(12)
    [(2, 2), (3, 1)]
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > MAX_INT64:
        raise ValueError("factorize is limited to 64-bit inputs")
    out: dict = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return sorted(out.items())


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def omega(n: int) -> int:
    return len(factorize(n))


def big_omega(n: int) -> int:
    return sum(e for _, e in factorize(n))


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(abs(n)))


def divisors(n: int) -> List[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi needs odd positive n")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def kronecker(d: int, n: int) -> int:
    """Full Kronecker symbol (d/n), including n <= 0 and n even."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    t = 1
    if n < 0:
        n = -n
        if d < 0:
            t = -t
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 and d % 8 in (3, 5):
            t = -t
    if n == 1:
        return t
    return t * jacobi(d, n)


def is_fundamental(d: int, allow_one: bool = False) -> bool:
    """True iff d is the discriminant of a quadratic field.

    ``d = 1`` is rejected unless ``allow_one`` is set.
    """
    if d == 0:
        raise ValueError("0 is not a discriminant")
    if d == 1:
        return allow_one
    r = d % 4
    if r == 1:
        return is_squarefree(d)
    if r == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants(lo: int, hi: int) -> List[int]:
    """Negative fundamental discriminants d with lo <= |d| <= hi, ascending |d|."""
    return [-n for n in range(max(lo, 3), hi + 1) if is_fundamental(-n)]


def _check_form(a: int, b: int, c: int) -> int:
    d = b * b - 4 * a * c
    if a <= 0 or d >= 0:
        raise ValueError(f"form ({a},{b},{c}) is not positive definite")
    if math.gcd(math.gcd(a, b), c) != 1:
        raise ValueError(f"form ({a},{b},{c}) is not primitive")
    return d


def primes_by_form(a: int, b: int, c: int, X: int) -> List[int]:
    """All primes p <= X of the shape a x^2 + b x y + c y^2.

    Exhaustive: 4a f(x,y) = (2ax + by)^2 + |d| y^2 bounds y, and for each y
    the admissible x form an interval.
    """
    d = _check_form(a, b, c)
    D = -d
    found = set()
    ymax = math.isqrt(4 * a * X // D) + 1
    for y in range(-ymax, ymax + 1):
        rest = 4 * a * X - D * y * y
        if rest < 0:
            continue
        s = math.isqrt(rest)
        # |2ax + by| <= s
        xlo = -((s + b * y) // (2 * a)) - 1
        xhi = (s - b * y) // (2 * a) + 1
        for x in range(xlo, xhi + 1):
            v = a * x * x + b * x * y + c * y * y
            if 2 <= v <= X and v not in found and is_prime(v):
                found.add(v)
    return sorted(found)


# ---------------------------------------------------------------- sieves

@lru_cache(maxsize=8)
def spf_table(n: int) -> np.ndarray:
    """Smallest prime factor table for 0..n (spf[0]=spf[1]=0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.nonzero(spf[2:] == 0)[0] + 2
    spf[idx] = idx
    spf.setflags(write=False)
    return spf


def primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@lru_cache(maxsize=8)
def squarefree_mask(n: int) -> np.ndarray:
    """mask[m] is True iff m is squarefree (mask[0] False)."""
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for p in range(2, math.isqrt(n) + 1):
        mask[p * p :: p * p] = False
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=8)
def moebius_table(n: int) -> np.ndarray:
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    for p in primes_upto(n):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    mu.setflags(write=False)
    return mu


def factor_with_spf(n: int, spf: np.ndarray) -> Factorization:
    out = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def kronecker_table(d: int) -> np.ndarray:
    """chi_d(a) for a = 0..|d|-1, d a fundamental discriminant."""
    q = abs(d)
    return np.array([kronecker(d, a) for a in range(q)], dtype=np.int8)


def legendre_table(p: int) -> np.ndarray:
    """(a/p) for a = 0..p-1, p an odd prime."""
    t = -np.ones(p, dtype=np.int8)
    sq = (np.arange(1, p, dtype=np.int64) ** 2) % p
    t[sq] = 1
    t[0] = 0
    return t


def _legendre_vec(a: np.ndarray, p: int) -> np.ndarray:
    """(a/p) for an int64 array a, by Euler's criterion (needs p < 3e9)."""
    base = a % p
    e = (p - 1) // 2
    res = np.ones_like(base)
    while e:
        if e & 1:
            res = res * base % p
        base = base * base % p
        e >>= 1
    return np.where(res == p - 1, -1, res)


def _chi_direct(d: int, a: np.ndarray) -> np.ndarray:
    """chi_d(a) as prod of (a/p) over odd p | d, times a 2-adic character."""
    D = abs(d)
    out = np.ones(a.shape, dtype=np.int64)
    odd = D
    while odd % 2 == 0:
        odd //= 2
    # chi_d = prod chi_{p*} over odd p | d, with chi_{p*}(a) = (a/p), times a
    # 2-adic character attached to e = d / prod p*.
    sign = 1
    for p, _ in (factorize(odd) if odd > 1 else []):
        if p <= 10 ** 6:
            out *= legendre_table(p)[a % p]
        else:
            out *= _legendre_vec(a, p)
        sign *= -1 if p % 4 == 3 else 1
    e = d // (sign * odd)
    if e == 1:
        pass
    elif e == -4:
        out *= np.where(a % 2 == 0, 0, np.where(a % 4 == 1, 1, -1))
    elif e == 8:
        out *= np.where(a % 2 == 0, 0, np.where((a % 8 == 1) | (a % 8 == 7), 1, -1))
    elif e == -8:
        out *= np.where(a % 2 == 0, 0, np.where((a % 8 == 1) | (a % 8 == 3), 1, -1))
    else:
        raise ValueError(f"{d} is not a fundamental discriminant")
    return out


def chi_values(d: int, m: np.ndarray) -> np.ndarray:
    """Vectorized chi_d(m) for a fundamental discriminant d and m >= 1.

    chi_d is periodic mod |d|; for moderate |d| one period is tabulated and
    indexed, otherwise the values are computed directly.
    """
    m = np.asarray(m, dtype=np.int64)
    if abs(d) <= 2 * 10 ** 6 or abs(d) <= 4 * m.size:
        return _chi_period_table(d)[m % abs(d)]
    return _chi_direct(d, m % abs(d))


@lru_cache(maxsize=256)
def _chi_period_table(d: int) -> np.ndarray:
    """chi_d on one full period."""
    out = _chi_direct(d, np.arange(abs(d), dtype=np.int64))
    out.setflags(write=False)
    return out
