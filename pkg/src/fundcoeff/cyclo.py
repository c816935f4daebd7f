"""Exact arithmetic in Q(zeta_N), enough for character sums.

An element is a dict exponent -> Fraction, meaning sum c_t zeta_N^t. Reduction
modulo the N-th cyclotomic polynomial gives a canonical form, so equality and
zero tests are exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from . import arith


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """Integer coefficients (low degree first) of Phi_n."""
    # x^n - 1 = prod_{d | n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in arith.divisors(n):
        if d == n:
            continue
        num = _poly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_div_exact(a: List[int], b: List[int]) -> List[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


class Cyclo:
    """Element of Q(zeta_N) kept as a polynomial in zeta of degree < N."""

    __slots__ = ("N", "c")

    def __init__(self, N: int, coeffs: Dict[int, Fraction] | None = None):
        self.N = N
        self.c: Dict[int, Fraction] = {}
        for t, v in (coeffs or {}).items():
            self._add_term(t, v)

    def _add_term(self, t: int, v) -> None:
        if v == 0:
            return
        t %= self.N
        s = self.c.get(t, Fraction(0)) + Fraction(v)
        if s == 0:
            self.c.pop(t, None)
        else:
            self.c[t] = s

    @classmethod
    def root(cls, N: int, t: int, coeff=1) -> "Cyclo":
        return cls(N, {t: Fraction(coeff)})

    def __add__(self, other: "Cyclo") -> "Cyclo":
        self._check(other)
        out = Cyclo(self.N, dict(self.c))
        for t, v in other.c.items():
            out._add_term(t, v)
        return out

    def __mul__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            return Cyclo(self.N, {t: v * Fraction(other) for t, v in self.c.items()})
        self._check(other)
        out = Cyclo(self.N)
        for t, v in self.c.items():
            for s, w in other.c.items():
                out._add_term(t + s, v * w)
        return out

    __rmul__ = __mul__

    def _check(self, other: "Cyclo") -> None:
        if other.N != self.N:
            raise ValueError("elements live in different cyclotomic fields")

    def reduced(self) -> Tuple[Fraction, ...]:
        """Canonical coefficient vector modulo Phi_N (length phi(N))."""
        phi = list(cyclotomic_poly(self.N))
        deg = len(phi) - 1
        v = [Fraction(0)] * max(self.N, 1)
        for t, x in self.c.items():
            v[t] += x
        for i in range(len(v) - 1, deg - 1, -1):
            x = v[i]
            if x == 0:
                continue
            # zeta^i = zeta^{i-deg} * zeta^deg, and Phi is monic
            for j in range(deg + 1):
                v[i - deg + j] -= x * phi[j]
        out = v[:deg] if deg > 0 else []
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def rational_value(self) -> Fraction:
        """The element as a rational number; raises if it is not rational."""
        r = self.reduced()
        if any(r[1:]):
            raise ValueError("element is not rational")
        return r[0] if r else Fraction(0)

    def __complex__(self) -> complex:
        import cmath
        import math
        return sum(complex(float(v)) * cmath.exp(2j * math.pi * t / self.N)
                   for t, v in sorted(self.c.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclo):
            return NotImplemented
        self._check(other)
        return self.reduced() == other.reduced()

    def __repr__(self) -> str:
        return f"Cyclo({self.N}, {self.reduced()})"
