"""Measurement harness over coefficient sequences.

Sign changes, short interval sums, power moments, large values, shifted
convolutions and square-divisor tails. All n-sums run in ascending order
with compensated summation.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import arith
from . import mf


@dataclass
class CoeffSeries:
    """c(n) for 1 <= n <= X as floats (entry 0 unused).

    ``scale`` is the factor applied to the raw coefficients; from_form divides
    by the root mean square over odd squarefree n so that the mean square is 1.
    """

    values: np.ndarray
    N: int = 1
    label: str = ""
    scale: float = 1.0
    _mask_cache: Dict[Tuple, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.N < 1 or self.N % 2 == 0:
            raise ValueError("N must be odd and positive")

    @property
    def X(self) -> int:
        return len(self.values) - 1

    def mask(self, odd: bool = True, squarefree: bool = True, coprime: bool = True) -> np.ndarray:
        """Boolean mask over 0..X: n odd, squarefree, coprime to N (each optional)."""
        key = (odd, squarefree, coprime)
        m = self._mask_cache.get(key)
        if m is None:
            n = np.arange(self.X + 1, dtype=np.int64)
            m = n >= 1
            if odd:
                m &= n % 2 == 1
            if squarefree:
                m &= arith.squarefree_mask(self.X)
            if coprime and self.N > 1:
                m &= np.gcd(n, self.N) == 1
            m.setflags(write=False)
            self._mask_cache[key] = m
        return m

    @classmethod
    def from_form(cls, label: str, X: int, normalize: bool = True) -> "CoeffSeries":
        f = mf.half_form(label, X)
        c = f.c_array(X)
        s = cls(c, 1, label)
        if normalize:
            m = s.mask()
            rms = math.sqrt(math.fsum(c[m] ** 2) / max(int(m.sum()), 1))
            if rms > 0:
                s = cls(c / rms, 1, label, 1.0 / rms)
        return s

    @classmethod
    def from_csv(cls, path: str, N: int = 1) -> "CoeffSeries":
        """Rows (n, c); missing n are zero."""
        rows = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().lower() in ("n", "#"):
                    continue
                rows.append((int(row[0]), float(row[1])))
        X = max(n for n, _ in rows)
        v = np.zeros(X + 1)
        for n, c in rows:
            if n < 1:
                raise ValueError("n must be positive")
            v[n] = c
        return cls(v, N, path)


def _range_check(s: CoeffSeries, lo: int, hi: int) -> None:
    if lo < 1 or hi > s.X or lo > hi:
        raise ValueError(f"range [{lo}, {hi}] outside 1..{s.X}")


# ------------------------------------------------------------------ weight

def weight_W(u, k: float):
    """W(u) = u^{(k - 1/2)/2} e^{-2 pi u}, u > 0."""
    u = np.asarray(u, dtype=np.float64)
    if np.any(u <= 0):
        raise ValueError("u must be positive")
    out = np.exp((k - 0.5) / 2 * np.log(u) - 2 * math.pi * u)
    return float(out) if out.ndim == 0 else out


# ------------------------------------------------------------------ signs

def sign_changes(s: CoeffSeries, X: int, MX: int, mask: Optional[np.ndarray] = None
                 ) -> Tuple[int, List[Tuple[int, int]]]:
    """Consecutive nonzero masked entries in [X, MX] with strictly negative product."""
    _range_check(s, X, MX)
    m = s.mask() if mask is None else mask
    idx = np.nonzero(m[X: MX + 1] & (s.values[X: MX + 1] != 0))[0] + X
    v = s.values[idx]
    flips = np.nonzero(v[:-1] * v[1:] < 0)[0]
    pairs = [(int(idx[i]), int(idx[i + 1])) for i in flips]
    return len(pairs), pairs


def short_interval_sums(s: CoeffSeries, x: int, y: int) -> Tuple[float, float, bool]:
    """(|sum c(n)|, sum |c(n)|) over masked n in [x, x+y]; True when a flip is certified."""
    _range_check(s, x, x + y)
    m = s.mask()[x: x + y + 1]
    v = s.values[x: x + y + 1][m]
    a, b = abs(math.fsum(v)), math.fsum(np.abs(v))
    return a, b, a < b


def moment_sums(s: CoeffSeries, X: int, MX: int, power: int) -> float:
    """sum over masked n in [X, MX] of |c(n)|^power."""
    if power not in (2, 4):
        raise ValueError("power must be 2 or 4")
    _range_check(s, X, MX)
    v = s.values[X: MX + 1][s.mask()[X: MX + 1]]
    return math.fsum(np.abs(v) ** power)


def large_threshold(n):
    """exp((1/82) sqrt(log n / log log n)), n >= 16."""
    n = np.asarray(n, dtype=np.float64)
    ln = np.log(n)
    out = np.exp(np.sqrt(ln / np.log(ln)) / 82)
    return float(out) if out.ndim == 0 else out


def large_values(s: CoeffSeries, X: int, X2: int) -> List[int]:
    """Masked n in [X, X2] with |c(n)| at least the large value threshold."""
    if X < 16:
        raise ValueError("threshold needs log log n > 1; take X >= 16")
    _range_check(s, X, X2)
    n = np.arange(X, X2 + 1)
    m = s.mask()[X: X2 + 1]
    hit = m & (np.abs(s.values[X: X2 + 1]) >= large_threshold(n))
    return [int(v) for v in n[hit]]


# ------------------------------------------------------------------ shifted sums

def shifted_convolution(s: CoeffSeries, h: int, v: int, r: int, X: float, k: float) -> complex:
    """sum_n c(n) c(n+h) e(n v / r) W(n/X) W((n+h)/X), cut where W < 1e-16 max W."""
    if h == 0:
        raise ValueError("h = 0 is the diagonal; use moment_sums")
    if abs(h) >= math.sqrt(X):
        raise ValueError("need 0 < |h| < sqrt(X)")
    if r < 1 or math.gcd(v, r) != 1:
        raise ValueError("need r >= 1 and (v, r) = 1")
    a = (k - 0.5) / 2
    umax = a / (2 * math.pi)
    logmax = a * math.log(umax) - 2 * math.pi * umax if umax > 0 else 0.0
    # W(u) decreases past umax; find the cut by doubling then bisection
    cut = max(2 * umax, 1.0)
    while a * math.log(cut) - 2 * math.pi * cut - logmax > math.log(1e-16):
        cut *= 1.5
    nmax = int(cut * X)
    if nmax + abs(h) > s.X:
        raise ValueError(f"series must extend to {nmax + abs(h)}")
    n = np.arange(max(1, 1 - h), nmax + 1)
    n = n[n + h >= 1]
    w = weight_W(n / X, k) * weight_W((n + h) / X, k)
    c = s.values[n] * s.values[n + h] * w
    ph = np.exp(2j * math.pi * ((n * v) % r) / r)
    t = c * ph
    return complex(math.fsum(t.real), math.fsum(t.imag))


def square_divisor_tail(s: CoeffSeries, X: int, Y: float) -> Tuple[float, Dict[int, float]]:
    """sum_{d > Y} sum_{n <= X, d^2 | n, (n, 2N) = 1} |c(n)|, and the per-d values."""
    if Y < 1:
        raise ValueError("need Y >= 1")
    _range_check(s, 1, X)
    m = s.mask(squarefree=False)
    a = np.where(m, np.abs(s.values), 0.0)
    per = {}
    for d in range(int(math.floor(Y)) + 1, math.isqrt(X) + 1):
        per[d] = math.fsum(a[d * d: X + 1: d * d])
    return math.fsum(per.values()), per
