"""Numerical L-values.

L(1, chi_d) by a rapidly convergent theta-type sum, L(1/2, g x chi_d) by the
approximate functional equation with a contour-integral weight, the
Waldspurger ratio test, and L(1, Sym^2 g) by Euler product and by a
smoothed Dirichlet series.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import erfc, gammaincc, loggamma

from . import arith
from . import mf


@dataclass(frozen=True)
class LValue:
    value: float
    est_error: float
    method: str
    flag: str = ""

    def __float__(self) -> float:
        return self.value


# ------------------------------------------------------------------ eigenforms

@dataclass
class EigenformL:
    """Level one Hecke eigenform with normalized eigenvalues lambda(n), n <= nmax."""

    label: str
    weight: int
    lam: np.ndarray = field(repr=False)
    ap: Dict[int, int] = field(repr=False, default_factory=dict)

    @property
    def kappa(self) -> int:
        return self.weight // 2

    @property
    def nmax(self) -> int:
        return len(self.lam) - 1

    def satake_angle(self, p: int) -> float:
        """theta_p with lambda(p) = 2 cos theta_p."""
        return math.acos(max(-1.0, min(1.0, self.lam[p] / 2)))


_EF_LOCK = threading.Lock()
_EF: Dict[str, EigenformL] = {}


def multiplicative_from_primes(lam_p: Dict[int, float], N: int) -> np.ndarray:
    """lambda(n), n <= N, from lambda(p) via lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1})."""
    lam = np.ones(N + 1)
    lam[0] = 0.0
    for p, lp in lam_p.items():
        if p > N:
            continue
        prev, cur = 1.0, lp
        pk = p
        while pk <= N:
            idx = np.arange(pk, N + 1, pk)
            idx = idx[(idx // pk) % p != 0]
            lam[idx] *= cur
            prev, cur = cur, lp * cur - prev
            pk *= p
    return lam


def eigenform_L(label: str, nmax: int = 100000) -> EigenformL:
    """g12, g18 or g22 with lambda(n) for n <= nmax, built from the exact a(p)."""
    w = mf.EIGEN_WEIGHT.get(label)
    if w is None:
        raise ValueError(f"unknown eigenform {label!r}")
    with _EF_LOCK:
        g = _EF.get(label)
        if g is None or g.nmax < nmax:
            a = mf.eigenform_qexp(label, nmax)
            primes = arith.primes_upto(nmax)
            ap = {int(p): a[int(p)] for p in primes}
            lam_p = {p: v / p ** ((w - 1) / 2) for p, v in ap.items()}
            g = EigenformL(label, w, multiplicative_from_primes(lam_p, nmax), ap)
            _EF[label] = g
    return g


# ------------------------------------------------------------------ Dirichlet L(1)

def dirichlet_L1(d: int) -> LValue:
    """L(1, chi_d) for a negative fundamental discriminant d."""
    if d >= 0 or not arith.is_fundamental(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    q = -d
    nmax = int(4.5 * math.sqrt(q)) + 10
    n = np.arange(1, nmax + 1, dtype=np.int64)
    chi = arith.chi_values(d, n).astype(np.float64)
    nf = n.astype(np.float64)
    terms = chi * (np.exp(-math.pi * nf * nf / q) / nf
                   + math.pi / math.sqrt(q) * erfc(nf * math.sqrt(math.pi / q)))
    val = math.fsum(terms)
    # tail beyond nmax is below exp(-pi*20) relative; rounding dominates
    err = 1e-15 * math.fsum(np.abs(terms)) + 1e-16 * nmax
    return LValue(val, err, f"theta-sum n<={nmax}")


def class_number_from_L(d: int) -> int:
    w = 6 if d == -3 else 4 if d == -4 else 2
    return round(w * math.sqrt(-d) * dirichlet_L1(d).value / (2 * math.pi))


# ------------------------------------------------------------------ AFE weight

def local_two_factor(lam2: float, chi2: int, s) -> complex:
    """Euler factor at 2 of L(s, g x chi_d): (1 - lambda(2) chi(2) 2^-s + chi(2)^2 4^-s)^-1."""
    return 1.0 / (1.0 - lam2 * chi2 * 2.0 ** (-s) + chi2 * chi2 * 4.0 ** (-s))


class AFEWeight:
    """W(xi) = (1/2 pi i) int_(c) L_2(s+1/2) Gamma(s+kappa)/Gamma(kappa) (2 pi xi)^-s ds/s.

    Evaluated by the trapezoid rule on Re s = c, |Im s| <= tmax, tabulated on a
    log-spaced grid and interpolated by a cubic spline in log xi.
    """

    TAIL = 1e-16

    def __init__(self, kappa: int, lam2: float, chi2: int, c: float = 1.0,
                 tmax: float = 60.0, h: float = 0.05, xi_min: float = 1e-6,
                 grid: int = 6000):
        self.kappa = kappa
        self.lam2 = lam2
        self.chi2 = chi2
        self.c = c
        self.tmax = tmax
        self.h = h
        t = np.arange(-tmax, tmax + h / 2, h)
        s = c + 1j * t
        F = (local_two_factor(lam2, chi2, s + 0.5)
             * np.exp(loggamma(s + kappa) - loggamma(kappa)) / s)
        self._s = s
        self._F = F * h / (2 * math.pi)
        # effective support from the envelope |W(xi)| <= C Q(kappa, 2 pi xi),
        # C = sum (j+1) 2^{-j/2}; the contour itself bottoms out near 1e-17
        C = 1.0 / (1.0 - 2 ** -0.5) ** 2
        xi_max = brentq(lambda x: C * gammaincc(kappa, 2 * math.pi * x) - self.TAIL,
                        1e-3, 1e3)
        self.xi_min = xi_min
        self.xi_max = xi_max
        u = np.linspace(math.log(xi_min), math.log(xi_max), grid)
        W = self.direct(np.exp(u))
        self._spline = CubicSpline(u, W)
        mid = 0.5 * (u[:-1] + u[1:])
        probe = mid[:: max(1, len(mid) // 400)]
        self.interp_error = float(np.max(np.abs(self._spline(probe) - self.direct(np.exp(probe)))))

    def direct(self, xi: np.ndarray) -> np.ndarray:
        """Contour-integral value at each xi (no interpolation)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
        out = np.empty(xi.shape)
        logx = np.log(2 * math.pi * xi)
        for a in range(0, len(xi), 512):
            blk = logx[a: a + 512]
            out[a: a + 512] = np.real(np.exp(-np.outer(blk, self._s)) @ self._F)
        return out

    def __call__(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=np.float64)
        if np.any(xi < self.xi_min):
            raise ValueError("xi below tabulated range")
        out = np.zeros(xi.shape)
        inside = xi <= self.xi_max
        out[inside] = self._spline(np.log(xi[inside]))
        return out

    def closed_form(self, xi: np.ndarray) -> np.ndarray:
        """sum_j lambda(2^j) chi(2)^j 2^{-j/2} Q(kappa, 2 pi 2^j xi) (incomplete gamma)."""
        xi = np.asarray(xi, dtype=np.float64)
        out = np.zeros(xi.shape)
        if self.chi2 == 0:
            return gammaincc(self.kappa, 2 * math.pi * xi)
        prev, cur = 0.0, 1.0  # lambda(2^{-1}), lambda(2^0)
        j = 0
        while True:
            term = cur * self.chi2 ** j * 2.0 ** (-j / 2) * gammaincc(self.kappa, 2 * math.pi * 2.0 ** j * xi)
            out += term
            if 2 * math.pi * 2.0 ** j * np.min(xi) > 200 + 4 * self.kappa:
                break
            prev, cur = cur, self.lam2 * cur - prev
            j += 1
        return out

    def value_at_zero(self) -> float:
        """W(0+) = L_2(1/2)."""
        return float(np.real(local_two_factor(self.lam2, self.chi2, 0.5)))


_W_LOCK = threading.Lock()


@lru_cache(maxsize=32)
def _afe_weight(label: str, kappa: int, lam2: float, chi2: int, c: float) -> AFEWeight:
    return AFEWeight(kappa, lam2, chi2, c)


def afe_weight(g: EigenformL, chi2: int, c: float = 1.0) -> AFEWeight:
    with _W_LOCK:
        return _afe_weight(g.label, g.kappa, float(g.lam[2]), chi2, float(c))


def central_value_twist(g: EigenformL, d: int, c: float = 1.0,
                        T: Optional[int] = None, max_table: int = 2_000_000) -> LValue:
    """L(1/2, g x chi_d) = 2 sum_{m odd} lambda(m) chi_d(m) m^{-1/2} W(m/|d|).

    The eigenvalue table of g is extended on demand up to max_table entries.
    """
    if d >= 0 or not arith.is_fundamental(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    q = -d
    chi2 = arith.kronecker(d, 2)
    W = afe_weight(g, chi2, c)
    if T is None:
        T = int(math.ceil(W.xi_max * q))
    if g.nmax < T <= max_table:
        g = eigenform_L(g.label, max(T, 2 * g.nmax))
    if T > g.nmax:
        raise ValueError(f"truncation failure: need lambda(m) up to {T}, "
                         f"have {g.nmax}; extend the eigenvalue table")
    m = np.arange(1, T + 1, 2, dtype=np.int64)
    chi = arith.chi_values(d, m).astype(np.float64)
    w = W(m / q)
    terms = g.lam[m] * chi * w / np.sqrt(m)
    val = 2.0 * math.fsum(terms)
    absum = 2.0 * math.fsum(np.abs(terms))
    # tail: |W| decays faster than geometrically past xi_max, |lambda(m)| <= tau(m)
    tail = 2.0 * W.TAIL * T ** 0.8
    interp = 2.0 * W.interp_error * math.fsum(np.abs(g.lam[m]) / np.sqrt(m))
    err = tail + interp + 1e-15 * absum
    flag = "negative beyond error" if val < -err - 1e-6 else ""
    return LValue(val, err, f"AFE c={c} T={T} grid-spline", flag)


def waldspurger_ratio_check(f: mf.HalfIntForm, g: EigenformL, n1: int, n2: int) -> float:
    """| |c(n1)|^2 L(1/2, g x chi_{d2}) / (|c(n2)|^2 L(1/2, g x chi_{d1})) - 1 |."""
    for n in (n1, n2):
        if n % 2 == 0 or not arith.is_squarefree(n):
            raise ValueError(f"{n} is not odd squarefree")
        if not arith.is_fundamental((-1) ** f.kappa * n):
            raise ValueError(f"(-1)^kappa {n} is not fundamental")
    if n1 == n2:
        return 0.0
    c1, c2 = f.c(n1), f.c(n2)
    if c1 == 0 or c2 == 0:
        raise ValueError("c(f, n) vanishes")
    sgn = (-1) ** f.kappa
    L1 = central_value_twist(g, sgn * n1)
    L2 = central_value_twist(g, sgn * n2)
    for L in (L1, L2):
        if abs(L.value) <= 10 * L.est_error:
            raise ZeroDivisionError("central value is zero within error")
    return abs(c1 * c1 * L2.value / (c2 * c2 * L1.value) - 1.0)


# ------------------------------------------------------------------ symmetric square

def sym2_local(lam_p: float, p: int, s: float = 1.0) -> float:
    """L_p(s, Sym^2 g) = [(1 - alpha^2 p^-s)(1 - p^-s)(1 - beta^2 p^-s)]^-1."""
    x = p ** (-s)
    return 1.0 / ((1.0 - (lam_p * lam_p - 2.0) * x + x * x) * (1.0 - x))


def sym2_coefficients(g: EigenformL, N: int) -> np.ndarray:
    """Dirichlet coefficients b(n), n <= N, of L(s, Sym^2 g)."""
    b = np.ones(N + 1)
    b[0] = 0.0
    for p in arith.primes_upto(N):
        p = int(p)
        e = g.lam[p] ** 2 - 1.0
        seq = [1.0]
        pk = p
        while pk <= N:
            k = len(seq)
            v = e * seq[k - 1] - (e * seq[k - 2] if k >= 2 else 0.0) + (seq[k - 3] if k >= 3 else 0.0)
            seq.append(v)
            idx = np.arange(pk, N + 1, pk)
            idx = idx[(idx // pk) % p != 0]
            b[idx] *= v
            pk *= p
    return b


def _log_gamma_sym2(z: np.ndarray, w: int) -> np.ndarray:
    """log of Gamma_R(z+1) Gamma_C(z+w-1)."""
    lr = -(z + 1) / 2 * math.log(math.pi) + loggamma((z + 1) / 2)
    lc = math.log(2) - (z + w - 1) * math.log(2 * math.pi) + loggamma(z + w - 1)
    return lr + lc


def sym2_L_at_1(g: EigenformL, P0: int = 100000, method: str = "euler") -> LValue:
    """L(1, Sym^2 g): truncated Euler product ("euler") or smoothed series ("afe")."""
    if method == "euler":
        if P0 > g.nmax:
            raise ValueError(f"lambda(p) known only for p <= {g.nmax}")
        primes = arith.primes_upto(P0)
        lp = g.lam[primes]
        x = 1.0 / primes.astype(np.float64)
        logs = -np.log((1.0 - (lp * lp - 2.0) * x + x * x) * (1.0 - x))
        val = math.exp(math.fsum(logs))
        # Sato-Tate: lambda(p^2) has mean 0, variance 1, so the tail of
        # sum lambda(p^2)/p has spread about (sum_{p > P0} p^-2)^{1/2}
        err = val * math.sqrt(1.0 / (P0 * math.log(P0)))
        return LValue(val, err, f"euler P0={P0}")
    if method == "afe":
        c, tmax, h = 1.0, 90.0, 0.02
        t = np.arange(-tmax, tmax + h / 2, h)
        z = c + 1j * t
        w = g.weight
        g1 = _log_gamma_sym2(np.array([1.0 + 0j]), w)[0]
        F1 = np.exp(_log_gamma_sym2(1 + z, w) - g1) / z * h / (2 * math.pi)
        F2 = np.exp(_log_gamma_sym2(z, w) - g1) / z * h / (2 * math.pi)

        def V(F, n):
            return np.real(np.exp(-np.outer(np.log(n), z)) @ F)

        N = 64
        while abs(V(F2, np.array([float(N)]))[0]) > 1e-18:
            N *= 2
        if N > g.nmax:
            raise ValueError("eigenvalue table too short for the smoothed series")
        b = sym2_coefficients(g, N)
        n = np.arange(1, N + 1, dtype=np.float64)
        v1 = np.concatenate([V(F1, n[i: i + 512]) for i in range(0, N, 512)])
        v2 = np.concatenate([V(F2, n[i: i + 512]) for i in range(0, N, 512)])
        terms = b[1:] * (v1 / n + v2)
        val = math.fsum(terms)
        err = 1e-13 * math.fsum(np.abs(terms)) + 1e-15
        return LValue(val, err, f"afe N={N} c={c}")
    raise ValueError("method must be 'euler' or 'afe'")
