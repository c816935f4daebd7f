"""Resonator, the family of twists, and the twisted first moment.

The family is d = (-1)^kappa n with n odd squarefree, (n, N) = 1 and
d = eta mod 4N. The first moment compares a direct sum of central values
against the Euler product main term.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from . import arith
from . import lfun


# ------------------------------------------------------------------ weight Phi

def _psi(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros(t.shape)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    a = _psi(t)
    return a / (a + _psi(1.0 - np.asarray(t, dtype=np.float64)))


@dataclass(frozen=True)
class Bump:
    """Smooth weight equal to 1 on [a1, b1] and supported in [a, b]."""

    a: float = 1.0
    a1: float = 1.1
    b1: float = 1.9
    b: float = 2.0
    scale: float = 1.0

    def __post_init__(self):
        if not (self.a < self.a1 <= self.b1 < self.b):
            raise ValueError("need a < a1 <= b1 < b")

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)
        up = smooth_step((t - self.a) / (self.a1 - self.a))
        down = smooth_step((self.b - t) / (self.b - self.b1))
        return self.scale * up * down

    @property
    def support(self) -> Tuple[float, float]:
        return self.a, self.b

    def integral(self) -> float:
        if self.scale == 0:
            return 0.0
        val, _ = quad(lambda t: float(self(t)), self.a, self.b,
                      points=[self.a1, self.b1], epsabs=1e-13, epsrel=1e-12, limit=200)
        return val


DEFAULT_PHI = Bump()
WIDE_PHI = Bump(0.5, 1.0, 2.0, 2.5)


# ------------------------------------------------------------------ family

@dataclass(frozen=True)
class FamilyD:
    """d = (-1)^kappa n, mu^2(2n) != 0, (n, N) = 1, d = eta mod 4N."""

    N: int = 1
    eta: int = 1
    kappa: int = 9

    def __post_init__(self):
        if self.N < 1 or self.N % 2 == 0 or not arith.is_squarefree(self.N):
            raise ValueError("N must be odd and squarefree")
        if self.eta % 4 != 1 or math.gcd(self.eta, 4 * self.N) != 1:
            raise ValueError("eta must be a reduced residue mod 4N with eta = 1 mod 4")

    @property
    def sign(self) -> int:
        return -1 if self.kappa % 2 else 1

    def contains(self, d: int) -> bool:
        n = self.sign * d
        return (n > 0 and n % 2 == 1 and arith.is_squarefree(n)
                and math.gcd(n, self.N) == 1 and (d - self.eta) % (4 * self.N) == 0)

    def members(self, lo: int, hi: int) -> List[int]:
        """Members with lo <= |d| <= hi, ascending |d|."""
        lo, hi = max(int(math.ceil(lo)), 1), int(math.floor(hi))
        if hi < lo:
            return []
        n = np.arange(lo, hi + 1, dtype=np.int64)
        sf = arith.squarefree_mask(hi)[n]
        d = self.sign * n
        keep = (n % 2 == 1) & sf & ((d - self.eta) % (4 * self.N) == 0)
        if self.N > 1:
            keep &= np.gcd(n, self.N) == 1
        return [int(v) for v in d[keep]]

    def window(self, X: float) -> List[int]:
        return self.members(X, 2 * X)


# ------------------------------------------------------------------ resonator

@dataclass
class ResonatorParams:
    """Resonator data. L and M follow the standard choice M = X^{1/24} unless overridden.

    At desk scale M = X^{1/24} is below e and the recipe gives an empty
    prime window; the overrides exist for demonstrations.
    """

    X: float
    N: int = 1
    lam0: str = "g18"
    L_override: Optional[float] = None
    M_override: Optional[float] = None

    @property
    def overridden(self) -> bool:
        return self.L_override is not None or self.M_override is not None

    @property
    def M(self) -> float:
        return self.M_override if self.M_override is not None else self.X ** (1.0 / 24)

    @property
    def L(self) -> float:
        if self.L_override is not None:
            return float(self.L_override)
        lm = math.log(self.M)
        if lm <= 1.0:
            return 0.0
        return math.sqrt(lm * math.log(lm)) / 8

    @cached_property
    def eigen(self) -> lfun.EigenformL:
        hi = max(int(self.L ** 4) + 1, 10) if self.L > 0 else 10
        return lfun.eigenform_L(self.lam0, max(100000, hi))

    @cached_property
    def primes(self) -> np.ndarray:
        L = self.L
        if L <= 0:
            return np.zeros(0, dtype=np.int64)
        P = arith.primes_upto(int(math.floor(L ** 4)))
        P = P[(P >= L * L) & (np.gcd(P, self.N) == 1)]
        return P

    def r_prime(self, p: int) -> float:
        L = self.L
        if L <= 0 or not (L * L <= p <= L ** 4) or self.N % p == 0 or not arith.is_prime(p):
            return 0.0
        return L / (math.sqrt(p) * math.log(p))

    def r(self, m: int) -> float:
        """Multiplicative, supported on squarefree m with primes in the window."""
        out = 1.0
        for p, e in arith.factorize(m):
            if e > 1:
                return 0.0
            rp = self.r_prime(p)
            if rp == 0.0:
                return 0.0
            out *= rp
        return out

    @cached_property
    def support(self) -> List[Tuple[int, float]]:
        """(m, r(m) lambda_0(m)) for squarefree m <= M built from window primes."""
        lam = self.eigen.lam
        ps = [int(p) for p in self.primes]
        out = [(1, 1.0)]
        M = self.M

        def rec(start: int, m: int, w: float):
            for i in range(start, len(ps)):
                p = ps[i]
                if m * p > M:
                    break
                w2 = w * self.r_prime(p) * float(lam[p])
                out.append((m * p, w2))
                rec(i + 1, m * p, w2)

        rec(0, 1, 1.0)
        out.sort()
        return out


def resonator_value(params: ResonatorParams, d: int) -> float:
    """R(d) = sum_{m <= M} r(m) lambda_0(m) chi_d(m)."""
    if not arith.is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    return math.fsum(w * arith.kronecker(d, m) for m, w in params.support)


def calR(params: ResonatorParams) -> float:
    """prod over window primes of (1 + r(p)^2 lambda_0(p)^2)."""
    lam = params.eigen.lam
    return math.exp(math.fsum(math.log1p(params.r_prime(int(p)) ** 2 * float(lam[p]) ** 2)
                              for p in params.primes))


# ------------------------------------------------------------------ Euler product G

def split_u(u: int) -> Tuple[int, int]:
    """u = u1 u2^2 with u1 squarefree."""
    u1, u2 = 1, 1
    for p, e in arith.factorize(u):
        u1 *= p ** (e % 2)
        u2 *= p ** (e // 2)
    return u1, u2


def G_local(p: int, u: int, lam_p: float, N: int = 1, s: float = 0.0) -> float:
    """Local factor G_p(2s+1; u) of the first-moment Euler product."""
    x = p ** (-(2 * s + 1))
    a2b2 = lam_p * lam_p - 2.0  # alpha^2 + beta^2
    sym = 1.0 - a2b2 * x + x * x  # (1 - alpha^2 x)(1 - beta^2 x)
    if (2 * N) % p == 0:
        return sym * (1.0 - x)
    u1, u2 = split_u(u)
    if u1 % p == 0:
        return (1.0 - 1.0 / p) * (1.0 - x)
    if u2 % p == 0:
        return (1.0 - 1.0 / p) * (1.0 - x * x)
    return (1.0 - 1.0 / p) * (1.0 - x) * (1.0 + sym / p + x)


def euler_G(u: int, g: lfun.EigenformL, s: float = 0.0, N: int = 1,
            P0: int = 100000) -> lfun.LValue:
    """G(2s+1; u) as a product over p <= P0; s > -1/4."""
    if u < 1 or u % 2 == 0 or math.gcd(u, N) != 1:
        raise ValueError("u must be odd, positive and coprime to N")
    if s <= -0.25:
        raise ValueError("need s > -1/4")
    if P0 > g.nmax:
        raise ValueError(f"lambda(p) known only for p <= {g.nmax}")
    primes = arith.primes_upto(P0)
    lam = g.lam[primes]
    x = primes.astype(np.float64) ** (-(2 * s + 1))
    pf = primes.astype(np.float64)
    sym = 1.0 - (lam * lam - 2.0) * x + x * x
    # generic factor; the special primes are patched below
    loc = (1.0 - 1.0 / pf) * (1.0 - x) * (1.0 + sym / pf + x)
    special = {p for p, _ in arith.factorize(2 * N * u)}
    for p in special:
        if p <= P0:
            i = int(np.searchsorted(primes, p))
            loc[i] = G_local(p, u, float(g.lam[p]), N, s)
    val = math.exp(math.fsum(np.log(loc)))
    # generic factor is 1 + O(p^{-1-2s} + p^{-2}); the tail is bounded by the
    # same sum over p > P0
    c = 8.0 * max(P0 ** (-2 * s), 1.0 / P0)
    err = abs(val) * c / (P0 * math.log(P0))
    return lfun.LValue(val, err, f"euler P0={P0} s={s}")


# ------------------------------------------------------------------ first moment

def L_g_eta(g: lfun.EigenformL, eta: int = 1, N: int = 1) -> float:
    """2-part series at 1/2, averaged over the two classes mod 8N above eta mod 4N.

    chi_d(2) depends on d mod 8, which d = eta mod 4N does not fix; the two
    classes carry equal weight in the family.
    """
    vals = []
    for c in (eta, eta + 4 * N):
        chi2 = arith.kronecker(c % (8 * N), 2)
        vals.append(float(np.real(lfun.local_two_factor(float(g.lam[2]), chi2, 0.5))))
    return 0.5 * (vals[0] + vals[1])


def _check_level_one(N: int) -> None:
    if N != 1:
        raise NotImplementedError("central values are implemented for level one families only")


def twisted_moment_lhs(g: lfun.EigenformL, u: int, X: float, Phi: Callable = DEFAULT_PHI,
                       eta: int = 1, N: int = 1, threads: int = 1) -> lfun.LValue:
    """sum_{d in D} L(1/2, g x chi_d) chi_d(u) Phi(|d|/X), summed in ascending |d|."""
    _check_level_one(N)
    fam = FamilyD(N, eta, g.kappa)
    a, b = getattr(Phi, "support", (0.5, 2.5))
    if a < 0.5 or b > 2.5:
        raise ValueError("Phi must be supported in [1/2, 5/2]")
    ds = fam.members(a * X, b * X)
    w = np.asarray(Phi(np.array([abs(d) / X for d in ds], dtype=np.float64)))
    keep = [(d, float(wi)) for d, wi in zip(ds, w) if wi != 0.0 and arith.kronecker(d, u) != 0]
    if keep:
        # extend the eigenvalue table once, before any parallel work
        need = int(math.ceil(lfun.afe_weight(g, 1).xi_max * abs(keep[-1][0]))) + 1
        if need > g.nmax:
            g = lfun.eigenform_L(g.label, need)

    def one(item):
        d, wi = item
        return lfun.central_value_twist(g, d), arith.kronecker(d, u) * wi

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            res = list(ex.map(one, keep))
    else:
        res = [one(it) for it in keep]
    val = math.fsum(L.value * c for L, c in res)
    err = math.fsum(L.est_error * abs(c) for L, c in res)
    return lfun.LValue(val, err, f"direct #d={len(res)}")


def twisted_moment_main(g: lfun.EigenformL, u: int, X: float, Phi: Callable = DEFAULT_PHI,
                        eta: int = 1, N: int = 1, P0: int = 100000) -> float:
    """X lambda(u1) / (2 N sqrt(u1)) (int Phi) L_{g,eta}(1/2) L(1, Sym^2 g) G(1; u)."""
    _check_level_one(N)
    u1, _ = split_u(u)
    lam_u1 = float(g.lam[u1]) if u1 <= g.nmax else None
    if lam_u1 is None:
        raise ValueError("u1 beyond eigenvalue table")
    if lam_u1 == 0.0:
        return 0.0
    intphi = Phi.integral() if hasattr(Phi, "integral") else quad(Phi, 0.5, 2.5)[0]
    if intphi == 0.0:
        return 0.0
    sym2 = lfun.sym2_L_at_1(g, P0=min(P0, g.nmax)).value
    G = euler_G(u, g, 0.0, N, P0=min(P0, g.nmax)).value
    return X * lam_u1 / (2 * N * math.sqrt(u1)) * intphi * L_g_eta(g, eta, N) * sym2 * G


def moment_agreement(g: lfun.EigenformL, u: int, X: float, threads: int = 1) -> Dict[str, float]:
    lhs = twisted_moment_lhs(g, u, X, threads=threads)
    main = twisted_moment_main(g, u, X)
    return {"X": X, "u": u, "lhs": lhs.value, "lhs_err": lhs.est_error, "main": main,
            "ratio": lhs.value / main, "deviation": abs(lhs.value / main - 1.0)}


# ------------------------------------------------------------------ estimates

def rankin_selberg_prime_sum(g0: lfun.EigenformL, g: lfun.EigenformL, x: int) -> float:
    """sum_{p <= x} lambda_0(p) lambda_g(p) log p."""
    P = arith.primes_upto(x)
    return math.fsum(g0.lam[P] * g.lam[P] * np.log(P.astype(np.float64)))


def estimates_report(params: ResonatorParams, g0: Optional[lfun.EigenformL] = None,
                     with_L: bool = True, threads: int = 1) -> Dict[str, float]:
    """Desk-scale versions of the four resonance estimates, with comparators."""
    g0 = g0 or params.eigen
    X = params.X
    fam = FamilyD(params.N, 1, g0.kappa)
    ds = fam.window(X)
    R = np.array([resonator_value(params, d) for d in ds])
    R2 = R * R
    cR = calR(params)
    L = params.L
    out = {
        "X": X, "L": L, "M": params.M, "overridden": params.overridden,
        "family_size": len(ds), "calR": cR,
        "sum_R2": math.fsum(R2), "sum_R6": math.fsum(R2 ** 3),
        "bound_R2": 2 * X / math.pi ** 2 * cR,
        "shape_R6": X * math.exp(math.log(X) / math.log(math.log(X))),
    }
    gain = 0.5 * L / math.log(L) if L > 1 else 0.0
    out["shape_LR2"] = X * cR * math.exp(gain)
    if with_L:
        if params.N != 1:
            raise NotImplementedError("central values are implemented for level one families only")
        need = int(math.ceil(lfun.afe_weight(g0, 1).xi_max * 2 * X)) + 1
        if need > g0.nmax:
            g0 = lfun.eigenform_L(g0.label, need)

        def one(d):
            return lfun.central_value_twist(g0, d).value

        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                Ls = list(ex.map(one, ds))
        else:
            Ls = [one(d) for d in ds]
        out["sum_LR2"] = math.fsum(np.array(Ls) * R2)
        out["ratio_LR2_over_RX"] = out["sum_LR2"] / (cR * X)
    return out
