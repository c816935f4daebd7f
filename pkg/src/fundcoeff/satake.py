"""Local Satake data for GSp(4) x automorphic induction, and the moment tools.

pi-data is a table of unitary pairs (alpha_p, beta_p). Genuine general type
data is out of reach, so tables come from fuzzing or from two elliptic
eigenforms (Yoshida shape). AI(Lambda)-data comes from classgroup.ai_satake.
"""
from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from . import arith
from . import classgroup as cg
from . import lfun

C0_DEFAULT = 2.0
STAR = ("pi", "std", "ad")


# ------------------------------------------------------------------ data

@dataclass
class SatakeGSp4:
    """alpha_p, beta_p on the unit circle for each prime in `primes`."""

    primes: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    label: str = ""
    _index: Dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.primes = np.asarray(self.primes, dtype=np.int64)
        self.alpha = np.asarray(self.alpha, dtype=complex)
        self.beta = np.asarray(self.beta, dtype=complex)
        if not (len(self.primes) == len(self.alpha) == len(self.beta)):
            raise ValueError("length mismatch")
        if len(self.alpha) and (np.max(np.abs(np.abs(self.alpha) - 1)) > 1e-12
                                or np.max(np.abs(np.abs(self.beta) - 1)) > 1e-12):
            raise ValueError("Satake parameters must be unitary")
        self._index = {int(p): i for i, p in enumerate(self.primes)}

    def at(self, p: int) -> Tuple[complex, complex]:
        i = self._index.get(p)
        if i is None:
            raise KeyError(f"no Satake data at p = {p}")
        return complex(self.alpha[i]), complex(self.beta[i])

    def upto(self, x: float) -> "SatakeGSp4":
        keep = self.primes <= x
        return SatakeGSp4(self.primes[keep], self.alpha[keep], self.beta[keep], self.label)

    @classmethod
    def fuzz(cls, primes: Sequence[int], seed: int = 0) -> "SatakeGSp4":
        rng = np.random.default_rng(seed)
        t = rng.uniform(0, 2 * math.pi, size=(2, len(primes)))
        return cls(np.asarray(primes), np.exp(1j * t[0]), np.exp(1j * t[1]), f"fuzz seed={seed}")

    @classmethod
    def yoshida(cls, g1: str, g2: str, x: int) -> "SatakeGSp4":
        """alpha_p from g1 and beta_p from g2: L(s, pi) = L(s, g1) L(s, g2)."""
        P = arith.primes_upto(x)
        out = []
        for lab in (g1, g2):
            g = lfun.eigenform_L(lab, max(x, 1000))
            lam = np.clip(g.lam[P], -2.0, 2.0)
            th = np.arccos(lam / 2)
            out.append(np.exp(1j * th))
        return cls(P, out[0], out[1], f"yoshida {g1} x {g2}")


def std_set(alpha: complex, beta: complex) -> List[complex]:
    ai, bi = 1 / alpha, 1 / beta
    return [1, alpha * beta, alpha * bi, ai * beta, ai * bi]


def ad_set(alpha: complex, beta: complex) -> List[complex]:
    ai, bi = 1 / alpha, 1 / beta
    return [alpha ** 2, ai ** 2, beta ** 2, bi ** 2, alpha * beta, ai * beta,
            alpha * bi, ai * bi, 1, 1]


def pi_set(alpha: complex, beta: complex) -> List[complex]:
    return [alpha, 1 / alpha, beta, 1 / beta]


_SETS = {"pi": pi_set, "std": std_set, "ad": ad_set}


def power_sum(star: str, alpha: complex, beta: complex, n: int) -> float:
    """a_star(p^n) = sum of n-th powers over the Satake set; real for unitary data."""
    try:
        S = _SETS[star](alpha, beta)
    except KeyError:
        raise ValueError(f"star must be one of {STAR}") from None
    return float(np.real(sum(complex(a) ** n for a in S)))


def ai_power_sum(ai: cg.SatakeAI, n: int) -> float:
    return float(np.real(ai.power_sum(n)))


def ai_square(ai: cg.SatakeAI) -> cg.SatakeAI:
    """Satake data of AI(Lambda^2) at the same prime."""
    if ai.kind == "inert":
        return ai
    return cg.SatakeAI(ai.p, ai.kind, ai.alpha ** 2, ai.beta ** 2)


def rankin_power_sum(alpha: complex, beta: complex, ai: cg.SatakeAI, n: int) -> float:
    """a_{pi x AI(Lambda)}(p^n) = a_pi(p^n) a_AI(p^n)."""
    return power_sum("pi", alpha, beta, n) * ai_power_sum(ai, n)


# ------------------------------------------------------------------ identities

def fsquare_residual(alpha: complex, beta: complex) -> float:
    """|a_pi(p^2) - (a_ad(p) - a_std(p) - 1)|."""
    return abs(power_sum("pi", alpha, beta, 2)
               - (power_sum("ad", alpha, beta, 1) - power_sum("std", alpha, beta, 1) - 1))


def psquare_residual(alpha: complex, beta: complex) -> float:
    """|a_pi(p)^2 - (a_ad(p) + a_std(p) + 1)|."""
    return abs(power_sum("pi", alpha, beta, 1) ** 2
               - (power_sum("ad", alpha, beta, 1) + power_sum("std", alpha, beta, 1) + 1))


def rs_square_identity_check(alpha: complex, beta: complex, ai: cg.SatakeAI, kron: int) -> float:
    """Residual of a_{pi x AI}(p^2) = (a_ad - a_std - 1)(a_{AI(Lambda^2)}(p) + (d/p)^2 - (d/p))."""
    lhs = rankin_power_sum(alpha, beta, ai, 2)
    rhs = ((power_sum("ad", alpha, beta, 1) - power_sum("std", alpha, beta, 1) - 1)
           * (ai_power_sum(ai_square(ai), 1) + kron * kron - kron))
    return abs(lhs - rhs)


def ramanujan_max(alpha: complex, beta: complex, ai: cg.SatakeAI, nmax: int = 20) -> float:
    """max_{1 <= n <= nmax} |a_{pi x AI}(p^n)|; at most 8 for unitary data."""
    return max(abs(rankin_power_sum(alpha, beta, ai, n)) for n in range(1, nmax + 1))


def _random_ai(rng: np.random.Generator, kind: str, p: int) -> Tuple[cg.SatakeAI, int]:
    if kind == "inert":
        return cg.SatakeAI(p, "inert", 1 + 0j, -1 + 0j), -1
    z = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    if kind == "split":
        return cg.SatakeAI(p, "split", z, z.conjugate()), 1
    return cg.SatakeAI(p, "ramified", z, 0j), 0


def fuzz_identities(draws: int = 1000, seed: int = 0) -> Dict[str, float]:
    """Max residuals of the three identities and max |a_{pi x AI}(p^n)|, n <= 20."""
    rng = np.random.default_rng(seed)
    worst = {"fsquare": 0.0, "psquare": 0.0, "rs_square": 0.0, "ramanujan_max": 0.0}
    for i in range(draws):
        a, b = np.exp(1j * rng.uniform(0, 2 * math.pi, size=2))
        kind = ("split", "inert", "ramified")[i % 3]
        ai, kron = _random_ai(rng, kind, 5)
        worst["fsquare"] = max(worst["fsquare"], fsquare_residual(a, b))
        worst["psquare"] = max(worst["psquare"], psquare_residual(a, b))
        worst["rs_square"] = max(worst["rs_square"], rs_square_identity_check(a, b, ai, kron))
        worst["ramanujan_max"] = max(worst["ramanujan_max"], ramanujan_max(a, b, ai))
    return worst


# ------------------------------------------------------------------ prime sums

AIFunc = Callable[[int], cg.SatakeAI]


def _check_reach(pi: SatakeGSp4, x: float) -> None:
    P = arith.primes_upto(int(x))
    if len(P) and (len(pi.primes) == 0 or pi.primes[-1] < P[-1]):
        raise ValueError("Satake data does not reach x")


def ai_function(G: cg.ClassGroup, chi: cg.ClassCharacter) -> AIFunc:
    cache: Dict[int, cg.SatakeAI] = {}

    def f(p: int) -> cg.SatakeAI:
        v = cache.get(p)
        if v is None:
            v = cache[p] = cg.ai_satake(G, chi, p)
        return v

    return f


def chandee_sum(pi: SatakeGSp4, ai: AIFunc, d: int, x: float, C0: float = C0_DEFAULT,
                N: int = 1) -> float:
    """sum_{p^n <= x, p !| N} a_{pi x AI}(p^n) / (n p^{n/2 (1 + 1/log x)}) + C0 log|d| / log x."""
    if x <= 1:
        raise ValueError("need x > 1")
    if C0 <= 1:
        raise ValueError("C0 must exceed 1")
    lx = math.log(x)
    terms = []
    for p in pi.primes:
        p = int(p)
        if p > x:
            break
        if N % p == 0:
            continue
        a, b = pi.at(p)
        A = ai(p)
        n, pn = 1, p
        while pn <= x:
            terms.append(rankin_power_sum(a, b, A, n) / (n * p ** (n / 2 * (1 + 1 / lx))))
            n += 1
            pn *= p
    _check_reach(pi, x)
    return math.fsum(terms) + C0 * math.log(abs(d)) / lx


def chandee_termwise_bound(x: float, N: int = 1) -> float:
    """8 sum_{p^n <= x} 1/(n p^{n/2})."""
    out = []
    for p in arith.primes_upto(int(x)):
        p = int(p)
        if N % p == 0:
            continue
        n, pn = 1, p
        while pn <= x:
            out.append(8.0 / (n * p ** (n / 2)))
            n += 1
            pn *= p
    return math.fsum(out)


def remark_shape(d: int, C0: float = C0_DEFAULT) -> float:
    """exp(2 C0 log|d| / log log|d|)."""
    L = math.log(abs(d))
    return math.exp(2 * C0 * L / math.log(L))


def P_Lambda(pi: SatakeGSp4, ai: AIFunc, d: int, x: float, N: int = 1) -> float:
    """sum_{p <= x} a_pi(p) a_AI(p) / p^{1/2 + 1/log x} * log(x/p) / log x."""
    if x < 2:
        raise ValueError("need x >= 2")
    lx = math.log(x)
    terms = []
    for p in pi.primes:
        p = int(p)
        if p > x:
            break
        if N % p == 0:
            continue
        a, b = pi.at(p)
        terms.append(power_sum("pi", a, b, 1) * ai_power_sum(ai(p), 1)
                     / p ** (0.5 + 1 / lx) * math.log(x / p) / lx)
    return math.fsum(terms)


def P_values(pi: SatakeGSp4, G: cg.ClassGroup, x: float, N: int = 1) -> np.ndarray:
    """P(Lambda; x) for every character of G, in characters(G) order."""
    return np.array([P_Lambda(pi, ai_function(G, chi), G.d, x, N) for chi in cg.characters(G)])


def A_K(pi: SatakeGSp4, G: cg.ClassGroup, V: float, x: float, N: int = 1,
        P: Optional[np.ndarray] = None) -> Fraction:
    """Fraction of characters Lambda with P(Lambda; x) > V."""
    if P is None:
        P = P_values(pi, G, x, N)
    return Fraction(int(np.sum(P > V)), G.h)


def gaussian_tail_shape(V: float, d: int) -> float:
    return math.exp(-V * V / (2 * math.log(math.log(abs(d)))))


# ------------------------------------------------------------------ moments

def moment_bound_check(G: cg.ClassGroup, b: Dict[int, float], x: float, ell: int,
                       case: str = "split", N: int = 1) -> Tuple[float, float, bool]:
    """Brute force over all characters of the 2 ell-th moment bound.

    case "split": primes p <= x with p !| dN; the right side uses
    2 sum b_p^2/p over split p. case "ramified": primes p | d. The hypothesis
    x^ell < sqrt|d|/2 is checked on the primes that carry weight (b_p != 0),
    which is where the argument uses it.
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    d = G.d
    if case == "split":
        ps = [p for p in arith.primes_upto(int(x)) if d % p and N % p]
    elif case == "ramified":
        ps = [p for p, _ in arith.factorize(abs(d)) if p <= x and N % p]
    else:
        raise ValueError("case must be 'split' or 'ramified'")
    ps = [int(p) for p in ps if b.get(int(p), 0.0) != 0.0]
    if not ps:
        return 0.0, 0.0, True
    x_eff = max(ps)
    if x_eff ** ell >= math.sqrt(abs(d)) / 2:
        raise ValueError(f"x^ell < sqrt|d|/2 fails on the support (x_eff = {x_eff})")
    vals = []
    for chi in cg.characters(G):
        s = math.fsum(b[p] * ai_power_sum(cg.ai_satake(G, chi, p), 1) / math.sqrt(p) for p in ps)
        vals.append(s ** (2 * ell))
    lhs = math.fsum(vals) / G.h
    c = math.factorial(2 * ell) / (2 ** ell * math.factorial(ell))
    if case == "split":
        S = 2 * math.fsum(b[p] ** 2 / p for p in ps if arith.kronecker(d, p) == 1)
    else:
        S = math.fsum(b[p] ** 2 / p for p in ps)
    rhs = c * S ** ell
    # floating point slack only; equality cases are attained exactly
    ok = lhs <= rhs * (1 + 1e-12) + 1e-300
    return lhs, rhs, ok


# ------------------------------------------------------------------ random model

@dataclass
class MCResult:
    mean: float
    variance: float
    predicted_variance: float
    samples: int
    hist_counts: np.ndarray
    hist_edges: np.ndarray


def split_primes_weights(b: Dict[int, float], d: int, X: float) -> Tuple[np.ndarray, np.ndarray]:
    ps = np.array(sorted(p for p in b if p < X and arith.kronecker(d, p) == 1), dtype=np.int64)
    return ps, np.array([b[int(p)] for p in ps], dtype=np.float64)


def random_model_mc(b: Dict[int, float], d: int, X: float, samples: int = 100000,
                    seed: int = 0, batch: int = 10000, threads: int = 1,
                    bins: int = 50) -> MCResult:
    """sum_{p < X, (d/p) = 1} b(p) (X_p + 1/X_p) / sqrt p with X_p uniform on the circle.

    Batches draw from independent child seeds, so the result does not depend
    on the thread count.
    """
    if samples < 10000:
        raise ValueError("samples must be at least 1e4")
    ps, bp = split_primes_weights(b, d, X)
    coef = 2 * bp / np.sqrt(ps.astype(np.float64))
    sizes = [batch] * (samples // batch) + ([samples % batch] if samples % batch else [])
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i):
        rng = np.random.default_rng(seeds[i])
        th = rng.uniform(0, 2 * math.pi, size=(sizes[i], len(ps)))
        return np.cos(th) @ coef if len(ps) else np.zeros(sizes[i])

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    S = np.concatenate(parts)
    mean = math.fsum(S) / samples
    var = math.fsum((S - mean) ** 2) / (samples - 1)
    pred = 2 * math.fsum(bp ** 2 / ps)
    lim = max(4 * math.sqrt(pred), 1e-12)
    counts, edges = np.histogram(S, bins=bins, range=(-lim, lim))
    return MCResult(mean, var, pred, samples, counts, edges)


# ------------------------------------------------------------------ Gaussian identity

def gaussian_integral(sigma: float) -> Tuple[float, float]:
    """(numerical int e^{-t^2/(2 sigma) + t/2} dt, sqrt(2 pi sigma) e^{sigma/8})."""
    if not 0.1 <= sigma <= 100:
        raise ValueError("sigma must lie in [0.1, 100]")
    c, w = sigma / 2, 40 * math.sqrt(sigma)
    f = lambda t: math.exp(-t * t / (2 * sigma) + t / 2)
    pieces = np.linspace(c - w, c + w, 17)
    num = math.fsum(quad(f, a, b, epsabs=0, epsrel=1e-13, limit=200)[0]
                    for a, b in zip(pieces[:-1], pieces[1:]))
    return num, math.sqrt(2 * math.pi * sigma) * math.exp(sigma / 8)


def gaussian_integral_check(sigma: float) -> float:
    num, closed = gaussian_integral(sigma)
    return abs(num - closed) / closed


# ------------------------------------------------------------------ prime square sums

def prime_square_sums(pi: SatakeGSp4, d: int, x: float, ai: Optional[AIFunc] = None,
                 N: int = 1) -> Dict[str, float]:
    """The two prime sums, with -log log x and (1/2) log log x alongside.

    ai defaults to the trivial character of Cl(d), whose Satake data depends
    only on (d/p).
    """
    if x < 2:
        raise ValueError("need x >= 2")
    if ai is None:
        def ai(p: int) -> cg.SatakeAI:
            k = arith.kronecker(d, p)
            if k == 1:
                return cg.SatakeAI(p, "split", 1 + 0j, 1 + 0j)
            if k == -1:
                return cg.SatakeAI(p, "inert", 1 + 0j, -1 + 0j)
            return cg.SatakeAI(p, "ramified", 1 + 0j, 0j)
    _check_reach(pi, x)
    lx = math.log(x)
    s1, s2 = [], []
    for p in pi.primes:
        p = int(p)
        if p > x:
            break
        if N % p == 0:
            continue
        a, b = pi.at(p)
        if p * p <= x:
            s1.append(rankin_power_sum(a, b, ai(p), 2) * p ** (-1 - 2 / lx) * math.log(x / p) / lx)
        if arith.kronecker(d, p) == 1:
            s2.append(power_sum("pi", a, b, 1) ** 2 / p)
    llx = math.log(lx) if lx > 1 else float("nan")
    return {"x": x, "sum_i": math.fsum(s1), "sum_ii": math.fsum(s2),
            "minus_loglog": -llx, "half_loglog": 0.5 * llx}
