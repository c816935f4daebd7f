"""Exact q-expansions: level one forms, Cohen numbers, index one Jacobi forms
and Kohnen plus space forms of half-integral weight.

Series are stored as integer numerators over one common denominator, and
multiplied by Kronecker substitution on gmpy2 integers.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence

import gmpy2
import numpy as np

from . import arith
from . import cache as _cache

# ------------------------------------------------------------------ series


def _bits(v: int) -> int:
    return int(abs(v)).bit_length()


def poly_mul(a: Sequence[int], b: Sequence[int], X: int) -> List[int]:
    """Product of integer coefficient lists, truncated to degree X."""
    a = list(a[: X + 1])
    b = list(b[: X + 1])
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return [0] * (X + 1)
    if len(a) < 16 or len(b) < 16:
        out = [0] * (X + 1)
        if len(a) > len(b):
            a, b = b, a
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b[: X + 1 - i]):
                out[i + j] += x * y
        return out
    ma = max(_bits(x) for x in a)
    mb = max(_bits(x) for x in b)
    B = ma + mb + min(len(a), len(b)).bit_length() + 2
    A = gmpy2.pack([max(x, 0) for x in a], B) - gmpy2.pack([max(-x, 0) for x in a], B)
    Bm = gmpy2.pack([max(x, 0) for x in b], B) - gmpy2.pack([max(-x, 0) for x in b], B)
    n = min(len(a) + len(b) - 1, X + 1)
    half = 1 << (B - 1)
    P = A * Bm + gmpy2.pack([half] * n, B)
    P = gmpy2.f_mod_2exp(P, B * n)
    chunks = gmpy2.unpack(P, B)
    out = [int(c) - half for c in chunks[:n]]
    out += [-half] * (n - len(out))  # an all-zero tail chunk unpacks to nothing
    out += [0] * (X + 1 - n)
    return out


@dataclass
class QExpansion:
    """Truncated q-series sum_{n<=X} (num[n]/den) q^n with exact coefficients."""

    num: List[int]
    den: int = 1
    weight: Fraction = Fraction(0)
    level: int = 1

    def __post_init__(self):
        self.num = [int(x) for x in self.num]
        self.den = int(self.den)
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        self.weight = Fraction(self.weight)

    @property
    def X(self) -> int:
        return len(self.num) - 1

    def __len__(self) -> int:
        return len(self.num)

    def __getitem__(self, n: int) -> Fraction:
        return Fraction(self.num[n], self.den)

    def coeffs(self) -> List[Fraction]:
        return [Fraction(x, self.den) for x in self.num]

    def is_integral(self) -> bool:
        return all(x % self.den == 0 for x in self.num)

    def ints(self) -> List[int]:
        if not self.is_integral():
            raise ValueError("series is not integral")
        return [x // self.den for x in self.num]

    def normalized(self) -> "QExpansion":
        g = self.den
        for x in self.num:
            g = math.gcd(g, x)
            if g == 1:
                break
        if g > 1:
            return QExpansion([x // g for x in self.num], self.den // g, self.weight, self.level)
        return self

    def truncate(self, X: int) -> "QExpansion":
        if X > self.X:
            raise ValueError(f"series known only to q^{self.X}")
        return QExpansion(self.num[: X + 1], self.den, self.weight, self.level)

    def _align(self, other: "QExpansion"):
        X = min(self.X, other.X)
        return X, self.num[: X + 1], other.num[: X + 1]

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            c = Fraction(other)
            const = QExpansion([c.numerator] + [0] * self.X, c.denominator, self.weight,
                               self.level)
            return self + const
        X, a, b = self._align(other)
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        return QExpansion([x * fa + y * fb for x, y in zip(a, b)], den, self.weight,
                          max(self.level, other.level)).normalized()

    def __neg__(self):
        return QExpansion([-x for x in self.num], self.den, self.weight, self.level)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QExpansion":
        c = Fraction(c)
        return QExpansion([x * c.numerator for x in self.num], self.den * c.denominator,
                          self.weight, self.level).normalized()

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return self.scale(other)
        X = min(self.X, other.X)
        return QExpansion(poly_mul(self.num, other.num, X), self.den * other.den,
                          self.weight + other.weight,
                          self.level * other.level // math.gcd(self.level, other.level)
                          ).normalized()

    __rmul__ = scale

    def __pow__(self, e: int) -> "QExpansion":
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = QExpansion([self.den ** 0] + [0] * self.X, 1, 0, self.level)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def dilate(self, m: int, X: Optional[int] = None) -> "QExpansion":
        """f(q) -> f(q^m), truncated at X (default: same length)."""
        X = self.X if X is None else X
        out = [0] * (X + 1)
        for n in range(0, X // m + 1):
            if n > self.X:
                raise ValueError("not enough coefficients to dilate")
            out[m * n] = self.num[n]
        return QExpansion(out, self.den, self.weight, self.level * m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        X, a, b = self._align(other)
        return all(x * other.den == y * self.den for x, y in zip(a, b))


# ------------------------------------------------------------------ arithmetic helpers

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def zeta_neg(s: int) -> Fraction:
    """zeta(s) for an integer s <= 0."""
    if s > 0:
        raise ValueError("only non-positive integers")
    n = 1 - s
    if n == 1:
        return Fraction(-1, 2)
    return -bernoulli(n) / n


def sigma_list(k: int, X: int) -> List[int]:
    """sigma_k(n) for n = 0..X (sigma_k(0) = 0)."""
    s = [0] * (X + 1)
    for d in range(1, X + 1):
        dk = d**k
        for m in range(d, X + 1, d):
            s[m] += dk
    return s


# ------------------------------------------------------------------ level one forms

def eisenstein_qexp(k: int, X: int) -> QExpansion:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 4."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    c = -Fraction(2 * k) / bernoulli(k)
    if c.denominator != 1:
        den = c.denominator
    else:
        den = 1
    s = sigma_list(k - 1, X)
    num = [den] + [int(c * den) * s[n] for n in range(1, X + 1)]
    return QExpansion(num, den, k, 1)


def eta_cubed_series(X: int) -> List[int]:
    """prod (1-q^n)^3 = sum (-1)^n (2n+1) q^{n(n+1)/2}."""
    out = [0] * (X + 1)
    n = 0
    while n * (n + 1) // 2 <= X:
        out[n * (n + 1) // 2] = (-1) ** n * (2 * n + 1)
        n += 1
    return out


def euler_product_series(X: int) -> List[int]:
    """prod (1-q^n) via the pentagonal number theorem."""
    out = [0] * (X + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k, k) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e <= X:
                out[e] += (-1) ** abs(kk)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return out


def partition_series(X: int) -> List[int]:
    """1/prod(1-q^n) = sum p(n) q^n by the pentagonal recurrence."""
    p = [0] * (X + 1)
    p[0] = 1
    for n in range(1, X + 1):
        s, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sg = 1 if k % 2 else -1
            s += sg * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                s += sg * p[n - g2]
            k += 1
        p[n] = s
    return p


def eta_qexp(exponents: Dict[int, int], X: int) -> QExpansion:
    """Eta quotient prod_m eta(m tau)^{e_m} without its leading power of q.

    The omitted q-power is sum(m e_m)/24; it is returned as the weight-free
    series in q of prod_m prod_n (1 - q^{mn})^{e_m}.
    """
    out = [1] + [0] * X
    base = euler_product_series(X)
    inv = None
    for m, e in sorted(exponents.items()):
        if e == 0:
            continue
        if e > 0:
            src = base
        else:
            if inv is None:
                inv = partition_series(X)
            src = inv
        s = QExpansion(src).dilate(m, X).num
        p = QExpansion(s) ** abs(e)
        out = poly_mul(out, p.num, X)
    w = Fraction(sum(exponents.values()), 2)
    return QExpansion(out, 1, w, 1)


def delta_qexp(X: int) -> QExpansion:
    """Ramanujan Delta = q prod (1-q^n)^24."""
    key = ("delta", X)
    hit = _cache.load(key)
    if hit is not None:
        return QExpansion(hit, 1, 12, 1)
    e3 = QExpansion(eta_cubed_series(X - 1 if X >= 1 else 0))
    p = (e3 ** 8).num
    out = [0] + p[:X]
    out += [0] * (X + 1 - len(out))
    _cache.store(key, out)
    return QExpansion(out, 1, 12, 1)


def theta_series(X: int) -> QExpansion:
    """theta = sum_{n in Z} q^{n^2}."""
    out = [0] * (X + 1)
    out[0] = 1
    n = 1
    while n * n <= X:
        out[n * n] = 2
        n += 1
    return QExpansion(out, 1, Fraction(1, 2), 4)


def f2_series(X: int) -> QExpansion:
    """F_2 = sum_{n odd} sigma_1(n) q^n, weight 2 on Gamma_0(4)."""
    s = sigma_list(1, X)
    return QExpansion([s[n] if n % 2 else 0 for n in range(X + 1)], 1, 2, 4)


# ------------------------------------------------------------------ class numbers

def hurwitz(N: int) -> Fraction:
    """Hurwitz class number H(N) by weighted enumeration of reduced forms."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return Fraction(-1, 12)
    if N % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    d = -N
    amax = math.isqrt(N // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
    return total


def fundamental_part(D: int):
    """Write D (D = 0,1 mod 4, D != 0) as D0 * f^2 with D0 fundamental (or 1)."""
    if D == 0:
        raise ValueError("D must be nonzero")
    sgn = -1 if D < 0 else 1
    f = 1
    m = abs(D)
    for p, e in arith.factorize(m):
        f *= p ** (e // 2)
    D0 = D // (f * f)
    if D0 % 4 in (2, 3):
        D0 *= 4
        f //= 2
    return D0, f


def _char_power_sums(D0: int, r: int) -> List[int]:
    """S_m = sum_{a=1}^{|D0|} chi(a) a^m for m = 0..r, exactly."""
    q = abs(D0)
    tab = arith._chi_period_table(D0) if q > 1 else np.ones(1, dtype=np.int64)
    S = [0] * (r + 1)
    for a in range(1, q + 1):
        c = int(tab[a % q]) if q > 1 else 1
        if c == 0:
            continue
        p = c
        for m in range(r + 1):
            S[m] += p
            p *= a
    return S


def dirichlet_L_neg(D0: int, r: int) -> Fraction:
    """L(1-r, chi_{D0}) = -B_{r,chi}/r, with generalized Bernoulli numbers."""
    if D0 == 1:
        return zeta_neg(1 - r)
    q = abs(D0)
    S = _char_power_sums(D0, r)
    # B_{r,chi} = q^{r-1} sum_a chi(a) B_r(a/q) = sum_j C(r,j) B_j q^{j-1} S_{r-j}
    Br = sum(Fraction(math.comb(r, j)) * bernoulli(j) * Fraction(q) ** (j - 1) * S[r - j]
             for j in range(r + 1))
    return -Br / r


def cohen(r: int, N: int) -> Fraction:
    """Cohen's generalized class number H(r, N)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return zeta_neg(1 - 2 * r)
    D = (-1) ** r * N
    if D % 4 in (2, 3):
        return Fraction(0)
    D0, f = fundamental_part(D)
    L = dirichlet_L_neg(D0, r)
    s = Fraction(0)
    for d in arith.divisors(f):
        mu = arith.moebius(d)
        if mu == 0:
            continue
        chi = arith.kronecker(D0, d)
        if chi == 0:
            continue
        s += mu * chi * Fraction(d) ** (r - 1) * sum(e ** (2 * r - 1) for e in arith.divisors(f // d))
    return L * s


def _solve_rational(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Solve a square (or overdetermined, consistent) rational system exactly."""
    n = len(A[0])
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    piv_rows = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            raise ValueError("singular system")
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, len(M)):
        if M[i][-1] != 0:
            raise ValueError("inconsistent system")
    return [M[i][-1] for i in range(n)]


def cohen_series(r: int, X: int) -> QExpansion:
    """sum_{N<=X} H(r,N) q^N, built in the plus space of weight r+1/2 on Gamma_0(4).

    Uses the basis theta^{2r+1-4j} F_2^j and pins the unique plus space form
    with constant term zeta(1-2r). Available when M_{2r}(SL_2(Z)) has
    dimension one (r = 2, 3, 4, 5, 7); every coefficient is cross-checked in
    the tests against ``cohen``.
    """
    if r not in (2, 3, 4, 5, 7):
        raise ValueError("plus space route needs dim M_{2r} = 1")
    key = ("cohen", r, X)
    hit = _cache.load(key)
    if hit is not None:
        return QExpansion(hit[:-1], hit[-1], Fraction(2 * r + 1, 2), 4)
    th = theta_series(X)
    F2 = f2_series(X)
    basis = []
    for j in range((2 * r + 1) // 4 + 1):
        basis.append((th ** (2 * r + 1 - 4 * j)) * (F2 ** j))
    # equations: constant term, plus vanishing at the first few forbidden N
    sgn = (-1) ** r
    forbidden = [N for N in range(1, X + 1) if (sgn * N) % 4 in (2, 3)]
    rows = [[b[0] for b in basis]]
    rhs = [zeta_neg(1 - 2 * r)]
    for N in forbidden[: len(basis) + 2]:
        rows.append([b[N] for b in basis])
        rhs.append(Fraction(0))
    x = _solve_rational(rows, rhs)
    out = None
    for xi, b in zip(x, basis):
        term = b.scale(xi)
        out = term if out is None else out + term
    bad = [N for N in forbidden if out.num[N] != 0]
    if bad:
        raise AssertionError(f"plus space condition fails at {bad[:5]}")
    out.weight = Fraction(2 * r + 1, 2)
    out.level = 4
    _cache.store(key, out.num + [out.den])
    return out


# ------------------------------------------------------------------ Jacobi forms

@dataclass
class JacobiForm1:
    """Index one Jacobi form through its theta coefficients C(D), D = 4n - r^2."""

    k: int
    C: List[int]
    den: int = 1

    @property
    def X(self) -> int:
        return len(self.C) - 1

    def coeff_D(self, D: int) -> Fraction:
        if D < 0:
            return Fraction(0)
        return Fraction(self.C[D], self.den)

    def coeff(self, n: int, r: int) -> Fraction:
        """Coefficient of q^n zeta^r."""
        return self.coeff_D(4 * n - r * r)


def jacobi_eisenstein_theta(k: int, X: int) -> QExpansion:
    """Theta coefficients of E_{k,1}: H(k-1, D)/zeta(3-2k), k in {4, 6}."""
    if k not in (4, 6):
        raise ValueError("k must be 4 or 6")
    H = cohen_series(k - 1, X)
    return H.scale(1 / zeta_neg(3 - 2 * k))


_JAC_LOCK = threading.Lock()


def jacobi_cusp_index1(k: int, X: int) -> JacobiForm1:
    """Generator of J^{cusp}_{k,1} for k = 10, 12 as integral primitive C(D), C(3) > 0."""
    if k not in (10, 12):
        raise ValueError("k must be 10 or 12")
    with _JAC_LOCK:
        return _jacobi_cusp_cached(k, X)


@lru_cache(maxsize=8)
def _jacobi_cusp_cached(k: int, X: int) -> JacobiForm1:
    key = ("jacobi", k, X)
    hit = _cache.load(key)
    if hit is not None:
        return JacobiForm1(k, hit, 1)
    Xq = X // 4
    E4 = eisenstein_qexp(4, Xq).dilate(4, X)
    E6 = eisenstein_qexp(6, Xq).dilate(4, X)
    J4 = jacobi_eisenstein_theta(4, X)
    J6 = jacobi_eisenstein_theta(6, X)
    if k == 10:
        cands = [E6 * J4, E4 * J6]
    else:
        cands = [E4 * E4 * J4, E6 * J6]
    # kill the constant term: a1 * c0(A) + a2 * c0(B) = 0
    c0 = [c[0] for c in cands]
    x = [c0[1], -c0[0]]
    phi = cands[0].scale(x[0]) + cands[1].scale(x[1])
    num = phi.num
    den = phi.den
    g = 0
    for v in num:
        g = math.gcd(g, v)
    ints = [v // g for v in num]
    if ints[3] < 0:
        ints = [-v for v in ints]
    _cache.store(key, ints)
    return JacobiForm1(k, ints, 1)


# ------------------------------------------------------------------ half-integral weight

@dataclass
class HalfIntForm:
    """Form of weight kappa + 1/2 on Gamma_0(level).

    ``a_raw[n]/den`` is the stored rational coefficient. After U(r^2) the
    stored values are a(f, r^2 n), and ``shift`` = r^2 keeps the irrational
    factor r^(1/2 - kappa) implicit: c(n) = a_raw[n]/den * (shift n)^(1/4 - kappa/2).
    """

    kappa: int
    level: int
    a_raw: List[int]
    den: int = 1
    shift: int = 1
    plus_flag: bool = False
    label: str = ""
    eigen_data: Dict[int, float] = field(default_factory=dict)

    @property
    def X(self) -> int:
        return len(self.a_raw) - 1

    def a(self, n: int) -> Fraction:
        """Exact coefficient when shift == 1; otherwise the stored rational part."""
        return Fraction(self.a_raw[n], self.den)

    def c(self, n: int) -> float:
        if n < 1:
            raise ValueError("n must be positive")
        if n > self.X:
            raise IndexError(f"coefficient {n} beyond computed range {self.X}")
        v = self.a_raw[n]
        if v == 0:
            return 0.0
        return float(Fraction(v, self.den)) * math.exp(
            (0.25 - self.kappa / 2) * math.log(self.shift * n))

    def c_array(self, X: Optional[int] = None) -> np.ndarray:
        """c(n) for n = 0..X as floats (entry 0 set to 0)."""
        X = self.X if X is None else X
        if X > self.X:
            raise IndexError(f"coefficients known only to {self.X}")
        n = np.arange(1, X + 1, dtype=np.float64)
        a = np.array([float(Fraction(v, self.den)) if v else 0.0 for v in self.a_raw[1: X + 1]])
        out = np.zeros(X + 1)
        out[1:] = a * np.exp((0.25 - self.kappa / 2) * np.log(self.shift * n))
        return out

    def check_plus(self) -> bool:
        sgn = (-1) ** self.kappa
        return all(self.a_raw[n] == 0 for n in range(1, self.X + 1)
                   if (sgn * n) % 4 in (2, 3))


def plus_form_from_jacobi(phi: JacobiForm1) -> HalfIntForm:
    """a(f, D) := C(D); weight k - 1/2, level 4, Kohnen plus space."""
    f = HalfIntForm(kappa=phi.k - 1, level=4, a_raw=list(phi.C), den=phi.den,
                    plus_flag=True, label=f"f{2 * phi.k - 1}/2")
    if not f.check_plus():
        raise AssertionError("plus space support violated")
    return f


def u_r2(f: HalfIntForm, r: int) -> HalfIntForm:
    """U(r^2): c(f|U(r^2), n) = c(f, r^2 n), exactly on the stored integers."""
    if r < 1:
        raise ValueError("r must be positive")
    if r == 1:
        return f
    X = f.X // (r * r)
    if X < 1:
        raise ValueError("insufficient coefficient range for U(r^2)")
    a = [0] + [f.a_raw[r * r * n] for n in range(1, X + 1)]
    return HalfIntForm(kappa=f.kappa, level=f.level * r, a_raw=a, den=f.den,
                       shift=f.shift * r * r, plus_flag=False, label=f"{f.label}|U({r}^2)")


class NotEigenform(ValueError):
    pass


def _admissible_ns(f: HalfIntForm, p: int, count: int):
    sgn = (-1) ** f.kappa
    out = []
    n = 1
    while n * p * p <= f.X and len(out) < count:
        if n % 2 and arith.is_squarefree(n) and n % p and f.a_raw[n] != 0 \
                and (sgn * n) % 4 in (0, 1):
            out.append(n)
        n += 1
    return out


def lambda_extract(f: HalfIntForm, p: int, tries: int = 3, tol: float = 1e-9) -> float:
    """lambda_f(p) = c(f,p^2 n)/c(f,n) + (d/p)/sqrt(p), d = (-1)^kappa n."""
    ns = _admissible_ns(f, p, tries)
    if not ns:
        raise NotEigenform("no usable n")
    vals = []
    for n in ns:
        d = (-1) ** f.kappa * n
        vals.append(f.c(p * p * n) / f.c(n) + arith.kronecker(d, p) / math.sqrt(p))
    if max(vals) - min(vals) > tol:
        raise NotEigenform(f"not an eigenform (spread {max(vals) - min(vals):.3e} at p={p})")
    lam = vals[0]
    if abs(lam) > 2 + tol:
        raise NotEigenform(f"|lambda({p})| = {abs(lam):.6f} exceeds 2")
    f.eigen_data[p] = lam
    return lam


def hecke_p2_factor(lam: float, d: int, p: int) -> float:
    return lam - arith.kronecker(d, p) / math.sqrt(p)


def hecke_p2_predict(f: HalfIntForm, n: int, m: int, p: int, lam: float) -> float:
    """Predict c(f, p^{2m} n) from c(f, n) and c(f, p^2 n) by the p^2 Hecke recursion."""
    prev, cur = f.c(n), f.c(p * p * n)
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, lam * cur - prev
    return cur


def second_claim_bound_check(f: HalfIntForm, r: int, n: int, rtol: float = 1e-12) -> bool:
    """|c(f, r^2 n)| <= 3^{Omega(r)} |c(f, n)|."""
    om = arith.big_omega(r) if r > 1 else 0
    lhs = abs(f.c(r * r * n))
    rhs = 3 ** om * abs(f.c(n))
    return lhs <= rhs * (1 + rtol) + 1e-300


# ------------------------------------------------------------------ exemplars

_FORM_LOCK = threading.Lock()
_FORMS: Dict[str, HalfIntForm] = {}
_EIGEN: Dict[str, List[int]] = {}

SHIMURA = {"f19/2": "g18", "f23/2": "g22"}
EIGEN_WEIGHT = {"g12": 12, "g18": 18, "g22": 22}


def half_form(label: str, X: int) -> HalfIntForm:
    """Built-in plus space eigenform 'f19/2' or 'f23/2' with a(n) for n <= X."""
    k = {"f19/2": 10, "f23/2": 12}.get(label)
    if k is None:
        raise ValueError(f"unknown form {label!r}; choose f19/2 or f23/2")
    with _FORM_LOCK:
        f = _FORMS.get(label)
        if f is None or f.X < X:
            Xb = max(X, 1000)
            f = plus_form_from_jacobi(_jacobi_cusp_cached(k, Xb))
            _FORMS[label] = f
    if f.X == X:
        return f
    return HalfIntForm(f.kappa, f.level, f.a_raw[: X + 1], f.den, f.shift, f.plus_flag,
                       f.label, f.eigen_data)


def eigenform_qexp(label: str, X: int) -> List[int]:
    """Integer q-expansion of the normalized level one eigenform g12, g18 or g22."""
    if label not in EIGEN_WEIGHT:
        raise ValueError(f"unknown eigenform {label!r}")
    with _FORM_LOCK:
        a = _EIGEN.get(label)
        if a is None or len(a) <= X:
            key = ("eigen", label, X)
            hit = _cache.load(key)
            if hit is None:
                D = delta_qexp(X)
                if label == "g12":
                    s = D
                elif label == "g18":
                    s = D * eisenstein_qexp(6, X)
                else:
                    s = D * eisenstein_qexp(4, X) * eisenstein_qexp(6, X)
                hit = s.ints()
                _cache.store(key, hit)
            a = hit
            _EIGEN[label] = a
    return a[: X + 1]
