"""Degree two Siegel cusp forms of Saito-Kurokawa type.

A lift F of weight k is represented by its plus space source f of weight
k - 1/2; Fourier coefficients follow from the Maass relation. Matrices
[[a, b/2], [b/2, c]] are passed as integer triples (a, b, c).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from . import arith
from . import classgroup as cg
from . import mf
from .cyclo import Cyclo

Lambda2 = Tuple[int, int, int]


def lambda2_disc(S: Lambda2) -> int:
    a, b, c = S
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise ValueError(f"{S} is not positive definite")
    return b * b - 4 * a * c


def content(S: Lambda2) -> int:
    return math.gcd(math.gcd(S[0], S[1]), S[2])


@dataclass
class SKLift:
    k: int
    source: mf.HalfIntForm
    g_label: str

    @property
    def X(self) -> int:
        return self.source.X


def sk_lift(k: int, X: int) -> SKLift:
    """Built-in lift: k = 10 from f19/2 (g18) or k = 12 from f23/2 (g22)."""
    label = {10: "f19/2", 12: "f23/2"}.get(k)
    if label is None:
        raise ValueError("built-in Saito-Kurokawa lifts exist for k = 10, 12")
    return SKLift(k, mf.half_form(label, X), mf.SHIMURA[label])


def sk_coefficient(F: SKLift, S: Lambda2) -> Fraction:
    """a(F, S) = sum_{e | content(S)} e^{k-1} a_source(|disc S| / e^2)."""
    D = -lambda2_disc(S)
    if D > F.X:
        raise ValueError(f"|disc| = {D} exceeds source range {F.X}")
    total = Fraction(0)
    for e in arith.divisors(content(S)):
        total += Fraction(e) ** (F.k - 1) * F.source.a(D // (e * e))
    return total


def fourier_jacobi(F: SKLift, m: int, X: int, rmax: int | None = None) -> Dict[Tuple[int, int], Fraction]:
    """Index m Fourier-Jacobi slice: (n, r) -> a(F, [[n, r/2], [r/2, m]]), 0 < 4nm - r^2 <= X.

    The slice is infinite in r (translation by 2m); r is restricted to
    |r| <= rmax, default m, which covers every class r mod 2m.
    """
    rmax = m if rmax is None else rmax
    out = {}
    for r in range(-rmax, rmax + 1):
        n = r * r // (4 * m) + 1
        while 4 * n * m - r * r <= X:
            if 4 * n * m - r * r > 0:
                out[(n, r)] = sk_coefficient(F, (n, r, m))
            n += 1
    return out


def u_p(F: SKLift, p: int, S: Lambda2) -> Fraction:
    """a(U(p) F, S) = a(F, p S)."""
    if not arith.is_prime(p):
        raise ValueError("p must be prime")
    return sk_coefficient(F, (p * S[0], p * S[1], p * S[2]))


def h_p_construct(F: SKLift, p: int, X: int) -> mf.HalfIntForm:
    """Coefficients a(m), m <= X, of h_p: sum over 0 <= mu < 2p with mu^2 = -m mod 4p."""
    if p == 2 or not arith.is_prime(p):
        raise ValueError("p must be an odd prime")
    if X > F.X:
        raise ValueError("source coefficients do not reach X")
    a = [Fraction(0)] * (X + 1)
    mus = list(range(2 * p))
    for m in range(1, X + 1):
        s = Fraction(0)
        for mu in mus:
            if (mu * mu + m) % (4 * p):
                continue
            s += sk_coefficient(F, ((m + mu * mu) // (4 * p), mu, p))
        a[m] = s
    den = 1
    for v in a:
        den = den * v.denominator // math.gcd(den, v.denominator)
    raw = [int(v * den) for v in a]
    return mf.HalfIntForm(kappa=F.k - 1, level=4 * p, a_raw=raw, den=den,
                          label=f"h_{p}")


def _class_coeffs(F: SKLift, G: cg.ClassGroup) -> List[Fraction]:
    return [sk_coefficient(F, f) for f in G.elements]


def bessel_period(F: SKLift, d: int, chi: cg.ClassCharacter) -> complex:
    """B(F, chi) = sum over classes S of a(F, S) chi(S), as a complex number."""
    G = chi.group
    if G.d != d:
        raise ValueError("character belongs to a different discriminant")
    vals = _class_coeffs(F, G)
    return sum(complex(float(v)) * chi.value(i) for i, v in enumerate(vals))


def _exponent(G: cg.ClassGroup) -> int:
    return G.structure[-1] if G.structure else 1


def bessel_period_exact(F: SKLift, d: int, chi: cg.ClassCharacter) -> Cyclo:
    """B(F, chi) in Q(zeta_e), e the exponent of the class group."""
    G = chi.group
    if G.d != d:
        raise ValueError("character belongs to a different discriminant")
    N = _exponent(G)
    out = Cyclo(N)
    for i, v in enumerate(_class_coeffs(F, G)):
        t = chi.angle(i) * N
        out = out + Cyclo.root(N, int(t), v)
    return out


def bessel_inversion(F: SKLift, G: cg.ClassGroup, i: int) -> Fraction:
    """(1/h) sum_chi B(F, chi) chi^{-1}(S_i), evaluated exactly."""
    N = _exponent(G)
    total = Cyclo(N)
    for chi in cg.characters(G):
        B = bessel_period_exact(F, G.d, chi)
        total = total + B * Cyclo.root(N, -int(chi.angle(i) * N))
    return total.rational_value() / G.h


def hypothesis_g_check(F: SKLift, d: int, chi: cg.ClassCharacter, L_value: float,
                       C_F: float) -> bool:
    """|B(F, chi)|^2 <= C_F |d|^{k-1} L, with L supplied by the caller."""
    if L_value < 0:
        raise ValueError("L_value must be nonnegative")
    if C_F <= 0:
        raise ValueError("C_F must be positive")
    B = bessel_period(F, d, chi)
    return abs(B) ** 2 <= C_F * abs(d) ** (F.k - 1) * L_value


def implied_constant(F: SKLift, d: int, chi: cg.ClassCharacter, L_value: float) -> float:
    """Smallest C_F for which the inequality above holds."""
    if L_value < 0:
        raise ValueError("L_value must be nonnegative")
    B = bessel_period(F, d, chi)
    if L_value == 0:
        return 0.0 if B == 0 else math.inf
    return abs(B) ** 2 / (abs(d) ** (F.k - 1) * L_value)
