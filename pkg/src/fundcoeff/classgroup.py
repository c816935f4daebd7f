"""Class groups of imaginary quadratic fields via binary quadratic forms.

Forms are integer triples (a, b, c) standing for a x^2 + b x y + c y^2, the
same data as the half-integral matrix [[a, b/2], [b/2, c]].

Convention for the form/ideal dictionary: the form (a, b, c) corresponds to
the ideal [a, (-b + sqrt(d))/2]. So the prime ideal p above a split or ramified
prime is the form (p, b_p, c) with the least admissible b_p >= 0, and its
conjugate is (p, -b_p, c). ``CONVENTION`` names this choice; everything that
needs the dictionary (Bessel periods, prime-ideal classes) reads it from here.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from . import arith

Form = Tuple[int, int, int]

CONVENTION = "form (a,b,c) <-> ideal [a, (-b+sqrt(d))/2]"


# ------------------------------------------------------------------ forms

def disc(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def reduce(f: Form) -> Form:
    """Gauss-reduce a positive definite form to the unique reduced representative."""
    a, b, c = (int(x) for x in f)
    d = b * b - 4 * a * c
    if a <= 0 or d >= 0:
        raise ValueError(f"form {f} is not positive definite")
    while True:
        if b > a or b <= -a:
            # translate x -> x + k y so that b lands in (-a, a]
            k = (a - b) // (2 * a)
            b = b + 2 * a * k
            c = (b * b - d) // (4 * a)
        if c < a:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    return a, b, c


def is_reduced(f: Form) -> bool:
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def compose_forms(f1: Form, f2: Form) -> Form:
    """Dirichlet composition of two primitive forms of equal discriminant, reduced."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    D = b1 * b1 - 4 * a1 * c1
    if b2 * b2 - 4 * a2 * c2 != D:
        raise ValueError("forms have different discriminants")
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, dd = 0, a1
    else:
        dd, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % dd == 0:
        y2, x2, d1 = -1, 0, dd
    else:
        d1, x2, y2 = _xgcd(s, dd)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce((a3, b3, c3))


def inverse_form(f: Form) -> Form:
    a, b, c = f
    return reduce((a, -b, c))


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x a + y b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def reduced_forms(d: int) -> List[Form]:
    """All reduced primitive forms of discriminant d < 0, principal form first."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    out = []
    amax = math.isqrt(-d // 3)
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
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    out.sort(key=lambda f: (f[0], abs(f[1]), -f[1]))
    return out


# ------------------------------------------------------------------ Smith form

def smith_normal_form(A: List[List[int]]):
    """Return (D, U, V) with U A V = diag(D), U and V unimodular.

    D is the list of diagonal entries d_1 | d_2 | ... (nonnegative).
    """
    n = len(A)
    m = len(A[0]) if n else 0
    S = [row[:] for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    for t in range(min(n, m)):
        while True:
            piv = None
            for i in range(t, n):
                for j in range(t, m):
                    if S[i][j] and (piv is None or abs(S[i][j]) < abs(S[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            i, j = piv
            swap_rows(S, t, i)
            swap_rows(U, t, i)
            swap_cols(S, t, j)
            swap_cols(V, t, j)
            done = True
            p = S[t][t]
            for i in range(t + 1, n):
                q = S[i][t] // p
                if q:
                    S[i] = [x - q * y for x, y in zip(S[i], S[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if S[i][t]:
                    done = False
            for j in range(t + 1, m):
                q = S[t][j] // p
                if q:
                    for row in S:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if S[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: p must divide every remaining entry
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            S[t] = [x + y for x, y in zip(S[t], S[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    D = [S[i][i] for i in range(min(n, m))]
    return D, U, V


def _inverse_unimodular(V: List[List[int]]) -> List[List[int]]:
    n = len(V)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(V)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    out = [[int(x) for x in row[n:]] for row in M]
    return out


# ------------------------------------------------------------------ group

@dataclass(frozen=True)
class ClassGroup:
    d: int
    elements: Tuple[Form, ...]
    structure: Tuple[int, ...]
    generators: Tuple[int, ...]
    coords: np.ndarray = field(repr=False, compare=False)
    w: int = 2
    identity: int = 0

    @property
    def h(self) -> int:
        return len(self.elements)

    def index(self, f: Form) -> int:
        return self._lookup[reduce(f)]

    @property
    def _lookup(self) -> Dict[Form, int]:
        lk = self.__dict__.get("_lk")
        if lk is None:
            lk = {f: i for i, f in enumerate(self.elements)}
            object.__setattr__(self, "_lk", lk)
        return lk

    @property
    def _radix(self) -> Dict[int, int]:
        rd = self.__dict__.get("_rd")
        if rd is None:
            rd = {self._code(self.coords[i]): i for i in range(self.h)}
            object.__setattr__(self, "_rd", rd)
        return rd

    def _code(self, v) -> int:
        code = 0
        for x, m in zip(v, self.structure):
            code = code * m + int(x) % m
        return code

    def element_from_coords(self, v) -> int:
        return self._radix[self._code(v)]

    def compose(self, i: int, j: int) -> int:
        return self.element_from_coords(self.coords[i] + self.coords[j])

    def inverse(self, i: int) -> int:
        return self.element_from_coords(-self.coords[i])

    def power(self, i: int, n: int) -> int:
        return self.element_from_coords(n * self.coords[i])

    def order(self, i: int) -> int:
        o = 1
        for x, m in zip(self.coords[i], self.structure):
            o = o * (m // math.gcd(int(x), m)) // math.gcd(o, m // math.gcd(int(x), m))
        return o

    def table(self) -> np.ndarray:
        """Full h x h composition table (memory h^2; intended for small h)."""
        h = self.h
        mods = np.array(self.structure, dtype=np.int64)
        tab = np.empty((h, h), dtype=np.int64)
        for i in range(h):
            s = (self.coords[i][None, :] + self.coords) % mods if len(mods) else self.coords
            tab[i] = [self._radix[self._code(v)] for v in s]
        return tab


@lru_cache(maxsize=64)
def class_group(d: int) -> ClassGroup:
    """Class group of Q(sqrt d) for a negative fundamental discriminant d."""
    if d >= 0 or not arith.is_fundamental(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    if -d > 10**8:
        raise ValueError("|d| > 1e8 is outside the supported range")
    forms = reduced_forms(d)
    idx = {f: i for i, f in enumerate(forms)}
    h = len(forms)

    # Grow the subgroup one generator at a time, recording the relation
    # g^m = (element already reached) in terms of earlier generators.
    vec: Dict[int, List[int]] = {0: []}
    gens: List[int] = []
    rels: List[List[int]] = []
    for cand in range(h):
        if cand in vec:
            continue
        g = forms[cand]
        m, cur = 1, g
        while idx[cur] not in vec:
            cur = compose_forms(cur, g)
            m += 1
        rel = [-x for x in vec[idx[cur]]] + [0] * (len(gens) - len(vec[idx[cur]]))
        rels = [r + [0] for r in rels]
        rels.append(rel + [m])
        new_vec = {}
        for e, v in vec.items():
            v = v + [0] * (len(gens) - len(v))
            f = forms[e]
            for i in range(m):
                new_vec[idx[f]] = v + [i]
                f = compose_forms(f, g)
        vec = new_vec
        gens.append(cand)
    r = len(gens)
    if r == 0:
        coords = np.zeros((h, 0), dtype=np.int64)
        structure: Tuple[int, ...] = ()
        new_gens: Tuple[int, ...] = ()
    else:
        D, U, V = smith_normal_form(rels)
        keep = [j for j in range(r) if D[j] != 1]
        old = np.array([vec[i] + [0] * (r - len(vec[i])) for i in range(h)], dtype=object)
        Vm = np.array(V, dtype=object)
        new = old.dot(Vm)
        coords = np.array([[int(new[i][j]) % D[j] for j in keep] for i in range(h)],
                          dtype=np.int64).reshape(h, len(keep))
        structure = tuple(D[j] for j in keep)
        Vinv = _inverse_unimodular(V)
        new_gens_l = []
        for j in keep:
            f = forms[0]
            for t in range(r):
                e = Vinv[j][t]
                base = forms[gens[t]] if e >= 0 else inverse_form(forms[gens[t]])
                for _ in range(abs(e) % h):
                    f = compose_forms(f, base)
            new_gens_l.append(idx[f])
        new_gens = tuple(new_gens_l)
    w = 6 if d == -3 else 4 if d == -4 else 2
    return ClassGroup(d=d, elements=tuple(forms), structure=structure,
                      generators=new_gens, coords=coords, w=w)


# ------------------------------------------------------------------ characters

@dataclass(frozen=True)
class ClassCharacter:
    group: ClassGroup = field(repr=False, compare=False)
    exponents: Tuple[int, ...]

    def angle(self, i: int) -> Fraction:
        """Value at element i as an exact fraction t in [0,1): value = exp(2 pi i t)."""
        t = Fraction(0)
        for e, x, m in zip(self.exponents, self.group.coords[i], self.group.structure):
            t += Fraction(e * int(x), m)
        return t - math.floor(t)

    def value(self, i: int) -> complex:
        t = self.angle(i)
        return _root_of_unity(t.numerator, t.denominator)

    def values(self) -> np.ndarray:
        return np.array([self.value(i) for i in range(self.group.h)], dtype=complex)

    def angles(self) -> List[Fraction]:
        return [self.angle(i) for i in range(self.group.h)]

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def conj(self) -> "ClassCharacter":
        return ClassCharacter(self.group, tuple((-e) % m for e, m in
                                                zip(self.exponents, self.group.structure)))

    def order(self) -> int:
        o = 1
        for e, m in zip(self.exponents, self.group.structure):
            k = m // math.gcd(e, m)
            o = o * k // math.gcd(o, k)
        return o


def _root_of_unity(num: int, den: int) -> complex:
    """exp(2 pi i num/den), snapped to exact values at the eighth roots of unity."""
    num %= den
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if den == 1:
        return 1 + 0j
    if den == 2:
        return -1 + 0j
    if den == 4:
        return 1j if num == 1 else -1j
    return cmath.exp(2j * math.pi * num / den)


def characters(G: ClassGroup) -> List[ClassCharacter]:
    """All characters of G, trivial first, in mixed-radix order of exponents."""
    out = [()]
    for m in G.structure:
        out = [e + (k,) for e in out for k in range(m)]
    return [ClassCharacter(G, e) for e in out]


def character_table(G: ClassGroup) -> np.ndarray:
    """h x h complex matrix T[chi, element]."""
    return np.array([chi.values() for chi in characters(G)])


# ------------------------------------------------------------------ primes

INERT = "inert"


def prime_form(d: int, p: int) -> Optional[Form]:
    """The form (p, b_p, c) with least 0 <= b_p < 2p, b_p^2 = d mod 4p, or None if inert."""
    if arith.kronecker(d, p) == -1:
        return None
    for b in range(2 * p):
        if (b * b - d) % (4 * p) == 0:
            return (p, b, (b * b - d) // (4 * p))
    raise AssertionError("unreachable for non-inert p")


def prime_ideal_class(G: ClassGroup, p: int) -> Union[int, str]:
    """Class of the prime ideal above p, or "inert"."""
    f = prime_form(G.d, p)
    if f is None:
        return INERT
    return G.index(f)


@dataclass(frozen=True)
class SatakeAI:
    p: int
    kind: str  # "split", "inert", "ramified"
    alpha: complex
    beta: complex
    alpha_angle: Optional[Fraction] = None
    beta_angle: Optional[Fraction] = None

    def power_sum(self, n: int) -> complex:
        return self.alpha**n + self.beta**n


def ai_satake(G: ClassGroup, chi: ClassCharacter, p: int) -> SatakeAI:
    k = arith.kronecker(G.d, p)
    if k == -1:
        return SatakeAI(p, "inert", 1 + 0j, -1 + 0j, Fraction(0), Fraction(1, 2))
    i = prime_ideal_class(G, p)
    t = chi.angle(i)
    if k == 0:
        return SatakeAI(p, "ramified", chi.value(i), 0j, t, None)
    tb = (-t) % 1
    return SatakeAI(p, "split", chi.value(i), _root_of_unity(tb.numerator, tb.denominator),
                    t, tb)


def ideal_class_counts(G: ClassGroup, X: int) -> np.ndarray:
    """counts[C, n] = number of integral ideals of norm n in class C, n <= X.

    Built multiplicatively in the group ring from prime-ideal classes.
    """
    h = G.h
    counts = np.zeros((h, X + 1), dtype=np.int64)
    if X < 1:
        return counts
    spf = arith.spf_table(max(X, 2))
    # local distributions: dist[p^k] = vector over classes
    local_cache: Dict[Tuple[int, int], np.ndarray] = {}

    def local(p: int, k: int) -> np.ndarray:
        key = (p, k)
        if key in local_cache:
            return local_cache[key]
        v = np.zeros(h, dtype=np.int64)
        kind = arith.kronecker(G.d, p)
        if kind == -1:
            if k % 2 == 0:
                v[G.identity] = 1
        else:
            c = prime_ideal_class(G, p)
            if kind == 0:
                v[G.power(c, k)] = 1
            else:
                cb = G.inverse(c)
                for i in range(k + 1):
                    v[G.compose(G.power(c, i), G.power(cb, k - i))] += 1
        local_cache[key] = v
        return v

    counts[G.identity, 1] = 1
    for n in range(2, X + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        a = counts[:, m]
        b = local(p, k)
        if not a.any() or not b.any():
            continue
        res = np.zeros(h, dtype=np.int64)
        for ci in np.nonzero(a)[0]:
            for cj in np.nonzero(b)[0]:
                res[G.compose(int(ci), int(cj))] += a[ci] * b[cj]
        counts[:, n] = res
    return counts


def theta_coeffs(G: ClassGroup, chi: ClassCharacter, X: int) -> np.ndarray:
    """r_chi(n) = sum over ideals of norm n of chi(ideal), n = 0..X (entry 0 is 0)."""
    if X > 10**7:
        raise ValueError("X > 1e7 is outside the supported range")
    out = np.ones(X + 1, dtype=complex)
    out[0] = 0
    for p in arith.primes_upto(X):
        p = int(p)
        s = ai_satake(G, chi, p)
        # r(p^k) = sum_{i+j=k} alpha^i beta^j (ramified: beta = 0)
        pk, k = p, 1
        while pk <= X:
            rk = sum(s.alpha**i * s.beta**(k - i) for i in range(k + 1)) \
                if s.kind != "ramified" else s.alpha**k
            idx = np.arange(pk, X + 1, pk)
            idx = idx[(idx // pk) % p != 0]
            out[idx] *= rk
            pk *= p
            k += 1
    return out
