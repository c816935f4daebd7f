"""Acceptance suite shared by the test-suite and `fundcoeff selftest`.

Each check returns (passed, detail). Details contain no timings or other
run-dependent values, so the printed report is byte-stable.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import arith
from . import classgroup as cg
from . import lfun
from . import mf
from . import resonance as rs
from . import satake as st
from . import siegel
from . import stats

Result = Tuple[bool, str]


def _g(x: float) -> str:
    return f"{x:.10g}"


# 1 -----------------------------------------------------------------

def brute_force_table(d: int) -> Tuple[List[cg.Form], np.ndarray]:
    """Composition table of the reduced forms by direct composition of every pair."""
    forms = cg.reduced_forms(d)
    index = {f: i for i, f in enumerate(forms)}
    h = len(forms)
    tab = np.empty((h, h), dtype=np.int64)
    for i, f in enumerate(forms):
        for j, g in enumerate(forms):
            tab[i, j] = index[cg.reduce(cg.compose_forms(f, g))]
    return forms, tab


def check_class_groups() -> Result:
    t0 = time.perf_counter()
    expect = {-23: 3, -47: 5, -71: 7}
    ok = True
    parts = []
    for d, h in expect.items():
        G = cg.class_group(d)
        forms, tab = brute_force_table(d)
        perm = [G.index(f) for f in forms]
        same = all(perm[tab[i, j]] == G.table()[perm[i], perm[j]]
                   for i in range(h) for j in range(h)) if G.h == len(forms) else False
        cyclic = list(G.structure) == [h]
        ok &= G.h == h and same and cyclic
        parts.append(f"h({d})={G.h} Z/{G.structure} table={'ok' if same else 'MISMATCH'}")
    fast = time.perf_counter() - t0 < 1.0
    ds = arith.fundamental_discriminants(3, 10000)
    pick = [ds[i * (len(ds) - 1) // 49] for i in range(50)]
    bad = [d for d in pick if lfun.class_number_from_L(d) != cg.class_group(d).h]
    ok &= fast and not bad
    parts.append(f"under 1 s={fast}")
    parts.append(f"class number formula {50 - len(bad)}/50")
    return ok, "; ".join(parts)


# 2 -----------------------------------------------------------------

def check_satake_identities() -> Result:
    w = st.fuzz_identities(1000, seed=20240601)
    worst = max(w["fsquare"], w["psquare"], w["rs_square"])
    ok = worst < 1e-12 and w["ramanujan_max"] <= 8 + 1e-12
    # genuine class group data: every character of Cl(-23), Cl(-47) at p < 60
    genuine = 0.0
    rng = np.random.default_rng(7)
    for d in (-23, -47):
        G = cg.class_group(d)
        for chi in cg.characters(G):
            for p in arith.primes_upto(60):
                p = int(p)
                a, b = np.exp(1j * rng.uniform(0, 2 * math.pi, size=2))
                ai = cg.ai_satake(G, chi, p)
                genuine = max(genuine, st.rs_square_identity_check(a, b, ai, arith.kronecker(d, p)))
    ok &= genuine < 1e-12
    pt = tuple(round(st.power_sum(s, 1j, 1, n), 12) for s, n in
               (("pi", 1), ("std", 1), ("ad", 1), ("pi", 2)))
    ok &= pt == (2.0, 1.0, 2.0, 0.0)
    return ok, (f"fuzz max residual {worst:.1e}, class-group data {genuine:.1e}, "
                f"max|a(p^n)| {w['ramanujan_max']:.6f} <= 8, alpha=i beta=1 -> {pt}")


# 3 -----------------------------------------------------------------

def check_moment_bounds() -> Result:
    rng = np.random.default_rng(11)
    n_cfg, n_ok = 0, 0
    for d in (-23, -47, -71, -163):
        G = cg.class_group(d)
        for ell in (1, 2):
            lim = (math.sqrt(-d) / 2) ** (1 / ell)
            for x in range(2, int(lim) + 1):
                if x ** ell >= math.sqrt(-d) / 2:
                    continue
                ps = [int(p) for p in arith.primes_upto(x)]
                for b in ({p: 1.0 for p in ps}, {p: float(rng.normal()) for p in ps}):
                    for case in ("split", "ramified"):
                        lhs, rhs, ok = st.moment_bound_check(G, b, x, ell, case)
                        n_cfg += 1
                        n_ok += ok
    lhs, rhs, ok = st.moment_bound_check(cg.class_group(-23), {2: 1.0}, 4, 1, "split")
    eq = abs(lhs - 1) < 1e-12 and abs(rhs - 1) < 1e-12 and ok
    return (n_ok == n_cfg and eq,
            f"{n_ok}/{n_cfg} admissible configurations; equality case d=-23 x=4 b2=1: "
            f"LHS={_g(lhs)} RHS={_g(rhs)}")


# 4 -----------------------------------------------------------------

def check_h_p() -> Result:
    F = siegel.sk_lift(10, 100000)
    src = F.source
    n_eq, n_zero, bad = 0, 0, 0
    for p in (3, 5, 7):
        h = siegel.h_p_construct(F, p, 2000)
        for m in range(1, 2001):
            if math.gcd(m, 4 * p) != 1:
                continue
            residue = any((mu * mu + m) % (4 * p) == 0 for mu in range(2 * p))
            if residue:
                n_eq += 1
                bad += h.a(m) != 2 * src.a(m)
            else:
                n_zero += 1
                bad += h.a(m) != 0
    return bad == 0, f"p in (3,5,7), m <= 2000: {n_eq} equalities a = 2 a_src, {n_zero} zeros, {bad} failures"


# 5 -----------------------------------------------------------------

def check_bessel() -> Result:
    ok = True
    parts = []
    for k in (10, 12):
        F = siegel.sk_lift(k, 2000)
        for d in (-23, -47):
            G = cg.class_group(d)
            zero = all(siegel.bessel_period_exact(F, d, chi).is_zero()
                       for chi in cg.characters(G) if not chi.is_trivial)
            inv = all(siegel.bessel_inversion(F, G, i) == siegel.sk_coefficient(F, G.elements[i])
                      for i in range(G.h))
            ok &= zero and inv
            parts.append(f"k={k} d={d}: B=0 {zero}, inversion {inv}")
    return ok, "; ".join(parts)


# 6 -----------------------------------------------------------------

def waldspurger_pairs(f: mf.HalfIntForm, count: int = 20, nmax: int = 2000) -> List[Tuple[int, int]]:
    ns = [n for n in range(3, nmax, 2)
          if arith.is_squarefree(n) and arith.is_fundamental((-1) ** f.kappa * n) and f.c(n) != 0]
    base = ns[0]
    step = max(1, (len(ns) - 1) // count)
    return [(base, ns[1 + i * step]) for i in range(count)]


def check_waldspurger() -> Result:
    ok = True
    parts = []
    for label in ("f19/2", "f23/2"):
        f = mf.half_form(label, 2000)
        g = lfun.eigenform_L(mf.SHIMURA[label])
        devs = []
        for n1, n2 in waldspurger_pairs(f):
            devs.append(lfun.waldspurger_ratio_check(f, g, n1, n2))
        worst = max(devs)
        ok &= len(devs) >= 20 and worst < 1e-4
        parts.append(f"{label}/{g.label}: {len(devs)} pairs, max deviation {worst:.1e}")
    return ok, "; ".join(parts)


# 7 -----------------------------------------------------------------

def check_shimura() -> Result:
    ok = True
    parts = []
    a2 = mf.eigenform_qexp("g18", 10)[2]
    ok &= a2 == -528
    for label in ("f19/2", "f23/2"):
        f = mf.half_form(label, 100000)
        g = lfun.eigenform_L(mf.SHIMURA[label])
        worst = max(abs(mf.lambda_extract(f, int(p)) - g.lam[int(p)]) for p in arith.primes_upto(50))
        ok &= worst < 1e-9
        parts.append(f"{label}: max |lambda_f(p) - lambda_g(p)| = {worst:.1e}")
    return ok, f"a_g18(2)={a2}; " + "; ".join(parts)


# 8, 11 -------------------------------------------------------------

def _series() -> stats.CoeffSeries:
    return stats.CoeffSeries.from_form("f19/2", 100000)


def check_signs_large() -> Result:
    s = _series()
    nsc, _ = stats.sign_changes(s, 1, 100000)
    nl = len(stats.large_values(s, 10000, 100000))
    return nsc >= 500 and nl >= 100, (f"{nsc} sign changes over odd squarefree n <= 1e5 (need 500); "
                                      f"{nl} large values in [1e4, 1e5] (need 100)")


def check_moments() -> Result:
    s = _series()
    S2 = {X: stats.moment_sums(s, X, 2 * X, 2) for X in (10000, 20000, 40000)}
    S4 = {X: stats.moment_sums(s, X, 2 * X, 4) for X in (10000, 20000, 40000)}
    r2 = S2[40000] / S2[20000]
    q = [S4[X] / X for X in (10000, 20000, 40000)]
    growth = [q[1] / q[0], q[2] / q[1]]
    ok = 1.5 <= r2 <= 2.5 and all(g < 2 for g in growth)
    return ok, (f"S2(4e4)/S2(2e4) = {r2:.4f}; S4/X = {', '.join(f'{v:.4f}' for v in q)} "
                f"(growth per doubling {growth[0]:.3f}, {growth[1]:.3f})")


# 9 -----------------------------------------------------------------

def check_first_moment(threads: int = 1) -> Result:
    t0 = time.perf_counter()
    g = lfun.eigenform_L("g18")
    ok = True
    parts = []
    for X, tol in ((2000, 0.25), (4000, 0.20)):
        for u in (1, 9):
            r = rs.moment_agreement(g, u, X, threads=threads)
            ok &= r["deviation"] <= tol
            parts.append(f"X={X} u={u}: lhs/main-1 = {r['ratio'] - 1:+.4f}")
    fast = time.perf_counter() - t0 < 300
    ok &= fast
    return ok, "; ".join(parts) + f"; under 5 min={fast}"


# 10 ----------------------------------------------------------------

def check_gaussian_mc(threads: int = 1) -> Result:
    res = {s: st.gaussian_integral_check(s) for s in (0.5, 1.0, 2.6, 10.0)}
    ok = all(v < 1e-8 for v in res.values())
    b = {int(p): 1.0 for p in arith.primes_upto(200)}
    mc = st.random_model_mc(b, -23, 200, samples=100000, seed=12345, threads=threads)
    rel = mc.variance / mc.predicted_variance - 1
    ok &= abs(rel) < 0.05
    return ok, (f"max residual {max(res.values()):.1e}; MC variance {mc.variance:.6f} vs "
                f"{mc.predicted_variance:.6f} ({rel:+.4f})")


CHECKS: List[Tuple[int, str, Callable[..., Result]]] = [
    (1, "class groups", check_class_groups),
    (2, "Satake identities", check_satake_identities),
    (3, "moment bound brute force", check_moment_bounds),
    (4, "h_p pipeline", check_h_p),
    (5, "Bessel periods", check_bessel),
    (6, "Waldspurger ratios", check_waldspurger),
    (7, "Shimura compatibility", check_shimura),
    (8, "sign changes and large values", check_signs_large),
    (9, "twisted first moment", check_first_moment),
    (10, "Gaussian identity and random model", check_gaussian_mc),
    (11, "moment growth", check_moments),
]

THREADED = {9, 10}


def run(threads: int = 1, only: List[int] | None = None) -> List[Tuple[int, str, bool, str]]:
    out = []
    for num, name, fn in CHECKS:
        if only and num not in only:
            continue
        try:
            ok, detail = fn(threads) if num in THREADED else fn()
        except Exception as e:  # reported as a failure line, never swallowed silently
            ok, detail = False, f"error: {type(e).__name__}: {e}"
        out.append((num, name, ok, detail))
    return out


def format_line(num: int, name: str, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2} {name}: {detail}"
