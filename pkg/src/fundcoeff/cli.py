"""Command line front end: `fundcoeff <subcommand> ...`.

Output is CSV (default) or JSON on stdout or --out. The first CSV line, or
the "config" key in JSON, holds the resolved configuration. The thread count
is an execution knob and is left out of it, so results are comparable across
thread counts. Exit codes: 0 success, 2 validation error, 3 numerical
tolerance failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class NumericalFailure(Exception):
    """A computed quantity missed its tolerance."""


# ------------------------------------------------------------------ output

def _fmt(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return float(f"{v:.17g}")
    if isinstance(v, complex):
        return [_fmt(v.real), _fmt(v.imag)]
    if isinstance(v, dict):
        return {str(k): _fmt(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    try:
        import numpy as np
        if isinstance(v, np.generic):
            return _fmt(v.item())
        if isinstance(v, np.ndarray):
            return [_fmt(x) for x in v.tolist()]
    except ImportError:  # pragma: no cover
        pass
    return str(v)


def _csv_cell(v: Any) -> str:
    v = _fmt(v)
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


def emit(config: Dict[str, Any], rows: List[Dict[str, Any]], fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"config": _fmt(config), "rows": _fmt(rows)}, out, sort_keys=True, indent=1)
        out.write("\n")
        return
    out.write("# config: " + json.dumps(_fmt(config), sort_keys=True) + "\n")
    if not rows:
        return
    cols: List[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_csv_cell(r.get(c)) for c in cols])


# ------------------------------------------------------------------ subcommands

def _int(s: str) -> int:
    """Integers, also written like 1e5."""
    try:
        return int(s)
    except ValueError:
        v = float(s)
        if v != int(v):
            raise argparse.ArgumentTypeError(f"{s} is not an integer")
        return int(v)


def cmd_classgroup(a) -> tuple:
    from . import classgroup as cg
    G = cg.class_group(a.d)
    cfg = {"subcommand": "classgroup", "d": a.d}
    chars = cg.characters(G)
    row = {"d": a.d, "h": G.h, "structure": list(G.structure), "w": G.w,
           "convention": cg.CONVENTION,
           "reduced_forms": [list(f) for f in G.elements],
           "character_table": [{"exponents": list(chi.exponents),
                                "angles": [str(t) for t in chi.angles()]} for chi in chars]}
    return cfg, [row]


def cmd_coeffs(a) -> tuple:
    from . import mf
    from . import stats
    cfg = {"subcommand": "coeffs", "form": a.form, "max": a.max, "normalized": a.normalized}
    if a.form in mf.EIGEN_WEIGHT:
        q = mf.eigenform_qexp(a.form, a.max)
        return cfg, [{"n": n, "a": q[n]} for n in range(1, a.max + 1)]
    f = mf.half_form(a.form, a.max)
    c = stats.CoeffSeries.from_form(a.form, a.max, normalize=a.normalized).values
    if a.normalized:
        cfg["note"] = "c(n) divided by its root mean square over odd squarefree n"
    return cfg, [{"n": n, "a": f.a(n), "c": float(c[n])} for n in range(1, a.max + 1)]


def cmd_siegel(a) -> tuple:
    from . import classgroup as cg
    from . import siegel
    cfg = {"subcommand": "siegel", "k": a.k, "op": a.op, "S": a.S, "d": a.d, "p": a.p, "max": a.max}
    if a.op == "coeff":
        if not a.S:
            raise ValueError("--op coeff needs --S a,b,c")
        S = tuple(int(t) for t in a.S.split(","))
        if len(S) != 3 or siegel.lambda2_disc(S) >= 0 or S[0] <= 0:
            raise ValueError("--S must be a positive definite a,b,c")
        F = siegel.sk_lift(a.k, max(1000, -siegel.lambda2_disc(S)))
        return cfg, [{"S": list(S), "a": siegel.sk_coefficient(F, S)}]
    if a.op == "bessel":
        if a.d is None:
            raise ValueError("--op bessel needs --d")
        G = cg.class_group(a.d)
        F = siegel.sk_lift(a.k, max(1000, -a.d))
        rows = []
        for chi in cg.characters(G):
            B = siegel.bessel_period_exact(F, a.d, chi)
            z = B.is_zero()
            rows.append({"character": list(chi.exponents), "B_is_zero": z,
                         "B": 0j if z else complex(B)})
        return cfg, rows
    if a.p is None:
        raise ValueError("--op hp needs --p")
    F = siegel.sk_lift(a.k, a.max)
    h = siegel.h_p_construct(F, a.p, a.max)
    return cfg, [{"m": m, "a": h.a(m), "a_source": F.source.a(m)} for m in range(1, a.max + 1)]


def cmd_lvalue(a) -> tuple:
    from . import lfun
    from . import mf
    label = a.g.replace("w", "g")
    g = lfun.eigenform_L(label)
    cfg = {"subcommand": "lvalue", "g": label, "d": a.d, "waldspurger": a.waldspurger,
           "pairs": a.pairs, "c": a.c}
    if a.waldspurger:
        inv = {v: k for k, v in mf.SHIMURA.items()}
        if label not in inv:
            raise ValueError(f"no half-integral partner for {label}")
        if not a.pairs:
            raise ValueError("--waldspurger needs --pairs FILE")
        pairs = []
        with open(a.pairs, newline="") as fh:
            for row in csv.reader(fh):
                if row and not row[0].lstrip().startswith(("#", "n")):
                    pairs.append((int(row[0]), int(row[1])))
        f = mf.half_form(inv[label], max(2000, max(max(p) for p in pairs)))
        rows, worst = [], 0.0
        for n1, n2 in pairs:
            dev = lfun.waldspurger_ratio_check(f, g, n1, n2)
            worst = max(worst, dev)
            rows.append({"n1": n1, "n2": n2, "deviation": dev})
        if worst >= a.tol:
            raise NumericalFailure((cfg, rows))
        return cfg, rows
    if a.d is None:
        raise ValueError("give --d or --waldspurger")
    if a.d < 0:
        L = lfun.central_value_twist(g, a.d, c=a.c)
    else:
        raise ValueError("central values are implemented for d < 0")
    return cfg, [{"d": a.d, "value": L.value, "est_error": L.est_error, "method": L.method,
                  "flag": L.flag}]


def cmd_resonance(a) -> tuple:
    from . import lfun
    from . import resonance as rs
    g = lfun.eigenform_L(a.g)
    cfg = {"subcommand": "resonance", "X": a.X, "u": a.u, "g": a.g, "L_override": a.L_override,
           "M_override": a.M_override, "estimates": a.estimates,
           "note": "L/M overrides are demonstration settings, not the standard choice of L and M"
           if (a.L_override is not None or a.M_override is not None) else ""}
    if a.estimates:
        p = rs.ResonatorParams(a.X, lam0=a.g, L_override=a.L_override, M_override=a.M_override)
        return cfg, [rs.estimates_report(p, g, threads=a.threads)]
    rows = []
    for u in a.u:
        r = rs.moment_agreement(g, u, a.X, threads=a.threads)
        rows.append(r)
    return cfg, rows


def cmd_grh(a) -> tuple:
    from . import arith
    from . import classgroup as cg
    from . import satake as st
    cfg = {"subcommand": "grh", "op": a.op, "d": a.d, "x": a.x, "seed": a.seed, "sigma": a.sigma,
           "samples": a.samples, "C0": a.C0, "ell": a.ell}
    if a.op == "integral":
        sig = a.sigma if a.sigma is not None else 1.0
        res = st.gaussian_integral_check(sig)
        num, closed = st.gaussian_integral(sig)
        row = {"sigma": sig, "numeric": num, "closed_form": closed, "residual": res,
               "pass": res < 1e-8}
        if res >= 1e-8:
            raise NumericalFailure((cfg, [row]))
        return cfg, [row]
    if a.op == "identities":
        w = st.fuzz_identities(1000, seed=a.seed)
        ok = max(w["fsquare"], w["psquare"], w["rs_square"]) < 1e-12 and w["ramanujan_max"] <= 8
        row = dict(w, draws=1000, seed=a.seed, worked_point=[st.power_sum(s, 1j, 1, n) for s, n in
                                                             (("pi", 1), ("std", 1), ("ad", 1), ("pi", 2))])
        if not ok:
            raise NumericalFailure((cfg, [row]))
        return cfg, [row]
    if a.d is None:
        raise ValueError(f"--op {a.op} needs --d")
    G = cg.class_group(a.d)
    if a.op == "mc":
        x = a.x or 200
        b = {int(p): 1.0 for p in arith.primes_upto(x)}
        r = st.random_model_mc(b, a.d, x, samples=a.samples, seed=a.seed, threads=a.threads)
        return cfg, [{"mean": r.mean, "variance": r.variance, "predicted_variance": r.predicted_variance,
                      "samples": r.samples, "hist_counts": r.hist_counts, "hist_edges": r.hist_edges}]
    if a.op == "moments":
        x = a.x or 2
        b = {int(p): 1.0 for p in arith.primes_upto(x)}
        rows = []
        for case in ("split", "ramified"):
            lhs, rhs, ok = st.moment_bound_check(G, b, x, a.ell, case)
            rows.append({"case": case, "lhs": lhs, "rhs": rhs, "holds": ok})
        return cfg, rows
    x = a.x or 100
    pi = st.SatakeGSp4.yoshida("g12", "g22", max(x, 1000))
    if a.op == "chandee":
        rows = []
        for chi in cg.characters(G):
            s = st.chandee_sum(pi, st.ai_function(G, chi), a.d, x, C0=a.C0)
            rows.append({"character": list(chi.exponents), "sum": s})
        return cfg, rows
    if a.op == "adev":
        P = st.P_values(pi, G, x)
        rows = []
        for V in [v / 2 for v in range(-8, 9)]:
            rows.append({"V": V, "A_K": st.A_K(pi, G, V, x, P=P),
                         "gaussian_shape": st.gaussian_tail_shape(V, a.d)})
        return cfg, rows
    raise ValueError(f"unknown op {a.op}")


def _series(a):
    from . import stats
    if a.csv_in:
        return stats.CoeffSeries.from_csv(a.csv_in)
    return stats.CoeffSeries.from_form(a.form, a.X)


def cmd_signs(a) -> tuple:
    from . import stats
    s = _series(a)
    n, pairs = stats.sign_changes(s, 1, s.X)
    cfg = {"subcommand": "signs", "form": a.form, "X": s.X, "csv_in": a.csv_in}
    return cfg, [{"count": n}] + [{"n_i": p, "n_next": q} for p, q in pairs[: a.limit]]


def cmd_large(a) -> tuple:
    from . import stats
    s = _series(a)
    X = a.X if not a.csv_in else max(16, s.X // 2)
    hi = min(2 * X, s.X)
    if a.form and not a.csv_in and hi < 2 * X:
        s = stats.CoeffSeries.from_form(a.form, 2 * X)
        hi = 2 * X
    ns = stats.large_values(s, X, hi)
    cfg = {"subcommand": "large", "form": a.form, "X": X, "csv_in": a.csv_in}
    return cfg, [{"count": len(ns)}] + [{"n": n, "c": float(s.values[n]),
                                         "threshold": stats.large_threshold(n)} for n in ns[: a.limit]]


def cmd_selftest(a) -> tuple:
    from . import acceptance
    res = acceptance.run(threads=a.threads)
    cfg = {"subcommand": "selftest"}
    rows = [{"criterion": n, "name": name, "pass": ok, "detail": d} for n, name, ok, d in res]
    for r in res:
        print(acceptance.format_line(*r), file=sys.stderr)
    if not all(r["pass"] for r in rows):
        raise NumericalFailure((cfg, rows))
    return cfg, rows


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fundcoeff", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output (default CSV)")
    common.add_argument("--csv", action="store_true", help="CSV output (default)")
    common.add_argument("--out", help="file to write; the words csv and json select a format on stdout")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("classgroup", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(fn=cmd_classgroup)

    s = sub.add_parser("coeffs", parents=[common])
    s.add_argument("--form", default="f19/2", help="f19/2, f23/2, g12, g18 or g22")
    s.add_argument("--max", "--X", dest="max", type=_int, default=100)
    s.add_argument("--normalized", action="store_true")
    s.set_defaults(fn=cmd_coeffs)

    s = sub.add_parser("siegel", parents=[common])
    s.add_argument("--k", type=int, default=10, choices=[10, 12])
    s.add_argument("--op", required=True, choices=["coeff", "hp", "bessel"])
    s.add_argument("--S", help="matrix as a,b,c for [[a, b/2], [b/2, c]]")
    s.add_argument("--d", type=int, help="Bessel periods for every character of Cl(d)")
    s.add_argument("--p", type=int, help="odd prime for h_p")
    s.add_argument("--max", type=_int, default=200)
    s.set_defaults(fn=cmd_siegel)

    s = sub.add_parser("lvalue", parents=[common])
    s.add_argument("--g", default="g18", help="g18/w18, g22/w22 or g12")
    s.add_argument("--d", type=int)
    s.add_argument("--c", type=float, default=1.0, help="contour abscissa")
    s.add_argument("--waldspurger", action="store_true")
    s.add_argument("--pairs", help="CSV file of n1,n2")
    s.add_argument("--tol", type=float, default=1e-4)
    s.set_defaults(fn=cmd_lvalue)

    s = sub.add_parser("resonance", parents=[common])
    s.add_argument("--X", type=_int, default=2000)
    s.add_argument("--u", type=_int, nargs="+", default=[1])
    s.add_argument("--g", default="g18")
    s.add_argument("--L-override", dest="L_override", type=float)
    s.add_argument("--M-override", dest="M_override", type=float)
    s.add_argument("--estimates", action="store_true", help="report the resonance estimates")
    s.set_defaults(fn=cmd_resonance)

    s = sub.add_parser("grh", parents=[common])
    s.add_argument("--op", required=True,
                   choices=["identities", "chandee", "adev", "moments", "mc", "integral"])
    s.add_argument("--d", type=int)
    s.add_argument("--x", type=_int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sigma", type=float)
    s.add_argument("--samples", type=_int, default=100000)
    s.add_argument("--C0", type=float, default=2.0)
    s.add_argument("--ell", type=int, default=1)
    s.set_defaults(fn=cmd_grh)

    for name, fn, X in (("signs", cmd_signs, 100000), ("large", cmd_large, 10000)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--form", default="f19/2")
        s.add_argument("--X", type=_int, default=X)
        s.add_argument("--csv-in", dest="csv_in", help="read the series from a CSV of n,c")
        s.add_argument("--limit", type=int, default=50, help="listed locations")
        s.set_defaults(fn=fn)

    s = sub.add_parser("selftest", parents=[common])
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    if a.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    fmt = "json" if a.json else "csv"
    if a.out in ("csv", "json"):
        fmt, a.out = a.out, None
    code = EXIT_OK
    try:
        cfg, rows = a.fn(a)
    except NumericalFailure as e:
        cfg, rows = e.args[0]
        code = EXIT_NUMERIC
    except (ValueError, KeyError, IndexError, NotImplementedError, OSError) as e:
        msg = str(e)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_NUMERIC if msg.startswith("truncation failure") else EXIT_USAGE
    except ZeroDivisionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    buf = io.StringIO()
    emit(cfg, rows, fmt, buf)
    if a.out:
        with open(a.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
