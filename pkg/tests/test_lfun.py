import math

import numpy as np
import pytest
from scipy.special import gammaincc

from fundcoeff import arith, lfun, mf
from fundcoeff import classgroup as cg


def test_dirichlet_L1_exact_values():
    assert lfun.dirichlet_L1(-4).value == pytest.approx(math.pi / 4, rel=1e-14)
    assert lfun.dirichlet_L1(-23).value == pytest.approx(3 * math.pi / math.sqrt(23), rel=1e-14)
    assert lfun.dirichlet_L1(-3).value == pytest.approx(math.pi / (3 * math.sqrt(3)), rel=1e-14)


def test_class_number_formula():
    for d in arith.fundamental_discriminants(3, 3000):
        assert lfun.class_number_from_L(d) == cg.class_group(d).h


@pytest.mark.parametrize("label", ["g12", "g18", "g22"])
def test_eigenvalues_from_q_expansion(label):
    g = lfun.eigenform_L(label, 5000)
    a = mf.eigenform_qexp(label, 5000)
    n = np.arange(1, 5001)
    assert np.allclose(g.lam[1:5001], np.array(a[1:], dtype=float) / n ** ((g.weight - 1) / 2),
                       rtol=1e-12, atol=1e-14)
    assert np.max(np.abs(g.lam[arith.primes_upto(5000)])) <= 2


@pytest.mark.parametrize("label,chi2", [("g18", 0), ("g18", 1), ("g18", -1), ("g22", 1), ("g12", -1)])
def test_afe_weight_contour_matches_incomplete_gamma(label, chi2):
    g = lfun.eigenform_L(label)
    W = lfun.afe_weight(g, chi2)
    xi = np.geomspace(1e-4, W.xi_max, 200)
    assert np.max(np.abs(W.direct(xi) - W.closed_form(xi))) < 1e-11
    assert np.max(np.abs(W(xi) - W.closed_form(xi))) < 1e-10
    # W(xi) -> L_2(1/2) with an O(xi^{1/2}) correction from the 2-factor poles
    assert W.closed_form(np.array([1e-14]))[0] == pytest.approx(W.value_at_zero(), abs=1e-5)
    if chi2 == 0:
        assert np.allclose(W.closed_form(xi), gammaincc(g.kappa, 2 * math.pi * xi))


def test_afe_support_bound():
    W = lfun.afe_weight(lfun.eigenform_L("g18"), 1)
    assert W.xi_max == pytest.approx(9.84, abs=0.01)
    assert abs(W.closed_form(np.array([W.xi_max]))[0]) < W.TAIL


@pytest.mark.parametrize("d", [-7, -23, -47, -103, -431, -1019])
def test_central_value_contour_independent(d):
    g = lfun.eigenform_L("g18")
    a = lfun.central_value_twist(g, d, c=1.0)
    b = lfun.central_value_twist(g, d, c=1.5)
    assert abs(a.value - b.value) <= a.est_error + b.est_error + 1e-12
    assert a.value >= -a.est_error  # nonnegative by Waldspurger
    assert a.flag == ""


def test_truncation_failure():
    g = lfun.eigenform_L("g18")
    with pytest.raises(ValueError, match="truncation failure"):
        lfun.central_value_twist(g, -7999999, max_table=10**6)
    with pytest.raises(ValueError):
        lfun.central_value_twist(g, -12)


@pytest.mark.parametrize("label,pairs", [("f19/2", [(3, 7), (3, 11), (7, 15), (19, 43)]),
                                         ("f23/2", [(3, 7), (3, 19), (11, 35)])])
def test_waldspurger_ratios(label, pairs):
    f = mf.half_form(label, 2000)
    g = lfun.eigenform_L(mf.SHIMURA[label])
    for n1, n2 in pairs:
        if f.c(n1) == 0 or f.c(n2) == 0:
            continue
        assert lfun.waldspurger_ratio_check(f, g, n1, n2) < 1e-6


def test_sym2_coefficients_match_euler_factor():
    g = lfun.eigenform_L("g18")
    b = lfun.sym2_coefficients(g, 3000)
    for p in (2, 3, 5, 7, 11):
        assert b[p] == pytest.approx(g.lam[p * p], abs=1e-12)
        # local series at s = 2 against the closed local factor
        k, s = 0, 0.0
        while p ** k <= 3000:
            s += b[p ** k] * p ** (-2.0 * k)
            k += 1
        assert s == pytest.approx(lfun.sym2_local(g.lam[p], p, 2.0), rel=10 * p ** (-2.0 * k))
    for m in range(2, 50):
        for n in range(2, 50):
            if math.gcd(m, n) == 1:
                assert b[m * n] == pytest.approx(b[m] * b[n], rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("label", ["g12", "g18", "g22"])
def test_sym2_two_routes(label):
    g = lfun.eigenform_L(label)
    e = lfun.sym2_L_at_1(g, method="euler")
    a = lfun.sym2_L_at_1(g, method="afe")
    assert abs(e.value - a.value) < max(3 * e.est_error, 1e-3)


def test_local_two_factor():
    assert lfun.local_two_factor(0.7, 0, 0.5) == 1.0
    lam, s = 1.3, 0.5
    a = (lam + complex(lam * lam - 4) ** 0.5) / 2
    b = 1 / a
    want = 1 / ((1 - a * 2 ** -s) * (1 - b * 2 ** -s))
    assert lfun.local_two_factor(lam, 1, s) == pytest.approx(want)
