import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fundcoeff import arith, stats

S = stats.CoeffSeries.from_form("f19/2", 20000)


def test_weight_and_threshold_examples():
    assert stats.weight_W(1.0, 7.3) == pytest.approx(math.exp(-2 * math.pi), rel=1e-14)
    assert stats.large_threshold(1e6) == pytest.approx(1.0284, abs=1e-4)
    with pytest.raises(ValueError):
        stats.weight_W(0.0, 5)


def test_mask_against_brute_force():
    s = stats.CoeffSeries(np.zeros(10001), N=15)
    m = s.mask()
    for n in range(1, 10001):
        want = n % 2 == 1 and arith.is_squarefree(n) and math.gcd(n, 15) == 1
        assert m[n] == want
    assert not m[0]


def test_normalization():
    m = S.mask()
    assert math.fsum(S.values[m] ** 2) / m.sum() == pytest.approx(1.0, rel=1e-12)
    raw = stats.CoeffSeries.from_form("f19/2", 20000, normalize=False)
    assert np.allclose(raw.values * S.scale, S.values, rtol=1e-14, atol=0)


def test_sign_changes_brute_force():
    cnt, pairs = stats.sign_changes(S, 1, 5000)
    idx = [n for n in range(1, 5001) if S.mask()[n] and S.values[n] != 0]
    brute = [(a, b) for a, b in zip(idx, idx[1:]) if S.values[a] * S.values[b] < 0]
    assert pairs == brute and cnt == len(brute)


@given(st.integers(1, 19000), st.integers(1, 900))
def test_certified_intervals_contain_a_sign_change(x, y):
    a, b, cert = stats.short_interval_sums(S, x, y)
    assert a <= b + 1e-12
    if cert:
        n, _ = stats.sign_changes(S, x, x + y)
        assert n >= 1


def test_moment_sums():
    v = S.values[1000:2001][S.mask()[1000:2001]]
    assert stats.moment_sums(S, 1000, 2000, 2) == pytest.approx(np.sum(v ** 2), rel=1e-12)
    assert stats.moment_sums(S, 1000, 2000, 4) == pytest.approx(np.sum(v ** 4), rel=1e-12)
    with pytest.raises(ValueError):
        stats.moment_sums(S, 1000, 2000, 3)
    with pytest.raises(ValueError):
        stats.moment_sums(S, 1000, 30000, 2)


def test_large_values():
    ns = stats.large_values(S, 1000, 5000)
    for n in range(1000, 5001):
        hit = bool(S.mask()[n]) and abs(S.values[n]) >= stats.large_threshold(n)
        assert (n in ns) == hit
    with pytest.raises(ValueError):
        stats.large_values(S, 10, 100)


def test_shifted_convolution():
    k = 9.5
    v = stats.shifted_convolution(S, 3, 1, 4, 900, k)
    X = 900
    n = np.arange(1, 20000 - 3)
    w = stats.weight_W(n / X, k) * stats.weight_W((n + 3) / X, k)
    brute = np.sum(S.values[n] * S.values[n + 3] * w * np.exp(2j * np.pi * n / 4))
    assert abs(v - brute) < 1e-10 * (1 + abs(brute))
    for bad in [(0, 1, 1), (40, 1, 1), (3, 2, 4)]:
        with pytest.raises(ValueError):
            stats.shifted_convolution(S, *bad, 900, k)


def test_square_divisor_tail():
    tail, per = stats.square_divisor_tail(S, 5000, 3)
    a = np.abs(S.values)
    for d in (4, 5, 70):
        want = sum(a[n] for n in range(d * d, 5001, d * d) if n % 2)
        assert per[d] == pytest.approx(want, rel=1e-12, abs=1e-300)
    assert tail == pytest.approx(sum(per.values()))


def test_csv_roundtrip(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("n,c\n1,0.5\n3,-0.25\n7,2\n")
    s = stats.CoeffSeries.from_csv(str(p))
    assert s.X == 7 and list(s.values) == [0, 0.5, 0, -0.25, 0, 0, 0, 2]
    assert stats.sign_changes(s, 1, 7)[0] == 2
