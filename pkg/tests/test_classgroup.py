import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fundcoeff import arith
from fundcoeff import classgroup as cg

SMALL_D = [d for d in arith.fundamental_discriminants(3, 2000)]


def hnf_product_oracle(f, g, d):
    """Reduced form of the ideal product, computed by Hermite normal form.

    Ideals are Z-lattices in Z[w], w = (delta + sqrt d)/2, written in the basis
    (1, w). The form (a,b,c) is the ideal a Z + ((-b + sqrt d)/2) Z.
    """
    delta = d % 2
    nrm = (delta * delta - d) // 4  # w^2 = delta w - nrm

    def basis(form):
        a, b, _ = form
        return [(a, 0), ((-b - delta) // 2, 1)]

    def mul(x, y):
        # (x0 + x1 w)(y0 + y1 w)
        return (x[0] * y[0] - nrm * x[1] * y[1], x[0] * y[1] + x[1] * y[0] + delta * x[1] * y[1])

    vecs = [mul(x, y) for x in basis(f) for y in basis(g)]
    # HNF of the lattice spanned by vecs: find C = gcd of w-coordinates
    C, B = 0, 0
    rows = [list(v) for v in vecs]
    # column 1 gcd via extended Euclid over rows
    while sum(1 for r in rows if r[1] != 0) > 1:
        rows.sort(key=lambda r: abs(r[1]) if r[1] else math.inf)
        piv = rows[0]
        for r in rows[1:]:
            if r[1]:
                q = r[1] // piv[1]
                r[0] -= q * piv[0]
                r[1] -= q * piv[1]
    piv = [r for r in rows if r[1] != 0][0]
    if piv[1] < 0:
        piv = [-piv[0], -piv[1]]
    B, C = piv
    A = 0
    for r in rows:
        if r[1] == 0:
            A = math.gcd(A, r[0])
    B %= A
    # content C divides everything; primitive ideal (A/C) Z + (B/C + w) Z
    a = A // C
    bb = -(2 * (B // C) + delta)
    c = (bb * bb - d) // (4 * a)
    return cg.reduce((a, bb, c))


def test_spec_examples():
    G = cg.class_group(-23)
    assert G.h == 3 and list(G.structure) == [3]
    assert set(G.elements) == {(1, 1, 6), (2, 1, 3), (2, -1, 3)}
    assert cg.class_group(-47).h == 5
    assert cg.class_group(-4).w == 4 and cg.class_group(-3).w == 6


def test_non_fundamental_rejected():
    with pytest.raises(ValueError):
        cg.class_group(-12)


@pytest.mark.parametrize("d", [-23, -47, -71, -84, -260, -420, -1155, -3315])
def test_composition_matches_hnf_oracle(d):
    forms = cg.reduced_forms(d)
    for f in forms:
        for g in forms:
            assert cg.reduce(cg.compose_forms(f, g)) == hnf_product_oracle(f, g, d)


@given(st.sampled_from(SMALL_D), st.data())
def test_group_axioms(d, data):
    G = cg.class_group(d)
    i, j, k = (data.draw(st.integers(0, G.h - 1)) for _ in range(3))
    assert G.compose(G.compose(i, j), k) == G.compose(i, G.compose(j, k))
    assert G.compose(i, j) == G.compose(j, i)
    assert G.compose(i, G.inverse(i)) == G.identity
    assert G.index(cg.compose_forms(G.elements[i], G.elements[j])) == G.compose(i, j)
    assert math.prod(G.structure) == G.h


@pytest.mark.parametrize("d", [-23, -84, -260, -3315])
def test_character_orthogonality_exact(d):
    G = cg.class_group(d)
    chars = cg.characters(G)
    assert len(chars) == G.h
    for a in chars:
        for b in chars:
            # sum of roots of unity: exact via angles, zero iff a != b
            diff = [(x - y) % 1 for x, y in zip(a.angles(), b.angles())]
            if a == b:
                assert all(t == 0 for t in diff)
            else:
                s = sum(np.exp(2j * np.pi * float(t)) for t in diff)
                assert abs(s) < 1e-9


@pytest.mark.parametrize("d", [-23, -47, -56, -84])
def test_ideal_counts_against_representation_numbers(d):
    G = cg.class_group(d)
    X = 300
    counts = cg.ideal_class_counts(G, X)
    for i, (a, b, c) in enumerate(G.elements):
        r = np.zeros(X + 1, dtype=np.int64)
        lim = int(math.isqrt(4 * c * X // -d)) + 2 if d else 0
        ylim = int(math.isqrt(4 * a * X // -d)) + 2
        for y in range(-ylim, ylim + 1):
            for x in range(-lim - abs(b * y), lim + abs(b * y) + 1):
                v = a * x * x + b * x * y + c * y * y
                if 1 <= v <= X:
                    r[v] += 1
        assert np.array_equal(r[1:] // G.w, counts[i, 1:]), (d, G.elements[i])
        assert np.all(r[1:] % G.w == 0)


@pytest.mark.parametrize("d", [-23, -47])
def test_theta_coefficients_are_character_sums(d):
    G = cg.class_group(d)
    counts = cg.ideal_class_counts(G, 200)
    for chi in cg.characters(G):
        th = cg.theta_coeffs(G, chi, 200)
        direct = chi.values() @ counts
        assert np.max(np.abs(th[1:] - direct[1:])) < 1e-9
