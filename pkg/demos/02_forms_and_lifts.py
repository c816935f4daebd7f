# %% [markdown]
# Half-integral weight forms in the plus space, their Shimura partners,
# and the Saito-Kurokawa lift to degree two.

# %%
from fundcoeff import classgroup as cg
from fundcoeff import lfun, mf, siegel

f = mf.half_form("f19/2", 2000)
print("a(n), n < 40:", [(n, int(f.a(n))) for n in range(1, 40) if f.a_raw[n]])

# %% Hecke eigenvalues read off the half-integral side match g18 = Delta E6
g = lfun.eigenform_L("g18")
for p in (3, 5, 7, 11, 13):
    print(p, mf.lambda_extract(f, p), g.lam[p])

# %% Fourier coefficients of the lift F at S = [[a, b/2], [b/2, c]]
F = siegel.sk_lift(10, 2000)
for S in [(1, 1, 6), (2, 1, 3), (2, 2, 12), (3, 1, 5)]:
    print(S, siegel.sk_coefficient(F, S))

# %% Bessel periods: only the trivial character survives
G = cg.class_group(-47)
for chi in cg.characters(G):
    B = siegel.bessel_period_exact(F, -47, chi)
    print(chi.exponents, "zero" if B.is_zero() else B.rational_value())

# %% h_p collapses to 2 a_source(m) or 0
h = siegel.h_p_construct(F, 3, 60)
print([(m, int(h.a(m)), int(F.source.a(m))) for m in range(1, 60) if m % 2 and m % 3])
