# %% [markdown]
# The twisted first moment over the family d = -n, n odd squarefree,
# d = 1 mod 4, and the resonator at demonstration scale.

# %%
from fundcoeff import lfun
from fundcoeff import resonance as rs

g = lfun.eigenform_L("g18")
for u in (1, 9, 3):
    r = rs.moment_agreement(g, u, 1000)
    print(f"u={u}: direct {r['lhs']:.3f}  main term {r['main']:.3f}  ratio {r['ratio']:.4f}")

# %% the recipe M = X^(1/24) leaves no primes at desk scale
p = rs.ResonatorParams(10**6)
print("M =", p.M, "L =", p.L, "primes:", len(p.primes))

# %% with overrides the resonator has real support (not the standard choice of L and M)
p = rs.ResonatorParams(500, L_override=6, M_override=5000)
print("window primes", p.primes[:5], "... support size", len(p.support))
print(rs.estimates_report(p, with_L=True))
