# %% [markdown]
# Sign changes, large values and power moments of the normalized
# coefficients c(n) of f19/2 over odd squarefree n.

# %%
import numpy as np

from fundcoeff import stats

s = stats.CoeffSeries.from_form("f19/2", 100000)
print("normalizing scale", s.scale)

n, pairs = stats.sign_changes(s, 1, 100000)
print("sign changes:", n, "first few", pairs[:5])

big = stats.large_values(s, 10000, 100000)
print("large values:", len(big), "threshold at 1e5", stats.large_threshold(1e5))

# %% second and fourth moments over dyadic windows
for X in (10000, 20000, 40000):
    print(X, stats.moment_sums(s, X, 2 * X, 2) / X, stats.moment_sums(s, X, 2 * X, 4) / X)

# %% short intervals that certify a sign change
cert = sum(stats.short_interval_sums(s, x, 50)[2] for x in range(1000, 100000, 997))
print("certified intervals of length 50:", cert, "of", len(range(1000, 100000, 997)))

# %% smoothed shifted sums; c(n) lives on n = 0, 3 mod 4, so the shift must be 0 mod 4
for X in (1000, 2000, 4000, 8000):
    v = stats.shifted_convolution(s, 4, 1, 3, X, 9.5)
    print(X, abs(v) / X)
