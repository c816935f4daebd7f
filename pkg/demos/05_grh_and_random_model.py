# %% [markdown]
# Satake data for GSp4 x AI(Lambda), conditional prime sums, and the random
# multiplicative model behind the distribution of P(Lambda; x).

# %%
import numpy as np

from fundcoeff import arith
from fundcoeff import classgroup as cg
from fundcoeff import satake as sk

print(sk.fuzz_identities(1000, seed=1))

# %% a Yoshida-type parameter set from g12 and g22
pi = sk.SatakeGSp4.yoshida("g12", "g22", 5000)
G = cg.class_group(-1019)
P = sk.P_values(pi, G, 1000)
for V in (-2, -1, 0, 1, 2):
    print(V, float(sk.A_K(pi, G, V, 1000, P=P)), sk.gaussian_tail_shape(V, -1019))

# %% brute-force moment bound over all characters
G = cg.class_group(-163)
b = {int(p): 1.0 for p in arith.primes_upto(6)}
print(sk.moment_bound_check(G, b, 6, 1, "split"))

# %% random model: variance against 2 sum b(p)^2/p over split primes
b = {int(p): 1.0 for p in arith.primes_upto(200)}
mc = sk.random_model_mc(b, -23, 200, samples=100000, seed=12345)
print(mc.variance, mc.predicted_variance)
print(np.round(mc.hist_counts / mc.samples, 3))

# %%
for s in (0.5, 1.0, 2.6, 10.0):
    print(s, sk.gaussian_integral(s), sk.gaussian_integral_check(s))
