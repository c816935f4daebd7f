# %% [markdown]
# Central values L(1/2, g x chi_d) by the approximate functional equation,
# checked against Waldspurger's formula through the half-integral form.

# %%
import numpy as np

from fundcoeff import lfun, mf

g = lfun.eigenform_L("g18")
W = lfun.afe_weight(g, 1)
xi = np.geomspace(1e-3, W.xi_max, 6)
print("W contour  ", W.direct(xi))
print("W closed   ", W.closed_form(xi))

# %% a few twists; the value must not depend on the contour abscissa
for d in (-7, -23, -47, -431):
    a = lfun.central_value_twist(g, d, c=1.0)
    b = lfun.central_value_twist(g, d, c=1.5)
    print(d, a.value, abs(a.value - b.value), a.est_error)

# %% |c(n1)|^2 / |c(n2)|^2 against L(1/2, chi_{-n1}) / L(1/2, chi_{-n2})
f = mf.half_form("f19/2", 2000)
for n1, n2 in [(3, 7), (3, 11), (19, 43)]:
    print(n1, n2, lfun.waldspurger_ratio_check(f, g, n1, n2))

# %% L(1, Sym^2 g) two ways
print(lfun.sym2_L_at_1(g, method="euler"), lfun.sym2_L_at_1(g, method="afe"))
