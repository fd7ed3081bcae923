# %% [markdown]
# # Three estimates of the essential norm of C_phi
#
# E1 takes the sup of the ratio field beyond threshold levels, E2 the sup over
# the last shells near the circle, and E3 the tail of a_n = ||phi^n + conj(phi)^n|| / ||z^n + conj(z)^n||.
# A compact symbol (a dilation) drives all three to zero; the identity and an
# automorphism keep them at 1.

# %%
from hbloch import (RatioField, essnorm_boundary, essnorm_power, essnorm_threshold, parse_symbol,
                    weak_null_lower_bound)

suite = ["identity", "automorphism a=0.5", "blaschke zeros=[0.3, -0.5i]", "dilation s=0.9"]
for spec in suite:
    phi = parse_symbol(spec)
    fld = RatioField(phi, 1.0)
    e1 = essnorm_threshold(fld).value
    e2 = essnorm_boundary(fld).value
    e3 = essnorm_power(phi, 1.0, 512).value
    print(f"{spec:<30s} E1={e1:.6f}  E2={e2:.6f}  E3={e3:.6f}")

# %% [markdown]
# For the dilation the shell sup decays only polynomially in 1 - r at small
# alpha, so E2 at depth 20 is still visibly above zero for alpha = 0.5.

# %%
phi = parse_symbol("dilation s=0.9")
for a in (0.5, 1.0, 2.0):
    fld = RatioField(phi, a)
    print(f"alpha={a:<4g}", [f"{essnorm_boundary(fld, shells=j).value:.2e}" for j in (10, 20, 30)])

# %% [markdown]
# The weak-null functions give a lower bound that should sit below E1.

# %%
for spec in suite:
    lo = weak_null_lower_bound(parse_symbol(spec), 1.0, 256)
    print(f"{spec:<30s} lower bound {lo.value:.6f}")
