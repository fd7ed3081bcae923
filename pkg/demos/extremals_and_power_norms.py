# %% [markdown]
# # Extremals of x^(n-1) (1 - x^2)^alpha and the norms of z^n + conj(z)^n
#
# The weight-times-derivative profile of a monomial peaks at r_n and decays
# past it.  The closed forms below are checked against a bracketed numerical
# search, and the engine norm of z^n + conj(z)^n is compared with its formula.

# %%
import numpy as np

from hbloch import H_band_limit, H_extremals, HarmonicFunction, norm, znbar_limit, znbar_norm
from hbloch.oracles import golden_section_max

for n, a in [(2, 1.0), (10, 2.0), (200, 3.0)]:
    ex = H_extremals(n, a)
    r, m = golden_section_max(n, a)
    print(f"n={n:<4d} alpha={a:<4g} r_n={ex.r:.15f} (search {r:.15f})  max={ex.max_value:.6e}")

# %% [markdown]
# n^alpha times the band minimum approaches (2 alpha / e)^alpha at a 1/n rate.

# %%
for a in (0.5, 1.0, 2.0):
    lim = H_band_limit(a)
    errs = [abs(n ** a * H_extremals(n, a).band_min - lim) / lim for n in (10, 100, 1000, 10_000)]
    print(f"alpha={a:<4g} limit={lim:.12f} rel errors:", " ".join(f"{e:.1e}" for e in errs))

# %% [markdown]
# Grid-engine norm against the closed form, then the growth n^(alpha-1) * norm.

# %%
for a in (0.5, 1.0, 2.0):
    for n in (1, 5, 50):
        num = norm(HarmonicFunction.znbar(n), a)
        print(f"alpha={a:<4g} n={n:<3d} engine={num:.15f} closed={znbar_norm(n, a):.15f}")
    scaled = [n ** (a - 1) * znbar_norm(n, a) for n in (10, 100, 10_000)]
    print("   scaled:", np.round(scaled, 8), "limit", round(znbar_limit(a), 8))
