# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Phase-averaged and thermal inputs
#
# Diagonal inputs give block-diagonal outputs, one block per photon number,
# and the coherence is the photon-number average of the number-state
# values.

# %%
from bscoherence import analytic
from bscoherence.analytic import PhotonDistribution

# %% [markdown]
# ## Phase-averaged coherent light
#
# The block-diagonal output drops the coherences between sectors that the
# pure coherent output keeps, so the two values differ.

# %%
for nbar in (0.5, 1.0, 2.0, 4.0):
    avg, pure, diff = analytic.phase_averaged_vs_pure(nbar, 1)
    print(f"nbar={nbar}: averaged={avg:.4f}  pure={pure:.4f}  difference={diff:.4f}")

# %% [markdown]
# ## Thermal light, large-mean formula
#
# The closed form and an independent Gauss-Laguerre average agree.

# %%
for N in range(5):
    closed = analytic.thermal_coherence_approx(20.0, N)
    quad = analytic.thermal_coherence_approx_check(20.0, N)
    print(f"N={N}: closed={closed:.6g}  quadrature={quad:.6g}")

# %%
dist = PhotonDistribution("thermal", 5.0)
print("sector average, N=2:", analytic.mixed_coherence(dist, 2), "cutoff", dist.cutoff)
