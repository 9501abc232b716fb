# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Coherent light through beam-splitter cascades
#
# A coherent state stays a product of coherent states after any lossless
# cascade, so the output coherence is a product of single-mode factors.
# Spreading the photons equally over all outputs gives the largest value.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from bscoherence import analytic, figures

# %% [markdown]
# ## Single mode: exact series against the Gaussian approximation

# %%
cols, rows = figures.coherent_single(nbar_max=20, step=0.5)
data = np.array(rows)
for nbar, exact, approx in data[::8]:
    print(f"nbar={nbar:5.1f}  exact={exact:9.4f}  approx={approx:9.4f}")

fig, ax = plt.subplots(figsize=(6, 3))
ax.plot(data[:, 0], data[:, 1], label="series")
ax.plot(data[:, 0], data[:, 2], label="Gaussian approx.")
ax.set_xlabel("mean photon number")
ax.set_ylabel("coherence")
ax.legend()
fig.savefig("coherent_single.png", dpi=120)

# %% [markdown]
# ## Gain from splitting
#
# Ratio of the equal-split coherence to the unsplit one, over integer mean
# photon numbers and splitter counts.

# %%
cols, rows = figures.coherent_gain(nbar_max=10, N_max=4)
print(",".join(cols))
for r in rows:
    print(",".join(f"{v:.4g}" for v in r))

# %% [markdown]
# ## Unequal splits do worse

# %%
total = 6.0
for w in (0.5, 0.6, 0.75, 0.9):
    print(f"split {w:.2f}/{1 - w:.2f}: {analytic.product_coherence([total * w, total * (1 - w)]):.4f}")
