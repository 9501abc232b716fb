# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Number states through an equal-split cascade
#
# A number state spreads into a multinomial superposition inside a single
# photon-number sector. Its coherence is compared against the largest value
# the sector allows and against a coherent input with the same mean.

# %%
import numpy as np

from bscoherence import analytic
from bscoherence.network import config2
from bscoherence.oracle import number_input_state, propagate
from bscoherence.coherence import l1_pure

# %%
for N in (1, 3, 5):
    ratios = [analytic.max_number_coherence(n, N) / analytic.supremum_coherence(n, N) for n in range(1, 9)]
    print(f"N={N}: max / supremum =", np.round(ratios, 4))

# %% [markdown]
# One photon always reaches the supremum; larger photon numbers fall away
# from it. Coherent inputs of the same mean do far better:

# %%
for N in (1, 3, 5):
    ratios = [analytic.max_number_coherence(n, N) / analytic.max_coherent_coherence(n, N) for n in range(1, 9)]
    print(f"N={N}: number / coherent =", np.round(ratios, 4))

# %% [markdown]
# ## Brute-force check
#
# Propagating `|4, 0, 0>` through the two-splitter chain with the Fock-space
# simulator reproduces the closed form.

# %%
out = propagate(config2(2), number_input_state(4, 3))
print("oracle:", l1_pure(out.to_pure_state()), " closed form:", analytic.max_number_coherence(4, 2))
