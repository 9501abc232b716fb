# ---
# jupyter:
#   jupytext:
#     formats: py:percent
# ---

# %% [markdown]
# # Building cascades
#
# Two layouts reach the equal split: a balanced binary tree, and a graded
# chain whose splitter `j` taps `1/(N + 2 - j)` of the remaining light.

# %%
import math

import numpy as np

from bscoherence.network import config1, config2, format_cascade, parse_cascade, tau_vector
from bscoherence.optimize import grid_search_single_splitter, perturbation_test

# %%
print(format_cascade(config2(3)))
print("chain tau:", tau_vector(config2(3)))
print("tree tau: ", tau_vector(config1(2)))

# %% [markdown]
# Custom layouts round-trip through the plain-text format:

# %%
text = "# modes: 3\n1: 0 2 0.4\n2: 0 1 1.1\n"
c = parse_cascade(text)
tau = tau_vector(c)
print(tau, "norm", np.linalg.norm(tau))

# %% [markdown]
# ## Is the equal split really best?

# %%
res = grid_search_single_splitter("coherent", 3.0, 181)
print("argmax theta / pi =", res.theta_best / math.pi)
print(perturbation_test("number", 5, 3, trials=200, delta=0.1))
