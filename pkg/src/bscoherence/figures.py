"""Data grids behind the coherence curves and surfaces.

Each builder returns ``(columns, rows)`` with rows as tuples of numbers,
in a fixed order so repeated runs emit identical output.
"""
from __future__ import annotations

import numpy as np

from . import analytic

FIGURE_IDS = (1, 2, 5, 6, 7)


def coherent_single(nbar_max=20.0, step=0.25):
    """Exact coherence of a single coherent state against its Gaussian approximation."""
    nbars = step * np.arange(1, int(round(nbar_max / step)) + 1)
    rows = [(x, analytic.coherent_coherence_single(x), analytic.gaussian_approx_single(x)) for x in nbars]
    return ["nbar", "exact", "approx"], rows


def coherent_gain(nbar_max=20, N_max=6):
    """Gain ``C_max(nbar, N) / C_max(nbar, 0)`` over integer ``nbar`` and ``N``."""
    Ns = range(N_max + 1)
    rows = []
    for nb in range(1, int(nbar_max) + 1):
        ref = analytic.max_coherent_coherence(nb, 0)
        rows.append((nb,) + tuple(analytic.max_coherent_coherence(nb, N) / ref for N in Ns))
    return ["nbar"] + [f"N{N}" for N in Ns], rows


def number_max(n_max=20, Ns=(1, 2)):
    rows = [(n,) + tuple(analytic.max_number_coherence(n, N) for N in Ns) for n in range(n_max + 1)]
    return ["n"] + [f"N{N}" for N in Ns], rows


def number_vs_supremum(n_max=20, Ns=(1, 3, 5)):
    rows = [(n,) + tuple(analytic.max_number_coherence(n, N) / analytic.supremum_coherence(n, N) for N in Ns)
            for n in range(1, n_max + 1)]
    return ["n"] + [f"N{N}" for N in Ns], rows


def number_vs_coherent(n_max=20, Ns=(1, 3, 5)):
    rows = [(n,) + tuple(analytic.max_number_coherence(n, N) / analytic.max_coherent_coherence(n, N) for N in Ns)
            for n in range(1, n_max + 1)]
    return ["n"] + [f"N{N}" for N in Ns], rows


def figure_data(fig_id: int, *, nbar_max=None, n_max=None, N_max=None, step=None):
    if fig_id == 1:
        return coherent_single(nbar_max or 20.0, step or 0.25)
    if fig_id == 2:
        return coherent_gain(nbar_max or 20, 6 if N_max is None else N_max)
    if fig_id == 5:
        return number_max(n_max or 20)
    if fig_id == 6:
        return number_vs_supremum(n_max or 20)
    if fig_id == 7:
        return number_vs_coherent(n_max or 20)
    raise ValueError(f"unknown figure {fig_id!r}; valid ids are {', '.join(map(str, FIGURE_IDS))}")
