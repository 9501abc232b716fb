"""Brute-force Fock-space propagation through beam-splitter cascades.

States are stored as one dense amplitude vector per total-photon sector.
Each splitter acts on a sector through exact two-mode matrix elements
obtained by expanding the rotated creation-operator monomials. Nothing in
here calls the closed-form routines of :mod:`bscoherence.analytic`; the
module exists to check them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping

import numpy as np
from scipy.stats import poisson

from .coherence import PureFockState
from .exceptions import CascadeError, DomainError, TruncationError
from .fock_basis import Composition, enumerate_compositions
from .network import BeamSplitter, Cascade

DEFAULT_MAX_CUTOFF = 60


@dataclass(frozen=True)
class TruncatedState:
    """Pure state over sectors ``0..cutoff`` of ``modes`` modes.

    ``sectors[n]`` is indexed like ``enumerate_compositions(n, modes - 1)``.
    ``tail_mass`` is the probability of the omitted sectors and ``tail_l1``
    a certified upper bound on the sum of their amplitude moduli. Passive
    cascades keep both unchanged, since they act inside each sector.
    """

    modes: int
    sectors: Mapping[int, np.ndarray]
    tail_mass: float = 0.0
    tail_l1: float = 0.0

    @property
    def cutoff(self) -> int:
        return max(self.sectors, default=0)

    def norm_squared(self) -> float:
        return math.fsum(float(np.vdot(v, v).real) for v in self.sectors.values())

    def amplitudes(self) -> Dict[Composition, complex]:
        out = {}
        for n in sorted(self.sectors):
            for comp, a in zip(enumerate_compositions(n, self.modes - 1), self.sectors[n]):
                out[comp] = complex(a)
        return out

    def to_pure_state(self) -> PureFockState:
        return PureFockState(self.amplitudes(), tail_mass=self.tail_mass)

    def amplitude(self, comp) -> complex:
        comp = tuple(comp)
        n = sum(comp)
        if n not in self.sectors:
            return 0.0
        return complex(self.sectors[n][enumerate_compositions(n, self.modes - 1).position(comp)])


def from_amplitudes(amps: Mapping[Composition, complex], tail_mass=0.0, tail_l1=0.0) -> TruncatedState:
    comps = list(amps)
    modes = len(comps[0])
    sectors: Dict[int, np.ndarray] = {}
    for c in comps:
        n = sum(c)
        if n not in sectors:
            sectors[n] = np.zeros(len(enumerate_compositions(n, modes - 1)), dtype=complex)
        sectors[n][enumerate_compositions(n, modes - 1).position(c)] += amps[c]
    return TruncatedState(modes, sectors, tail_mass, tail_l1)


def number_input_state(n: int, modes: int, input_mode: int = 0) -> TruncatedState:
    comp = [0] * modes
    comp[input_mode] = n
    return from_amplitudes({tuple(comp): 1.0})


def _log_sqrt_poisson(n, nbar):
    return 0.5 * (n * math.log(nbar) - nbar - math.lgamma(n + 1))


def _coherent_tail(nbar, N, K):
    # sum_{n > K} sqrt(p_n D(n, N)) by Cauchy-Schwarz inside each sector,
    # with a geometric remainder once term ratios fall below 1/2
    acc = []
    n = K + 1
    while True:
        t = math.exp(_log_sqrt_poisson(n, nbar) + 0.5 * math.log(math.comb(n + N, N)))
        r = math.sqrt(nbar / (n + 1) * (n + 1 + N) / (n + 1))
        acc.append(t)
        if r < 0.5:
            acc.append(t * r / (1 - r))
            return math.fsum(acc)
        n += 1


def coherent_input_state(nbar: float, modes: int, tail_epsilon: float = 1e-12, *, cutoff=None,
                         bound_target: float = 1e-9, max_cutoff: int = DEFAULT_MAX_CUTOFF,
                         input_mode: int = 0) -> TruncatedState:
    """Truncated ``|alpha, 0, ..., 0>`` with ``|alpha|**2 = nbar`` (``alpha`` real).

    Without an explicit ``cutoff``, the smallest one is used for which the
    omitted probability is below ``tail_epsilon`` and the certified error
    on the l1 coherence of any passive output is below ``bound_target``.
    """
    if not math.isfinite(nbar) or nbar < 0:
        raise DomainError(f"mean photon number must be finite and >= 0, got {nbar!r}")
    N = modes - 1
    if nbar == 0:
        return number_input_state(0, modes, input_mode)

    amps = np.array([math.exp(_log_sqrt_poisson(n, nbar)) for n in range(max_cutoff + 1)])
    dims = np.sqrt([float(math.comb(n + N, N)) for n in range(max_cutoff + 1)])

    def tail_mass(K):
        return max(1.0 - math.fsum(amps[:K + 1] ** 2), 0.0)

    def l1_bound(K):
        T = _coherent_tail(nbar, N, K)
        S = math.fsum(amps[:K + 1] * dims[:K + 1]) + T
        return 2 * S * T + T * T

    def ok(K):
        return tail_mass(K) < tail_epsilon and l1_bound(K) < bound_target

    if cutoff is None:
        K = next((k for k in range(max_cutoff + 1) if ok(k)), None)
        if K is None:
            need = max_cutoff + 1
            while not (float(poisson.sf(need, nbar)) < tail_epsilon and l1_bound(need) < bound_target):
                need += 1
            raise TruncationError(f"coherent input with nbar={nbar} needs cutoff {need} > {max_cutoff}",
                                  required_cutoff=need)
    else:
        K = int(cutoff)
        if K > max_cutoff:
            raise TruncationError(f"cutoff {K} exceeds the configured maximum {max_cutoff}")
        if tail_mass(K) >= tail_epsilon:
            raise TruncationError(f"cutoff {K} leaves tail mass {tail_mass(K):.3g} >= {tail_epsilon:g}")
    sectors = {}
    for n in range(K + 1):
        basis = enumerate_compositions(n, N)
        v = np.zeros(len(basis), dtype=complex)
        comp = [0] * modes
        comp[input_mode] = n
        v[basis.position(tuple(comp))] = amps[n]
        sectors[n] = v
    return TruncatedState(modes, sectors, tail_mass(K), _coherent_tail(nbar, N, K))


@lru_cache(maxsize=4096)
def splitter_block(k: int, theta: float) -> np.ndarray:
    """Two-mode unitary on the ``k``-photon block, ``U[p, q] = <p, k-p| B(theta) |q, k-q>``."""
    c, s = math.cos(theta), math.sin(theta)
    U = np.zeros((k + 1, k + 1))
    lf = [math.lgamma(j + 1) for j in range(k + 1)]
    for q in range(k + 1):
        mb = k - q
        # (c a^dag + s b^dag)^q (-s a^dag + c b^dag)^mb / sqrt(q! mb!)
        for i in range(q + 1):
            lb_i = lf[q] - lf[i] - lf[q - i]
            w_i = c ** i * s ** (q - i)
            if w_i == 0.0:
                continue
            for j in range(mb + 1):
                w = w_i * (-s) ** j * c ** (mb - j)
                if w == 0.0:
                    continue
                p = i + j
                lb = lb_i + lf[mb] - lf[j] - lf[mb - j]
                lnorm = 0.5 * (lf[p] + lf[k - p] - lf[q] - lf[mb])
                U[p, q] += w * math.exp(lb + lnorm)
    U.setflags(write=False)
    return U


@lru_cache(maxsize=1024)
def _pair_layout(n: int, modes: int, a: int, b: int):
    # for each k = m_a + m_b: index array (rest configurations, k + 1) with
    # columns ordered by m_a = 0..k
    basis = enumerate_compositions(n, modes - 1)
    groups: Dict[int, Dict[tuple, list]] = {}
    for comp in basis:
        k = comp[a] + comp[b]
        rest = tuple(x for i, x in enumerate(comp) if i not in (a, b))
        row = groups.setdefault(k, {}).setdefault(rest, [None] * (k + 1))
        row[comp[a]] = basis.position(comp)
    layout = []
    for k in sorted(groups):
        idx = np.array([groups[k][r] for r in sorted(groups[k])], dtype=np.intp)
        idx.setflags(write=False)
        layout.append((k, idx))
    return tuple(layout)


def _apply_to_sector(vec: np.ndarray, n: int, modes: int, bs: BeamSplitter) -> np.ndarray:
    out = np.empty_like(vec)
    for k, idx in _pair_layout(n, modes, bs.mode_a, bs.mode_b):
        U = splitter_block(k, bs.theta)
        out[idx] = vec[idx] @ U.T
    return out


def apply_beamsplitter(state: TruncatedState, bs: BeamSplitter) -> TruncatedState:
    if max(bs.mode_a, bs.mode_b) >= state.modes:
        raise CascadeError(f"splitter {bs} addresses a mode beyond {state.modes - 1}")
    sectors = {n: _apply_to_sector(v, n, state.modes, bs) for n, v in state.sectors.items()}
    return TruncatedState(state.modes, sectors, state.tail_mass, state.tail_l1)


def propagate(cascade: Cascade, state: TruncatedState) -> TruncatedState:
    if cascade.mode_count != state.modes:
        raise CascadeError(f"cascade has {cascade.mode_count} modes, state has {state.modes}")
    for bs in cascade.splitters:
        state = apply_beamsplitter(state, bs)
    return state


def truncated_l1(state: TruncatedState):
    """l1 coherence of a truncated pure state with its certified error.

    Returns ``(value, bound)``: the exact coherence of the untruncated state
    lies in ``[value - 1e-15, value + bound]``.
    """
    mags = np.concatenate([np.abs(v) for v in state.sectors.values()])
    s = math.fsum(np.sort(mags)[::-1])
    T = state.tail_l1
    return max(s * s - 1.0, 0.0), 2 * s * T + T * T
