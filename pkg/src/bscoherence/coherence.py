"""l1-norm of coherence in the photon-number basis.

For a density matrix the l1 coherence is the sum of the moduli of all
off-diagonal elements; for a pure state it reduces to ``(sum |c|)**2 - 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Mapping, Sequence

import numpy as np

from .exceptions import InvalidStateError
from .fock_basis import Composition

NORM_TOL = 1e-10
TRUNCATION_TOL = 1e-9


def _abs_sum(values) -> float:
    mags = sorted((abs(v) for v in values), reverse=True)
    return math.fsum(mags)


@dataclass(frozen=True)
class PureFockState:
    """Sparse pure state keyed by composition.

    ``tail_mass`` records the probability left out by truncating an
    infinite-dimensional state; the stored amplitudes then carry a squared
    norm of ``1 - tail_mass``.
    """

    amplitudes: Mapping[Composition, complex]
    tail_mass: float = 0.0

    @property
    def modes(self) -> int:
        return len(next(iter(self.amplitudes)))

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def amplitude(self, comp: Composition) -> complex:
        return self.amplitudes.get(tuple(comp), 0.0)

    def check(self) -> None:
        if not self.amplitudes:
            raise InvalidStateError("state has no amplitudes")
        if self.tail_mass < 0 or self.tail_mass > TRUNCATION_TOL:
            raise InvalidStateError(f"truncation deficit {self.tail_mass:.3g} exceeds {TRUNCATION_TOL}")
        deficit = abs(self.norm_squared() + self.tail_mass - 1.0)
        if deficit > NORM_TOL:
            raise InvalidStateError(f"state norm off by {deficit:.3g}")


@dataclass(frozen=True)
class DensityMatrix:
    labels: Sequence[Composition]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != len(self.labels):
            raise InvalidStateError(f"matrix shape {m.shape} does not match {len(self.labels)} labels")
        object.__setattr__(self, "matrix", m)

    def check(self, psd: bool = False) -> None:
        m = self.matrix
        herm = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if herm > NORM_TOL:
            raise InvalidStateError(f"matrix is not Hermitian (deviation {herm:.3g})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise InvalidStateError(f"trace is {tr!r}, expected 1")
        if psd:
            lo = np.linalg.eigvalsh(m).min()
            if lo < -1e-9:
                raise InvalidStateError(f"matrix has negative eigenvalue {lo:.3g}")


@dataclass(frozen=True)
class SectorMixture:
    """Block-diagonal mixture ``sum_n p_n |psi_n><psi_n|``, one pure state per sector."""

    weights: Mapping[int, float]
    sector_states: Mapping[int, PureFockState]
    tail_mass: float = 0.0

    def check(self) -> None:
        if set(self.weights) != set(self.sector_states):
            raise InvalidStateError("weights and sector states cover different sectors")
        total = math.fsum(self.weights.values())
        if abs(total + self.tail_mass - 1.0) > NORM_TOL or self.tail_mass > TRUNCATION_TOL:
            raise InvalidStateError(f"sector weights sum to {total!r} with tail {self.tail_mass!r}")
        for n, st in self.sector_states.items():
            if any(sum(c) != n for c in st.amplitudes):
                raise InvalidStateError(f"sector {n} state has support outside its sector")
            st.check()


def l1_pure(state: PureFockState) -> float:
    """l1 coherence ``(sum |c|)**2 - 1`` of a pure state."""
    state.check()
    s = _abs_sum(state.amplitudes.values())
    return max(s * s - 1.0, 0.0)


def l1_density(rho: DensityMatrix, psd: bool = False) -> float:
    """l1 coherence ``sum |rho_ij| - 1``.

    Set ``psd`` to also verify positive semidefiniteness (costs an
    eigendecomposition).
    """
    rho.check(psd=psd)
    total = _abs_sum(rho.matrix.ravel())
    return max(total - 1.0, 0.0)


def l1_sector_mixture(mix: SectorMixture) -> float:
    mix.check()
    terms = [p * _abs_sum(mix.sector_states[n].amplitudes.values()) ** 2 for n, p in mix.weights.items()]
    return max(math.fsum(terms) - math.fsum(mix.weights.values()), 0.0)


def projector(state: PureFockState) -> DensityMatrix:
    labels = list(state.amplitudes)
    v = np.array([state.amplitudes[c] for c in labels], dtype=complex)
    return DensityMatrix(labels, np.outer(v, v.conj()))


def assemble(mix: SectorMixture) -> DensityMatrix:
    """Dense block-diagonal density matrix of a sector mixture."""
    labels = []
    blocks = []
    for n in sorted(mix.weights):
        st = mix.sector_states[n]
        comps = list(st.amplitudes)
        v = np.array([st.amplitudes[c] for c in comps], dtype=complex)
        labels.extend(comps)
        blocks.append(mix.weights[n] * np.outer(v, v.conj()))
    dim = len(labels)
    m = np.zeros((dim, dim), dtype=complex)
    k = 0
    for b in blocks:
        d = b.shape[0]
        m[k:k + d, k:k + d] = b
        k += d
    return DensityMatrix(labels, m)


def mix_density(weights: Sequence[float], rhos: Sequence[DensityMatrix]) -> DensityMatrix:
    """Convex combination of density matrices on the union of their labels."""
    labels: list = []
    pos: Dict[Composition, int] = {}
    for r in rhos:
        for c in r.labels:
            if c not in pos:
                pos[c] = len(labels)
                labels.append(c)
    m = np.zeros((len(labels), len(labels)), dtype=complex)
    for w, r in zip(weights, rhos):
        idx = [pos[c] for c in r.labels]
        m[np.ix_(idx, idx)] += w * r.matrix
    return DensityMatrix(labels, m)
