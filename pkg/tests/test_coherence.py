import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bscoherence.analytic import PhotonDistribution, number_output_amplitudes, sector_mixture
from bscoherence.coherence import (
    DensityMatrix,
    PureFockState,
    SectorMixture,
    assemble,
    l1_density,
    l1_pure,
    l1_sector_mixture,
    mix_density,
    projector,
)
from bscoherence.exceptions import InvalidStateError
from bscoherence.fock_basis import enumerate_compositions

S2 = 1 / math.sqrt(2)


def random_state(rng, n, N):
    comps = enumerate_compositions(n, N).compositions
    v = rng.standard_normal(len(comps)) + 1j * rng.standard_normal(len(comps))
    v /= np.linalg.norm(v)
    return PureFockState(dict(zip(comps, v)))


def test_basis_state_is_incoherent():
    assert l1_pure(PureFockState({(3,): 1.0})) == 0.0


@pytest.mark.parametrize("n, N", [(2, 1), (3, 2), (4, 3)])
def test_uniform_state_reaches_dimension_minus_one(n, N):
    comps = enumerate_compositions(n, N).compositions
    D = len(comps)
    phases = np.exp(1j * np.arange(D))
    st_ = PureFockState({c: p / math.sqrt(D) for c, p in zip(comps, phases)})
    assert l1_pure(st_) == pytest.approx(D - 1, abs=1e-12)


def test_balanced_single_photon():
    assert l1_pure(PureFockState({(1, 0): S2, (0, 1): S2})) == pytest.approx(1.0, abs=1e-15)


def test_unnormalized_state_rejected():
    with pytest.raises(InvalidStateError):
        l1_pure(PureFockState({(1, 0): 1.0, (0, 1): 1.0}))


def test_large_truncation_deficit_rejected():
    with pytest.raises(InvalidStateError):
        l1_pure(PureFockState({(0,): math.sqrt(1 - 1e-6)}, tail_mass=1e-6))


def test_diagonal_density_is_incoherent():
    rho = DensityMatrix([(2, 0), (1, 1), (0, 2)], np.diag([0.2, 0.5, 0.3]))
    assert l1_density(rho) == 0.0


def test_equal_mixture_by_hand():
    # 0.5 |10><10| + 0.5 |+><+| = [[3/4, 1/4], [1/4, 1/4]] -> 3/2 - 1
    a = projector(PureFockState({(1, 0): 1.0}))
    b = projector(PureFockState({(1, 0): S2, (0, 1): S2}))
    rho = mix_density([0.5, 0.5], [a, b])
    np.testing.assert_allclose(rho.matrix, [[0.75, 0.25], [0.25, 0.25]], atol=1e-15)
    assert l1_density(rho, psd=True) == pytest.approx(0.5, abs=1e-15)


def test_non_hermitian_rejected():
    with pytest.raises(InvalidStateError):
        l1_density(DensityMatrix([(1, 0), (0, 1)], [[0.5, 0.3], [0.1, 0.5]]))


def test_bad_trace_rejected():
    with pytest.raises(InvalidStateError):
        l1_density(DensityMatrix([(1, 0), (0, 1)], [[0.6, 0], [0, 0.6]]))


def test_psd_check_only_on_request():
    rho = DensityMatrix([(1, 0), (0, 1)], [[0.5, 0.9], [0.9, 0.5]])
    assert l1_density(rho) == pytest.approx(1.8)
    with pytest.raises(InvalidStateError):
        l1_density(rho, psd=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_pure_matches_projector(n, N, seed):
    state = random_state(np.random.default_rng(seed), n, N)
    assert l1_pure(state) == pytest.approx(l1_density(projector(state)), abs=1e-10)
    assert 0 <= l1_pure(state) <= len(state.amplitudes) - 1 + 1e-10


def test_single_sector_mixture():
    s = number_output_amplitudes(3, [S2, S2])
    mix = SectorMixture({3: 1.0}, {3: s})
    assert l1_sector_mixture(mix) == pytest.approx(l1_pure(s), abs=1e-14)


def test_basis_state_mixture_is_incoherent():
    mix = SectorMixture({0: 0.25, 1: 0.75}, {0: PureFockState({(0, 0): 1.0}), 1: PureFockState({(0, 1): 1.0})})
    assert l1_sector_mixture(mix) == 0.0


def test_sector_support_is_checked():
    mix = SectorMixture({1: 1.0}, {1: PureFockState({(2, 0): 1.0})})
    with pytest.raises(InvalidStateError):
        l1_sector_mixture(mix)


@pytest.mark.parametrize("nbar", [0.3, 1.0, 2.0])
@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_sector_mixture_matches_assembled_density(nbar, N):
    # cutoff 5 with the truncated weights renormalized, so the assembled
    # matrix has unit trace
    dist = PhotonDistribution("poisson", nbar, tail_epsilon=0.2, cutoff=5)
    w = dist.weights()
    w /= w.sum()
    tau = np.full(N + 1, 1 / math.sqrt(N + 1))
    mix = SectorMixture({n: float(p) for n, p in enumerate(w)},
                        {n: number_output_amplitudes(n, tau) for n in range(6)})
    assert l1_sector_mixture(mix) == pytest.approx(l1_density(assemble(mix)), abs=1e-10)


def test_poisson_mixture_with_automatic_cutoff():
    mix = sector_mixture(PhotonDistribution("poisson", 1.0), 1)
    assert l1_sector_mixture(mix) == pytest.approx(l1_density(assemble(mix)), abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_convexity(seed, k):
    rng = np.random.default_rng(seed)
    rhos = [projector(random_state(rng, int(rng.integers(0, 3)), 1)) for _ in range(k)]
    p = rng.dirichlet(np.ones(k))
    mixed = l1_density(mix_density(p, rhos))
    assert mixed <= sum(pi * l1_density(r) for pi, r in zip(p, rhos)) + 1e-10
