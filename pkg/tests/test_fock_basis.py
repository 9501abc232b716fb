import itertools

import pytest
from hypothesis import given, strategies as st

from bscoherence.fock_basis import dimension, enumerate_compositions


def brute_force(n, N):
    return {m for m in itertools.product(range(n + 1), repeat=N + 1) if sum(m) == n}


def test_single_photon_two_modes():
    assert enumerate_compositions(1, 1).compositions == ((1, 0), (0, 1))


def test_vacuum_sector():
    assert enumerate_compositions(0, 3).compositions == ((0, 0, 0, 0),)


def test_two_photons_two_modes():
    basis = enumerate_compositions(2, 1)
    assert basis.compositions == ((2, 0), (1, 1), (0, 2))
    assert len(basis) == 3


@pytest.mark.parametrize("n, N, D", [(1, 0, 1), (1, 4, 5), (2, 1, 3), (3, 2, 10)])
def test_dimension_examples(n, N, D):
    assert dimension(n, N) == D


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("N", range(6))
def test_enumeration_matches_brute_force(n, N):
    basis = enumerate_compositions(n, N)
    assert len(basis) == dimension(n, N)
    assert set(basis) == brute_force(n, N)
    assert len(set(basis)) == len(basis)


@pytest.mark.parametrize("n, N", [(4, 3), (6, 2), (0, 5)])
def test_colex_order(n, N):
    comps = enumerate_compositions(n, N).compositions
    keys = [c[::-1] for c in comps]
    assert keys == sorted(keys)


@given(st.integers(1, 30), st.integers(1, 20))
def test_pascal_identity(n, N):
    assert dimension(n, N) == dimension(n - 1, N) + dimension(n, N - 1)


@given(st.integers(0, 7), st.integers(0, 4))
def test_index_round_trip(n, N):
    basis = enumerate_compositions(n, N)
    for k, comp in enumerate(basis):
        assert basis.position(comp) == k
        assert basis[k] == comp


def test_dimension_overflow_is_reported():
    with pytest.raises(OverflowError):
        dimension(200, 100)


def test_negative_sizes_rejected():
    with pytest.raises(ValueError):
        enumerate_compositions(-1, 2)
    with pytest.raises(ValueError):
        dimension(2, -1)
