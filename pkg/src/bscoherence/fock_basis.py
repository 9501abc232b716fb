"""Photon-number basis of a single total-photon sector.

A multimode Fock state with ``n`` photons spread over ``N + 1`` modes is
labelled by a *composition*: a tuple ``(m_0, ..., m_N)`` of non-negative
integers summing to ``n``. Compositions are plain tuples throughout the
package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, Tuple

Composition = Tuple[int, ...]

#: Largest dimension accepted before :func:`dimension` reports overflow.
MAX_DIMENSION = 2**63 - 1


def _check_sizes(n: int, N: int) -> None:
    if n < 0 or N < 0:
        raise ValueError(f"need n >= 0 and N >= 0, got n={n}, N={N}")


def _colex(n: int, modes: int) -> Iterator[Composition]:
    # The last mode varies slowest, so reversed tuples come out in
    # ascending lexicographic order.
    if modes == 1:
        yield (n,)
        return
    for last in range(n + 1):
        for head in _colex(n - last, modes - 1):
            yield head + (last,)


@dataclass(frozen=True)
class SectorBasis:
    """All compositions of ``n`` photons over ``N + 1`` modes, colex ordered."""

    n: int
    modes: int
    compositions: Tuple[Composition, ...]
    index: Dict[Composition, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.compositions)

    def __iter__(self):
        return iter(self.compositions)

    def __getitem__(self, k: int) -> Composition:
        return self.compositions[k]

    def position(self, comp: Composition) -> int:
        return self.index[tuple(comp)]


@lru_cache(maxsize=256)
def enumerate_compositions(n: int, N: int) -> SectorBasis:
    """Enumerate the ``n``-photon sector of ``N + 1`` modes.

    >>> enumerate_compositions(2, 1).compositions
    ((2, 0), (1, 1), (0, 2))
    """
    _check_sizes(n, N)
    comps = tuple(_colex(n, N + 1))
    return SectorBasis(n, N + 1, comps, {c: k for k, c in enumerate(comps)})


def dimension(n: int, N: int) -> int:
    """Number of ``n``-photon states in ``N + 1`` modes, ``binomial(n + N, N)``.

    Raises :class:`OverflowError` when the count does not fit a signed
    64-bit index.
    """
    _check_sizes(n, N)
    d = math.comb(n + N, N)
    if d > MAX_DIMENSION:
        raise OverflowError(f"dimension({n}, {N}) = {d} exceeds the 64-bit index range")
    return d
