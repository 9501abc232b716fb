"""Beam-splitter cascades and their split vectors.

A splitter on modes ``(a, b)`` with angle ``theta`` maps creation operators as

    a_a^dag -> cos(theta) a_a^dag + sin(theta) a_b^dag
    a_b^dag -> -sin(theta) a_a^dag + cos(theta) a_b^dag

so the transmitted light stays on ``mode_a`` and the reflected light feeds
``mode_b``. The split vector ``tau`` of a cascade holds the coefficients of
``a_0^dag`` on every output mode once all splitters have acted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from .exceptions import CascadeError, CascadeParseError


@dataclass(frozen=True)
class BeamSplitter:
    mode_a: int
    mode_b: int
    theta: float

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise CascadeError(f"splitter couples mode {self.mode_a} to itself")
        if self.mode_a < 0 or self.mode_b < 0:
            raise CascadeError("mode indices must be non-negative")
        if not math.isfinite(self.theta):
            raise CascadeError(f"splitter angle must be finite, got {self.theta!r}")

    @property
    def t(self) -> float:
        return math.cos(self.theta)

    @property
    def r(self) -> float:
        return math.sin(self.theta)


@dataclass(frozen=True)
class Cascade:
    mode_count: int
    splitters: Tuple[BeamSplitter, ...] = ()
    input_mode: int = 0

    def __post_init__(self):
        object.__setattr__(self, "splitters", tuple(self.splitters))
        if self.mode_count < 1:
            raise CascadeError("a cascade needs at least one mode")
        if not 0 <= self.input_mode < self.mode_count:
            raise CascadeError(f"input mode {self.input_mode} outside 0..{self.mode_count - 1}")
        for bs in self.splitters:
            if max(bs.mode_a, bs.mode_b) >= self.mode_count:
                raise CascadeError(f"splitter {bs} addresses a mode beyond {self.mode_count - 1}")

    @property
    def N(self) -> int:
        return self.mode_count - 1

    def unreachable_modes(self):
        seen = {self.input_mode}
        for bs in self.splitters:
            if bs.mode_a in seen or bs.mode_b in seen:
                seen.update((bs.mode_a, bs.mode_b))
        return sorted(set(range(self.mode_count)) - seen)

    def relabel(self, perm) -> "Cascade":
        """Cascade with mode ``k`` renamed to ``perm[k]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.mode_count)):
            raise CascadeError("relabelling must be a permutation of the modes")
        return Cascade(
            self.mode_count,
            tuple(BeamSplitter(perm[b.mode_a], perm[b.mode_b], b.theta) for b in self.splitters),
            perm[self.input_mode],
        )


def config2_angles(N: int) -> np.ndarray:
    """Angles ``arcsin(1/sqrt(N + 2 - j))``, ``j = 1..N``, of the equal-split chain."""
    j = np.arange(1, N + 1)
    return np.arcsin(1.0 / np.sqrt(N + 2 - j))


def config2(N: int) -> Cascade:
    """Linear chain of ``N`` splitters that splits mode 0 equally over ``N + 1`` modes.

    Splitter ``j`` taps a fraction ``1/(N + 2 - j)`` of the light still on
    mode 0 into the fresh mode ``j``. ``N = 0`` gives the empty cascade.
    """
    if N < 0:
        raise CascadeError(f"splitter count must be >= 0, got {N}")
    angles = config2_angles(N)
    return Cascade(N + 1, tuple(BeamSplitter(0, j, float(th)) for j, th in enumerate(angles, start=1)))


def config1(depth: int) -> Cascade:
    """Perfect binary tree of balanced splitters over ``2**depth`` modes."""
    if int(depth) != depth or depth < 1:
        raise CascadeError(f"tree depth must be a positive integer, got {depth!r}")
    splitters = []
    for level in range(depth):
        width = 2 ** level
        splitters.extend(BeamSplitter(k, k + width, math.pi / 4) for k in range(width))
    return Cascade(2 ** depth, tuple(splitters))


def config1_for(N: int) -> Cascade:
    """Balanced tree with ``N`` splitters; ``N + 1`` must be a power of two."""
    modes = N + 1
    if N < 1 or modes & (modes - 1):
        raise CascadeError(f"a balanced tree needs N + 1 to be a power of two, got N = {N}")
    return config1(modes.bit_length() - 1)


def tau_vector(cascade: Cascade) -> np.ndarray:
    missing = cascade.unreachable_modes()
    if missing:
        raise CascadeError(f"output modes {missing} are not reachable from input mode {cascade.input_mode}")
    v = np.zeros(cascade.mode_count)
    v[cascade.input_mode] = 1.0
    for bs in cascade.splitters:
        c, s = bs.t, bs.r
        va, vb = v[bs.mode_a], v[bs.mode_b]
        v[bs.mode_a] = c * va - s * vb
        v[bs.mode_b] = s * va + c * vb
    return v


def optimal_split(N: int) -> np.ndarray:
    if N < 0:
        raise CascadeError(f"splitter count must be >= 0, got {N}")
    return np.full(N + 1, 1.0 / math.sqrt(N + 1))


# -- plain-text cascade files ---------------------------------------------


def format_cascade(cascade: Cascade) -> str:
    lines = [f"# modes: {cascade.mode_count}"]
    lines += [f"{j}: {b.mode_a} {b.mode_b} {b.theta!r}" for j, b in enumerate(cascade.splitters, start=1)]
    return "\n".join(lines) + "\n"


def parse_cascade(text: str | Iterable[str]) -> Cascade:
    """Parse ``j: mode_a mode_b theta`` lines; ``#`` starts a comment.

    A ``# modes: M`` comment fixes the mode count, otherwise it is one more
    than the largest mode index used.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    splitters = []
    modes = None
    for lineno, raw in enumerate(lines, start=1):
        body, _, comment = raw.partition("#")
        c = comment.strip()
        if c.lower().startswith("modes:"):
            try:
                modes = int(c.split(":", 1)[1])
            except ValueError:
                raise CascadeParseError(f"bad mode count {c!r}", lineno) from None
        body = body.strip()
        if not body:
            continue
        label, sep, rest = body.partition(":")
        fields = rest.split()
        if not sep or len(fields) != 3:
            raise CascadeParseError(f"expected 'j: mode_a mode_b theta', got {body!r}", lineno)
        try:
            j = int(label)
            a, b = int(fields[0]), int(fields[1])
            theta = float(fields[2])
        except ValueError:
            raise CascadeParseError(f"non-numeric field in {body!r}", lineno) from None
        if j != len(splitters) + 1:
            raise CascadeParseError(f"splitter number {j} out of sequence, expected {len(splitters) + 1}", lineno)
        try:
            splitters.append(BeamSplitter(a, b, theta))
        except CascadeError as exc:
            raise CascadeParseError(str(exc), lineno) from None
    if modes is None:
        modes = 1 + max((max(s.mode_a, s.mode_b) for s in splitters), default=0)
    try:
        return Cascade(modes, tuple(splitters))
    except CascadeError as exc:
        raise CascadeParseError(str(exc), len(lines)) from None
