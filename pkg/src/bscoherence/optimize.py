"""Numerical checks that equal splitting maximizes the output coherence."""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import analytic
from .exceptions import DomainError

TIE_RTOL = 1e-12
KINDS = ("coherent", "number")


def _objective(kind, amount):
    if kind == "coherent":
        return lambda tau: analytic.product_coherence(amount * np.asarray(tau) ** 2)
    if kind == "number":
        n = int(amount)
        if n != amount or n < 0:
            raise DomainError(f"photon number must be a non-negative integer, got {amount!r}")
        return lambda tau: analytic.number_coherence(n, tau)
    raise DomainError(f"input kind must be one of {KINDS}, got {kind!r}")


@dataclass
class SweepResult:
    """Objective values over a one-parameter grid of splitter angles."""

    description: str
    thetas: np.ndarray
    values: np.ndarray
    argmax: int
    elapsed: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def theta_best(self) -> float:
        return float(self.thetas[self.argmax])

    @property
    def value_best(self) -> float:
        return float(self.values[self.argmax])

    def to_csv(self, fh=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "coherence"])
        for t, v in zip(self.thetas, self.values):
            w.writerow([f"{t:.12g}", f"{v:.12g}"])
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def grid_search_single_splitter(kind: str, amount: float, resolution: int = 181) -> SweepResult:
    """Sweep one splitter angle over ``[0, pi/2]`` for a coherent or number-state input.

    ``amount`` is the mean photon number (coherent) or photon number
    (number). Exact ties resolve to the smallest angle.
    """
    if resolution < 3 or resolution % 2 == 0:
        raise DomainError(f"resolution must be odd and >= 3, got {resolution}")
    f = _objective(kind, amount)
    t0 = time.perf_counter()
    thetas = np.linspace(0.0, math.pi / 2, resolution)
    values = np.array([f((math.cos(t), math.sin(t))) for t in thetas])
    top = values.max()
    best = int(np.flatnonzero(values >= top - TIE_RTOL * max(abs(top), 1.0))[0])
    return SweepResult(f"{kind}({amount:g}) single splitter", thetas, values, best,
                       time.perf_counter() - t0, {"kind": kind, "amount": amount, "resolution": resolution})


@dataclass
class PerturbationReport:
    passed: bool
    worst_violation: float
    trials: int
    baseline: float

    def __bool__(self):
        return self.passed


def perturbation_test(kind: str, amount: float, N: int, trials: int = 100, delta: float = 0.05,
                      seed: Optional[int] = 0, tol: float = 1e-10) -> PerturbationReport:
    """Perturb the equal split by random tangent steps and check coherence never rises.

    Each trial moves the uniform split vector a distance ``delta`` along a
    random direction orthogonal to it, then renormalizes.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    if N < 0:
        raise DomainError(f"splitter count must be >= 0, got {N}")
    if delta < 0 or (N > 0 and delta >= 1.0 / (N + 1)):
        raise DomainError(f"delta must lie in [0, 1/(N+1)), got {delta}")
    f = _objective(kind, amount)
    u = np.full(N + 1, 1.0 / math.sqrt(N + 1))
    base = f(u)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(trials):
        if N == 0 or delta == 0:
            worst = max(worst, 0.0)
            continue
        d = rng.standard_normal(N + 1)
        d -= d.dot(u) * u
        d /= np.linalg.norm(d)
        tau = u + delta * d
        tau /= np.linalg.norm(tau)
        worst = max(worst, f(tau) - base)
    return PerturbationReport(worst <= tol, float(worst), trials, base)
