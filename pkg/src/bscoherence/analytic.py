"""Closed-form coherence of beam-splitter cascade outputs.

Coherent inputs leave the cascade as a product of coherent states, so the
output coherence factorizes over modes. Number-state inputs leave as
multinomial superpositions inside one photon-number sector, and diagonal
mixtures of number states give the photon-number average of the
number-state coherences.

Every factorial and Poisson weight is handled in log space; values are
exponentiated only when accumulated.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaln, roots_genlaguerre
from scipy.stats import poisson

from .coherence import PureFockState
from .exceptions import DomainError, TruncationError
from .fock_basis import dimension, enumerate_compositions

DEFAULT_TAIL_EPSILON = 1e-12
TAU_TOL = 1e-12


def _check_mean(nbar, strict=False):
    if not math.isfinite(nbar):
        raise DomainError(f"mean photon number must be finite, got {nbar!r}")
    if nbar < 0 or (strict and nbar == 0):
        raise DomainError(f"mean photon number must be {'>' if strict else '>='} 0, got {nbar!r}")


def _check_tau(tau) -> np.ndarray:
    t = np.asarray(tau, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise DomainError("split vector must be a non-empty 1-d sequence")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("split vector entries must be finite and non-negative")
    if abs(math.fsum(t * t) - 1.0) > TAU_TOL:
        raise DomainError(f"split vector is not unit norm (sum of squares {math.fsum(t * t)!r})")
    return t


def _tail_sum(term, ratio, start, stop=1_000_000):
    """Upper bound on ``sum_{k >= start} term(k)``.

    ``ratio(k)`` must bound ``term(k + 1) / term(k)`` and be non-increasing
    in ``k``. Once it drops below one the rest is bounded geometrically.
    """
    acc = []
    for k in range(start, stop):
        t = term(k)
        r = ratio(k)
        if r < 1.0:
            rest = t * r / (1.0 - r)
            if r < 0.5 or rest <= 1e-3 * math.fsum(acc + [t]):
                acc.append(t + rest)
                return math.fsum(acc)
        acc.append(t)
    raise TruncationError("tail bound did not converge")


# ---------------------------------------------------------------------------
# Photon-number distributions


@dataclass(frozen=True)
class PhotonDistribution:
    """Photon-number distribution of a diagonal single-mode state.

    ``kind`` is ``"poisson"`` (phase-averaged coherent), ``"thermal"`` or
    ``"point"`` (number state ``|mean>``). ``cutoff`` defaults to the
    smallest photon number whose tail mass is below ``tail_epsilon``.
    """

    kind: str
    mean: float
    tail_epsilon: float = DEFAULT_TAIL_EPSILON
    cutoff: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("poisson", "thermal", "point"):
            raise DomainError(f"unknown distribution kind {self.kind!r}")
        _check_mean(self.mean)
        if self.kind == "point" and self.mean != int(self.mean):
            raise DomainError("point distribution needs an integer photon number")
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", self._auto_cutoff())
        elif self.tail_mass_beyond(self.cutoff) >= self.tail_epsilon:
            need = self._auto_cutoff()
            raise TruncationError(
                f"cutoff {self.cutoff} leaves tail mass {self.tail_mass_beyond(self.cutoff):.3g} "
                f">= {self.tail_epsilon:g}; need cutoff {need}",
                required_cutoff=need,
            )

    def log_pmf(self, n):
        n = np.asarray(n, dtype=float)
        nb = self.mean
        if self.kind == "point":
            return np.where(n == nb, 0.0, -np.inf)
        if nb == 0:
            return np.where(n == 0, 0.0, -np.inf)
        if self.kind == "poisson":
            return n * math.log(nb) - nb - gammaln(n + 1)
        return n * math.log(nb / (nb + 1)) - math.log1p(nb)

    def pmf(self, n):
        return np.exp(self.log_pmf(n))

    def tail_mass_beyond(self, k: int) -> float:
        """Probability of more than ``k`` photons."""
        nb = self.mean
        if self.kind == "point":
            return 1.0 if nb > k else 0.0
        if nb == 0:
            return 0.0
        if self.kind == "poisson":
            return float(poisson.sf(k, nb))
        return (nb / (nb + 1)) ** (k + 1)

    def _auto_cutoff(self) -> int:
        nb = self.mean
        eps = self.tail_epsilon
        if self.kind == "point":
            return int(nb)
        if nb == 0:
            return 0
        if self.kind == "thermal":
            k = max(int(math.ceil(math.log(eps) / math.log(nb / (nb + 1)))) - 1, 0)
            while self.tail_mass_beyond(k) >= eps:
                k += 1
            return k
        k = int(nb)
        while self.tail_mass_beyond(k) >= eps:
            k += max(1, int(math.sqrt(nb)) // 4)
        while k > 0 and self.tail_mass_beyond(k - 1) < eps:
            k -= 1
        return k

    @property
    def tail_mass(self) -> float:
        return self.tail_mass_beyond(self.cutoff)

    def weights(self) -> np.ndarray:
        """``p_0 .. p_cutoff``."""
        return self.pmf(np.arange(self.cutoff + 1))

    def _log_ratio(self, n: int) -> float:
        # bound on log(p_{n+1} / p_n), non-increasing in n
        nb = self.mean
        if self.kind == "poisson":
            return math.log(nb) - math.log(n + 1)
        return math.log(nb / (nb + 1))


# ---------------------------------------------------------------------------
# Coherent input


def _coherent_amplitude_sum(nbar: float, tail_epsilon: float):
    """Sum of the Poisson amplitude moduli and a certified bound on the omitted tail.

    Returns ``(kept_sum, tail_bound, cutoff)`` where the coherence error
    ``2 * kept_sum * tail_bound + tail_bound**2`` is below ``tail_epsilon``.
    """
    if nbar == 0:
        return 1.0, 0.0, 0
    log_nb = math.log(nbar)

    def log_amp(n):
        return 0.5 * (n * log_nb - nbar - math.lgamma(n + 1))

    # past n > nbar successive amplitude ratios sqrt(nbar / (n + 1)) shrink
    start = int(math.floor(nbar)) + 1
    n = np.arange(start)
    head = np.exp(0.5 * (n * log_nb - nbar - gammaln(n + 1)))
    terms = list(head)
    k = start
    while True:
        q = math.sqrt(nbar / (k + 1))
        tail = math.exp(log_amp(k)) / (1.0 - q)
        s = math.fsum(terms)
        if q < 1 and 2 * s * tail + tail * tail < tail_epsilon:
            return s, tail, k - 1
        terms.append(math.exp(log_amp(k)))
        k += 1


def coherent_coherence_single(nbar: float, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> float:
    """Coherence ``exp(-nbar) (sum_n sqrt(nbar**n / n!))**2 - 1`` of ``|alpha>``."""
    _check_mean(nbar)
    s, _, _ = _coherent_amplitude_sum(nbar, tail_epsilon)
    return max(s * s - 1.0, 0.0)


def coherent_coherence_bound(nbar: float, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> float:
    """Certified truncation error of :func:`coherent_coherence_single`."""
    _check_mean(nbar)
    s, t, _ = _coherent_amplitude_sum(nbar, tail_epsilon)
    return 2 * s * t + t * t


def gaussian_approx_single(nbar: float) -> float:
    """Large-``nbar`` approximation ``2 sqrt(2 pi nbar) - 1`` of the coherent-state coherence."""
    _check_mean(nbar, strict=True)
    return 2.0 * math.sqrt(2.0 * math.pi * nbar) - 1.0


def _log_product_factor(nbars, tail_epsilon):
    # log prod_j [C(nbar_j, 0) + 1], each factor accurate to tail_epsilon / len
    eps = tail_epsilon / len(nbars)
    return math.fsum(2.0 * math.log(_coherent_amplitude_sum(x, eps)[0]) for x in nbars)


def product_coherence(nbars: Sequence[float], tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> float:
    """Coherence ``prod_j [C(nbar_j, 0) + 1] - 1`` of a product of coherent states."""
    nbars = list(nbars)
    if not nbars:
        raise DomainError("need at least one mode")
    for x in nbars:
        _check_mean(x)
    return max(math.expm1(_log_product_factor(nbars, tail_epsilon)), 0.0)


def max_coherent_coherence(nbar: float, N: int, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> float:
    """Coherence ``[C(nbar / (N+1), 0) + 1]**(N+1) - 1`` of the equal-split output."""
    _check_mean(nbar)
    _check_splitters(N)
    s, _, _ = _coherent_amplitude_sum(nbar / (N + 1), tail_epsilon / (N + 1))
    return max(math.expm1(2.0 * (N + 1) * math.log(s)), 0.0)


def max_coherent_bound(nbar: float, N: int, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> float:
    """Certified truncation error of :func:`max_coherent_coherence`."""
    _check_mean(nbar)
    _check_splitters(N)
    s, t, _ = _coherent_amplitude_sum(nbar / (N + 1), tail_epsilon / (N + 1))
    return (s + t) ** (2 * (N + 1)) - s ** (2 * (N + 1))


def max_coherent_approx(nbar: float, N: int) -> float:
    """Gaussian approximation ``(8 pi nbar / (N+1))**((N+1)/2) - 1`` of :func:`max_coherent_coherence`."""
    _check_mean(nbar, strict=True)
    _check_splitters(N)
    # (2 sqrt(2 pi x))**(N+1) keeps N = 0 bit-identical to gaussian_approx_single
    return (2.0 * math.sqrt(2.0 * math.pi * (nbar / (N + 1)))) ** (N + 1) - 1.0


def _check_splitters(N):
    if int(N) != N or N < 0:
        raise DomainError(f"splitter count must be a non-negative integer, got {N!r}")


# ---------------------------------------------------------------------------
# Number-state input


def number_output_amplitudes(n: int, tau) -> PureFockState:
    """Output state of ``|n, 0, ..., 0>`` for split vector ``tau``.

    Amplitude on ``{m}`` is ``sqrt(n!) prod_j tau_j**m_j / sqrt(m_j!)``.
    """
    t = _check_tau(tau)
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    with np.errstate(divide="ignore"):
        log_t = np.log(t)
    half_log_nfact = 0.5 * float(gammaln(n + 1))
    amps = {}
    for comp in enumerate_compositions(n, t.size - 1):
        m = np.asarray(comp)
        if np.any((t == 0) & (m > 0)):
            amps[comp] = 0.0
            continue
        nz = m > 0
        la = half_log_nfact + float(np.dot(m[nz], log_t[nz])) - 0.5 * float(gammaln(m + 1).sum())
        amps[comp] = math.exp(la)
    return PureFockState(amps)


def _log_sector_sums(tau: np.ndarray, n_max: int) -> np.ndarray:
    """``L[n] = log sum_{|m| = n} prod_j tau_j**m_j / sqrt(m_j!)`` for ``n <= n_max``.

    Uses the generating function ``prod_j sum_m tau_j**m x**m / sqrt(m!)``,
    multiplied out one mode at a time.
    """
    k = np.arange(n_max + 1)
    half_lf = 0.5 * gammaln(k + 1)
    acc = None
    for tj in tau:
        if tj == 0:
            f = np.full(n_max + 1, -np.inf)
            f[0] = 0.0
        else:
            f = k * math.log(tj) - half_lf
        if acc is None:
            acc = f
            continue
        new = np.empty(n_max + 1)
        for s in range(n_max + 1):
            terms = acc[: s + 1] + f[s::-1]
            top = terms.max()
            new[s] = -np.inf if top == -np.inf else top + math.log(np.exp(terms - top).sum())
        acc = new
    return acc


def _number_coherences(tau: np.ndarray, n_max: int) -> np.ndarray:
    L = _log_sector_sums(tau, n_max)
    exps = gammaln(np.arange(n_max + 1) + 1) + 2.0 * L
    return np.maximum(np.expm1(exps), 0.0)


def number_coherence(n: int, tau) -> float:
    """Coherence ``n! (sum_{m} prod_j tau_j**m_j / sqrt(m_j!))**2 - 1`` of the split number state."""
    t = _check_tau(tau)
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    return float(_number_coherences(t, n)[n])


def optimal_tau(N: int) -> np.ndarray:
    _check_splitters(N)
    return np.full(N + 1, 1.0 / math.sqrt(N + 1))


def max_number_coherence(n: int, N: int) -> float:
    """Coherence of ``|n>`` split equally over ``N + 1`` modes."""
    return number_coherence(n, optimal_tau(N))


def supremum_coherence(n: int, N: int) -> float:
    """Largest coherence in the ``n``-photon sector of ``N + 1`` modes, ``D(n, N) - 1``."""
    return float(dimension(n, N) - 1)


# ---------------------------------------------------------------------------
# Diagonal mixtures


def _resolve_tau(N, tau):
    if tau is None:
        return optimal_tau(N)
    t = _check_tau(tau)
    if N is not None and t.size != N + 1:
        raise DomainError(f"split vector has {t.size} entries, expected {N + 1}")
    return t


def mixed_coherence(dist: PhotonDistribution, N: Optional[int] = None, tau=None) -> float:
    """Photon-number average ``sum_n p_n C(n, tau)`` over ``n <= dist.cutoff``.

    ``tau`` defaults to the equal split over ``N + 1`` modes.
    """
    t = _resolve_tau(N, tau)
    K = dist.cutoff
    lp = dist.log_pmf(np.arange(K + 1))
    L = _log_sector_sums(t, K)
    lc = gammaln(np.arange(K + 1) + 1) + 2.0 * L
    keep = np.isfinite(lp)
    # p_n (S_n^2 - 1) = p_n expm1(log S_n^2)
    terms = np.exp(lp[keep]) * np.expm1(lc[keep])
    return max(math.fsum(terms), 0.0)


def mixed_coherence_tail_bound(dist: PhotonDistribution, N: int) -> float:
    """Upper bound on ``sum_{n > cutoff} p_n C(n, tau)`` using ``C(n, tau) <= D(n, N) - 1``."""
    _check_splitters(N)
    K = dist.cutoff
    if dist.kind == "point" or dist.mean == 0:
        return 0.0

    def log_term(n):
        return float(dist.log_pmf(n)) + math.log(math.comb(n + N, N))

    def ratio(n):
        return math.exp(dist._log_ratio(n) + math.log((n + 1 + N) / (n + 1)))

    # ratio is non-increasing; start once it has dropped below 1
    n0 = K + 1
    return _tail_sum(lambda k: math.exp(log_term(k)), ratio, n0)


def sector_mixture(dist: PhotonDistribution, N: Optional[int] = None, tau=None):
    """Assemble the output :class:`~bscoherence.coherence.SectorMixture` of a diagonal input."""
    from .coherence import SectorMixture

    t = _resolve_tau(N, tau)
    w = dist.weights()
    weights = {n: float(p) for n, p in enumerate(w) if p > 0}
    states = {n: number_output_amplitudes(n, t) for n in weights}
    return SectorMixture(weights, states, tail_mass=dist.tail_mass)


def phase_averaged_vs_pure(nbar: float, N: int, tail_epsilon: float = DEFAULT_TAIL_EPSILON):
    """Compare the phase-averaged output coherence with the pure coherent one.

    Returns ``(averaged, pure, pure - averaged)``. The averaged value keeps
    only intra-sector terms, the pure value also counts coherences between
    sectors, so the difference is generally non-zero.
    """
    avg = mixed_coherence(PhotonDistribution("poisson", nbar, tail_epsilon), N)
    pure = max_coherent_coherence(nbar, N, tail_epsilon)
    return avg, pure, pure - avg


# ---------------------------------------------------------------------------
# Thermal input, large-mean asymptotics


def _log_gamma_half(k2: int) -> float:
    """``log Gamma(k2 / 2)`` for a positive integer ``k2``, in closed form."""
    if k2 % 2 == 0:
        return math.log(math.factorial(k2 // 2 - 1))
    # Gamma(k + 1/2) = (2k)! sqrt(pi) / (4**k k!)
    k = (k2 - 1) // 2
    return math.log(math.factorial(2 * k)) - math.log(4 ** k * math.factorial(k)) + 0.5 * math.log(math.pi)


def thermal_coherence_approx(nbar: float, N: int) -> float:
    """``Gamma((N+3)/2) (8 pi nbar / (N+1))**((N+1)/2) - 1``."""
    _check_mean(nbar, strict=True)
    _check_splitters(N)
    base = 2.0 * math.sqrt(2.0 * math.pi * (nbar / (N + 1)))
    return math.exp(_log_gamma_half(N + 3) + (N + 1) * math.log(base)) - 1.0


def _laguerre_average(nbar, N, nodes):
    # (1/nbar) int_0^inf e^{-u/nbar} [f(u) + 1] du with u = nbar x; the
    # fractional power of x in f goes into the weight x**a e^{-x}
    a = ((N + 1) % 2) / 2.0
    x, w = roots_genlaguerre(nodes, a)
    f = np.array([max_coherent_approx(nbar * xi, N) + 1.0 for xi in x])
    return math.fsum(w * f / x ** a) - 1.0


def thermal_coherence_approx_check(nbar: float, N: int, nodes: int = 32) -> float:
    """Thermal average of :func:`max_coherent_approx` by Gauss-Laguerre quadrature.

    Independent of the closed form in :func:`thermal_coherence_approx`. A
    :class:`RuntimeWarning` is issued if halving ``nodes`` changes the
    result by more than 1e-6 relative.
    """
    _check_mean(nbar, strict=True)
    _check_splitters(N)
    if nodes < 8:
        raise DomainError(f"need at least 8 quadrature nodes, got {nodes}")
    val = _laguerre_average(nbar, N, nodes)
    coarse = _laguerre_average(nbar, N, nodes // 2)
    rel = abs(val - coarse) / max(abs(val), 1e-300)
    if rel > 1e-6:
        warnings.warn(f"thermal quadrature not converged at {nodes} nodes (relative change {rel:.2g})",
                      RuntimeWarning, stacklevel=2)
    return val
