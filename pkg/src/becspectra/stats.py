"""Level-spacing statistics without unfolding.

Pipeline: pool nearest-neighbour gaps from one or more spectra, drop gaps
far above the mean, normalize by the largest surviving gap, histogram on
[0, 1], fit y = gamma exp(-beta s), rescale so the fitted curve reads
exp(-s), and compare with the Poisson law and the Wigner surmise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, FitFailure


class Reference(str, enum.Enum):
    POISSON = "poisson"
    WIGNER = "wigner"


@dataclass
class SpectrumCollection:
    """Sorted spectra of independent sectors, each tagged with a label."""

    sectors: list

    def __post_init__(self):
        clean = []
        for label, levels in self.sectors:
            levels = np.asarray(levels, dtype=float)
            if levels.ndim != 1:
                raise DomainError(f"sector {label!r}: expected a 1-d array of levels")
            if np.any(np.diff(levels) < 0):
                raise DomainError(f"sector {label!r}: levels are not sorted")
            clean.append((label, levels))
        self.sectors = clean

    @property
    def n_levels(self) -> int:
        return sum(len(v) for _, v in self.sectors)

    def merged(self) -> np.ndarray:
        return np.sort(np.concatenate([v for _, v in self.sectors]))


@dataclass
class DensityOfStates:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


@dataclass
class SpacingSet:
    """Normalized gaps (largest kept gap is 1) plus the discard report."""

    spacings: np.ndarray
    discarded_count: int
    total_count: int
    largest_kept: float

    @property
    def discard_fraction(self) -> float:
        return self.discarded_count / self.total_count if self.total_count else 0.0


@dataclass
class SpacingHistogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    densities: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)


@dataclass
class ExponentialFit:
    gamma: float
    beta: float
    residual_rms: float
    iterations: int = 0


def density_of_states(spectrum, bins: int = 50) -> DensityOfStates:
    """Uniform-bin histogram of the levels over [min, max]."""
    e = np.asarray(spectrum, dtype=float)
    if e.size < 2:
        raise DomainError("need at least two levels")
    if bins < 1:
        raise DomainError("need at least one bin")
    counts, edges = np.histogram(e, bins=bins, range=(e.min(), e.max()))
    return DensityOfStates(edges, counts)


def pooled_spacings(collection, discard_factor: float = 100.0, cross_sector: bool = False) -> SpacingSet:
    """Nearest-neighbour gaps pooled over sectors.

    By default gaps are taken inside each sector and then pooled. With
    ``cross_sector`` the sectors are merged into one sorted level list first.
    Gaps above ``discard_factor`` times the mean gap are dropped before the
    survivors are divided by their maximum.
    """
    if not isinstance(collection, SpectrumCollection):
        collection = SpectrumCollection(collection)
    for label, levels in collection.sectors:
        if len(levels) == 0:
            raise DomainError(f"sector {label!r} is empty")
    if cross_sector:
        gaps = np.diff(collection.merged())
    else:
        gaps = np.concatenate([np.diff(v) for _, v in collection.sectors])
    total = gaps.size
    if total == 0:
        raise DomainError("no gaps")
    mean = gaps.mean()
    keep = gaps <= discard_factor * mean
    kept = gaps[keep]
    largest = float(kept.max())
    if largest <= 0.0:
        raise DomainError("all kept gaps are zero")
    return SpacingSet(kept / largest, int(total - kept.size), int(total), largest)


def histogram_spacings(s: SpacingSet, bins: int = 45) -> SpacingHistogram:
    """Histogram on [0, 1] normalized to unit area."""
    x = s.spacings if isinstance(s, SpacingSet) else np.asarray(s, dtype=float)
    if x.size == 0:
        raise DomainError("no spacings to histogram")
    if bins < 1:
        raise DomainError("need at least one bin")
    counts, edges = np.histogram(x, bins=bins, range=(0.0, 1.0))
    dens = counts / (x.size * np.diff(edges))
    return SpacingHistogram(edges, counts, dens)


def _model(params, s):
    g, b = params
    with np.errstate(over="ignore", invalid="ignore"):
        ex = np.exp(-b * s)
        return g * ex, np.column_stack([ex, -g * s * ex])


def _loglinear(s, y):
    slope, intercept = np.polyfit(s, np.log(y), 1)
    return float(np.exp(intercept)), float(-slope)


def fit_exponential(h: SpacingHistogram, max_iter: int = 200, rtol: float = 1e-10) -> ExponentialFit:
    """Least-squares fit of gamma exp(-beta s) to the nonempty bins.

    Levenberg-Marquardt on the unweighted densities, started from a straight
    line fit to log(density). Raises FitFailure (with the log-linear estimate
    attached) when it does not converge or ends with gamma or beta <= 0.
    """
    nz = h.counts > 0
    if nz.sum() < 3:
        raise DomainError("need at least three nonempty bins")
    s, y = h.centers[nz], h.densities[nz]
    g0, b0 = _loglinear(s, y)
    fallback = ExponentialFit(g0, b0, float(np.sqrt(np.mean((g0 * np.exp(-b0 * s) - y) ** 2))))

    p = np.array([g0, b0])
    f, J = _model(p, s)
    r = f - y
    cost = r @ r
    lam = 1e-3
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        A = J.T @ J
        g = J.T @ r
        while True:
            step = np.linalg.solve(A + lam * np.diag(np.diag(A)), -g)
            trial = p + step
            f_t, J_t = _model(trial, s)
            r_t = f_t - y
            with np.errstate(over="ignore", invalid="ignore"):
                cost_t = r_t @ r_t
            if np.isfinite(cost_t) and cost_t <= cost:
                break
            lam *= 10.0
            if lam > 1e16:
                break
        if lam > 1e16:
            converged = np.linalg.norm(g) == 0.0
            break
        rel = np.linalg.norm(step) / (np.linalg.norm(p) + rtol)
        p, r, J, cost = trial, r_t, J_t, cost_t
        lam = max(lam / 10.0, 1e-12)
        if rel < rtol:
            converged = True
            break

    gamma, beta = float(p[0]), float(p[1])
    if not converged:
        raise FitFailure(f"no convergence after {it} iterations", fallback)
    if not (np.isfinite(gamma) and np.isfinite(beta)) or gamma <= 0 or beta <= 0:
        raise FitFailure(f"fit gave gamma={gamma:.4g}, beta={beta:.4g}", fallback)
    return ExponentialFit(gamma, beta, float(np.sqrt(cost / s.size)), it)


def rescale(h: SpacingHistogram, fit: ExponentialFit) -> SpacingHistogram:
    """Divide densities by gamma and stretch s by beta so the fit reads exp(-s)."""
    if not (fit.gamma > 0 and fit.beta > 0):
        raise DomainError("rescaling needs positive gamma and beta")
    return replace(h, bin_edges=h.bin_edges * fit.beta, densities=h.densities / fit.gamma)


def _nonnegative(s):
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("spacing must be nonnegative")
    return s


def reference_poisson(s):
    """exp(-s)"""
    return np.exp(-_nonnegative(s))


def reference_wigner(s):
    """Wigner surmise (pi s / 2) exp(-pi s^2 / 4)."""
    s = _nonnegative(s)
    return 0.5 * np.pi * s * np.exp(-0.25 * np.pi * s * s)


def cdf_poisson(s):
    return -np.expm1(-_nonnegative(s))


def cdf_wigner(s):
    s = _nonnegative(s)
    return -np.expm1(-0.25 * np.pi * s * s)


_CDF = {Reference.POISSON: cdf_poisson, Reference.WIGNER: cdf_wigner}


def ks_statistic(samples, cdf) -> float:
    """Sup distance between the empirical CDF of ``samples`` and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    F = cdf(x)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def scaled_spacings(s, reference, fit: ExponentialFit | None = None) -> np.ndarray:
    """Spacings in the units used for comparison with ``reference``.

    Poisson with a fit: beta * s. Otherwise divided by the mean.
    """
    x = s.spacings if isinstance(s, SpacingSet) else np.asarray(s, dtype=float)
    if Reference(reference) is Reference.POISSON and fit is not None:
        return x * fit.beta
    return x / x.mean()


def distribution_distance(s, reference, fit: ExponentialFit | None = None) -> float:
    """Kolmogorov-Smirnov distance to the Poisson or Wigner spacing law."""
    x = s.spacings if isinstance(s, SpacingSet) else np.asarray(s, dtype=float)
    if x.size < 100:
        raise DomainError(f"need at least 100 spacings, got {x.size}")
    ref = Reference(reference)
    return ks_statistic(scaled_spacings(x, ref, fit), _CDF[ref])


def small_spacing_density(s, s_max: float = 0.1) -> float:
    """Mean density of mean-normalized spacings on [0, s_max].

    About 0.95 for Poisson and 0.08 for the Wigner surmise at s_max = 0.1.
    """
    x = s.spacings if isinstance(s, SpacingSet) else np.asarray(s, dtype=float)
    x = x / x.mean()
    return float(np.mean(x <= s_max) / s_max)
