"""Spectrum collections and the spacing pipeline for the benchmark runs."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import stats
from .errors import DomainError
from .presets import NONINTEGRABLE, THREE_MODE, TWO_MODE
from .three_mode import (
    full_sector_dimension,
    restricted_dimension,
    spectrum_integrable_restricted,
    spectrum_nonintegrable,
)
from .two_mode import spectrum as two_mode_spectrum

DOS_N = 1000
DOS_BINS = 50
DIMER_SECTORS = range(360, 401, 4)
THREE_MODE_ATOMS = 400
MIXED_SECTORS = range(50, 101, 10)


def parse_sectors(text: str) -> range:
    """'start:end:step' (end inclusive) or a single integer."""
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise DomainError(f"bad sector range {text!r}") from None
    if len(nums) == 1:
        nums = [nums[0], nums[0], 1]
    elif len(nums) == 2:
        nums.append(1)
    start, end, step = nums
    if step < 1 or end < start or start < 0:
        raise DomainError(f"empty or invalid sector range {text!r}")
    return range(start, end + 1, step)


def _map(fn, args, jobs):
    if jobs and jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def collect(model: str, couplings, sectors, h1_strength: float = 1.0, jobs: int = 1) -> stats.SpectrumCollection:
    """Sorted spectra for every requested sector, in sector order.

    For the integrable three-mode model each atomic number expands into its
    I >= 0 sectors.
    """
    sectors = list(sectors)
    if model == TWO_MODE:
        spectra = _map(two_mode_spectrum, [(couplings, n) for n in sectors], jobs)
        return stats.SpectrumCollection([(f"N={n}", e) for n, e in zip(sectors, spectra)])
    if model == THREE_MODE:
        parts = _map(spectrum_integrable_restricted, [(couplings, n) for n in sectors], jobs)
        return stats.SpectrumCollection(
            [(f"N={na},I={i}", e) for part in parts for (na, i), e in part]
        )
    if model == NONINTEGRABLE:
        spectra = _map(spectrum_nonintegrable, [(couplings, n, h1_strength) for n in sectors], jobs)
        return stats.SpectrumCollection([(f"N={n}", e) for n, e in zip(sectors, spectra)])
    raise DomainError(f"unknown model {model!r}")


@dataclass
class SpacingReport:
    n_levels: int
    spacing: stats.SpacingSet
    histogram: stats.SpacingHistogram
    fit: stats.ExponentialFit
    rescaled: stats.SpacingHistogram
    ks_poisson: float
    ks_wigner: float
    small_spacing_density: float
    settings: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "levels": self.n_levels,
            "gaps_total": self.spacing.total_count,
            "gaps_discarded": self.spacing.discarded_count,
            "discard_fraction": self.spacing.discard_fraction,
            "largest_kept_gap": self.spacing.largest_kept,
            "fit": {
                "gamma": self.fit.gamma,
                "beta": self.fit.beta,
                "residual_rms": self.fit.residual_rms,
                "iterations": self.fit.iterations,
            },
            "ks_poisson": self.ks_poisson,
            "ks_wigner": self.ks_wigner,
            "small_spacing_density": self.small_spacing_density,
            "settings": self.settings,
        }


def spacing_analysis(
    collection: stats.SpectrumCollection,
    bins: int = 45,
    discard_factor: float = 100.0,
    cross_sector: bool = True,
) -> SpacingReport:
    """Full spacing pipeline on a collection of sector spectra.

    The benchmark runs merge the sectors into one level list before
    taking gaps (``cross_sector=True``).
    """
    sp = stats.pooled_spacings(collection, discard_factor=discard_factor, cross_sector=cross_sector)
    hist = stats.histogram_spacings(sp, bins=bins)
    fit = stats.fit_exponential(hist)
    return SpacingReport(
        n_levels=collection.n_levels,
        spacing=sp,
        histogram=hist,
        fit=fit,
        rescaled=stats.rescale(hist, fit),
        ks_poisson=stats.distribution_distance(sp, stats.Reference.POISSON, fit),
        ks_wigner=stats.distribution_distance(sp, stats.Reference.WIGNER),
        small_spacing_density=stats.small_spacing_density(sp),
        settings={"bins": bins, "discard_factor": discard_factor, "cross_sector": cross_sector},
    )


@dataclass
class DosProfile:
    dos: stats.DensityOfStates
    central_cv: float
    low_energy_deviation: float


def dos_profile(spectrum, bins: int = DOS_BINS) -> DosProfile:
    """Density of states with two shape measures.

    ``central_cv``: coefficient of variation of the counts over the central
    80% of bins. ``low_energy_deviation``: distance of the mean count of the
    lowest 10% of bins from the central mean, in central standard deviations.
    """
    dos = stats.density_of_states(spectrum, bins)
    c = dos.counts.astype(float)
    tenth = max(int(round(0.1 * bins)), 1)
    central = c[tenth : bins - tenth] if bins > 2 * tenth else c
    mean, sd = central.mean(), central.std()
    cv = sd / mean if mean > 0 else float("inf")
    dev = abs(c[:tenth].mean() - mean) / sd if sd > 0 else float("inf")
    return DosProfile(dos, float(cv), float(dev))


def level_count(model: str, sectors) -> int:
    """Closed-form number of levels the pipeline will see."""
    sectors = list(sectors)
    if model == TWO_MODE:
        return sum(n + 1 for n in sectors)
    if model == THREE_MODE:
        return sum(restricted_dimension(n) for n in sectors)
    if model == NONINTEGRABLE:
        return sum(full_sector_dimension(n) for n in sectors)
    raise DomainError(f"unknown model {model!r}")


__all__ = [
    "DOS_BINS",
    "DOS_N",
    "DIMER_SECTORS",
    "THREE_MODE_ATOMS",
    "MIXED_SECTORS",
    "DosProfile",
    "SpacingReport",
    "collect",
    "dos_profile",
    "level_count",
    "parse_sectors",
    "spacing_analysis",
]
