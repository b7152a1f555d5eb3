"""Exact spectra and level-spacing statistics of coupled Bose-Einstein condensate models."""

from . import experiments, linalg, presets, stats, three_mode, two_mode
from .errors import (
    BracketingFailure,
    BreakdownAtTrialEnergy,
    DomainError,
    FitFailure,
    IntegrableDegenerate,
    NotAnEigenvalue,
)
from .three_mode import ThreeModeCouplings
from .two_mode import TwoModeCouplings

__version__ = "0.1.0"

__all__ = [
    "BracketingFailure",
    "BreakdownAtTrialEnergy",
    "DomainError",
    "FitFailure",
    "IntegrableDegenerate",
    "NotAnEigenvalue",
    "ThreeModeCouplings",
    "TwoModeCouplings",
    "experiments",
    "linalg",
    "presets",
    "stats",
    "three_mode",
    "two_mode",
]
