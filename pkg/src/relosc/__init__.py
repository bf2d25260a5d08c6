"""Exactly solvable relativistic model of the isotropic 3D singular oscillator."""

from .cdhahn import CdhParams, cdh_recurrence, cdh_sum, cdh_weight
from .model import (
    DimensionlessParams,
    PhysicalParams,
    QuantumNumbers,
    RegimeError,
    SpectrumEntry,
    alpha_l,
    collapse_threshold,
    energy,
    norm_constant,
    nu_l,
    radial_wavefunction,
    regime,
    to_dimensionless,
)
from .special import LogComplex, PoleError, generalized_degree, log_gamma

__version__ = "0.1.0"

__all__ = [
    "CdhParams", "cdh_recurrence", "cdh_sum", "cdh_weight",
    "DimensionlessParams", "PhysicalParams", "QuantumNumbers", "RegimeError", "SpectrumEntry",
    "alpha_l", "collapse_threshold", "energy", "norm_constant", "nu_l", "radial_wavefunction",
    "regime", "to_dimensionless",
    "LogComplex", "PoleError", "generalized_degree", "log_gamma",
]
