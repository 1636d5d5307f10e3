"""Desk-scale numerics for local spectral statistics of Gaussian block band
matrices: sampling, spectral functionals, closed-form limits, Monte Carlo
estimators and transfer-kernel checks."""

from .analytic import (
    SpectralWindow,
    a_pm,
    f2_limit,
    r_pm_deriv_limit,
    r_pm_limit,
    r_pp_deriv_limit,
    r_pp_limit,
    rho_sc,
    sine_kernel_r2,
)
from .ensemble import BlockBandMatrix, EnsembleParams, empirical_density, sample_matrix, variance_profile
from .observables import MCEstimate, estimate_f2, estimate_r_pm, estimate_r_pp, sample_spectra
from .spectra import ShiftSet, det_ratio, eigenvalues

__version__ = "0.1.0"

__all__ = [
    "SpectralWindow",
    "a_pm",
    "f2_limit",
    "r_pm_deriv_limit",
    "r_pm_limit",
    "r_pp_deriv_limit",
    "r_pp_limit",
    "rho_sc",
    "sine_kernel_r2",
    "BlockBandMatrix",
    "EnsembleParams",
    "empirical_density",
    "sample_matrix",
    "variance_profile",
    "MCEstimate",
    "estimate_f2",
    "estimate_r_pm",
    "estimate_r_pp",
    "sample_spectra",
    "ShiftSet",
    "det_ratio",
    "eigenvalues",
    "__version__",
]
