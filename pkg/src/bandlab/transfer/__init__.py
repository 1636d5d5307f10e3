"""Transfer-kernel numerics: constants, Hermite discretization, contour
landscape, representation eigenvalues, Haar integrals, derivative bounds."""

from .constants import TransferConstants, phi0, phi0_prime, phi0_second, q_matrix, transfer_constants
from .hermite import HermiteKernelMatrix, hermite_discretize, hermite_functions
from .landscape import LandscapeReport, landscape_check, landscape_lambda
from .representations import first_type_eigenvalue, legendre_p, legendre_p_complex, rep_eigenvalue_u
from .sigma import delta_s_coefficients, sigma_model_closed_forms, sigma_model_integrals

__all__ = [
    "TransferConstants",
    "q_matrix",
    "transfer_constants",
    "phi0",
    "phi0_prime",
    "phi0_second",
    "HermiteKernelMatrix",
    "hermite_discretize",
    "hermite_functions",
    "LandscapeReport",
    "landscape_check",
    "landscape_lambda",
    "legendre_p",
    "legendre_p_complex",
    "rep_eigenvalue_u",
    "first_type_eigenvalue",
    "sigma_model_integrals",
    "sigma_model_closed_forms",
    "delta_s_coefficients",
]
