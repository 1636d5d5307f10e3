"""Closed-form limits: semicircle, saddle points, sine kernel, R^{+-}/R^{++}.

Everything is expressed in the local variables ``xi`` of a spectral window
at bulk energy ``E``: spectral arguments ``z = E + i eps / N + xi / (N rho(E))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralWindow",
    "AlphaSigma",
    "rho_sc",
    "a_pm",
    "sine_kernel_r2",
    "alpha_sigma",
    "r_pm_limit",
    "r_pm_deriv_limit",
    "r_pp_limit",
    "r_pp_deriv_limit",
    "f2_limit",
]

# below this |x| the series branches of the removable singularities are used
_SERIES_CUTOFF = 1e-3
_SINC_SERIES_CUTOFF = 0.5
_SINC_SERIES_TERMS = 9


@dataclass(frozen=True)
class SpectralWindow:
    """Observation point ``(E, eps, xi1, xi2, xi1', xi2')`` in local units."""

    E: float
    eps: float
    xi: tuple[complex, complex, complex, complex] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        if not abs(self.E) < 2.0:
            raise ValueError("E must satisfy |E|<2")
        if not self.eps > 0.0:
            raise ValueError("eps must be > 0")
        if len(self.xi) != 4:
            raise ValueError("xi must have four components")
        object.__setattr__(self, "xi", tuple(complex(x) for x in self.xi))

    @property
    def rho(self) -> float:
        return rho_sc(self.E)

    def primed_equal(self) -> SpectralWindow:
        """Same window with ``xi' = xi``."""
        x1, x2 = self.xi[0], self.xi[1]
        return SpectralWindow(self.E, self.eps, (x1, x2, x1, x2))

    def conjugate(self) -> SpectralWindow:
        return SpectralWindow(self.E, self.eps, tuple(x.conjugate() for x in self.xi))


@dataclass(frozen=True)
class AlphaSigma:
    sigma1: complex
    sigma2: complex
    alpha1: complex
    alpha2: complex


def rho_sc(E: float) -> float:
    """Semicircle density ``sqrt(4 - E^2) / (2 pi)`` on ``[-2, 2]``."""
    if abs(E) > 2.0:
        raise ValueError("rho_sc is supported on |E| <= 2")
    return math.sqrt(4.0 - E * E) / (2.0 * math.pi)


def a_pm(E: float) -> tuple[complex, complex]:
    """Saddle points ``a_+-`` = (iE +- sqrt(4 - E^2)) / 2 on the unit circle."""
    if not abs(E) < 2.0:
        raise ValueError("a_pm needs |E| < 2")
    r = math.sqrt(4.0 - E * E)
    return complex(r / 2.0, E / 2.0), complex(-r / 2.0, E / 2.0)


def sine_kernel_r2(d):
    """``1 - sin^2(pi d) / (pi d)^2``, equal to 0 at ``d = 0``.

    For ``|pi d| < 0.5`` the Taylor series
    ``sum_{j>=1} (-1)^{j+1} 2^{2j+1} x^{2j} / (2j+2)!`` is summed directly so
    small values keep full relative precision.
    """
    d = np.asarray(d, dtype=float)
    x = np.pi * d
    small = np.abs(x) < _SINC_SERIES_CUTOFF
    xs = np.where(small, 1.0, x)
    direct = 1.0 - (np.sin(xs) / xs) ** 2
    x2 = np.where(small, x * x, 0.0)
    series = np.zeros_like(x2)
    for j in range(_SINC_SERIES_TERMS, 0, -1):
        coef = (-1) ** (j + 1) * 2.0 ** (2 * j + 1) / math.factorial(2 * j + 2)
        series = (series + coef) * x2
    out = np.where(small, series, direct)
    return float(out) if out.ndim == 0 else out


def alpha_sigma(w: SpectralWindow) -> AlphaSigma:
    rho = w.rho
    x1, x2, y1, y2 = w.xi
    return AlphaSigma(
        sigma1=(x1 + x2) / (2j * rho),
        sigma2=(y1 + y2) / (2j * rho),
        alpha1=w.eps + (x1 - x2) / (2j * rho),
        alpha2=w.eps + (y1 - y2) / (2j * rho),
    )


def _shc(x: complex) -> complex:
    """``sinh(x) / x``."""
    if abs(x) < _SERIES_CUTOFF:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return cmath.sinh(x) / x


def _one_minus_exp_over_sq(x: complex) -> complex:
    """``(1 - e^{-x}) / x^2`` split as ``1/x - g(x)`` so the ``1/x`` pole is exact."""
    if abs(x) < 0.1:
        # g(x) = (x - 1 + e^{-x}) / x^2 = sum_k (-1)^k x^k / (k + 2)!
        g = 0j
        term = 0.5 + 0j
        for k in range(12):
            g += term
            term *= -x / (k + 3)
        return 1.0 / x - g
    return (1.0 - cmath.exp(-x)) / (x * x)


def r_pm_limit(w: SpectralWindow) -> complex:
    """Limit of the ``+-`` generalized correlation function."""
    p = alpha_sigma(w)
    a1, a2 = p.alpha1, p.alpha2
    if a1 == 0 or a2 == 0:
        raise ValueError("alpha1 and alpha2 must be nonzero")
    c = math.pi * w.rho
    x = 2.0 * c * a1
    ds = p.sigma1 - p.sigma2
    # sinh(2c a1) / a1 written through sinh(x)/x keeps small a1 accurate
    sh_over_a1 = 2.0 * c * _shc(x)
    bracket = (
        a1 / (2.0 * a2) * cmath.sinh(x)
        + a2 / 2.0 * sh_over_a1
        + cmath.cosh(x)
        - ds * ds * sh_over_a1 / (2.0 * a2)
    )
    return complex(cmath.exp(1j * w.E * ds) * cmath.exp(-2.0 * c * a2) * bracket)


def r_pm_deriv_limit(E: float, eps: float, d: float) -> complex:
    """Mixed ``xi1' xi2'`` derivative of the ``+-`` limit at ``xi' = xi``.

    ``1/rho^2 + (1 - exp(-4 c alpha1)) / (4 alpha1^2 rho^2)`` with
    ``alpha1 = eps + d / (2 i rho)`` and ``c = pi rho``.
    """
    rho = rho_sc(E)
    if not abs(E) < 2.0 or not eps > 0:
        raise ValueError("need |E| < 2 and eps > 0")
    a1 = eps + d / (2j * rho)
    c = math.pi * rho
    # (1 - e^{-4 c a1}) / (4 a1^2 rho^2) = 4 pi^2 (1 - e^{-x}) / x^2, x = 4 c a1
    return complex(1.0 / rho**2 + 4.0 * math.pi**2 * _one_minus_exp_over_sq(4.0 * c * a1))


def r_pp_limit(w: SpectralWindow) -> complex:
    """Limit ``exp(i a_+ (xi1' + xi2' - xi1 - xi2) / rho)`` of the ``++`` function."""
    ap, _ = a_pm(w.E)
    x1, x2, y1, y2 = w.xi
    return complex(cmath.exp(1j * ap * (y1 + y2 - x1 - x2) / w.rho))


def r_pp_deriv_limit(E: float) -> complex:
    """Mixed ``xi1' xi2'`` derivative of the ``++`` limit: ``-a_+^2 / rho^2``."""
    ap, _ = a_pm(E)
    return complex(-(ap * ap) / rho_sc(E) ** 2)


def f2_limit(E: float, d: float, eps: float) -> float:
    """Smoothed two-point function assembled from the ``+-`` and ``++`` limits.

    ``(2 pi)^-2 [D_{+-} + conj D_{+-} - D_{++} - conj D_{++}]`` where ``D``
    are the mixed derivatives at ``xi' = xi`` and ``d = xi1 - xi2``.
    Tends to ``sine_kernel_r2(d)`` as ``eps -> 0`` for fixed ``d != 0``.
    """
    dpm = r_pm_deriv_limit(E, eps, d)
    dpp = r_pp_deriv_limit(E)
    return (2.0 * dpm.real - 2.0 * dpp.real) / (4.0 * math.pi**2)
