"""Eigenvalues and the spectral functionals every estimator is built from.

A spectrum is a sorted 1d float array.  All functionals here are exact
functions of the eigenvalues: resolvent traces, determinant ratios and the
``F_2`` integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .ensemble import BlockBandMatrix

__all__ = [
    "ShiftSet",
    "eigenvalues",
    "eigh_with_vectors",
    "resolvent_trace",
    "det_ratio",
    "det_ratio_direct",
    "imag_resolvent_pair",
]

# narrow bands go through the band solver, wide ones through zheev (measured crossover near N/16)
_BANDED_FRACTION = 0.0625


@dataclass(frozen=True)
class ShiftSet:
    """Numerator and denominator spectral arguments of a determinant ratio."""

    numerator: tuple[complex, ...]
    denominator: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(z) for z in self.numerator))
        object.__setattr__(self, "denominator", tuple(complex(z) for z in self.denominator))
        if len(self.numerator) != len(self.denominator):
            raise ValueError("numerator and denominator need the same number of shifts")
        if any(z.imag == 0.0 for z in self.denominator):
            raise ValueError("denominator shifts must have nonzero imaginary part")


def _as_dense(H) -> np.ndarray:
    if isinstance(H, BlockBandMatrix):
        return H.to_dense()
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError("expected a square matrix")
    return H


def eigenvalues(H) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Dense input and wide bands use LAPACK ``?heev`` (Householder reduction to
    tridiagonal form, then implicit-shift QL/QR).  Block band input whose
    bandwidth is small compared to ``N`` is handed to the band solver,
    which reduces the band directly to tridiagonal form.
    """
    if isinstance(H, BlockBandMatrix) and H.bandwidth < _BANDED_FRACTION * H.N:
        w = scipy.linalg.eigvals_banded(H.to_banded(), lower=False, check_finite=False)
    else:
        A = _as_dense(H)
        if A.shape[0] == 0:
            return np.zeros(0)
        w = scipy.linalg.eigh(A, eigvals_only=True, driver="ev", check_finite=False)
    w = np.sort(np.asarray(w, dtype=float))
    if not np.all(np.isfinite(w)):
        raise RuntimeError("eigensolver did not converge")
    return w


def eigh_with_vectors(H) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs via the same ``?heev`` route; for residual checks only."""
    A = _as_dense(H)
    return scipy.linalg.eigh(A, driver="ev")


def resolvent_trace(s, z: complex) -> complex:
    """``sum_i 1 / (lambda_i - z)`` for a real spectrum and nonreal ``z``."""
    z = complex(z)
    if z.imag == 0.0:
        raise ValueError("resolvent_trace needs Im z != 0")
    s = np.asarray(s, dtype=float)
    return complex(np.sum(1.0 / (s - z)))


def det_ratio(s, shifts: ShiftSet) -> complex:
    """``prod_i prod_m (lambda_i - num_m) / (lambda_i - den_m)``.

    Each eigenvalue's numerator factor is divided by the matching denominator
    factor before taking the logarithm, the logs are summed and the sum is
    exponentiated once.  Equal numerator and denominator shifts give exactly
    ``1``.
    """
    if len(shifts.numerator) != len(shifts.denominator):
        raise ValueError("numerator and denominator need the same number of shifts")
    s = np.asarray(s, dtype=float)
    total = 0j
    for zn, zd in zip(shifts.numerator, shifts.denominator):
        if zn == zd:
            continue
        total += np.sum(np.log((s - zn) / (s - zd)))
    return complex(np.exp(total))


def det_ratio_direct(s, shifts: ShiftSet) -> complex:
    """Naive running product; reference for small spectra."""
    out = 1.0 + 0j
    for lam in np.asarray(s, dtype=float):
        for zn, zd in zip(shifts.numerator, shifts.denominator):
            out *= (lam - zn) / (lam - zd)
    return out


def imag_resolvent_pair(s, z1: complex, z2: complex, rho: float) -> complex:
    """Per-sample ``F_2`` integrand.

    ``(2 pi i N rho)^-2 [Tr R(z1) - Tr R(conj z1)] [Tr R(z2) - Tr R(conj z2)]``
    with ``R(z) = (H - z)^-1``.  ``rho`` is the density used for unfolding.
    """
    z1, z2 = complex(z1), complex(z2)
    if z1.imag <= 0 or z2.imag <= 0:
        raise ValueError("imag_resolvent_pair needs Im z1 > 0 and Im z2 > 0")
    s = np.asarray(s, dtype=float)
    N = s.size
    t1 = resolvent_trace(s, z1)
    t2 = resolvent_trace(s, z2)
    b1 = t1 - t1.conjugate()
    b2 = t2 - t2.conjugate()
    pref = (2j * math.pi * N * rho) ** -2
    return complex(pref * b1 * b2)
