"""Monte Carlo estimators of the spectral observables over the ensemble.

Spectra are sampled once per ``(params, sample_index)`` and every observable
is a sample mean of an exact spectral functional.  Aggregation always runs
over samples in index order, so estimates do not depend on how the
eigensolves were scheduled.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import SpectralWindow, rho_sc, sine_kernel_r2
from .ensemble import EnsembleParams, sample_matrix
from .spectra import ShiftSet, det_ratio, eigenvalues, imag_resolvent_pair

__all__ = [
    "MCEstimate",
    "PairTestFunction",
    "sample_spectrum",
    "sample_spectra",
    "shifts_from_window",
    "r_pm_shifts",
    "r_pp_shifts",
    "estimate_mean",
    "estimate_r_pp",
    "estimate_r_pm",
    "estimate_f2",
    "pair_statistic",
    "pair_statistic_prediction",
]

EPS_WARN = 0.5
HEAVY_TAIL_RATIO = 0.25


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean with its standard error.

    ``stderr_re`` and ``stderr_im`` are the componentwise standard errors;
    ``stderr`` combines them in quadrature (the scale of ``|mean - truth|``).
    """

    mean: complex
    stderr: float
    nsamples: int
    stderr_re: float = 0.0
    stderr_im: float = 0.0

    def zscore(self, prediction: complex) -> float:
        diff = abs(complex(self.mean) - complex(prediction))
        if self.stderr == 0.0:
            return 0.0 if diff == 0.0 else math.inf
        return diff / self.stderr


def estimate_mean(values) -> MCEstimate:
    """Mean and standard error of i.i.d. (possibly complex) samples."""
    x = np.asarray(values, dtype=complex)
    m = x.size
    if m < 2:
        raise ValueError("need at least two samples")
    mean = complex(math.fsum(x.real) / m, math.fsum(x.imag) / m)
    se_re = math.sqrt(math.fsum((x.real - mean.real) ** 2) / (m - 1) / m)
    se_im = math.sqrt(math.fsum((x.imag - mean.imag) ** 2) / (m - 1) / m)
    return MCEstimate(
        mean=mean,
        stderr=math.hypot(se_re, se_im),
        nsamples=m,
        stderr_re=se_re,
        stderr_im=se_im,
    )


def sample_spectrum(params: EnsembleParams, sample_index: int) -> np.ndarray:
    return eigenvalues(sample_matrix(params, sample_index))


def sample_spectra(params: EnsembleParams, M: int, start: int = 0, threads: int = 1) -> list[np.ndarray]:
    """Spectra of samples ``start .. start+M-1`` in index order."""
    indices = range(start, start + M)
    if threads <= 1:
        return [sample_spectrum(params, i) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda i: sample_spectrum(params, i), indices))


def shifts_from_window(w: SpectralWindow, N: int) -> tuple[complex, complex, complex, complex]:
    """``z = E + i eps / N + xi / (N rho(E))`` for the four components of ``xi``."""
    if N < 1:
        raise ValueError("N must be positive")
    rho = w.rho
    base = complex(w.E, w.eps / N)
    return tuple(base + x / (N * rho) for x in w.xi)


def r_pm_shifts(w: SpectralWindow, N: int) -> ShiftSet:
    z1, z2, y1, y2 = shifts_from_window(w, N)
    return ShiftSet((z1, z2.conjugate()), (y1, y2.conjugate()))


def r_pp_shifts(w: SpectralWindow, N: int) -> ShiftSet:
    z1, z2, y1, y2 = shifts_from_window(w, N)
    return ShiftSet((z1, z2), (y1, y2))


def _spectra_or_sample(params, spectra, M):
    if spectra is None:
        if M < 2:
            raise ValueError("M must be >= 2")
        return sample_spectra(params, M)
    spectra = list(spectra)
    if len(spectra) < 2:
        raise ValueError("need at least two spectra")
    return spectra


def estimate_r_pp(params: EnsembleParams, w: SpectralWindow, M: int = 2000, spectra=None) -> MCEstimate:
    """Monte Carlo ``E det(H-z1)det(H-z2) / det(H-z1')det(H-z2')``.

    Pass ``spectra`` to reuse already sampled spectra of ``params``.
    """
    spectra = _spectra_or_sample(params, spectra, M)
    shifts = r_pp_shifts(w, params.N)
    return estimate_mean([det_ratio(s, shifts) for s in spectra])


def estimate_r_pm(params: EnsembleParams, w: SpectralWindow, M: int = 2000, spectra=None) -> MCEstimate:
    """Monte Carlo ``E det(H-z1)det(H-conj z2) / det(H-z1')det(H-conj z2')``."""
    if w.eps < EPS_WARN:
        warnings.warn(
            f"eps={w.eps} < {EPS_WARN}: the +- ratio is heavy tailed here",
            RuntimeWarning,
            stacklevel=2,
        )
    spectra = _spectra_or_sample(params, spectra, M)
    shifts = r_pm_shifts(w, params.N)
    est = estimate_mean([det_ratio(s, shifts) for s in spectra])
    if est.mean != 0 and est.stderr / abs(est.mean) > HEAVY_TAIL_RATIO:
        warnings.warn(
            f"stderr/|mean| = {est.stderr / abs(est.mean):.3g} exceeds {HEAVY_TAIL_RATIO}",
            RuntimeWarning,
            stacklevel=2,
        )
    return est


def estimate_f2(params: EnsembleParams, w: SpectralWindow, M: int = 1000, spectra=None) -> MCEstimate:
    """Monte Carlo smoothed two-point function at ``z1, z2`` (``xi'`` unused)."""
    spectra = _spectra_or_sample(params, spectra, M)
    z1, z2, _, _ = shifts_from_window(w, params.N)
    rho = w.rho
    return estimate_mean([imag_resolvent_pair(s, z1, z2, rho) for s in spectra])


@dataclass(frozen=True)
class PairTestFunction:
    """Smooth, compactly supported, swap-symmetric ``phi(xi1, xi2)``.

    Built-in kinds:

    ``bump``
        ``b(xi1 / R) b(xi2 / R)`` with ``b(x) = exp(1 - 1 / (1 - x^2))`` on ``|x| < 1``.
    ``cosine``
        ``cos^2(pi xi1 / 2R) cos^2(pi xi2 / 2R)`` on the square of half side ``R``.
    ``spacing``
        ``b((|xi1 - xi2| - center) / halfwidth) b((xi1 + xi2) / 2R)``: probes
        pairs at spacing near ``center``.
    """

    kind: str = "bump"
    radius: float = 3.0
    center: float = 1.0
    halfwidth: float = 0.1

    def __post_init__(self):
        if self.kind not in ("bump", "cosine", "spacing", "zero"):
            raise ValueError(f"unknown test function kind {self.kind!r}")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def support_radius(self) -> float:
        """Sup-norm radius of the support in the ``(xi1, xi2)`` plane."""
        if self.kind == "spacing":
            return self.radius + (self.center + self.halfwidth) / 2.0
        return self.radius

    def __call__(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        if self.kind == "zero":
            return np.zeros(np.broadcast(x1, x2).shape)
        if self.kind == "bump":
            return _bump(x1 / self.radius) * _bump(x2 / self.radius)
        if self.kind == "cosine":
            R = self.radius
            c1 = np.where(np.abs(x1) < R, np.cos(np.pi * x1 / (2 * R)) ** 2, 0.0)
            c2 = np.where(np.abs(x2) < R, np.cos(np.pi * x2 / (2 * R)) ** 2, 0.0)
            return c1 * c2
        gap = (np.abs(x1 - x2) - self.center) / self.halfwidth
        return _bump(gap) * _bump((x1 + x2) / (2.0 * self.radius))


def _bump(x):
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1.0
    xs = np.where(inside, x, 0.0)
    return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - xs * xs)), 0.0)


def pair_statistic(spectra, E: float, phi: PairTestFunction) -> MCEstimate:
    """Mean over spectra of ``sum_{i != j} phi(u_i, u_j)``, ``u = N rho(E) (lambda - E)``."""
    spectra = list(spectra)
    if not spectra:
        raise ValueError("pair_statistic needs at least one spectrum")
    N = len(spectra[0])
    if any(len(s) != N for s in spectra):
        raise ValueError("all spectra must share N")
    rho = rho_sc(E)
    reach = phi.support_radius
    values = []
    for s in spectra:
        u = N * rho * (np.asarray(s, dtype=float) - E)
        u = u[np.abs(u) < reach + 1e-12]
        vals = phi(u[:, None], u[None, :])
        values.append(float(vals.sum() - np.trace(vals)))
    if len(values) == 1:
        return MCEstimate(mean=complex(values[0]), stderr=math.inf, nsamples=1)
    return estimate_mean(values)


def pair_statistic_prediction(phi: PairTestFunction, nodes: int = 400) -> float:
    """``int phi(x1, x2) [1 - sinc^2(x1 - x2)] dx1 dx2`` by tensor Gauss-Legendre."""
    R = phi.support_radius
    t, wt = np.polynomial.legendre.leggauss(nodes)
    x = R * t
    w = R * wt
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    f = phi(X1, X2) * sine_kernel_r2(X1 - X2)
    return float(w @ f @ w)
