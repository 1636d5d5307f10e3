"""Gaussian block band ensemble: variance profile, sampling, global density.

A matrix of the ensemble has ``n`` diagonal blocks of size ``W`` and
dimension ``N = n * W``.  Entry variances are constant inside each block and
given by the profile ``J = W^{-1} (I + beta * Delta)`` where ``Delta`` is the
Neumann discrete Laplacian on ``{1, ..., n}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "EnsembleParams",
    "BlockBandMatrix",
    "neumann_laplacian",
    "variance_profile",
    "sample_matrix",
    "gaussian_stream",
    "semicircle_cdf",
    "empirical_density",
    "DensityHistogram",
]

BETA_MAX = 0.25
_U53 = 2.0**-53


@dataclass(frozen=True)
class EnsembleParams:
    """Parameters of the block band ensemble.

    Attributes
    ----------
    n : int
        Number of blocks (lattice sites).
    W : int
        Block size (orbitals per site).
    beta : float
        Coupling in front of the Laplacian, ``0 <= beta < 1/4``.
    seed : int
        64-bit reproducibility seed.
    """

    n: int
    W: int
    beta: float = 0.1
    seed: int = 0

    def __post_init__(self):
        errors = self.violations()
        if errors:
            raise ValueError("; ".join(errors))

    def violations(self) -> list[str]:
        errors = []
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            errors.append("n must be a positive integer")
        if not isinstance(self.W, (int, np.integer)) or self.W < 1:
            errors.append("W must be a positive integer")
        if not (0.0 <= self.beta < BETA_MAX):
            errors.append("beta must lie in [0, 0.25)")
        if not isinstance(self.seed, (int, np.integer)) or not (0 <= self.seed < 2**64):
            errors.append("seed must be an integer in [0, 2**64)")
        return errors

    @property
    def N(self) -> int:
        return self.n * self.W


def neumann_laplacian(n: int) -> np.ndarray:
    """Second-difference matrix on ``n`` sites with reflecting ends (zero row sums)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lap = np.zeros((n, n))
    if n == 1:
        return lap
    idx = np.arange(n - 1)
    lap[idx, idx + 1] = 1.0
    lap[idx + 1, idx] = 1.0
    lap[np.diag_indices(n)] = -2.0
    lap[0, 0] = lap[-1, -1] = -1.0
    return lap


def variance_profile(params: EnsembleParams) -> np.ndarray:
    """Block variance matrix ``J_jk = (delta_jk + beta * Delta_jk) / W``."""
    if not (0.0 <= params.beta < BETA_MAX):
        raise ValueError("beta must lie in [0, 0.25)")
    n = params.n
    return (np.eye(n) + params.beta * neumann_laplacian(n)) / params.W


@dataclass(frozen=True)
class BlockBandMatrix:
    """Hermitian block tridiagonal matrix stored as its nonzero blocks.

    ``diag[j]`` is the Hermitian block ``(j, j)`` and ``upper[j]`` the block
    ``(j, j + 1)``; the block ``(j + 1, j)`` is ``upper[j].conj().T``.
    """

    diag: np.ndarray  # (n, W, W)
    upper: np.ndarray  # (n - 1, W, W)

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    @property
    def W(self) -> int:
        return self.diag.shape[1]

    @property
    def N(self) -> int:
        return self.n * self.W

    @property
    def bandwidth(self) -> int:
        """Number of nonzero superdiagonals in scalar indexing."""
        return 2 * self.W - 1 if self.n > 1 else self.W - 1

    def to_dense(self) -> np.ndarray:
        n, W = self.n, self.W
        H = np.zeros((self.N, self.N), dtype=complex)
        for j in range(n):
            s = slice(j * W, (j + 1) * W)
            H[s, s] = self.diag[j]
        for j in range(n - 1):
            s = slice(j * W, (j + 1) * W)
            t = slice((j + 1) * W, (j + 2) * W)
            H[s, t] = self.upper[j]
            H[t, s] = self.upper[j].conj().T
        return H

    def to_banded(self) -> np.ndarray:
        """Upper LAPACK band storage, shape ``(bandwidth + 1, N)``."""
        H = self.to_dense()
        kd = self.bandwidth
        ab = np.zeros((kd + 1, self.N), dtype=complex)
        for d in range(kd + 1):
            ab[kd - d, d:] = np.diagonal(H, d)
        return ab

    def trace(self) -> float:
        return float(sum(np.trace(b).real for b in self.diag))

    @cached_property
    def frobenius_sq(self) -> float:
        """``Tr H^2``."""
        total = float(np.sum(np.abs(self.diag) ** 2))
        return total + 2.0 * float(np.sum(np.abs(self.upper) ** 2))


def gaussian_stream(seed: int, sample_index: int, count: int) -> np.ndarray:
    """Standard normals number ``0 .. count-1`` of the stream ``(seed, sample_index)``.

    Uniforms come from a Philox-4x64 counter generator keyed by
    ``seed + 2**64 * sample_index``; consecutive pairs are turned into normals
    by the Box-Muller transform ``sqrt(-2 log u1) * (cos, sin)(2 pi u2)``.
    Normal number ``k`` depends only on the key and ``k``.
    """
    if sample_index < 0:
        raise ValueError("sample_index must be nonnegative")
    key = int(seed) + (int(sample_index) << 64)
    bitgen = np.random.Philox(key=key)
    npairs = (count + 1) // 2
    raw = bitgen.random_raw(2 * npairs)
    # (0, 1]: avoids log(0)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * _U53
    u1, u2 = u[0::2], u[1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * npairs)
    out[0::2] = r * np.cos(2.0 * np.pi * u2)
    out[1::2] = r * np.sin(2.0 * np.pi * u2)
    return out[:count]


def sample_matrix(params: EnsembleParams, sample_index: int) -> BlockBandMatrix:
    """Draw one matrix of the ensemble.

    Diagonal blocks are GUE-like: real diagonal with variance ``J_jj`` and
    complex off-diagonal entries with ``E|h|^2 = J_jj``.  Blocks ``(j, j+1)``
    hold i.i.d. complex entries with ``E|h|^2 = J_{j,j+1}``.  The normal
    stream is consumed block by block in a fixed order, so the result is a
    pure function of ``(params, sample_index)``.
    """
    n, W = params.n, params.W
    J = variance_profile(params)
    count = n * W * W + 2 * (n - 1) * W * W
    g = gaussian_stream(params.seed, sample_index, count)

    iu = np.triu_indices(W, k=1)
    npair = iu[0].size
    diag = np.zeros((n, W, W), dtype=complex)
    pos = 0
    for j in range(n):
        sd = np.sqrt(J[j, j])
        d = g[pos : pos + W] * sd
        pos += W
        re = g[pos : pos + npair]
        im = g[pos + npair : pos + 2 * npair]
        pos += 2 * npair
        off = (re + 1j * im) * (sd / np.sqrt(2.0))
        block = np.zeros((W, W), dtype=complex)
        block[iu] = off
        block = block + block.conj().T
        block[np.diag_indices(W)] = d
        diag[j] = block

    upper = np.zeros((max(n - 1, 0), W, W), dtype=complex)
    for j in range(n - 1):
        sd = np.sqrt(J[j, j + 1] / 2.0)
        re = g[pos : pos + W * W].reshape(W, W)
        im = g[pos + W * W : pos + 2 * W * W].reshape(W, W)
        pos += 2 * W * W
        upper[j] = (re + 1j * im) * sd
    return BlockBandMatrix(diag=diag, upper=upper)


def semicircle_cdf(x):
    """CDF of the semicircle density ``sqrt(4 - x^2) / (2 pi)``."""
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    return (x * np.sqrt(4.0 - x * x) + 4.0 * np.arcsin(x / 2.0)) / (4.0 * np.pi) + 0.5


@dataclass(frozen=True)
class DensityHistogram:
    edges: np.ndarray
    density: np.ndarray
    cdf_distance: float

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])


def empirical_density(spectra, bins: int = 100) -> DensityHistogram:
    """Normalized histogram of pooled eigenvalues on ``[-2.5, 2.5]``.

    Also returns the Kolmogorov distance between the pooled empirical CDF
    and the semicircle CDF (evaluated on both sides of every jump).
    """
    spectra = list(spectra)
    if not spectra:
        raise ValueError("empirical_density needs at least one spectrum")
    if bins < 1:
        raise ValueError("bins must be positive")
    x = np.sort(np.concatenate([np.asarray(s, dtype=float).ravel() for s in spectra]))
    m = x.size
    edges = np.linspace(-2.5, 2.5, bins + 1)
    counts, _ = np.histogram(x, bins=edges)
    inside = counts.sum()
    density = counts / (max(inside, 1) * np.diff(edges))

    F = semicircle_cdf(x)
    upper = np.arange(1, m + 1) / m
    lower = np.arange(0, m) / m
    dist = float(max(np.max(np.abs(upper - F)), np.max(np.abs(F - lower))))
    return DensityHistogram(edges=edges, density=density, cdf_distance=dist)
