"""Gaussian transfer kernels ``A_*^+-`` in the rotated Hermite basis.

After rotating the integration contour by ``theta`` the kernel of ``A_*`` is

    A(s, t) = (-lambda0)^{1/2} theta / sqrt(2 pi)
              * exp(theta^2 [beta (s - t)^2 / 2 - c (s^2 + t^2) / 4])

with ``theta^2 kappa = |kappa|`` real and positive.  Its eigenfunctions are
the Hermite functions of scale ``|kappa|^{1/2}`` and its eigenvalues are
``(-q)^k``, so ``|lambda_k| = |q|^k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermite

from .constants import transfer_constants

__all__ = ["HermiteKernelMatrix", "hermite_discretize", "hermite_functions", "MAX_ORDER"]

MAX_ORDER = 40
_CONVERGENCE_TOL = 1e-10


@dataclass(frozen=True)
class HermiteKernelMatrix:
    """``entries[j, k] = <psi_j, A psi_k>`` (bilinear pairing, no conjugation)."""

    sign: str
    K: int
    entries: np.ndarray
    q: complex
    nodes: int

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted by decreasing modulus."""
        w = np.linalg.eigvals(self.entries)
        return w[np.argsort(-np.abs(w), kind="stable")]

    def q_powers(self) -> np.ndarray:
        """``q^k``, ``k < K``."""
        return self.q ** np.arange(self.K)

    def alternating_q_powers(self) -> np.ndarray:
        """``(-q)^k``: the exact spectrum of the kernel as written.

        The cross term ``-theta^2 beta s t`` is negative, so odd Hermite
        functions pick up a sign (Mehler's formula).
        """
        return (-self.q) ** np.arange(self.K)

    def offdiag_ratio(self) -> float:
        """Largest off-diagonal modulus relative to the largest diagonal one."""
        a = np.abs(self.entries)
        off = a - np.diag(np.diag(a))
        return float(off.max() / np.diag(a).max())


def hermite_functions(K: int, x) -> np.ndarray:
    """Orthonormal ``h_k(x) e^{-x^2/2}`` for ``k < K``, shape ``(K, len(x))``.

    Physicists' Hermite polynomials normalized on the weight ``e^{-x^2}``,
    built by the stable three-term recurrence.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros((K, x.size))
    g = np.exp(-(x**2) / 2.0)
    out[0] = math.pi**-0.25 * g
    if K > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(2, K):
        out[k] = math.sqrt(2.0 / k) * x * out[k - 1] - math.sqrt((k - 1) / k) * out[k - 2]
    return out


def _matrix(K: int, nodes: int, omega2: complex, beta: float, c: complex, kabs: float, pref: complex):
    x, w = roots_hermite(nodes)
    # orthonormal polynomial parts: psi_k(x) e^{x^2/2}
    h = hermite_functions(K, x) * np.exp(x**2 / 2.0)
    # substitute s = x / |kappa|^{1/2}; Gauss weight e^{-x^2 - y^2} is divided out
    X, Y = np.meshgrid(x, x, indexing="ij")
    expo = omega2 * (beta * (X - Y) ** 2 / 2.0 - c * (X**2 + Y**2) / 4.0) / kabs
    expo = expo + (X**2 + Y**2) / 2.0
    G = pref * np.exp(expo) / math.sqrt(kabs)
    return (h * w) @ G @ (h * w).T


def hermite_discretize(sign: str, E: float, beta: float, K: int, nodes: int | None = None) -> HermiteKernelMatrix:
    """Matrix of ``A_*^sign`` in the first ``K`` rotated Hermite functions.

    Entries come from tensor Gauss-Hermite quadrature with at least
    ``2K + 16`` nodes per axis; the rule is rerun with twice the nodes and
    any entry moving by more than 1e-10 raises ``RuntimeError``.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if not 1 <= K <= MAX_ORDER:
        raise ValueError(f"K must lie in [1, {MAX_ORDER}]")
    T = transfer_constants(E, beta)
    d = T.side(sign)
    c, kappa, lam0 = d["c"], d["kappa"], d["lambda0"]
    omega = d["theta"]
    omega2 = omega * omega
    kabs = abs(kappa)
    pref = cmath.sqrt(-lam0) * omega / math.sqrt(2.0 * math.pi)
    m = max(nodes or 0, 2 * K + 16)
    A = _matrix(K, m, omega2, beta, c, kabs, pref)
    A2 = _matrix(K, 2 * m, omega2, beta, c, kabs, pref)
    if np.max(np.abs(A - A2)) > _CONVERGENCE_TOL:
        raise RuntimeError("Gauss-Hermite quadrature did not converge")
    return HermiteKernelMatrix(sign=sign, K=K, entries=A2, q=d["q"], nodes=2 * m)
