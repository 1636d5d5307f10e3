"""Reference implementations used only by the tests.

They are deliberately naive and independent of the package code paths.
"""

from __future__ import annotations

import math

import numpy as np


def jacobi_eigenvalues(A, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations."""
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.abs(A - np.diag(np.diag(A))) ** 2)))
        if off < tol * max(1.0, float(np.linalg.norm(A))):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                # remove the phase, then a real symmetric rotation
                phase = apq / abs(apq)
                app, aqq = A[p, p].real, A[q, q].real
                theta = 0.5 * math.atan2(2.0 * abs(apq), aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                G = np.eye(n, dtype=complex)
                G[p, p] = c
                G[q, q] = c
                G[p, q] = s * phase
                G[q, p] = -s * np.conj(phase)
                A = G.conj().T @ A @ G
    return np.sort(np.diag(A).real)


def direct_det_ratio(H, num, den) -> complex:
    """``prod det(H - num_m) / det(H - den_m)`` from dense determinants."""
    H = np.asarray(H, dtype=complex)
    I = np.eye(H.shape[0])
    out = 1.0 + 0j
    for zn, zd in zip(num, den):
        out *= np.linalg.det(H - zn * I) / np.linalg.det(H - zd * I)
    return out


def spin1_rotation(theta: float) -> dict:
    """Hand-derived ``l = 1`` coefficient functions keyed by ``(m, k)``.

    Rows and columns run over ``m, k in {1, 0, -1}``; real convention.
    """
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    r2 = math.sqrt(2.0)
    return {
        (1, 1): c * c,
        (0, 1): r2 * c * s,
        (-1, 1): s * s,
        (1, 0): -r2 * c * s,
        (0, 0): c * c - s * s,
        (-1, 0): r2 * c * s,
        (1, -1): s * s,
        (0, -1): -r2 * c * s,
        (-1, -1): c * c,
    }


def semicircle_cdf_quad(x: float) -> float:
    """Semicircle CDF by direct numerical integration of the density."""
    from scipy.integrate import quad

    x = min(max(x, -2.0), 2.0)
    val, _ = quad(lambda t: math.sqrt(max(4.0 - t * t, 0.0)) / (2.0 * math.pi), -2.0, x)
    return val
