"""Haar integrals of the sigma-model limit and the derivative-bound recursion."""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "sigma_model_integrals",
    "sigma_model_closed_forms",
    "delta_s_coefficients",
    "apply_q_recursion",
    "MAX_M",
]

MAX_M = 12


def sigma_model_integrals(c: float, alpha1: float, alpha2: float, nodes: int = 96) -> tuple[float, float]:
    """``(I0, I2)`` by tensor Gauss quadrature over ``u = |U12|^2``, ``v = |S12|^2``.

    ``I0 = int du dv exp(c alpha1 phi_U - c alpha2 phi_S)`` and ``I2`` is the
    same integral weighted by ``(alpha1 phi_U + alpha2 phi_S)^2``, with
    ``phi_U = 2 (1 - 2u)`` on ``u in [0, 1]`` and ``phi_S = 2 (1 + 2v)`` on
    ``v >= 0``, both with flat measure.  ``u`` uses Gauss-Legendre nodes and
    ``v`` Gauss-Laguerre nodes of the rate ``4 c alpha2``; ``nodes`` sets the
    Legendre order.
    """
    if not c > 0 or not alpha1 > 0:
        raise ValueError("need c > 0 and alpha1 > 0")
    if not alpha2 > 0:
        raise ValueError("alpha2 must be > 0: the S integral diverges otherwise")
    x, wx = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (x + 1.0)
    wu = 0.5 * wx
    # the v integrand is e^{-rate v} times a quadratic: 8 Laguerre nodes are exact
    y, wy = np.polynomial.laguerre.laggauss(8)
    rate = 4.0 * c * alpha2
    v = y / rate
    wv = wy / rate
    phi_u = 2.0 * (1.0 - 2.0 * u)
    phi_s = 2.0 * (1.0 + 2.0 * v)
    # e^{-c alpha2 phi_S} = e^{-2 c alpha2} e^{-rate v}; the second factor is the Laguerre weight
    fu = np.exp(c * alpha1 * phi_u)
    fv = np.full_like(v, math.exp(-2.0 * c * alpha2))
    U, S = np.meshgrid(phi_u, phi_s, indexing="ij")
    base = np.outer(wu * fu, wv * fv)
    I0 = float(np.sum(base))
    I2 = float(np.sum(base * (alpha1 * U + alpha2 * S) ** 2))
    return I0, I2


def sigma_model_closed_forms(c: float, alpha1: float, alpha2: float) -> tuple[float, float]:
    """Closed forms of ``(I0, I2)``.

    ``I0 = e^{-2c a2} sinh(2c a1) / (8 c^2 a1 a2)`` and
    ``I2 = e^{-2c a2} / c^2 [(a1/(2a2) + a2/(2a1)) sinh(2c a1) + cosh(2c a1)
    + sinh(2c a1) / (4 c^2 a1 a2)]``.
    """
    if not c > 0 or not alpha1 > 0 or not alpha2 > 0:
        raise ValueError("need c, alpha1, alpha2 > 0")
    a1, a2 = alpha1, alpha2
    x = 2.0 * c * a1
    e = math.exp(-2.0 * c * a2)
    sh, ch = math.sinh(x), math.cosh(x)
    I0 = e * sh / (8.0 * c * c * a1 * a2)
    I2 = e / (c * c) * ((a1 / (2.0 * a2) + a2 / (2.0 * a1)) * sh + ch + sh / (4.0 * c * c * a1 * a2))
    return I0, I2


def apply_q_recursion(q: list[int]) -> list[int]:
    """One step ``Q -> (x^2 + 2x) Q + (2x^2 + 2x) Q' + x^2 Q''`` on integer coefficients."""
    deg = len(q) - 1
    out = [0] * (deg + 3)
    for k, a in enumerate(q):
        if a == 0:
            continue
        out[k + 2] += a
        out[k + 1] += a * (2 + 2 * k)
        out[k] += a * (2 * k + k * (k - 1))
    return out


def delta_s_coefficients(m: int) -> tuple[list[int], int]:
    """Coefficients ``c_{m,k}`` of ``(d/dx x^2 d/dx)^m e^x = Q_{2m}(x) e^x``.

    Returns ``([c_{m,1}, ..., c_{m,2m}], Sigma_m)`` with ``Sigma_m`` the sum
    of absolute values.  Exact Python integers; ``m = 0`` gives ``([1], 1)``.
    """
    if not 0 <= m <= MAX_M:
        raise ValueError(f"m must lie in [0, {MAX_M}]")
    q = [1]
    for _ in range(m):
        q = apply_q_recursion(q)
    coeffs = q if m == 0 else q[1:]
    if m > 0 and q[0] != 0:
        raise AssertionError("constant term must vanish")
    return coeffs, sum(abs(a) for a in coeffs)
