"""Matrix coefficients of the spin-``l`` representations of ``U(2)`` and the
eigenvalues of the one-site operators diagonal in them.

The coefficient functions are computed from the circular integral

    P_mk(cos theta) = c_mk / (2 pi) int_0^{2 pi}
        (cos(theta/2) + i sin(theta/2) e^{i phi})^{l+k}
        (cos(theta/2) + i sin(theta/2) e^{-i phi})^{l-k} e^{i (m-k) phi} dphi

with ``c_mk = sqrt((l-m)! (l+m)! / ((l-k)! (l+k)!))``.  The integrand is a
trigonometric polynomial, so the trapezoid rule with enough points is exact.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

__all__ = [
    "legendre_p_complex",
    "legendre_p",
    "rep_eigenvalue_u",
    "first_type_eigenvalue",
    "MAX_L",
]

MAX_L = 64
_QUAD_OPTS = dict(epsabs=1e-14, epsrel=1e-12, limit=400)


def _check(l: int, m: int, k: int):
    if l < 0 or abs(m) > l or abs(k) > l:
        raise ValueError(f"indices out of range: l={l}, m={m}, k={k}")


def legendre_p_complex(l: int, m: int, k: int, theta):
    """The circular integral as written, ``i^{k-m} d^l_{mk}(theta)``."""
    _check(l, m, k)
    theta = np.asarray(theta, dtype=float)
    nphi = 2 * l + 2 * abs(m - k) + 8
    phi = 2.0 * np.pi * np.arange(nphi) / nphi
    ch = np.cos(theta / 2.0)[..., None]
    sh = np.sin(theta / 2.0)[..., None]
    e = np.exp(1j * phi)
    f = (ch + 1j * sh * e) ** (l + k) * (ch + 1j * sh / e) ** (l - k) * e ** (m - k)
    cmk = math.sqrt(
        math.factorial(l - m) * math.factorial(l + m) / (math.factorial(l - k) * math.factorial(l + k))
    )
    out = cmk * f.mean(axis=-1)
    # at theta = 0 the integrand is e^{i(m-k)phi}: the identity, exactly
    out = np.where(theta == 0.0, float(m == k), out)
    return complex(out) if out.ndim == 0 else out


def legendre_p(l: int, m: int, k: int, x):
    """Real coefficient function ``P^{(l)}_{mk}(x)``, ``x = cos theta``.

    Equal to the circular integral times ``i^{m-k}``, which removes the
    phase and yields the real rotation matrix element (Wigner's small ``d``).
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    raw = legendre_p_complex(l, m, k, np.arccos(x))
    out = np.real(raw * 1j ** ((m - k) % 4))
    return float(out) if np.ndim(out) == 0 else out


def _theta_integral(f, tW: float) -> float:
    # the weight e^{-tW sin^2(theta/2)} lives in theta < ~ 2 sqrt(40 / tW)
    cut = 2.0 * math.asin(min(1.0, math.sqrt(60.0 / tW)))
    pieces = [(0.0, cut)] + ([(cut, math.pi)] if cut < math.pi else [])
    total = 0.0
    for a, b in pieces:
        val, err = quad(f, a, b, **_QUAD_OPTS)
        if not math.isfinite(val) or err > 1e-9 * max(1.0, abs(val)):
            raise RuntimeError("theta quadrature did not converge")
        total += val
    return total


def rep_eigenvalue_u(l: int, s: int, tW: float) -> float:
    """``(tW / 2) int_0^pi e^{-tW sin^2(theta/2)} sin^{2s}(theta/2) P_00(cos theta) sin theta dtheta``.

    The ``1/2`` is the normalized Haar measure of the rotation angle.  For
    large ``tW`` the value is ``s! (tW)^{-s}`` to leading order when
    ``s >= 1`` and ``1 - l(l+1)/tW`` when ``s = 0``.
    """
    if not tW > 0:
        raise ValueError("tW must be positive")
    if not 0 <= l <= MAX_L or s < 0:
        raise ValueError("need 0 <= l <= 64 and s >= 0")

    def f(th):
        h = math.sin(th / 2.0) ** 2
        return math.exp(-tW * h) * h**s * legendre_p(l, 0, 0, math.cos(th)) * math.sin(th)

    return 0.5 * tW * _theta_integral(f, tW)


def first_type_eigenvalue(l: int, q: int, s: int, tW: float) -> float:
    """Eigenvalue of a first-type one-site operator on the ``(l, q)`` component.

    ``(tW / 2) int e^{-tW sin^2(theta/2)} sin(theta/2) cos^{2(s+q)+1}(theta/2)
    P_{-1-q, -q}(cos theta) sin theta dtheta``; leading order
    ``(tW)^{-1} sqrt((l+q+1)(l-q))``.  For ``q = l`` the row index leaves the
    representation and the value is exactly 0.
    """
    if not tW > 0:
        raise ValueError("tW must be positive")
    if not 0 <= l <= MAX_L or abs(q) > l or s < 0:
        raise ValueError("need 0 <= l <= 64, |q| <= l and s >= 0")
    if s + q < 0:
        raise ValueError("need s + q >= 0")
    m, k = -1 - q, -q
    if abs(m) > l:
        return 0.0

    def f(th):
        a = th / 2.0
        return (
            math.exp(-tW * math.sin(a) ** 2)
            * math.sin(a)
            * math.cos(a) ** (2 * (s + q) + 1)
            * legendre_p(l, m, k, math.cos(th))
            * math.sin(th)
        )

    return 0.5 * tW * _theta_integral(f, tW)
