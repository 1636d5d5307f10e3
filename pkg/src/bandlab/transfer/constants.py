"""Scalars of the transfer kernels and the 2x2 matrices ``Q(c)``."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..analytic import a_pm

__all__ = ["TransferConstants", "q_matrix", "transfer_constants", "phi0", "phi0_prime", "phi0_second"]


@dataclass(frozen=True)
class TransferConstants:
    """Every scalar the kernels ``A_*^+`` and ``A_*^-`` depend on.

    Fields ending in ``_plus``/``_minus`` belong to the saddle points
    ``a_+`` and ``a_-``.
    """

    E: float
    beta: float
    a_plus: complex
    a_minus: complex
    c_plus: complex
    c_minus: complex
    kappa_plus: complex
    kappa_minus: complex
    theta_plus: complex
    theta_minus: complex
    lambda0_plus: complex
    lambda0_minus: complex
    q_plus: complex
    q_minus: complex
    c0_plus: complex
    c0_minus: complex
    c1_plus: complex
    c1_minus: complex

    def side(self, sign: str) -> dict[str, complex]:
        """The constants of one saddle point, keyed without the suffix."""
        suffix = {"+": "_plus", "-": "_minus"}[sign]
        names = ("a", "c", "kappa", "theta", "lambda0", "q", "c0", "c1")
        return {k: getattr(self, k + suffix) for k in names}


def q_matrix(c: complex, beta: float) -> np.ndarray:
    """``Q(c) = [[beta - c, 1], [-beta c, beta]]`` acting on coefficients of ``(1, n)``."""
    return np.array([[beta - c, 1.0], [-beta * c, beta]], dtype=complex)


def phi0(x: complex, E: float) -> complex:
    """``x^2 / 2 - i x E - log x`` on the principal branch."""
    x = complex(x)
    if x == 0:
        raise ValueError("phi0 is singular at x = 0")
    return x * x / 2.0 - 1j * x * E - cmath.log(x)


def phi0_prime(x: complex, E: float) -> complex:
    x = complex(x)
    return x - 1j * E - 1.0 / x


def phi0_second(x: complex) -> complex:
    x = complex(x)
    return 1.0 + 1.0 / (x * x)


def _side(a: complex, beta: float):
    c = 1.0 + a**-2
    kappa = cmath.sqrt(c * c / 4.0 - beta * c)
    # principal root unless that picks the subdominant eigenvalue (near |E| = 2)
    if abs(c / 2.0 + kappa - beta) < abs(c / 2.0 - kappa - beta):
        kappa = -kappa
    theta = cmath.sqrt(abs(kappa) / kappa) if kappa != 0 else 1.0 + 0j
    lam0 = beta - c / 2.0 - kappa
    q = beta / (kappa + c / 2.0 - beta)
    return c, kappa, theta, lam0, q, c / 2.0 + kappa, c / 2.0 - kappa


def transfer_constants(E: float, beta: float) -> TransferConstants:
    if not abs(E) < 2.0:
        raise ValueError("E must satisfy |E|<2")
    if not 0.0 < beta < 0.25:
        raise ValueError("beta must lie in (0, 0.25)")
    ap, am = a_pm(E)
    cp, kp, tp, lp, qp, c0p, c1p = _side(ap, beta)
    cm, km, tm, lm, qm, c0m, c1m = _side(am, beta)
    return TransferConstants(
        E=E,
        beta=beta,
        a_plus=ap,
        a_minus=am,
        c_plus=cp,
        c_minus=cm,
        kappa_plus=kp,
        kappa_minus=km,
        theta_plus=tp,
        theta_minus=tm,
        lambda0_plus=lp,
        lambda0_minus=lm,
        q_plus=qp,
        q_minus=qm,
        c0_plus=c0p,
        c0_minus=c0m,
        c1_plus=c1p,
        c1_minus=c1m,
    )
