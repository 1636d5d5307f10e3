"""Grid check of the contour inequalities for ``Re Lambda``.

``Lambda(x, y) = beta (x - y)^2 / 2 - phi0(x) / 2 - phi0(y) / 2 + Re phi0(a_+)``
is evaluated on rays through ``e^{i phi0}`` (``phi0 = arg a_+``).  With
``Lambda1(t, s) = Re Lambda(t e^{i phi0}, s e^{i phi0})`` and
``Lambda2(t, s) = Re Lambda(e^{i phi0} + t e^{i psi}, e^{i phi0} + s e^{i psi})``
the check looks for ``c > 0`` with

    Lambda1(t, s) <= -c ((t - 1)^2 + (s - 1)^2)
    Lambda2(t, s) <= -c (t^2 + s^2)

and, when ``|phi0| > pi/4``, the cross inequality
``Re Lambda(t e^{i phi0}, e^{i phi0} + s e^{i psi}) <= Lambda1(t, 1) + Lambda2(0, s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..analytic import a_pm

__all__ = ["LandscapeReport", "landscape_lambda", "landscape_check"]

C_MAX = 0.5
_TOL = 1e-12


@dataclass(frozen=True)
class LandscapeReport:
    E: float
    beta: float
    grid: int
    phi0: float
    psi: float | None
    c: float
    margins: dict[str, float] = field(default_factory=dict)
    passed: bool = False

    @property
    def regime(self) -> str:
        return "ray" if self.psi is None else "bent"


def _re_phi0(x, E):
    return np.real(x * x / 2.0 - 1j * x * E - np.log(x))


def landscape_lambda(x, y, E: float, beta: float):
    """``Re Lambda(x, y)`` (vectorized over complex ``x, y``)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    ap, _ = a_pm(E)
    base = float(_re_phi0(ap, E))
    return np.real(beta * (x - y) ** 2 / 2.0) - _re_phi0(x, E) / 2.0 - _re_phi0(y, E) / 2.0 + base


def _fit_c(value: np.ndarray, penalty: list[np.ndarray]) -> float:
    """Largest ``c`` in ``(0, C_MAX]`` with ``max(value + c * penalty) <= tol`` for all pairs."""

    def ok(c):
        return all(np.max(v + c * p) <= _TOL for v, p in zip(value, penalty))

    if not ok(0.0):
        return 0.0
    if ok(C_MAX):
        return C_MAX
    lo, hi = 0.0, C_MAX
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if ok(mid) else (lo, mid)
    return lo


def landscape_check(E: float, beta: float, grid: int = 200, c: float | None = None) -> LandscapeReport:
    """Search a ``grid x grid`` lattice for the constant ``c`` of the bounds.

    For ``|phi0| <= pi/4`` both ``Lambda1`` and ``Lambda2`` are taken along
    the ray itself (``psi = phi0``) on ``(0, 4]^2``.  Otherwise ``Lambda1``
    is restricted to ``(0, 1]^2``, the contour bends at ``e^{i phi0}`` to the
    direction ``psi`` (midpoint of the admissible interval) and the cross
    inequality is checked as well.  ``c`` is fitted by bisection unless
    given; the fitted value is backed off by 1% so the margins are strictly
    nonpositive away from the saddle point.  Negative ``E`` is mapped to ``|E|`` by
    complex conjugation, which leaves ``Re Lambda`` unchanged.
    """
    if not 0.0 < beta < 0.25:
        raise ValueError("beta must lie in (0, 0.25)")
    if not 0.0 < abs(E) < 2.0:
        raise ValueError("landscape_check needs 0 < |E| < 2")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    Ea = abs(E)
    phi = math.asin(Ea / 2.0)
    u = np.exp(1j * phi)
    bent = phi > math.pi / 4.0 + 1e-12

    def lam(x, y):
        return landscape_lambda(x, y, Ea, beta)

    t1 = np.arange(1, grid + 1) * ((1.0 if bent else 4.0) / grid)
    T, S = np.meshgrid(t1, t1, indexing="ij")
    L1 = lam(T * u, S * u)
    P1 = (T - 1.0) ** 2 + (S - 1.0) ** 2

    if not bent:
        psi = None
        t2 = np.arange(1, grid + 1) * (4.0 / grid)
        T2, S2 = np.meshgrid(t2, t2, indexing="ij")
        # Lambda2 on the same ray, measured from the saddle point
        L2 = lam(u * (1.0 + T2), u * (1.0 + S2))
        P2 = T2**2 + S2**2
        values, penalties = [L1, L2], [P1, P2]
        cross = None
    else:
        lo = max(math.pi / 2.0 - phi, phi - math.pi / 4.0)
        psi = 0.5 * (lo + math.pi / 4.0)
        v = np.exp(1j * psi)
        t2 = np.linspace(0.0, 4.0, grid)
        T2, S2 = np.meshgrid(t2, t2, indexing="ij")
        L2 = lam(u + T2 * v, u + S2 * v)
        P2 = T2**2 + S2**2
        # cross term: first argument on the ray, second on the bent piece
        tc = np.arange(1, grid + 1) / grid
        TC, SC = np.meshgrid(tc, t2, indexing="ij")
        lam1_t1 = lam(tc * u, u)[:, None]
        lam2_0s = lam(u, u + t2 * v)[None, :]
        cross = lam(TC * u, u + SC * v) - lam1_t1 - lam2_0s
        values, penalties = [L1, L2, cross], [P1, P2, np.zeros_like(cross)]

    if c is None:
        c = 0.99 * _fit_c(values, penalties)
    margins = {
        "lambda1": float(np.max(L1 + c * P1)),
        "lambda2": float(np.max(L2 + c * P2)),
    }
    if cross is not None:
        margins["cross"] = float(np.max(cross))
    passed = c > 0.0 and all(m <= _TOL for m in margins.values())
    return LandscapeReport(E=E, beta=beta, grid=grid, phi0=phi, psi=psi, c=c, margins=margins, passed=passed)
