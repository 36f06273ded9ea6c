"""Closed-form eigenvalue conditions for equal-width bilayer stacks.

Each residual takes ``(E, V)`` with unit layer width and vanishes exactly at
the eigenvalues of its geometry. They are written in product form: the
tan/tanh conditions are multiplied through by ``cos(k) cosh(q)`` (squared for
the three-period condition), which is positive away from the poles of
``tan``. That leaves the zeros and signs unchanged and removes the poles that
would otherwise fake sign changes during bracketing.

With ``k = sqrt(E)`` and ``q = sqrt(V - E)``:

=================  ==================================================
one period, D      ``q tan k + k tanh q = 0``
one period, N      ``k tan k = q tanh q``
reduced, 2 period  ``2 k q + (q^2 - k^2) tan k tanh q = 0``
reduced, 3 period  quartic in ``tan k``, ``tanh q`` (see :func:`reduced_3p`)
above barrier, D   ``p tan k + k tan p = 0`` with ``p = sqrt(E - V)``
=================  ==================================================

The full two- and three-period conditions factor as the reduced condition
times the one-period condition of the same end type.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .stack import BoundaryCondition


class BranchLabel(enum.Enum):
    ONE_PERIOD_DIRICHLET = "dirichlet_1p"
    ONE_PERIOD_NEUMANN = "neumann_1p"
    REDUCED_MULTI_PERIOD_2 = "reduced_2p"
    REDUCED_MULTI_PERIOD_3 = "reduced_3p"
    DIRICHLET_ABOVE_V = "dirichlet_above_v"


class KQPair(NamedTuple):
    k: np.ndarray
    q: np.ndarray


def kq_pair(E, V, allow_zero_energy: bool = False) -> KQPair:
    """Well wavenumber ``sqrt(E)`` and barrier decay constant ``sqrt(V - E)``."""
    E = np.asarray(E, dtype=float)
    V = np.asarray(V, dtype=float)
    lower_ok = (E >= 0) if allow_zero_energy else (E > 0)
    if not np.all(lower_ok & (E < V)):
        bound = "[0, V)" if allow_zero_energy else "(0, V)"
        raise ValueError(f"energy must lie in {bound}; got E={E}, V={V}")
    return KQPair(np.sqrt(E), np.sqrt(V - E))


def u_dirichlet_1p(E, V):
    """One period, Dirichlet walls: ``q sin k cosh q + k cos k sinh q``."""
    k, q = kq_pair(E, V)
    return q * np.sin(k) * np.cosh(q) + k * np.cos(k) * np.sinh(q)


def u_neumann_1p(E, V):
    """One period, Neumann walls: ``q sinh q cos k - k sin k cosh q``.

    ``E = 0`` is admitted; there the residual is ``sqrt(V) sinh(sqrt(V))``,
    which vanishes only for ``V = 0``.
    """
    k, q = kq_pair(E, V, allow_zero_energy=True)
    return q * np.sinh(q) * np.cos(k) - k * np.sin(k) * np.cosh(q)


def reduced_2p(E, V):
    """Two periods with the one-period factor removed (same for D and N)."""
    k, q = kq_pair(E, V)
    return 2 * k * q * np.cos(k) * np.cosh(q) + (q**2 - k**2) * np.sin(k) * np.sinh(q)


def reduced_3p(E, V):
    """Three periods with the one-period factor removed (same for D and N).

    ``(k^4 - k^2 q^2 + q^4) tan^2 k tanh^2 q + k^2 q^2 (3 + tanh^2 q - tan^2 k)
    + 4 k q (q^2 - k^2) tan k tanh q``, multiplied by ``cos^2 k cosh^2 q``.
    """
    k, q = kq_pair(E, V)
    c, s = np.cos(k), np.sin(k)
    ch, sh = np.cosh(q), np.sinh(q)
    k2, q2 = k**2, q**2
    return (
        (k2**2 - k2 * q2 + q2**2) * s**2 * sh**2
        + k2 * q2 * (3 * c**2 * ch**2 + c**2 * sh**2 - s**2 * ch**2)
        + 4 * k * q * (q2 - k2) * s * c * sh * ch
    )


def dirichlet_above_v(E, V):
    """One period, Dirichlet walls, ``E > V``: ``p sin k cos p + k cos k sin p``."""
    E = np.asarray(E, dtype=float)
    V = np.asarray(V, dtype=float)
    if not np.all((E > V) & (V >= 0)):
        raise ValueError(f"need E > V >= 0; got E={E}, V={V}")
    k, p = np.sqrt(E), np.sqrt(E - V)
    return p * np.sin(k) * np.cos(p) + k * np.cos(k) * np.sin(p)


_ONE_PERIOD = {
    BoundaryCondition.DIRICHLET: u_dirichlet_1p,
    BoundaryCondition.NEUMANN: u_neumann_1p,
}
_REDUCED = {2: reduced_2p, 3: reduced_3p}


def factored_full(E, V, periods: int, bc="dirichlet"):
    """Full two- or three-period condition: reduced factor times one-period factor."""
    if periods not in _REDUCED:
        raise ValueError(f"closed forms exist for 2 or 3 periods, got {periods}")
    bc = BoundaryCondition.parse(bc)
    return _REDUCED[periods](E, V) * _ONE_PERIOD[bc](E, V)


def closed_form(periods: int, bc="dirichlet"):
    """Residual ``f(E, V)`` for an ``periods``-period stack with ``bc`` walls."""
    bc = BoundaryCondition.parse(bc)
    if periods == 1:
        return _ONE_PERIOD[bc]
    if periods not in _REDUCED:
        raise ValueError(f"closed forms exist for 1 to 3 periods, got {periods}")
    return lambda E, V: factored_full(E, V, periods, bc)


def bracket_roots(f, lo: float, hi: float, n: int = 20001, xtol: float = 1e-14) -> list[float]:
    """Roots of a scalar function on ``(lo, hi)``: grid sign scan plus Brent."""
    x = np.linspace(lo, hi, n)
    y = f(x)
    roots = []
    for i in np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0):
        roots.append(brentq(f, x[i], x[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    roots.extend(x[np.flatnonzero(y == 0)])
    return sorted(roots)


def closed_form_roots(periods: int, bc, V: float, n: int = 20001) -> list[float]:
    """Eigenvalues in ``(0, V)`` of a ``periods``-period stack from its closed form."""
    f = closed_form(periods, bc)
    eps = 1e-9 * max(1.0, V)
    return bracket_roots(lambda E: f(E, V), eps, V - eps, n)


def _raw_kq(E, V):
    k, q = kq_pair(E, V)
    return k, q, np.tan(k), np.tanh(q)


def raw_one_period(E, V, bc="dirichlet"):
    """The tan/tanh one-period conditions as written, poles included."""
    k, q, t, th = _raw_kq(E, V)
    if BoundaryCondition.parse(bc) is BoundaryCondition.DIRICHLET:
        return q * t + k * th
    return q * th - k * t


def raw_reduced(E, V, periods: int):
    """The tan/tanh reduced multi-period conditions as written."""
    k, q, t, th = _raw_kq(E, V)
    if periods == 2:
        return 2 * k * q + (q**2 - k**2) * t * th
    if periods == 3:
        return (
            (k**4 - k**2 * q**2 + q**4) * t**2 * th**2
            + k**2 * q**2 * (3 + th**2 - t**2)
            + 4 * k * q * (q**2 - k**2) * t * th
        )
    raise ValueError(f"closed forms exist for 2 or 3 periods, got {periods}")


def raw_full(E, V, periods: int, bc="dirichlet"):
    if periods == 1:
        return raw_one_period(E, V, bc)
    return raw_reduced(E, V, periods) * raw_one_period(E, V, bc)
