"""Eigenvalues of a stack by sign scanning plus bisection of the mismatch."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .propagate import mismatch, mismatch_values
from .stack import BoundaryCondition, PotentialStack, make_periodic_bilayer

GRID_POINTS_PER_UNIT = 2000
MIN_GRID_POINTS = 2000
BISECTION_RTOL = 1e-10
MAX_BISECTIONS = 200
DEDUP_ATOL = 1e-9


class ConvergenceError(RuntimeError):
    """Bisection hit the iteration cap; ``brackets`` lists the offenders."""

    def __init__(self, brackets):
        self.brackets = list(brackets)
        super().__init__(f"bisection did not converge on brackets {self.brackets}")


@dataclass(frozen=True)
class EnergyWindow:
    lo: float
    hi: float
    grid_points: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"need finite lo < hi, got ({self.lo}, {self.hi})")
        if self.grid_points is None:
            n = max(MIN_GRID_POINTS, math.ceil(GRID_POINTS_PER_UNIT * (self.hi - self.lo)))
            object.__setattr__(self, "grid_points", n)
        elif int(self.grid_points) != self.grid_points or self.grid_points < 2:
            raise ValueError(f"grid_points must be an integer >= 2, got {self.grid_points}")

    @property
    def inset(self) -> float:
        return 1e-9 * max(1.0, abs(self.hi))

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo + self.inset, self.hi - self.inset, int(self.grid_points))


@dataclass(frozen=True)
class Eigenvalue:
    energy: float
    bracket: tuple[float, float]
    node_count: int
    below_barrier: bool
    proximity_valid: bool = field(init=False)

    def __post_init__(self):
        # the gap function must not change sign
        object.__setattr__(self, "proximity_valid", self.node_count == 0)


def _bisect(stack, a, b, fa):
    # run down to adjacent floats; BISECTION_RTOL is the width that must be reached
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (a + b)
        if not a < mid < b:
            break
        fm = mismatch(stack, mid).value
        if fm == 0.0:
            return mid, mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    if b - a <= BISECTION_RTOL * max(1.0, abs(0.5 * (a + b))):
        return a, b
    return None


def find_eigenvalues(stack: PotentialStack, window: EnergyWindow | None = None) -> list[Eigenvalue]:
    """All eigenvalues with a sign change of the mismatch inside ``window``.

    Brackets are bisected to adjacent floating-point numbers, well inside the
    required relative width ``BISECTION_RTOL``. Roots where the mismatch
    touches zero without changing sign are missed.
    The default window is ``(0, max potential)``.
    """
    from .wavefunction import build_wavefunction, count_nodes

    if window is None:
        window = EnergyWindow(0.0, stack.max_potential)
    E = window.grid()
    f, _ = mismatch_values(stack, E)

    brackets = []
    failed = []
    for i in np.flatnonzero(f == 0.0):
        brackets.append((E[i], E[i]))
    for i in np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0):
        found = _bisect(stack, E[i], E[i + 1], f[i])
        if found is None:
            failed.append((float(E[i]), float(E[i + 1])))
        else:
            brackets.append(found)
    if failed:
        raise ConvergenceError(failed)

    brackets.sort()
    merged: list[tuple[float, float]] = []
    for lo, hi in brackets:
        if merged and 0.5 * (lo + hi) - 0.5 * sum(merged[-1]) < DEDUP_ATOL:
            continue
        merged.append((float(lo), float(hi)))

    vmax = stack.max_potential
    out = []
    for lo, hi in merged:
        energy = 0.5 * (lo + hi)
        nodes = count_nodes(build_wavefunction(stack, energy, "max"))
        out.append(Eigenvalue(energy, (lo, hi), nodes, energy < vmax))
    return out


def lowest_eigenvalue(stack: PotentialStack, window: EnergyWindow | None = None) -> Eigenvalue | None:
    found = find_eigenvalues(stack, window)
    return found[0] if found else None


def _has_bound_state(periods: int, V: float) -> bool:
    if V <= 0:
        return False
    return bool(find_eigenvalues(make_periodic_bilayer(periods, V, BoundaryCondition.DIRICHLET)))


def dirichlet_threshold(periods: int = 1, tol: float = 1e-6) -> float:
    """Smallest barrier ``V`` at which the Dirichlet stack binds a state below ``V``.

    Bisection on ``V``; at the threshold the lowest eigenvalue meets ``E = V``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = 0.0, 1.0
    while not _has_bound_state(periods, hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e6:
            raise ConvergenceError([(lo, hi)])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _has_bound_state(periods, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
