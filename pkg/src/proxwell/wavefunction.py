"""Piecewise eigenfunctions assembled from propagated edge states.

The eigenfunction is shot from both walls and glued at the layer edge where
the two solutions agree best. Shooting from one side only is unstable: near
an eigenvalue the growing solution in each barrier eventually swamps the
decaying one, so the far end of a one-sided shot is mostly error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .propagate import DEGENERATE_RTOL, edge_states
from .stack import BoundaryCondition, PotentialStack

#: Largest relative disagreement of the two shots accepted as an eigenvalue.
MATCH_TOL = 1e-6
NODE_SAMPLES_PER_UNIT = 1000
# Barrier half-widths q*w/2 above this use the two-edge exponential form.
_HYP_DIRECT_LIMIT = 300.0


class Normalization(enum.Enum):
    L2_UNIT = "l2"
    MAX_UNIT = "max"
    RAW = "raw"

    @classmethod
    def parse(cls, value) -> "Normalization":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown normalization {value!r}; expected l2, max or raw") from None


def default_normalization(stack: PotentialStack) -> Normalization:
    """Unit L2 norm unless both walls are Neumann (then unit maximum)."""
    if stack.left_bc is stack.right_bc is BoundaryCondition.NEUMANN:
        return Normalization.MAX_UNIT
    return Normalization.L2_UNIT


@dataclass(frozen=True, eq=False)
class PiecewiseWavefunction:
    """Eigenfunction stored as ``(psi, dpsi)`` at every layer edge.

    ``edge_states[i]`` is the state at ``stack.edges[i]``; rows ``0..n-1`` are
    the left-edge states of the layers and row ``n`` is the right wall.
    ``match_residual`` is the sine of the angle between the two shots at the
    gluing edge ``match_index``. Layers left of that edge are evaluated from
    their left edge and the rest from their right edge, so any disagreement
    between the shots shows up only at the gluing edge.
    """

    stack: PotentialStack
    energy: float
    edge_states: np.ndarray
    normalization: Normalization
    match_index: int
    match_residual: float

    @property
    def layer_states(self) -> np.ndarray:
        return self.edge_states[:-1]

    def __call__(self, x):
        return evaluate(self, x)[0]


def _unit(v):
    return v / np.hypot(v[..., 0], v[..., 1])[..., None]


def build_wavefunction(stack: PotentialStack, energy: float, norm=None) -> PiecewiseWavefunction:
    """Eigenfunction of ``stack`` at the eigenvalue ``energy``.

    Raises ``ValueError`` when the shots from the two walls cannot be glued
    within ``MATCH_TOL``, i.e. ``energy`` is not an eigenvalue.
    """
    norm = default_normalization(stack) if norm is None else Normalization.parse(norm)
    energy = float(energy)
    left, log_left = edge_states(stack, energy)
    right, log_right = edge_states(stack, energy, from_right=True)

    ul, ur = _unit(left), _unit(right)
    with np.errstate(invalid="ignore"):
        sines = np.abs(ul[:, 0] * ur[:, 1] - ul[:, 1] * ur[:, 0])
    sines = np.where(np.isfinite(sines), sines, np.inf)
    n = len(stack.layers)
    # glue at an interior edge so each wall layer comes from its own shot
    candidates = np.arange(1, n) if n > 1 else np.arange(n + 1)
    m = int(candidates[np.argmin(sines[candidates])])
    if not sines[m] <= MATCH_TOL:
        raise ValueError(
            f"E={energy!r} is not an eigenvalue of the stack "
            f"(shots disagree by {sines[m]:.3g} at best)"
        )

    # scale the right shot onto the left one at edge m
    ratio = float(left[m] @ right[m] / (right[m] @ right[m]))
    idx = np.arange(n + 1)
    states = np.where((idx <= m)[:, None], left, right * math.copysign(1.0, ratio))
    log_amp = np.where(idx <= m, log_left, log_right + log_left[m] - log_right[m] + math.log(abs(ratio)))

    if norm is Normalization.RAW:
        log_amp = log_amp - log_amp[0]
    else:
        log_amp = log_amp - log_amp.max()
    with np.errstate(over="ignore", under="ignore"):
        states = states * np.exp(log_amp)[:, None]

    # the pinned components at the walls are exact
    pin_left = 0 if stack.left_bc is BoundaryCondition.DIRICHLET else 1
    pin_right = 0 if stack.right_bc is BoundaryCondition.DIRICHLET else 1
    states[0, pin_left] = 0.0
    states[-1, pin_right] = 0.0

    wf = PiecewiseWavefunction(stack, energy, states, Normalization.RAW, m, float(sines[m]))
    if norm is Normalization.L2_UNIT:
        scale = 1.0 / math.sqrt(l2_norm_squared(wf))
    elif norm is Normalization.MAX_UNIT:
        scale = 1.0 / max_abs(wf)
    else:
        return wf
    return PiecewiseWavefunction(stack, energy, states * scale, norm, m, float(sines[m]))


def _layer_kind(u, potential):
    if abs(u) < DEGENERATE_RTOL * max(1.0, abs(potential)):
        return "lin", 0.0
    return ("osc" if u > 0 else "hyp"), math.sqrt(abs(u))


def _propagate_from(state, kind, kq, s, sign):
    """Values at signed distance ``sign * s`` from an edge with ``state``."""
    psi, dpsi = state
    if kind == "lin":
        return psi + sign * s * dpsi, np.full_like(s, dpsi)
    if kind == "osc":
        c, sn = np.cos(kq * s), np.sin(kq * s)
        return c * psi + sign * sn / kq * dpsi, -sign * kq * sn * psi + c * dpsi
    ch, sh = np.cosh(kq * s), np.sinh(kq * s)
    return ch * psi + sign * sh / kq * dpsi, sign * kq * sh * psi + ch * dpsi


def _layer_values(wf, j, t):
    layer = wf.stack.layers[j]
    w = layer.width
    kind, kq = _layer_kind(wf.energy - layer.potential, layer.potential)
    lstate, rstate = wf.edge_states[j], wf.edge_states[j + 1]
    t = np.asarray(t, dtype=float)
    if kind == "hyp" and kq * w / 2 > _HYP_DIRECT_LIMIT:
        a = 0.5 * (lstate[0] - lstate[1] / kq)
        b = 0.5 * (rstate[0] + rstate[1] / kq)
        el, er = np.exp(-kq * t), np.exp(-kq * (w - t))
        return a * el + b * er, kq * (b * er - a * el)
    if len(wf.stack.layers) == 1:
        from_left = t <= 0.5 * w
    else:
        from_left = np.full(t.shape, j < wf.match_index)
    psi = np.empty_like(t)
    dpsi = np.empty_like(t)
    p, d = _propagate_from(lstate, kind, kq, t[from_left], 1.0)
    psi[from_left], dpsi[from_left] = p, d
    p, d = _propagate_from(rstate, kind, kq, w - t[~from_left], -1.0)
    psi[~from_left], dpsi[~from_left] = p, d
    return psi, dpsi


def evaluate(wf: PiecewiseWavefunction, x) -> tuple[np.ndarray, np.ndarray]:
    """``psi`` and ``dpsi`` at positions ``x`` (interfaces go to the right layer)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    edges = np.asarray(wf.stack.edges)
    if np.any((x < 0) | (x > edges[-1])):
        raise ValueError(f"positions must lie in [0, {edges[-1]}]")
    j = np.minimum(np.searchsorted(edges, x, side="right") - 1, len(wf.stack.layers) - 1)
    psi = np.empty_like(x)
    dpsi = np.empty_like(x)
    for layer_index in np.unique(j):
        sel = j == layer_index
        psi[sel], dpsi[sel] = _layer_values(wf, int(layer_index), x[sel] - edges[layer_index])
    return psi, dpsi


def sample(wf: PiecewiseWavefunction, n_samples: int) -> np.ndarray:
    """Uniform samples over the whole stack as rows ``(x, psi, dpsi)``."""
    if int(n_samples) != n_samples or n_samples < 2:
        raise ValueError(f"n_samples must be an integer >= 2, got {n_samples}")
    x = np.linspace(0.0, wf.stack.total_width, int(n_samples))
    psi, dpsi = evaluate(wf, x)
    return np.column_stack([x, psi, dpsi])


def l2_norm_squared(wf: PiecewiseWavefunction) -> float:
    """Integral of ``psi**2`` over the stack by per-layer Gauss-Legendre."""
    total = 0.0
    for j, layer in enumerate(wf.stack.layers):
        _, kq = _layer_kind(wf.energy - layer.potential, layer.potential)
        n = min(40 + int(3 * kq * layer.width), 20000)
        nodes, weights = np.polynomial.legendre.leggauss(n)
        t = 0.5 * layer.width * (nodes + 1.0)
        psi, _ = _layer_values(wf, j, t)
        total += 0.5 * layer.width * float(weights @ psi**2)
    return total


def max_abs(wf: PiecewiseWavefunction) -> float:
    """Exact maximum of ``|psi|``: layer edges plus interior stationary points."""
    best = 0.0
    for j, layer in enumerate(wf.stack.layers):
        w = layer.width
        ends, _ = _layer_values(wf, j, np.array([0.0, w]))
        best = max(best, float(np.max(np.abs(ends))))
        kind, kq = _layer_kind(wf.energy - layer.potential, layer.potential)
        psi0, dpsi0 = wf.edge_states[j]
        if kind == "osc":
            phase = math.atan2(dpsi0 / kq, psi0)
            n = np.arange(math.floor(-phase / math.pi), math.ceil((kq * w - phase) / math.pi) + 1)
            t = (phase + n * math.pi) / kq
        elif kind == "hyp":
            a = 0.5 * (psi0 - dpsi0 / kq)
            b = 0.5 * (wf.edge_states[j + 1][0] + wf.edge_states[j + 1][1] / kq)
            # a e^{-qt} + b e^{-q(w-t)} is stationary where a e^{-qt} = b e^{-q(w-t)}
            if a * b <= 0:
                continue
            t = np.array([(math.log(a / b) + kq * w) / (2 * kq)])
        else:
            continue
        t = t[(t > 0) & (t < w)]
        if t.size:
            psi, _ = _layer_values(wf, j, t)
            best = max(best, float(np.max(np.abs(psi))))
    return best


def count_nodes(wf: PiecewiseWavefunction) -> int:
    """Interior sign changes of ``psi`` on a 1000-per-unit-width grid."""
    n = max(2, math.ceil(NODE_SAMPLES_PER_UNIT * wf.stack.total_width) + 1)
    psi = sample(wf, n)[:, 1]
    peak = np.max(np.abs(psi))
    if not peak > 0:
        return 0
    kept = psi[np.abs(psi) >= 1e-12 * peak]
    return int(np.count_nonzero(np.sign(kept[:-1]) != np.sign(kept[1:])))
