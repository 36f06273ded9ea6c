"""Transfer-matrix propagation of ``(psi, dpsi)`` across a layer stack.

Inside a layer of potential ``V_j`` the solution at energy ``E`` is
``cos/sin(k x)`` with ``k = sqrt(E - V_j)`` or ``cosh/sinh(q x)`` with
``q = sqrt(V_j - E)``. Propagation multiplies the state by the 2x2 layer map.
Hyperbolic layers are applied in the form ``exp(q w) * M_scaled`` and the
state is renormalized after every layer, so only the log of the discarded
scale is carried. This keeps the mismatch finite for arbitrarily thick or
high barriers without changing its sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .stack import BoundaryCondition, Layer, PotentialStack

#: |E - V_j| below this (times max(1, |V_j|)) is treated as the linear case.
DEGENERATE_RTOL = 1e-12


class StateVector(NamedTuple):
    psi: float
    dpsi: float


@dataclass(frozen=True)
class LayerPropagator:
    """Maps ``(psi, dpsi)`` at a layer's left edge to its right edge."""

    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def determinant(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, state) -> StateVector:
        psi, dpsi = state
        return StateVector(self.m11 * psi + self.m12 * dpsi, self.m21 * psi + self.m22 * dpsi)


@dataclass(frozen=True)
class MismatchResult:
    """Right-end boundary residual after rescaled propagation.

    ``value`` has the sign of the unrescaled residual, whose magnitude is
    ``abs(value) * exp(scale_log)``.
    """

    value: float
    scale_log: float

    @property
    def sign(self) -> int:
        return int(np.sign(self.value))


def _is_degenerate(u, V):
    return np.abs(u) < DEGENERATE_RTOL * np.maximum(1.0, np.abs(V))


def layer_propagator(layer: Layer, E: float) -> LayerPropagator:
    """Explicit transfer matrix of one layer at energy ``E``.

    Entries are unscaled, so ``cosh(q w)`` overflows for ``q w`` beyond ~710;
    propagation code uses the rescaled form instead.
    """
    if not np.isfinite(E):
        raise ValueError(f"energy must be finite, got {E}")
    w = layer.width
    u = E - layer.potential
    if _is_degenerate(u, layer.potential):
        return LayerPropagator(1.0, w, 0.0, 1.0)
    if u > 0:
        k = np.sqrt(u)
        c, s = np.cos(k * w), np.sin(k * w)
        return LayerPropagator(float(c), float(s / k), float(-k * s), float(c))
    q = np.sqrt(-u)
    ch, sh = np.cosh(q * w), np.sinh(q * w)
    return LayerPropagator(float(ch), float(sh / q), float(q * sh), float(ch))


def _advance(psi, dpsi, potential, width, E, direction=1):
    """Carry states across one layer (``direction=-1`` goes right to left).

    Works elementwise on arrays of energies. Returns the new, max-norm
    normalized states and the log of the scale that was divided out.
    """
    E = np.asarray(E, dtype=float)
    u = E - potential
    lin = _is_degenerate(u, potential)
    osc = (u > 0) & ~lin
    hyp = (u < 0) & ~lin
    kq = np.sqrt(np.abs(u))
    safe = np.where(lin, 1.0, kq)
    kw = kq * width

    # oscillatory: [[cos, sin/k], [-k sin, cos]]
    # hyperbolic, divided by exp(q w): [[ch, sh/q], [q sh, ch]]
    decay = np.exp(-2.0 * kw, where=hyp, out=np.zeros_like(kw))
    ch = np.where(hyp, 0.5 * (1.0 + decay), np.cos(kw))
    sh_hyp = -0.5 * np.expm1(-2.0 * np.where(hyp, kw, 0.0))
    m11 = np.where(lin, 1.0, ch)
    sn = np.where(hyp, sh_hyp, np.sin(kw))
    m12 = np.where(lin, width, sn / safe)
    m21 = np.where(lin, 0.0, np.where(hyp, kq * sn, -kq * sn))
    if direction < 0:
        m12, m21 = -m12, -m21

    new_psi = m11 * psi + m12 * dpsi
    new_dpsi = m21 * psi + m11 * dpsi
    norm = np.maximum(np.abs(new_psi), np.abs(new_dpsi))
    log_growth = np.where(hyp, kw, 0.0) + np.log(norm)
    return new_psi / norm, new_dpsi / norm, log_growth


def _advance_scalar(psi, dpsi, potential, width, E, direction=1):
    """Scalar twin of :func:`_advance`, used inside bisection loops."""
    u = E - potential
    growth = 0.0
    if abs(u) < DEGENERATE_RTOL * max(1.0, abs(potential)):
        m11, m12, m21 = 1.0, width, 0.0
    elif u > 0:
        k = math.sqrt(u)
        c, s = math.cos(k * width), math.sin(k * width)
        m11, m12, m21 = c, s / k, -k * s
    else:
        q = math.sqrt(-u)
        growth = q * width
        sh = -0.5 * math.expm1(-2.0 * growth)
        m11, m12, m21 = 0.5 * (1.0 + math.exp(-2.0 * growth)), sh / q, q * sh
    if direction < 0:
        m12, m21 = -m12, -m21
    new_psi = m11 * psi + m12 * dpsi
    new_dpsi = m21 * psi + m11 * dpsi
    norm = max(abs(new_psi), abs(new_dpsi))
    return new_psi / norm, new_dpsi / norm, growth + math.log(norm)


def initial_state(bc: BoundaryCondition) -> StateVector:
    """State at a wall: ``(0, 1)`` for Dirichlet, ``(1, 0)`` for Neumann."""
    if BoundaryCondition.parse(bc) is BoundaryCondition.DIRICHLET:
        return StateVector(0.0, 1.0)
    return StateVector(1.0, 0.0)


def mismatch_values(stack: PotentialStack, energies) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`mismatch`: arrays of rescaled values and log scales."""
    E = np.asarray(energies, dtype=float)
    psi0, dpsi0 = initial_state(stack.left_bc)
    psi = np.full(E.shape, psi0)
    dpsi = np.full(E.shape, dpsi0)
    scale_log = np.zeros(E.shape)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for layer in stack.layers:
            psi, dpsi, g = _advance(psi, dpsi, layer.potential, layer.width, E)
            scale_log += g
    value = psi if stack.right_bc is BoundaryCondition.DIRICHLET else dpsi
    return value, scale_log


def mismatch(stack: PotentialStack, E: float) -> MismatchResult:
    """Boundary residual at the right wall for a trial energy ``E``.

    Zero exactly when ``E`` is an eigenvalue of the stack.
    """
    if not np.isfinite(E):
        raise ValueError(f"energy must be finite, got {E}")
    E = float(E)
    psi, dpsi = initial_state(stack.left_bc)
    scale_log = 0.0
    for layer in stack.layers:
        psi, dpsi, g = _advance_scalar(psi, dpsi, layer.potential, layer.width, E)
        scale_log += g
    value = psi if stack.right_bc is BoundaryCondition.DIRICHLET else dpsi
    return MismatchResult(value, scale_log)


def mismatch_sign_profile(stack: PotentialStack, energies) -> list[int]:
    """Sign (+1, -1, or 0 for an exact zero) of the mismatch at each energy."""
    E = np.asarray(energies, dtype=float)
    if E.size == 0:
        return []
    if np.any(np.diff(E) <= 0):
        raise ValueError("energies must be strictly increasing")
    value, _ = mismatch_values(stack, E)
    return [int(s) for s in np.sign(value)]


def edge_states(stack: PotentialStack, E: float, from_right: bool = False):
    """Shoot from one wall and record the state at every layer edge.

    Returns ``(states, log_scale)`` where ``states`` has shape ``(n + 1, 2)``
    with unit max-norm rows ordered left to right, and ``log_scale[i]`` is the
    log of the amplitude discarded up to edge ``i`` relative to the starting
    wall (so the unnormalized state is ``states[i] * exp(log_scale[i])``).
    """
    n = len(stack.layers)
    states = np.empty((n + 1, 2))
    log_scale = np.zeros(n + 1)
    order = range(n - 1, -1, -1) if from_right else range(n)
    i = n if from_right else 0
    psi, dpsi = initial_state(stack.right_bc if from_right else stack.left_bc)
    states[i] = psi, dpsi
    total = 0.0
    for j in order:
        layer = stack.layers[j]
        psi, dpsi, g = _advance_scalar(
            psi, dpsi, layer.potential, layer.width, float(E), -1 if from_right else 1
        )
        total += g
        i = j if from_right else j + 1
        states[i] = psi, dpsi
        log_scale[i] = total
    return states, log_scale
