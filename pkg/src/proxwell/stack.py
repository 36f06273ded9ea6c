"""Piecewise-constant potential stacks.

Energies and potentials are dimensionless (units of hbar^2 / (2 m d^2)) and
lengths are in units of the single-layer width ``d``.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from itertools import accumulate


class BoundaryCondition(enum.Enum):
    """End condition of the stack: pinned value or pinned slope."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @classmethod
    def parse(cls, value: "BoundaryCondition | str") -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown boundary condition {value!r}; expected 'dirichlet' or 'neumann'"
            ) from None


@dataclass(frozen=True)
class Layer:
    potential: float
    width: float

    def __post_init__(self):
        if not math.isfinite(self.potential):
            raise ValueError(f"layer potential must be finite, got {self.potential}")
        if not (math.isfinite(self.width) and self.width > 0):
            raise ValueError(f"layer width must be positive and finite, got {self.width}")


@dataclass(frozen=True)
class PotentialStack:
    """Ordered layers between two end walls.

    The first layer starts at ``x = 0``; interfaces sit at the cumulative sums
    of the widths.
    """

    layers: tuple[Layer, ...]
    left_bc: BoundaryCondition = BoundaryCondition.DIRICHLET
    right_bc: BoundaryCondition = BoundaryCondition.DIRICHLET

    def __post_init__(self):
        layers = tuple(
            layer if isinstance(layer, Layer) else Layer(*layer) for layer in self.layers
        )
        if not layers:
            raise ValueError("a stack needs at least one layer")
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "left_bc", BoundaryCondition.parse(self.left_bc))
        object.__setattr__(self, "right_bc", BoundaryCondition.parse(self.right_bc))

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(layer.width for layer in self.layers)

    @property
    def potentials(self) -> tuple[float, ...]:
        return tuple(layer.potential for layer in self.layers)

    @property
    def edges(self) -> tuple[float, ...]:
        """Layer boundaries ``x_0 = 0 < x_1 < ... < x_n = total_width``."""
        return (0.0, *accumulate(self.widths))

    @property
    def total_width(self) -> float:
        return self.edges[-1]

    @property
    def max_potential(self) -> float:
        return max(self.potentials)

    def scaled(self, s: float) -> "PotentialStack":
        """Stack with widths multiplied by ``s`` and potentials divided by ``s**2``.

        Its eigenvalues are those of ``self`` divided by ``s**2``.
        """
        if not s > 0:
            raise ValueError("scale factor must be positive")
        layers = tuple(Layer(l.potential / s**2, l.width * s) for l in self.layers)
        return PotentialStack(layers, self.left_bc, self.right_bc)

    def __len__(self):
        return len(self.layers)


def make_periodic_bilayer(periods: int, V: float, bc="dirichlet") -> PotentialStack:
    """Equal-thickness bilayer stack repeated ``periods`` times.

    Layers alternate potential 0 and ``V``, each of unit width, with the same
    end condition on both sides.
    """
    if int(periods) != periods or periods < 1:
        raise ValueError(f"periods must be a positive integer, got {periods}")
    if not (math.isfinite(V) and V >= 0):
        raise ValueError(f"barrier potential must be finite and >= 0, got {V}")
    bc = BoundaryCondition.parse(bc)
    layers = tuple(Layer(p, 1.0) for _ in range(int(periods)) for p in (0.0, float(V)))
    return PotentialStack(layers, bc, bc)


def parse_layers(text: str, bc="dirichlet") -> PotentialStack:
    """Build a stack from ``"potential:width,potential:width,..."``."""
    layers = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            potential, width = chunk.split(":")
            layers.append(Layer(float(potential), float(width)))
        except ValueError as exc:
            raise ValueError(f"bad layer {chunk!r}: {exc}") from None
    bc = BoundaryCondition.parse(bc)
    return PotentialStack(tuple(layers), bc, bc)


def layer_at(stack: PotentialStack, x: float) -> tuple[int, float]:
    """Index of the layer containing ``x`` and the offset from its left edge.

    Points on an interior interface belong to the layer on the right; the
    right end belongs to the last layer.
    """
    edges = stack.edges
    if not (0.0 <= x <= edges[-1]):
        raise ValueError(f"x={x} lies outside [0, {edges[-1]}]")
    i = min(bisect.bisect_right(edges, x) - 1, len(stack.layers) - 1)
    return i, x - edges[i]
