"""Eigenvalues and eigenfunctions of the 1D Schroedinger equation on
piecewise-constant potential stacks, with Dirichlet or Neumann walls."""

from .dispersion import (
    BranchLabel,
    closed_form_roots,
    dirichlet_above_v,
    factored_full,
    kq_pair,
    reduced_2p,
    reduced_3p,
    u_dirichlet_1p,
    u_neumann_1p,
)
from .eigensolve import (
    ConvergenceError,
    Eigenvalue,
    EnergyWindow,
    dirichlet_threshold,
    find_eigenvalues,
    lowest_eigenvalue,
)
from .propagate import (
    LayerPropagator,
    MismatchResult,
    StateVector,
    layer_propagator,
    mismatch,
    mismatch_sign_profile,
)
from .stack import BoundaryCondition, Layer, PotentialStack, layer_at, make_periodic_bilayer
from .wavefunction import (
    Normalization,
    PiecewiseWavefunction,
    build_wavefunction,
    count_nodes,
    sample,
)

__version__ = "0.1.0"
