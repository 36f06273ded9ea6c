"""Cross-checks of the transfer-matrix solver against the closed forms.

Used by ``proxwell validate``; each check returns a :class:`CheckResult`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import dispersion
from .eigensolve import find_eigenvalues, lowest_eigenvalue
from .stack import BoundaryCondition, make_periodic_bilayer
from .wavefunction import build_wavefunction, count_nodes

ROOT_ATOL = 1e-8
FACTOR_ATOL = 1e-10

DEFAULT_PERIODS = (1, 2, 3)
DEFAULT_BCS = (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN)
DEFAULT_POTENTIALS = (2.0, 5.0, 10.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name}: " + "; ".join(self.failures)


def solver_roots(periods, bc, V) -> list[float]:
    return [e.energy for e in find_eigenvalues(make_periodic_bilayer(periods, V, bc))]


def check_oracle_equivalence(periods=DEFAULT_PERIODS, bcs=DEFAULT_BCS, potentials=DEFAULT_POTENTIALS):
    failures = []
    for n, bc, V in itertools.product(periods, bcs, potentials):
        if n > 3:
            continue
        tm = solver_roots(n, bc, V)
        cf = dispersion.closed_form_roots(n, bc, V)
        if len(tm) != len(cf):
            failures.append(f"(N={n}, bc={bc.value}, V={V}) solver {tm} vs closed form {cf}")
            continue
        for a, b in zip(tm, cf):
            if abs(a - b) > ROOT_ATOL:
                failures.append(f"(N={n}, bc={bc.value}, V={V}, E={a!r}) closed form gives {b!r}")
    return CheckResult("oracle equivalence", not failures, failures)


def check_factorization(bcs=DEFAULT_BCS, potentials=(4.5, 5.0, 10.0, 20.0)):
    """One-period roots also solve the full two- and three-period equations."""
    failures = []
    for bc, V in itertools.product(bcs, potentials):
        for E in dispersion.closed_form_roots(1, bc, V):
            for n in (2, 3):
                r = float(dispersion.raw_full(E, V, n, bc))
                if not abs(r) < FACTOR_ATOL:
                    failures.append(f"(N={n}, bc={bc.value}, V={V}, E={E!r}) residual {r:.3g}")
    return CheckResult("factorization", not failures, failures)


def check_neumann_n_independence(potentials=DEFAULT_POTENTIALS, periods=DEFAULT_PERIODS):
    failures = []
    for V in potentials:
        lows = [lowest_eigenvalue(make_periodic_bilayer(n, V, "neumann")).energy for n in periods]
        if max(lows) - min(lows) > ROOT_ATOL:
            failures.append(f"(bc=neumann, V={V}) lowest per N {lows}")
    return CheckResult("neumann N-independence", not failures, failures)


def check_dirichlet_decrease(V=5.0, periods=DEFAULT_PERIODS):
    lows = [lowest_eigenvalue(make_periodic_bilayer(n, V, "dirichlet")).energy for n in periods]
    ok = all(a > b for a, b in zip(lows, lows[1:]))
    return CheckResult("dirichlet lowest decreases with N", ok, [] if ok else [f"(V={V}) {lows}"])


def check_neumann_node_free(potentials=DEFAULT_POTENTIALS, periods=DEFAULT_PERIODS):
    failures = []
    for V, n in itertools.product(potentials, periods):
        stack = make_periodic_bilayer(n, V, "neumann")
        E = lowest_eigenvalue(stack).energy
        nodes = count_nodes(build_wavefunction(stack, E))
        if nodes:
            failures.append(f"(N={n}, bc=neumann, V={V}, E={E!r}) {nodes} nodes")
    return CheckResult("neumann ground state node-free", not failures, failures)


def check_bc_ordering(potentials=(4.5, 5.0, 10.0, 20.0)):
    failures = []
    for V in potentials:
        d = lowest_eigenvalue(make_periodic_bilayer(1, V, "dirichlet"))
        n = lowest_eigenvalue(make_periodic_bilayer(1, V, "neumann"))
        if d is not None and not n.energy < d.energy:
            failures.append(f"(V={V}) neumann {n.energy!r} >= dirichlet {d.energy!r}")
    return CheckResult("neumann below dirichlet", not failures, failures)


def run_all(periods=None, bcs=None, potentials=None) -> list[CheckResult]:
    periods = tuple(periods or DEFAULT_PERIODS)
    bcs = tuple(bcs or DEFAULT_BCS)
    potentials = tuple(potentials or DEFAULT_POTENTIALS)
    results = [check_oracle_equivalence(periods, bcs, potentials)]
    results.append(check_factorization(bcs))
    if BoundaryCondition.NEUMANN in bcs:
        results.append(check_neumann_n_independence(potentials))
        results.append(check_neumann_node_free(potentials))
    if BoundaryCondition.DIRICHLET in bcs:
        results.append(check_dirichlet_decrease())
    results.append(check_bc_ordering())
    return results
