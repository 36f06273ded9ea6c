"""
Hand-built stacks: a trilayer with unequal widths
=================================================

The solver is not limited to equal-width bilayers. Here a thin normal layer
is sandwiched between two superconducting layers of different thickness, with
Neumann walls on both sides, and the same structure is checked against the
rescaling rule ``widths * s, potentials / s**2  ->  energies / s**2``.
"""

from proxwell import EnergyWindow, Layer, PotentialStack, build_wavefunction, find_eigenvalues
from proxwell.stack import parse_layers

stack = PotentialStack((Layer(0.0, 1.5), Layer(6.0, 0.5), Layer(0.0, 1.0)), "neumann", "neumann")
for e in find_eigenvalues(stack, EnergyWindow(0.0, 12.0)):
    wf = build_wavefunction(stack, e.energy)
    print(f"E = {e.energy:.6f}  nodes = {e.node_count}  below barrier = {e.below_barrier}")

###############################################################################
# The same stack in the ``potential:width`` notation used by ``--layers``.
same = parse_layers("0:1.5,6:0.5,0:1", "neumann")
assert same == stack

s = 2.0
scaled = [e.energy * s**2 for e in find_eigenvalues(stack.scaled(s), EnergyWindow(0.0, 12.0 / s**2))]
print("rescaled back:", [f"{E:.6f}" for E in scaled])
