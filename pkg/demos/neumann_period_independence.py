"""
The Neumann ground state does not depend on the number of periods
=================================================================

For Neumann walls the lowest eigenvalue of an N-period stack is the
one-period value for every N we try, and its eigenfunction is the one-period
shape repeated with a fixed amplitude ratio per period. With Dirichlet walls
the ground state keeps dropping as periods are added.
"""

import math

import numpy as np

from proxwell import build_wavefunction, lowest_eigenvalue, make_periodic_bilayer
from proxwell.wavefunction import evaluate

for V in (2.0, 5.0, 10.0):
    lows = [lowest_eigenvalue(make_periodic_bilayer(n, V, "neumann")).energy for n in range(1, 7)]
    print(f"V = {V:4g}  Neumann lowest for N = 1..6: spread {max(lows) - min(lows):.1e}")

V = 5.0
print("\nDirichlet, V = 5:")
for n in range(1, 7):
    print(f"  N = {n}: E0 = {lowest_eigenvalue(make_periodic_bilayer(n, V, 'dirichlet')).energy:.5f}")

###############################################################################
# Amplitude ratio between consecutive periods of the Neumann ground state,
# compared with cos(k) / cosh(q) from matching a cosine onto a cosh.
stack = make_periodic_bilayer(4, V, "neumann")
wf = build_wavefunction(stack, lowest_eigenvalue(stack).energy)
psi_at_period_starts = evaluate(wf, np.arange(0.0, 8.0, 2.0))[0]
k, q = math.sqrt(wf.energy), math.sqrt(V - wf.energy)
print("\nratios", psi_at_period_starts[1:] / psi_at_period_starts[:-1])
print("cos(k)/cosh(q) =", math.cos(k) / math.cosh(q))
