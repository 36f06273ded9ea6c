"""
Ground-state energy versus barrier height
=========================================

A bilayer is a zero-potential layer next to a barrier of height ``V``, both of
unit width. We track the lowest eigenvalue of four families as ``V`` grows:

* one period, Dirichlet walls (``psi = 0``);
* one period, Neumann walls (``psi' = 0``);
* two and three periods with the one-period state factored out.

Energies are in units of hbar^2 / (2 m d^2), lengths in units of the layer
width d.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from proxwell.cli import sweep_rows

###############################################################################
# ``sweep_rows`` returns ``(V, E, branch)`` triples. Below about V = 4.12 the
# Dirichlet ground state sits above the barrier; those rows carry the label
# ``dirichlet_above_v``.
rows = sweep_rows(0.25, 20.0, 80)
branches = {}
for V, E, label in rows:
    branches.setdefault(label, []).append((V, E))

for label, points in branches.items():
    V, E = np.array(points).T
    print(f"{label:18s} {len(V):3d} points, E from {E.min():.3f} to {E.max():.3f}")

###############################################################################
# The Neumann curve lies below every other branch and tends to zero with V:
# a thick normal layer barely suppresses the transition temperature.
fig, ax = plt.subplots(figsize=(6, 4))
for label, points in branches.items():
    V, E = np.array(points).T
    ax.plot(V, E, ".-", ms=3, label=label)
v = np.linspace(0, 20, 2)
ax.plot(v, v, "k:", lw=0.8, label="E = V")
ax.set_xlabel("V")
ax.set_ylabel("E")
ax.set_ylim(0, 10)
ax.legend()
fig.tight_layout()
fig.savefig("energy_vs_barrier.png", dpi=120)
