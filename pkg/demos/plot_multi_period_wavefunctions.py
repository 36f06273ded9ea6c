"""
Two and three periods: the repeated state and the new one
=========================================================

Adding periods keeps the one-period eigenvalue in the spectrum and adds new
ones. With Dirichlet walls a new state drops below the one-period energy;
with Neumann walls the one-period state stays lowest and the new states have
nodes, which a gap function cannot have.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from proxwell import build_wavefunction, count_nodes, find_eigenvalues, make_periodic_bilayer, sample

cases = [(2, "dirichlet", 5.0), (2, "neumann", 2.0), (3, "dirichlet", 5.0), (3, "neumann", 2.0)]
one_period = {
    bc: [e.energy for e in find_eigenvalues(make_periodic_bilayer(1, V, bc))]
    for _, bc, V in cases
}

fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex="col")
for ax, (periods, bc, V) in zip(axes.T.ravel(), cases):
    stack = make_periodic_bilayer(periods, V, bc)
    print(f"{periods} periods, {bc}, V = {V}")
    for e in find_eigenvalues(stack):
        repeated = any(abs(e.energy - r) < 1e-8 for r in one_period[bc])
        tag = "repeated one-period state" if repeated else "new state"
        print(f"   E = {e.energy:.4f}  nodes = {e.node_count}  ({tag})")
        x, psi, _ = sample(build_wavefunction(stack, e.energy), 1201).T
        ax.plot(x, psi, label=f"E = {e.energy:.2f}")
    ax.set_title(f"{periods} periods, {bc}, V = {V:g}", fontsize=9)
    ax.legend(fontsize=7)
for ax in axes[-1]:
    ax.set_xlabel("x / d")
fig.tight_layout()
fig.savefig("multi_period_wavefunctions.png", dpi=120)
