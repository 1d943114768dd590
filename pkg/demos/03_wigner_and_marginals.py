"""Wigner functions of LG states and their sigma-plane marginals.

The closed-form Wigner function depends on phase space only through two
quadratic invariants.  It is compared with a displaced-parity computation
done directly on the Fock vector, then integrated over the gamma-plane
and compared with the closed-form marginal.
"""
import numpy as np

from lgkit import fockspace as fs
from lgkit import phasespace as ps

basis = fs.BasisSpec(32)
rotation = fs.jx_rotation(basis)
idx = (2, 0)
state = fs.lg_state_beamsplitter(idx, basis, rotation)

print("W at a few points, closed form vs displaced-parity oracle:")
for pt in [(0, 0, 0, 0), (1, 0, 0, 1), (0.3, -0.5, 0.8, 0.1), (-1, 1, 0.5, -0.5)]:
    p4 = ps.PhasePoint4(*pt)
    print(f"  {pt!s:24}  Q0={p4.q0:5.2f} Q2={p4.q2:6.2f}  {ps.wigner_lg(idx, p4):+.12f}"
          f"  {ps.wigner_bruteforce(state, p4):+.12f}")

print(f"\nphase-space integral of W for {idx}: {ps.wigner_normalization(idx):.10f}")

print("\nsigma marginal for (3, 1), three routes:")
print("   sigma          closed form      |<tau|n,l>|^2/pi   gamma quadrature")
for s in [0, 0.5, 0.4 + 0.7j, -1.1j]:
    print(f"  {complex(s)!s:12} {ps.marginal_sigma_analytic((3, 1), s):.12f}   "
          f"{ps.marginal_sigma_from_tau((3, 1), s):.12f}   {ps.marginal_sigma_quadrature((3, 1), s):.12f}")

# A 2-D slice shows the negative core of the l = 1 state.
g = np.linspace(-1.5, 1.5, 7)
x1, p1 = np.meshgrid(g, g, indexing="ij")
w = ps.wigner_lg((1, 1), (x1, p1, 0 * x1, 0 * x1))
print("\nW for (1, 1) on the (x1, p1) slice, times pi^2:")
for row in w * np.pi**2:
    print("  " + " ".join(f"{v:+.3f}" for v in row))
