"""LG modes as generalized Wigner transforms of Hermite-Gaussian pairs.

The transform of the pair (h_m, h_n) at (tau1, tau2)/sqrt2 reproduces the
LG mode with radial degree m and charge n - m, up to the factor (-1)^m pi.
Two independent integrations of the transform are compared first.
"""
import math

import numpy as np

from lgkit import transforms as tr
from lgkit.verify import gwt_tau_grid

print("W_g[h_m, h_n](x, p): Gauss-Hermite after a contour shift vs plain Gauss-Legendre")
for m, n, x, p in [(0, 0, 0.0, 0.0), (1, 1, 0.0, 0.0), (1, 3, 0.4, -0.2), (2, 5, -0.8, 0.6)]:
    a, b = complex(tr.gwt(m, n, x, p)), tr.gwt_direct(m, n, x, p)
    print(f"  m={m} n={n} ({x:+.1f},{p:+.1f})  {a:.12f}  {b:.12f}")

tau = gwt_tau_grid()
print("\nmax |LG closed form - (-1)^m pi W_g| on a 5x5 grid with |tau| <= 1.5:")
for m, n in [(0, 0), (0, 2), (1, 1), (1, 3), (2, 4)]:
    print(f"  (m, n) = ({m}, {n}): {np.max(tr.gwt_lg_identity_residual(m, n, tau)):.2e}")

print("\nFock overlap <m,n|tau> against pi (-1)^n W_g:")
for m, n in [(0, 0), (1, 2), (2, 2), (3, 1)]:
    print(f"  (m, n) = ({m}, {n}): {np.max(tr.schmidt_overlap_check(m, n, tau)):.2e}")

x, p = 0.3, -0.7
print(f"\nconjugate symmetry at ({x}, {p}): |W_g[1,2] - conj W_g[2,1]| = "
      f"{abs(tr.gwt(1, 2, x, p) - np.conj(tr.gwt(2, 1, x, p))):.1e}")
print(f"W_g[h_0, h_0] at the origin = {tr.gwt(0, 0, 0, 0).real:.15f}  (1/pi = {1 / math.pi:.15f})")
