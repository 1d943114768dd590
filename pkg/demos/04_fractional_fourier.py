"""LG tau-functions are eigenfunctions of the complex fractional Fourier transform.

For each mode the transform is evaluated by quadrature and compared with
e^{-i alpha n} times the original function.  The fitted eigenphase is
printed next to the predicted one.
"""
import math

import numpy as np

from lgkit import modes
from lgkit import transforms as tr

s = np.linspace(-1.5, 1.5, 5)
tau = s[:, None] + 1j * s[None, :]
print("  n   l  alpha    fitted phase  predicted   max residual")
for idx in [(0, 0), (1, 1), (2, 0), (2, 2), (3, -1)]:
    field = tr.SampledField(lambda t, idx=idx: modes.tau_overlap_lg(idx, t), tr.lg_field_quadrature(idx[0]))
    for alpha in (0.7, math.pi / 4, 2.0):
        out = tr.frft(field, alpha, tau)
        orig = modes.tau_overlap_lg(idx, tau)
        phase = tr.fit_eigenphase(out, orig)
        predicted = math.remainder(-alpha * idx[0], 2 * math.pi)
        resid = np.abs(out - np.exp(-1j * alpha * idx[0]) * orig).max()
        print(f"{idx[0]:3d} {idx[1]:3d}  {alpha:5.3f}   {phase:+.8f}   {predicted:+.8f}   {resid:.2e}")

# A non-eigenfunction: a displaced Gaussian at alpha = pi/2 has a closed form.
c = 0.4 - 0.3j
out = tr.frft(lambda t: np.exp(-np.abs(t - c) ** 2 / 2), math.pi / 2, tau)
exact = np.exp(-1j * (np.conj(tau) * c).real - np.abs(tau) ** 2 / 2)
print(f"\ndisplaced Gaussian at alpha = pi/2: max deviation from closed form {np.abs(out - exact).max():.2e}")

try:
    tr.FrftOrder(0.01)
except Exception as exc:
    print(f"alpha = 0.01 is rejected: {exc}")
