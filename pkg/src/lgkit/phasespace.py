"""Two-mode Wigner functions of the LG eigenstates and their marginals.

Phase-space coordinates are dimensionless quadratures (x, p) with
alpha = (x + i p)/sqrt2.  The brute-force oracle evaluates the displaced
parity (1/pi) D(alpha) (-1)^N D(alpha)^dag per mode on a truncated Fock space
and shares nothing with the closed forms except the state vector.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import CutoffTooSmall, QuadratureUnderResolved
from .fockspace import _as_index
from .modes import tau_overlap_lg
from .quadrature import QuadratureSpec, grid_2d, nodes_weights
from .specialfn import hermite2v, laguerre, log_factorial

__all__ = [
    "PhasePoint4",
    "SigmaGamma",
    "to_sigma_gamma",
    "from_sigma_gamma",
    "wigner_number_state",
    "wigner_lg",
    "wigner_bruteforce",
    "wigner_bruteforce_grid",
    "displacement_guard",
    "marginal_sigma_analytic",
    "marginal_sigma_from_tau",
    "marginal_sigma_quadrature",
    "wigner_normalization",
    "GAMMA_MEASURE",
]

#: Jacobian between d^2 gamma = dRe(gamma) dIm(gamma) and the quadrature
#: volume.  (x1, p1, x2, p2) -> (Re s, Im s, Re g, Im g) is orthogonal, so
#: this is 1; test_phasespace re-derives it from the vacuum marginal.
GAMMA_MEASURE = 1.0

Q_BOUND_ATOL = 1e-12


@dataclass(frozen=True)
class PhasePoint4:
    x1: float
    p1: float
    x2: float
    p2: float

    def __post_init__(self):
        if abs(self.q2) > self.q0 + Q_BOUND_ATOL:
            raise ValueError(f"|Q2| > Q0 at {self}; coordinate transform is broken")

    @property
    def q0(self):
        return self.x1**2 + self.p1**2 + self.x2**2 + self.p2**2

    @property
    def q2(self):
        return 2 * self.p2 * self.x1 - 2 * self.p1 * self.x2

    def as_tuple(self):
        return (self.x1, self.p1, self.x2, self.p2)


@dataclass(frozen=True)
class SigmaGamma:
    """Entangled coordinates sigma = alpha - beta*, gamma = alpha + beta*."""

    sigma: complex
    gamma: complex


def to_sigma_gamma(pt):
    alpha = complex(pt.x1, pt.p1) / math.sqrt(2)
    beta = complex(pt.x2, pt.p2) / math.sqrt(2)
    return SigmaGamma(alpha - beta.conjugate(), alpha + beta.conjugate())


def from_sigma_gamma(sg):
    alpha = (sg.sigma + sg.gamma) / 2
    beta = ((sg.gamma - sg.sigma) / 2).conjugate()
    r2 = math.sqrt(2)
    return PhasePoint4(r2 * alpha.real, r2 * alpha.imag, r2 * beta.real, r2 * beta.imag)


def _sigma_gamma_to_xp(sigma, gamma):
    """Array version of :func:`from_sigma_gamma`."""
    alpha = (sigma + gamma) / 2
    beta = np.conj((gamma - sigma) / 2)
    r2 = math.sqrt(2)
    return r2 * alpha.real, r2 * alpha.imag, r2 * beta.real, r2 * beta.imag


def wigner_number_state(m, x, p):
    """Single-mode Wigner function of |m>: ((-1)^m / pi) e^{-(x^2+p^2)} L_m(2(x^2+p^2))."""
    s = np.asarray(x) ** 2 + np.asarray(p) ** 2
    return ((-1) ** m / math.pi * np.exp(-s) * laguerre(m, 0, 2 * s))[()]


def _xp(pt):
    if isinstance(pt, PhasePoint4):
        return pt.as_tuple()
    return tuple(np.asarray(c, dtype=float) for c in pt)


def wigner_lg(idx, pt):
    """Closed-form Wigner function of |n,l>.

    ((-1)^{m_r + n_r} / pi^2) e^{-Q0} L_{m_r}(Q0 + Q2) L_{n_r}(Q0 - Q2), with
    Q0 = x1^2 + p1^2 + x2^2 + p2^2 and Q2 = 2 p2 x1 - 2 p1 x2.  ``pt`` is a
    :class:`PhasePoint4` or a 4-tuple of broadcastable arrays.
    """
    idx = _as_index(idx)
    x1, p1, x2, p2 = _xp(pt)
    q0 = x1**2 + p1**2 + x2**2 + p2**2
    q2 = 2 * p2 * x1 - 2 * p1 * x2
    sign = (-1) ** (idx.m_rho + idx.n_rho)
    return (sign / math.pi**2 * np.exp(-q0) * laguerre(idx.m_rho, 0, q0 + q2) * laguerre(idx.n_rho, 0, q0 - q2))[()]


@lru_cache(maxsize=4096)
def _parity_kernel(x, p, dim):
    """(1/pi) D(alpha) (-1)^N D(alpha)^dag on a single-mode space of size ``dim``."""
    a = np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)
    alpha = complex(x, p) / math.sqrt(2)
    d = expm(alpha * a.conj().T - alpha.conjugate() * a)
    parity = (-1.0) ** np.arange(dim)
    k = (d * parity) @ d.conj().T / math.pi
    k.flags.writeable = False
    return k


def displacement_guard(max_alpha):
    """Extra excitations the truncated displacement needs above the state support."""
    return math.ceil(8 * max_alpha)


def _check_guard(state, max_alpha):
    need = state.support() + displacement_guard(max_alpha)
    if need > state.basis.nmax:
        raise CutoffTooSmall(
            f"displacement by |alpha|={max_alpha:.3g} needs nmax >= {need}, got {state.basis.nmax}"
        )


def _wigner_from_kernels(psi, k1, k2):
    # <psi| K1 (x) K2 |psi> with psi[k1, k2]
    return float(np.real(np.sum(psi.conj() * (k1 @ psi @ k2.T))))


def wigner_bruteforce(state, pt):
    """<state| Delta_1(x1, p1) Delta_2(x2, p2) |state> by displaced parity."""
    x1, p1, x2, p2 = (float(c) for c in _xp(pt))
    max_alpha = max(math.hypot(x1, p1), math.hypot(x2, p2)) / math.sqrt(2)
    _check_guard(state, max_alpha)
    dim = state.basis.nmax + 1
    return _wigner_from_kernels(state.as_grid(), _parity_kernel(x1, p1, dim), _parity_kernel(x2, p2, dim))


def wigner_bruteforce_grid(state, x1s, p1s, x2s, p2s):
    """Oracle Wigner function on the tensor grid of four coordinate axes.

    Returns an array of shape (len(x1s), len(p1s), len(x2s), len(p2s)).
    Kernels are built once per (x, p) pair of each mode.
    """
    axes = [np.atleast_1d(np.asarray(a, dtype=float)) for a in (x1s, p1s, x2s, p2s)]
    max_alpha = max(
        np.hypot(np.abs(axes[0]).max(), np.abs(axes[1]).max()),
        np.hypot(np.abs(axes[2]).max(), np.abs(axes[3]).max()),
    ) / math.sqrt(2)
    _check_guard(state, max_alpha)
    dim = state.basis.nmax + 1
    psi = state.as_grid()
    out = np.empty(tuple(a.size for a in axes))
    for i, x1 in enumerate(axes[0]):
        for j, p1 in enumerate(axes[1]):
            left = _parity_kernel(float(x1), float(p1), dim) @ psi
            for k, x2 in enumerate(axes[2]):
                for m, p2 in enumerate(axes[3]):
                    k2 = _parity_kernel(float(x2), float(p2), dim)
                    out[i, j, k, m] = np.real(np.sum(psi.conj() * (left @ k2.T)))
    return out


def marginal_sigma_analytic(idx, sigma):
    """Marginal of the LG Wigner function over the gamma-plane, closed form.

    (e^{-|s|^2}/pi) 2^{m_r - n_r} (m_r!/n_r!) |sum_k (-i)^k (n_r+k)! / (2^k k! (m_r-k)!)
        sum_j (-i)^j H_{m_r-k+j, n_r+k-j}(s*, s) / (j! (n_r+k-j)!)|^2
    """
    idx = _as_index(idx)
    s = np.asarray(sigma, dtype=complex)
    mr, nr = idx.m_rho, idx.n_rho
    total = np.zeros(s.shape, dtype=complex)
    for k in range(mr + 1):
        outer = (-1j) ** k * math.exp(log_factorial(nr + k) - log_factorial(k) - log_factorial(mr - k)) / 2**k
        for j in range(nr + k + 1):
            w = outer * (-1j) ** j * math.exp(-log_factorial(j) - log_factorial(nr + k - j))
            total = total + w * hermite2v(mr - k + j, nr + k - j, s.conj(), s)
    pref = 2.0 ** (mr - nr) * math.exp(log_factorial(mr) - log_factorial(nr)) / math.pi
    return (pref * np.exp(-(s * s.conj()).real) * np.abs(total) ** 2)[()]


def marginal_sigma_from_tau(idx, sigma):
    """(1/pi) |<tau = sigma|n,l>|^2."""
    return (np.abs(tau_overlap_lg(idx, sigma)) ** 2 / math.pi)[()]


def default_marginal_quadrature(idx):
    return QuadratureSpec(half_width=6 + math.sqrt(_as_index(idx).n), nodes_per_axis=96)


def _gamma_integral(idx, sigma, q):
    a, b, w = grid_2d(q)
    x1, p1, x2, p2 = _sigma_gamma_to_xp(complex(sigma), a + 1j * b)
    return float(GAMMA_MEASURE * np.sum(w * wigner_lg(idx, (x1, p1, x2, p2))))


def marginal_sigma_quadrature(idx, sigma, q=None):
    """Integral of :func:`wigner_lg` over the gamma-plane at fixed sigma.

    Runs the rule at ``q`` and at twice the nodes and returns the refined
    value; raises QuadratureUnderResolved if they differ by more than 10 q.tol.
    """
    idx = _as_index(idx)
    q = default_marginal_quadrature(idx) if q is None else q
    if q.half_width < 5 + math.sqrt(idx.n):
        raise ValueError(f"half_width {q.half_width} < 5 + sqrt(n) for n={idx.n}")
    coarse = _gamma_integral(idx, sigma, q)
    fine = _gamma_integral(idx, sigma, q.refined())
    if abs(fine - coarse) > 10 * q.tol:
        raise QuadratureUnderResolved(f"gamma-plane marginal moved by {abs(fine - coarse):.3g} on refinement")
    return fine


def wigner_normalization(idx, q=None):
    """Integral of :func:`wigner_lg` over all four phase-space coordinates.

    Default rule: midpoint, 48 nodes per axis on half-width 6 + sqrt(n).
    """
    idx = _as_index(idx)
    if q is None:
        q = QuadratureSpec(half_width=6 + math.sqrt(idx.n), nodes_per_axis=48, rule="midpoint")
    x, w = nodes_weights(q)
    p1, x2, p2 = np.meshgrid(x, x, x, indexing="ij")
    w3 = w[:, None, None] * w[None, :, None] * w[None, None, :]
    total = 0.0
    for xi, wi in zip(x, w):
        total += wi * np.sum(w3 * wigner_lg(idx, (xi, p1, x2, p2)))
    return float(total)
