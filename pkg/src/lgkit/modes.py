"""Closed-form wavefunctions of the LG eigenstates and their building blocks."""
import math
from dataclasses import dataclass

import numpy as np

from .fockspace import _as_index
from .quadrature import polar_rule
from .specialfn import hermite, hermite2v, laguerre, log_factorial

__all__ = [
    "EtaPoint",
    "TauPoint",
    "lg_wavefunction_eta",
    "radial_equation_residual",
    "hg_wavefunction",
    "tau_overlap_fock",
    "tau_overlap_lg",
    "eta_plane_overlap",
]


@dataclass(frozen=True)
class EtaPoint:
    eta: complex

    @property
    def r(self):
        return abs(self.eta)

    @property
    def phi(self):
        return math.atan2(self.eta.imag, self.eta.real)

    @classmethod
    def polar(cls, r, phi):
        return cls(complex(r * math.cos(phi), r * math.sin(phi)))


@dataclass(frozen=True)
class TauPoint:
    tau: complex

    @property
    def tau1(self):
        return self.tau.real

    @property
    def tau2(self):
        return self.tau.imag


def _point(p, cls, attr):
    if isinstance(p, cls):
        return getattr(p, attr)
    return p


def lg_wavefunction_eta(idx, eta):
    """LG mode <eta|n,l> = C e^{-i l phi} e^{-r^2/2} r^{|l|} L_{p}^{|l|}(r^2).

    Here p = (n - |l|)/2 and C = sqrt(p! / (p + |l|)!).  The phase uses the
    signed l.  For l < 0 this equals the Fock-space overlap up to the sign
    (-1)^l; for l >= 0 it is exact.  ``eta`` may be an array.
    """
    idx = _as_index(idx)
    eta = np.asarray(_point(eta, EtaPoint, "eta"), dtype=complex)
    al = abs(idx.l)
    p = idx.radial
    c = math.exp(0.5 * (log_factorial(p) - log_factorial(p + al)))
    r2 = (eta * eta.conj()).real
    # e^{-i l phi} r^{|l|} written without the angle: conj(eta)^l or eta^{|l|}
    angular = np.conj(eta) ** al if idx.l >= 0 else eta ** al
    return (c * angular * np.exp(-r2 / 2) * laguerre(p, al, r2))[()]


def radial_equation_residual(idx, r, h=1e-3, phi=0.3):
    """|n psi - [r^2/2 - 1 - (psi_rr + psi_r/r + psi_phiphi/r^2)/2]| at (r, phi).

    Derivatives of :func:`lg_wavefunction_eta` by second-order central
    differences with step ``h`` in both r and phi.
    """
    idx = _as_index(idx)
    if not r > 2 * h > 0:
        raise ValueError(f"need r > 2h > 0, got r={r}, h={h}")

    def psi(rr, pp):
        return complex(lg_wavefunction_eta(idx, EtaPoint.polar(rr, pp)))

    f0 = psi(r, phi)
    frp, frm = psi(r + h, phi), psi(r - h, phi)
    fpp, fpm = psi(r, phi + h), psi(r, phi - h)
    d_rr = (frp - 2 * f0 + frm) / h**2
    d_r = (frp - frm) / (2 * h)
    d_pp = (fpp - 2 * f0 + fpm) / h**2
    rhs = (r * r / 2 - 1) * f0 - 0.5 * (d_rr + d_r / r + d_pp / (r * r))
    return abs(idx.n * f0 - rhs)


def hg_wavefunction(m, x):
    """Hermite-Gaussian mode h_m(x) = e^{-x^2/2} H_m(x) / sqrt(2^m m! sqrt(pi))."""
    x = np.asarray(x, dtype=float)
    log_norm = 0.5 * (m * math.log(2) + log_factorial(m) + 0.5 * math.log(math.pi))
    return (np.exp(-x * x / 2 - log_norm) * hermite(m, x))[()]


def tau_overlap_fock(m, n, tau):
    """<tau|m,n> = (-1)^n H_{m,n}(tau*, tau) e^{-|tau|^2/2} / sqrt(m! n!)."""
    tau = np.asarray(_point(tau, TauPoint, "tau"), dtype=complex)
    scale = (-1) ** n * math.exp(-0.5 * (log_factorial(m) + log_factorial(n)))
    return (scale * hermite2v(m, n, tau.conj(), tau) * np.exp(-(tau * tau.conj()).real / 2))[()]


def tau_overlap_lg(idx, tau):
    """<tau|n,l> as a double sum of two-variable Hermite polynomials.

    (-1)^{n_r} 2^{(m_r - n_r)/2} e^{-|tau|^2/2} sqrt(m_r!/n_r!)
      * sum_k (n_r+k)! / (2^k k! (m_r-k)!)
      * sum_j (-i)^{k+j} / (j! (n_r+k-j)!) H_{m_r-k+j, n_r+k-j}(tau*, tau)

    with m_r, n_r the input photon numbers of the beam-splitter
    construction.  Matches <tau|exp(i pi/2 J_x)|m_r, n_r> with no extra
    phase, for either sign of l.
    """
    idx = _as_index(idx)
    tau = np.asarray(_point(tau, TauPoint, "tau"), dtype=complex)
    mr, nr = idx.m_rho, idx.n_rho
    total = np.zeros(tau.shape, dtype=complex)
    for k in range(mr + 1):
        outer = math.exp(log_factorial(nr + k) - log_factorial(k) - log_factorial(mr - k)) / 2**k
        for j in range(nr + k + 1):
            w = outer * (-1j) ** (k + j) * math.exp(-log_factorial(j) - log_factorial(nr + k - j))
            total = total + w * hermite2v(mr - k + j, nr + k - j, tau.conj(), tau)
    pref = (-1) ** nr * 2 ** ((mr - nr) / 2) * math.exp(0.5 * (log_factorial(mr) - log_factorial(nr)))
    return (pref * np.exp(-(tau * tau.conj()).real / 2) * total)[()]


def eta_plane_overlap(idx_a, idx_b, n_r=96, n_phi=64):
    """(1/pi) * integral over the eta-plane of conj(<eta|a>) <eta|b>.

    Polar product rule on r in [0, 6 + sqrt(n)], n the larger total number.
    """
    a, b = _as_index(idx_a), _as_index(idx_b)
    r_max = 6 + math.sqrt(max(a.n, b.n))
    rr, pp, w = polar_rule(r_max, n_r, n_phi)
    eta = rr * np.exp(1j * pp)
    vals = np.conj(lg_wavefunction_eta(a, eta)) * lg_wavefunction_eta(b, eta)
    return complex(np.sum(w * vals) / math.pi)

