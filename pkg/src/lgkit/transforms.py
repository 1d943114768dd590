"""Complex fractional Fourier transform and the generalized Wigner transform.

The FrFT acts on functions of one complex variable tau' = t1 + i t2:

    F_a[f](tau) = e^{i(a - pi/2)} / (2 sin a)
                  * integral d^2 tau'/pi exp[i(|tau'|^2 + |tau|^2) / (2 tan a)
                                             - i (tau* tau' + tau'* tau) / (2 sin a)] f(tau')

Its kernel factorizes over (t1, t2), so on a tensor-product rule the 2-D
integral is two small matrix products.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import OrderNearSingular, QuadratureUnderResolved
from .fockspace import _as_index
from .modes import hg_wavefunction, tau_overlap_fock, tau_overlap_lg
from .quadrature import QuadratureSpec, gauss_hermite, nodes_weights
from .specialfn import hermite, laguerre, log_factorial

__all__ = [
    "FrftOrder",
    "SampledField",
    "frft",
    "frft_eigen_residual",
    "fit_eigenphase",
    "gwt",
    "gwt_lg_identity_residual",
    "schmidt_overlap_check",
    "DEFAULT_FRFT_QUADRATURE",
    "DEFAULT_TAU_SAMPLES",
    "gwt_direct",
    "lg_from_gwt_closed_form",
    "lg_field_quadrature",
]

SIN_BAND = 0.05
DECAY_RTOL = 1e-6
GWT_NODES = 200

DEFAULT_FRFT_QUADRATURE = QuadratureSpec(half_width=6.0, nodes_per_axis=128, rule="gauss-legendre", tol=1e-6)
#: 5 x 5 sample of output points used by the eigen-residual checks
DEFAULT_TAU_SAMPLES = np.linspace(-1.5, 1.5, 5)


@dataclass(frozen=True)
class FrftOrder:
    """Transform angle in radians, reduced mod 2 pi, away from sin(alpha) = 0."""

    alpha: float

    def __post_init__(self):
        a = math.fmod(float(self.alpha), 2 * math.pi)
        if a < 0:
            a += 2 * math.pi
        if abs(math.sin(a)) < SIN_BAND:
            raise OrderNearSingular(f"|sin(alpha)| = {abs(math.sin(a)):.3g} < {SIN_BAND} for alpha={self.alpha}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class SampledField:
    """A Gaussian-damped function f(tau') of one complex variable.

    ``func`` takes a complex array and returns values of the same shape.
    """

    func: object
    quadrature: QuadratureSpec = DEFAULT_FRFT_QUADRATURE

    def values(self, q=None):
        """f on the tensor grid of ``q`` (indexing 'ij' over (t1, t2)) and the 1-D rule."""
        q = self.quadrature if q is None else q
        x, w = nodes_weights(q)
        return np.asarray(self.func(x[:, None] + 1j * x[None, :]), dtype=complex), x, w

    def check_decay(self):
        """Raise QuadratureUnderResolved if f is not negligible on the box edge."""
        h = self.quadrature.half_width
        edge = np.linspace(-h, h, 65)
        ring = np.concatenate([edge + 1j * h, edge - 1j * h, h + 1j * edge, -h + 1j * edge])
        inner = np.linspace(-h / 2, h / 2, 33)
        core = (inner[:, None] + 1j * inner[None, :]).ravel()
        peak = np.abs(np.asarray(self.func(core))).max()
        tail = np.abs(np.asarray(self.func(ring))).max()
        if tail > DECAY_RTOL * peak:
            raise QuadratureUnderResolved(
                f"field is {tail / peak:.3g} of its peak on the box edge; enlarge half_width"
            )


def _as_order(order):
    return order if isinstance(order, FrftOrder) else FrftOrder(order)


def _frft_on_rule(fvals, x, w, alpha, tau):
    cot = 1 / (2 * math.tan(alpha))
    csc = 1 / math.sin(alpha)
    chirp = w * np.exp(1j * cot * x * x)
    t1, t2 = tau.real.ravel(), tau.imag.ravel()
    a1 = np.exp(-1j * csc * np.outer(t1, x)) * chirp
    a2 = np.exp(-1j * csc * np.outer(t2, x)) * chirp
    inner = np.einsum("pj,jk,pk->p", a1, fvals, a2)
    pref = np.exp(1j * (alpha - math.pi / 2)) / (2 * math.sin(alpha) * math.pi)
    out = pref * np.exp(1j * cot * (t1 * t1 + t2 * t2)) * inner
    return out.reshape(tau.shape)


def frft(field, order, tau, check=True):
    """F_alpha[f](tau) by tensor Gauss-Legendre quadrature over the tau'-plane.

    ``tau`` may be an array.  With ``check`` the field decay is verified and
    the rule is repeated with doubled nodes; the refined value is returned
    and QuadratureUnderResolved is raised if the two differ by more than
    10 * tol.
    """
    if not isinstance(field, SampledField):
        field = SampledField(field)
    alpha = _as_order(order).alpha
    tau = np.asarray(tau, dtype=complex)
    fvals, x, w = field.values()
    coarse = _frft_on_rule(fvals, x, w, alpha, tau)
    if not check:
        return coarse[()]
    field.check_decay()
    q = field.quadrature.refined()
    fvals, x, w = field.values(q)
    fine = _frft_on_rule(fvals, x, w, alpha, tau)
    moved = np.abs(fine - coarse).max(initial=0.0)
    if moved > 10 * q.tol:
        raise QuadratureUnderResolved(f"FrFT changed by {moved:.3g} when doubling nodes")
    return fine[()]


def _sample_grid(samples=None):
    s = DEFAULT_TAU_SAMPLES if samples is None else np.asarray(samples, dtype=float)
    return s[:, None] + 1j * s[None, :]


def lg_field_quadrature(n):
    """Default rule for an LG field of total number n.

    Half-width 6 keeps r^n e^{-r^2/2} below the edge-decay threshold only
    up to n = 2; beyond that the box grows as 5 + sqrt(2n).
    """
    if n <= 2:
        return DEFAULT_FRFT_QUADRATURE
    return QuadratureSpec(half_width=5 + math.sqrt(2 * n), nodes_per_axis=128)


def frft_eigen_residual(idx, order, samples=None, field_quadrature=None):
    """max |F_alpha[<.|n,l>](tau) - e^{-i alpha n} <tau|n,l>| over a 5 x 5 tau grid."""
    idx = _as_index(idx)
    alpha = _as_order(order).alpha
    q = lg_field_quadrature(idx.n) if field_quadrature is None else field_quadrature
    tau = _sample_grid(samples)
    out = frft(SampledField(lambda t: tau_overlap_lg(idx, t), q), alpha, tau)
    expected = np.exp(-1j * alpha * (idx.m_rho + idx.n_rho)) * tau_overlap_lg(idx, tau)
    return float(np.abs(out - expected).max())


def fit_eigenphase(transformed, original):
    """Phase of the least-squares eigenvalue lambda minimising |transformed - lambda original|."""
    transformed, original = np.asarray(transformed), np.asarray(original)
    return float(np.angle(np.vdot(original, transformed)))


def gwt(f_mode, v_mode, x, p, nodes=GWT_NODES):
    """Generalized Wigner transform <h_f|Delta(x, p)|h_v> of two HG modes.

    Delta(x, p) = (1/2pi) integral du e^{-iup} |x - u/2><x + u/2|, so

        W_g = (1/2pi) integral du e^{-iup} h_f(x - u/2) h_v(x + u/2).

    With u = 2s the Gaussian factors combine to e^{-x^2 - s^2 - 2isp}
    = e^{-x^2 - p^2} e^{-(s + ip)^2}; shifting s -> w - ip leaves a
    polynomial against e^{-w^2}, integrated exactly by Gauss-Hermite.
    """
    f_mode, v_mode = int(f_mode), int(v_mode)
    if f_mode + v_mode > 2 * nodes - 1:
        raise QuadratureUnderResolved(f"{nodes}-node Gauss-Hermite rule is not exact for degree {f_mode + v_mode}")
    w_nodes, w_weights = gauss_hermite(nodes)
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    s = w_nodes - 1j * p[..., None]
    xs = x[..., None]
    poly = hermite(f_mode, xs - s) * hermite(v_mode, xs + s)
    integral = np.sum(w_weights * poly, axis=-1)
    log_norm = 0.5 * (
        (f_mode + v_mode) * math.log(2) + log_factorial(f_mode) + log_factorial(v_mode) + math.log(math.pi)
    )
    return (np.exp(-x * x - p * p - log_norm) * integral / math.pi)[()]


def lg_from_gwt_closed_form(m, n, tau):
    """sqrt(m!/n!) (tau*)^{n-m} L_m^{n-m}(|tau|^2) e^{-|tau|^2/2} for m <= n."""
    tau = np.asarray(tau, dtype=complex)
    r2 = (tau * tau.conj()).real
    c = math.exp(0.5 * (log_factorial(m) - log_factorial(n)))
    return (c * tau.conj() ** (n - m) * laguerre(m, n - m, r2) * np.exp(-r2 / 2))[()]


def gwt_lg_identity_residual(m, n, tau):
    """|LG closed form - (-1)^m pi W_g[h_m, h_n](tau1/sqrt2, tau2/sqrt2)|, for m <= n."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    tau = np.asarray(tau, dtype=complex)
    lhs = lg_from_gwt_closed_form(m, n, tau)
    rhs = (-1) ** m * math.pi * gwt(m, n, tau.real / math.sqrt(2), tau.imag / math.sqrt(2))
    return np.abs(lhs - rhs)[()]


def schmidt_overlap_check(m, n, tau):
    """|<m,n|tau> - pi (-1)^n W_g[h_m, h_n](tau1/sqrt2, tau2/sqrt2)|.

    <m,n|tau> is the complex conjugate of :func:`tau_overlap_fock`.
    """
    tau = np.asarray(tau, dtype=complex)
    lhs = np.conj(tau_overlap_fock(m, n, tau))
    rhs = math.pi * (-1) ** n * gwt(m, n, tau.real / math.sqrt(2), tau.imag / math.sqrt(2))
    return np.abs(lhs - rhs)[()]


def gwt_direct(f_mode, v_mode, x, p, half_width=12.0, nodes=400):
    """W_g by plain Gauss-Legendre quadrature of the u-integral (no contour shift)."""
    q = QuadratureSpec(half_width=half_width, nodes_per_axis=nodes)
    u, w = nodes_weights(q)
    vals = np.exp(-1j * u * p) * hg_wavefunction(f_mode, x - u / 2) * hg_wavefunction(v_mode, x + u / 2)
    return complex(np.sum(w * vals) / (2 * math.pi))
