"""Truncated two-mode Fock space.

The basis holds every ket |k1, k2> with k1 + k2 <= nmax, ordered by total
excitation (ascending) and then by k2 (ascending).  Number-conserving
operators are therefore block diagonal with contiguous blocks, which is
exploited when exponentiating them.

Operators built from ladder matrices are exact on every matrix element that
lies inside the basis; products of them are wrong in the top excitation
rows.  Identities that involve such products are asserted on the guarded
sub-basis ``total <= nmax - guard`` only.
"""
import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import expm

from .errors import ConvergenceFailure, CutoffTooSmall, InvalidModeIndex

__all__ = [
    "BasisSpec",
    "ModeIndex",
    "TwoModeState",
    "OperatorMatrix",
    "identity",
    "annihilation",
    "creation",
    "number_operator",
    "angular_momentum_operator",
    "quadrature_x",
    "quadrature_p",
    "circular_creation",
    "jx_operator",
    "block_expm",
    "jx_rotation",
    "beam_splitter",
    "fock_state",
    "vacuum",
    "lg_state_ladder",
    "lg_state_beamsplitter",
    "jx_decomposition_check",
    "build_eta_state",
    "build_tau_state",
    "eta_eigen_residuals",
    "tau_eigen_residuals",
    "quadrature_covariance_check",
    "commutator_checks",
    "default_nmax",
]

SERIES_TERM_CAP = 500
SERIES_TAIL_TOL = 1e-14
GUARD = 2


def default_nmax(fallback=32):
    """Cutoff from the ``LGKIT_NMAX`` environment variable, else ``fallback``."""
    raw = os.environ.get("LGKIT_NMAX")
    if raw is None or raw.strip() == "":
        return fallback
    return int(raw)


@dataclass(frozen=True)
class BasisSpec:
    """All two-mode kets with total excitation at most ``nmax``."""

    nmax: int

    def __post_init__(self):
        if int(self.nmax) != self.nmax or self.nmax < 0:
            raise ValueError(f"nmax must be a non-negative integer, got {self.nmax!r}")

    @property
    def dim(self):
        return (self.nmax + 1) * (self.nmax + 2) // 2

    @cached_property
    def kets(self):
        """Tuple of (k1, k2) in basis order."""
        return tuple((t - k2, k2) for t in range(self.nmax + 1) for k2 in range(t + 1))

    @cached_property
    def totals(self):
        out = np.array([k1 + k2 for k1, k2 in self.kets], dtype=int)
        out.flags.writeable = False
        return out

    def index(self, k1, k2):
        t = k1 + k2
        if k1 < 0 or k2 < 0 or t > self.nmax:
            raise CutoffTooSmall(f"|{k1},{k2}> lies outside the basis with nmax={self.nmax}")
        return t * (t + 1) // 2 + k2

    def block(self, total):
        """Slice of basis positions with the given total excitation."""
        start = total * (total + 1) // 2
        return slice(start, start + total + 1)

    def guarded(self, guard=GUARD):
        """Boolean mask of kets with total excitation <= nmax - guard."""
        return self.totals <= self.nmax - guard


@dataclass(frozen=True)
class ModeIndex:
    """Quantum numbers (n, l) of a common eigenvector of N and L."""

    n: int
    l: int

    def __post_init__(self):
        n, l = self.n, self.l
        if int(n) != n or int(l) != l:
            raise InvalidModeIndex(f"(n, l) must be integers, got ({n!r}, {l!r})")
        if n < 0 or abs(l) > n or (n - abs(l)) % 2:
            raise InvalidModeIndex(f"invalid mode index (n={n}, l={l}): need |l| <= n and n - |l| even")

    @property
    def m_rho(self):
        return (self.n + self.l) // 2

    @property
    def n_rho(self):
        return (self.n - self.l) // 2

    @property
    def radial(self):
        """Laguerre degree (n - |l|)/2 of the radial factor."""
        return (self.n - abs(self.l)) // 2


def _as_index(idx):
    if isinstance(idx, ModeIndex):
        return idx
    return ModeIndex(*idx)


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Coefficient vector over a :class:`BasisSpec`."""

    basis: BasisSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _readonly(self.coeffs)
        if c.shape != (self.basis.dim,):
            raise ValueError(f"expected {self.basis.dim} coefficients, got shape {c.shape}")
        object.__setattr__(self, "coeffs", c)

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def normalized(self):
        return TwoModeState(self.basis, self.coeffs / self.norm())

    def amplitude(self, k1, k2):
        return complex(self.coeffs[self.basis.index(k1, k2)])

    def inner(self, other):
        """<self|other>."""
        return complex(np.vdot(self.coeffs, other.coeffs))

    def support(self, tol=1e-12):
        """Largest total excitation carrying a coefficient above ``tol``."""
        nz = np.nonzero(np.abs(self.coeffs) > tol)[0]
        return int(self.basis.totals[nz].max()) if nz.size else 0

    def as_grid(self):
        """Coefficients as an (nmax+1, nmax+1) array psi[k1, k2], zero-padded."""
        m = self.basis.nmax + 1
        grid = np.zeros((m, m), dtype=complex)
        k = np.array(self.basis.kets)
        grid[k[:, 0], k[:, 1]] = self.coeffs
        return grid

    def __sub__(self, other):
        return TwoModeState(self.basis, self.coeffs - other.coeffs)

    def __add__(self, other):
        return TwoModeState(self.basis, self.coeffs + other.coeffs)

    def __mul__(self, scalar):
        return TwoModeState(self.basis, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex matrix over a :class:`BasisSpec`."""

    basis: BasisSpec
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = _readonly(self.entries)
        d = self.basis.dim
        if e.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got {e.shape}")
        object.__setattr__(self, "entries", e)

    def dag(self):
        return OperatorMatrix(self.basis, self.entries.conj().T)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.basis, self.entries @ other.entries)
        if isinstance(other, TwoModeState):
            return TwoModeState(self.basis, self.entries @ other.coeffs)
        return NotImplemented

    def __add__(self, other):
        return OperatorMatrix(self.basis, self.entries + _entries(other, self.basis))

    def __sub__(self, other):
        return OperatorMatrix(self.basis, self.entries - _entries(other, self.basis))

    def __neg__(self):
        return OperatorMatrix(self.basis, -self.entries)

    def __mul__(self, scalar):
        return OperatorMatrix(self.basis, self.entries * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return OperatorMatrix(self.basis, self.entries / scalar)

    def is_hermitian(self, atol=1e-12):
        return bool(np.abs(self.entries - self.entries.conj().T).max(initial=0.0) <= atol)

    def restricted(self, mask):
        """Sub-matrix on the kets selected by a boolean mask."""
        return self.entries[np.ix_(mask, mask)]


def _entries(op, basis):
    if isinstance(op, OperatorMatrix):
        return op.entries
    if np.isscalar(op):
        return op * np.eye(basis.dim)
    raise TypeError(f"cannot combine OperatorMatrix with {type(op).__name__}")


def identity(basis):
    return OperatorMatrix(basis, np.eye(basis.dim))


def annihilation(mode, basis):
    """Ladder matrix a_1 or a_2."""
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode!r}")
    a = np.zeros((basis.dim, basis.dim), dtype=complex)
    for col, (k1, k2) in enumerate(basis.kets):
        k = k1 if mode == 1 else k2
        if k == 0:
            continue
        row = basis.index(k1 - 1, k2) if mode == 1 else basis.index(k1, k2 - 1)
        a[row, col] = math.sqrt(k)
    return OperatorMatrix(basis, a)


def creation(mode, basis):
    return annihilation(mode, basis).dag()


def number_operator(basis):
    """Total photon number N = a1+ a1 + a2+ a2 (diagonal)."""
    return OperatorMatrix(basis, np.diag(basis.totals.astype(complex)))


def angular_momentum_operator(basis):
    """Orbital angular momentum L = i (a2+ a1 - a1+ a2)."""
    a1, a2 = annihilation(1, basis), annihilation(2, basis)
    return 1j * (a2.dag() @ a1 - a1.dag() @ a2)


def quadrature_x(mode, basis):
    a = annihilation(mode, basis)
    return (a + a.dag()) / math.sqrt(2)


def quadrature_p(mode, basis):
    a = annihilation(mode, basis)
    return (a - a.dag()) / (1j * math.sqrt(2))


def circular_creation(sign, basis):
    """A_+^dagger = (a1+ + i a2+)/sqrt2 for sign=+1, A_-^dagger = (i a1+ + a2+)/sqrt2 for sign=-1."""
    c1, c2 = creation(1, basis), creation(2, basis)
    if sign > 0:
        return (c1 + 1j * c2) / math.sqrt(2)
    return (1j * c1 + c2) / math.sqrt(2)


def jx_operator(basis):
    a1, a2 = annihilation(1, basis), annihilation(2, basis)
    return 0.5 * (a1.dag() @ a2 + a2.dag() @ a1)


def block_expm(generator):
    """exp(generator) for a number-conserving generator, block by block.

    Raises ValueError if the generator couples different excitation blocks.
    """
    basis = generator.basis
    g = generator.entries
    out = np.zeros_like(g)
    for t in range(basis.nmax + 1):
        sl = basis.block(t)
        out[sl, sl] = expm(g[sl, sl])
    leak = np.abs(g - _block_part(g, basis)).max(initial=0.0)
    if leak > 0:
        raise ValueError(f"generator is not number conserving (off-block magnitude {leak:.3g})")
    return OperatorMatrix(basis, out)


def _block_part(g, basis):
    out = np.zeros_like(g)
    for t in range(basis.nmax + 1):
        sl = basis.block(t)
        out[sl, sl] = g[sl, sl]
    return out


def jx_rotation(basis):
    """U = exp(i (pi/2) J_x), the 50:50 beam splitter with pi/2 phase."""
    return block_expm(1j * (math.pi / 2) * jx_operator(basis))


def beam_splitter(theta, phi, basis):
    """B(theta, phi) = exp[(theta/2)(a1+ a2 e^{i phi} - a1 a2+ e^{-i phi})]."""
    a1, a2 = annihilation(1, basis), annihilation(2, basis)
    # a1 a2+ == a2+ a1; the normal-ordered product is exact under truncation
    gen = a1.dag() @ a2 * np.exp(1j * phi) - a2.dag() @ a1 * np.exp(-1j * phi)
    return block_expm(gen * (theta / 2))


def fock_state(k1, k2, basis):
    c = np.zeros(basis.dim, dtype=complex)
    c[basis.index(k1, k2)] = 1.0
    return TwoModeState(basis, c)


def vacuum(basis):
    return fock_state(0, 0, basis)


def _check_fits(idx, basis):
    if idx.n > basis.nmax:
        raise CutoffTooSmall(f"state with n={idx.n} needs nmax >= {idx.n}, got {basis.nmax}")


def lg_state_ladder(idx, basis):
    """|n,l> = (A_+^dag)^{m_rho} (A_-^dag)^{n_rho} |00> / sqrt(m_rho! n_rho!).

    With A_-^dag = (i a1+ + a2+)/sqrt2 this coincides exactly with
    :func:`lg_state_beamsplitter`, including the global phase.
    """
    idx = _as_index(idx)
    _check_fits(idx, basis)
    ap, am = circular_creation(+1, basis), circular_creation(-1, basis)
    v = vacuum(basis).coeffs
    for _ in range(idx.n_rho):
        v = am.entries @ v
    for _ in range(idx.m_rho):
        v = ap.entries @ v
    scale = math.exp(-0.5 * (math.lgamma(idx.m_rho + 1) + math.lgamma(idx.n_rho + 1)))
    return TwoModeState(basis, v * scale)


def lg_state_beamsplitter(idx, basis, rotation=None):
    """|n,l> = exp(i pi/2 J_x) |m_rho, n_rho>; the canonical phase convention."""
    idx = _as_index(idx)
    _check_fits(idx, basis)
    u = jx_rotation(basis) if rotation is None else rotation
    return u @ fock_state(idx.m_rho, idx.n_rho, basis)


def jx_decomposition_check(basis):
    """Max deviation between exp(i pi/2 J_x) and its three-factor disentangled form.

    exp(i a1+ a2) exp[(a1+ a1 - a2+ a2) ln2 / 2] exp(i a2+ a1)
    """
    a1, a2 = annihilation(1, basis), annihilation(2, basis)
    n1, n2 = a1.dag() @ a1, a2.dag() @ a2
    left = block_expm(1j * (a1.dag() @ a2))
    middle = block_expm(0.5 * math.log(2) * (n1 - n2))
    right = block_expm(1j * (a2.dag() @ a1))
    product = left @ middle @ right
    return float(np.abs(product.entries - jx_rotation(basis).entries).max())


def _creation_series(generator, basis, tol, cap):
    """exp(generator)|00> as a Taylor series applied to the vacuum vector."""
    g = generator.entries
    term = vacuum(basis).coeffs.copy()
    total = term.copy()
    for k in range(1, cap + 1):
        term = g @ term / k
        total += term
        if np.linalg.norm(term) <= tol * np.linalg.norm(total):
            return total
    raise ConvergenceFailure(f"operator series did not converge within {cap} terms")


def build_eta_state(eta, basis, tol=SERIES_TAIL_TOL, cap=SERIES_TERM_CAP):
    """Truncated, unnormalized entangled state |eta>.

    exp(-|eta|^2/2 + eta A_+^dag - eta* A_-^dag + A_+^dag A_-^dag)|00>.  The
    exponent holds creation operators only, so the result is the exact
    projection of |eta> onto the basis.  Intended for |eta| <= sqrt(nmax)/3.
    """
    eta = complex(eta)
    ap, am = circular_creation(+1, basis), circular_creation(-1, basis)
    gen = eta * ap - eta.conjugate() * am + ap @ am
    return TwoModeState(basis, math.exp(-abs(eta) ** 2 / 2) * _creation_series(gen, basis, tol, cap))


def build_tau_state(tau, basis, tol=SERIES_TAIL_TOL, cap=SERIES_TERM_CAP):
    """Truncated, unnormalized entangled state |tau>.

    exp(-|tau|^2/2 + tau a1+ - tau* a2+ + a1+ a2+)|00>.
    """
    tau = complex(tau)
    c1, c2 = creation(1, basis), creation(2, basis)
    gen = tau * c1 - tau.conjugate() * c2 + c1 @ c2
    return TwoModeState(basis, math.exp(-abs(tau) ** 2 / 2) * _creation_series(gen, basis, tol, cap))


def _guarded_residual(op, state, eigenvalue, guard):
    mask = state.basis.guarded(guard)
    r = (op @ state).coeffs - eigenvalue * state.coeffs
    return float(np.linalg.norm(r[mask]) / np.linalg.norm(state.coeffs[mask]))


def eta_eigen_residuals(eta, basis, guard=GUARD):
    """Relative eigen-residuals of |eta> for its two defining operators.

    (X1 - X2 - P1 + P2)|eta> = 2 eta_1 |eta>,  (P1 + P2 - X1 - X2)|eta> = 2 eta_2 |eta>.
    Measured on the guarded sub-basis; the ideal state is not normalizable,
    so the top excitation rows of a truncated vector never satisfy them.
    """
    eta = complex(eta)
    state = build_eta_state(eta, basis)
    x1, x2 = quadrature_x(1, basis), quadrature_x(2, basis)
    p1, p2 = quadrature_p(1, basis), quadrature_p(2, basis)
    return (
        _guarded_residual(x1 - x2 - p1 + p2, state, 2 * eta.real, guard),
        _guarded_residual(p1 + p2 - x1 - x2, state, 2 * eta.imag, guard),
    )


def tau_eigen_residuals(tau, basis, guard=GUARD):
    """(X1 - X2)|tau> = sqrt2 tau_1 |tau>,  (P1 + P2)|tau> = sqrt2 tau_2 |tau>."""
    tau = complex(tau)
    state = build_tau_state(tau, basis)
    x1, x2 = quadrature_x(1, basis), quadrature_x(2, basis)
    p1, p2 = quadrature_p(1, basis), quadrature_p(2, basis)
    return (
        _guarded_residual(x1 - x2, state, math.sqrt(2) * tau.real, guard),
        _guarded_residual(p1 + p2, state, math.sqrt(2) * tau.imag, guard),
    )


def quadrature_covariance_check(basis, guard=GUARD):
    """Max deviation of the four quadrature conjugation identities under U = exp(i pi/2 J_x).

    U+ X1 U = (X1 - P2)/sqrt2,  U+ P1 U = (P1 + X2)/sqrt2,
    U+ X2 U = (X2 - P1)/sqrt2,  U+ P2 U = (P2 + X1)/sqrt2.
    """
    u = jx_rotation(basis)
    x1, x2 = quadrature_x(1, basis), quadrature_x(2, basis)
    p1, p2 = quadrature_p(1, basis), quadrature_p(2, basis)
    r2 = math.sqrt(2)
    pairs = [
        (x1, (x1 - p2) / r2),
        (p1, (p1 + x2) / r2),
        (x2, (x2 - p1) / r2),
        (p2, (p2 + x1) / r2),
    ]
    mask = basis.guarded(guard)
    worst = 0.0
    for op, expected in pairs:
        lhs = u.dag() @ op @ u
        worst = max(worst, float(np.abs(lhs.restricted(mask) - expected.restricted(mask)).max(initial=0.0)))
    return worst


def commutator_checks(basis, guard=GUARD):
    """Deviations of the circular-mode algebra, keyed by identity name.

    Checked on the guarded sub-basis: [A+, A+^dag] = 1, [A-, A-^dag] = 1,
    [A+, A-^dag] = 0, [A-, A+^dag] = 0, A+^dag A+ + A-^dag A- = N and
    A+^dag A+ - A-^dag A- = L.
    """
    apd, amd = circular_creation(+1, basis), circular_creation(-1, basis)
    ap, am = apd.dag(), amd.dag()
    one = identity(basis)
    mask = basis.guarded(guard)

    def dev(op, ref):
        return float(np.abs((op - ref).restricted(mask)).max(initial=0.0))

    zero = 0 * one
    return {
        "[A+,A+dag]=1": dev(ap @ apd - apd @ ap, one),
        "[A-,A-dag]=1": dev(am @ amd - amd @ am, one),
        "[A+,A-dag]=0": dev(ap @ amd - amd @ ap, zero),
        "[A-,A+dag]=0": dev(am @ apd - apd @ am, zero),
        "N=A+dagA+ + A-dagA-": dev(apd @ ap + amd @ am, number_operator(basis)),
        "L=A+dagA+ - A-dagA-": dev(apd @ ap - amd @ am, angular_momentum_operator(basis)),
    }
