"""Registry of the invariant checks run by ``lgkit verify``.

Each check returns a non-negative residual that passes when it is at most
its tolerance.  Report layout::

    {"suite": str,
     "checks": [{"id", "anchor", "residual", "tol", "pass", "ms"}, ...],
     "pass": bool}
"""
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fockspace as fs
from . import modes, phasespace, transforms
from .specialfn import hermite2v, laguerre, log_factorial

SUITES = ("fock", "modes", "wigner", "transforms")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "checks", "pass"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string", "enum": ["all", *SUITES]},
        "pass": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "anchor", "residual", "tol", "pass", "ms"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "anchor": {"type": "string"},
                    "residual": {"type": ["number", "null"]},
                    "tol": {"type": "number"},
                    "pass": {"type": "boolean"},
                    "ms": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    anchor: str
    tol: float
    run: Callable[[int], float]


def valid_indices(n_max, l_min=None):
    out = []
    for n in range(n_max + 1):
        for l in range(-n, n + 1, 2):
            if l_min is None or l >= l_min:
                out.append(fs.ModeIndex(n, l))
    return out


# -- fock ---------------------------------------------------------------------

def _eigen_n(nmax):
    b = fs.BasisSpec(nmax)
    num = fs.number_operator(b)
    u = fs.jx_rotation(b)
    return max(((num @ s) - s * i.n).norm() for i in valid_indices(6) for s in [fs.lg_state_beamsplitter(i, b, u)])


def _eigen_l(nmax):
    b = fs.BasisSpec(nmax)
    lop = fs.angular_momentum_operator(b)
    u = fs.jx_rotation(b)
    return max(
        ((lop @ s) - s * i.l).norm() for i in valid_indices(6) for s in [fs.lg_state_beamsplitter(i, b, u)]
    )


def _ladder_vs_bs(nmax):
    b = fs.BasisSpec(nmax)
    u = fs.jx_rotation(b)
    return max(
        (fs.lg_state_ladder(i, b) - fs.lg_state_beamsplitter(i, b, u)).norm() for i in valid_indices(6)
    )


def _bs_equals_jx(nmax):
    b = fs.BasisSpec(min(nmax, 16))
    diff = fs.beam_splitter(math.pi / 2, math.pi / 2, b).entries - fs.jx_rotation(b).entries
    return float(np.abs(diff).max())


def _unitarity(nmax):
    b = fs.BasisSpec(nmax)
    u = fs.jx_rotation(b).entries
    return float(np.abs(u.conj().T @ u - np.eye(b.dim)).max())


def _hermitian(nmax):
    b = fs.BasisSpec(nmax)
    ops = [fs.number_operator(b), fs.angular_momentum_operator(b), fs.jx_operator(b)]
    return max(float(np.abs(o.entries - o.entries.conj().T).max()) for o in ops)


def _circular_algebra(nmax):
    return max(fs.commutator_checks(fs.BasisSpec(min(nmax, 16))).values())


def _entanglement_dimension(nmax):
    b = fs.BasisSpec(nmax)
    u = fs.jx_rotation(b)
    worst = 0.0
    for i in valid_indices(6):
        s = fs.lg_state_beamsplitter(i, b, u)
        outside = np.linalg.norm(s.coeffs[b.totals != i.n])
        count = int(np.sum(np.abs(s.coeffs) > 1e-12))
        worst = max(worst, outside, float(max(0, count - (i.n + 1))))
    return worst


def _eta_samples():
    return [r * np.exp(1j * t) for r in (0.0, 0.5, 1.0) for t in (0.0, 1.1, 2.5, -2.0)]


def _eta_eigen(nmax):
    b = fs.BasisSpec(max(nmax, 40))
    return max(max(fs.eta_eigen_residuals(e, b)) for e in _eta_samples())


def _tau_eigen(nmax):
    b = fs.BasisSpec(max(nmax, 40))
    return max(max(fs.tau_eigen_residuals(t, b)) for t in _eta_samples())


# -- modes --------------------------------------------------------------------

def polynomial_identity_error(n_max=10, samples=20, seed=0):
    """Max relative error of H_{m,n}(eta, eta*) = m! (-1)^m eta*^{n-m} L_m^{n-m}(|eta|^2), m < n."""
    rng = np.random.default_rng(seed)
    r = 3 * np.sqrt(rng.uniform(size=samples))
    eta = r * np.exp(2j * np.pi * rng.uniform(size=samples))
    worst = 0.0
    for n in range(1, n_max + 1):
        for m in range(n):
            lhs = hermite2v(m, n, eta, eta.conj())
            rhs = math.exp(log_factorial(m)) * (-1) ** m * eta.conj() ** (n - m) * laguerre(m, n - m, np.abs(eta) ** 2)
            scale = np.maximum(np.abs(rhs), 1e-300)
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / scale)))
    return worst


def _eta_overlap(nmax):
    b = fs.BasisSpec(max(nmax, 40))
    u = fs.jx_rotation(b)
    worst = 0.0
    etas = [0.3 + 0.2j, -0.7 + 0.5j, 1.1 - 0.2j, 0.9j, -0.4 - 0.8j]
    states = {e: fs.build_eta_state(e, b) for e in etas}
    for i in valid_indices(4):
        s = fs.lg_state_beamsplitter(i, b, u)
        sign = (-1) ** i.l if i.l < 0 else 1
        for e in etas:
            oracle = states[e].inner(s)
            closed = sign * complex(modes.lg_wavefunction_eta(i, e))
            worst = max(worst, abs(oracle - closed) / max(abs(closed), 1e-3))
    return worst


def _eta_normalization(nmax):
    pairs = valid_indices(3)
    worst = 0.0
    for a in pairs:
        for c in pairs:
            target = 1.0 if a == c else 0.0
            worst = max(worst, abs(modes.eta_plane_overlap(a, c) - target))
    return worst


def radial_convergence_ratios():
    cases = [((0, 0), 1.0), ((2, 0), 1.5), ((3, 1), 0.8), ((2, 2), 1.2), ((4, -2), 1.1)]
    return [
        modes.radial_equation_residual(i, r, 2e-3) / modes.radial_equation_residual(i, r, 1e-3) for i, r in cases
    ]


def _radial_ode(nmax):
    return max(abs(q - 4.0) for q in radial_convergence_ratios())


def _angular_phase(nmax):
    worst = 0.0
    phis = np.linspace(-math.pi, math.pi, 16, endpoint=False)
    for i in valid_indices(5):
        vals = modes.lg_wavefunction_eta(i, 0.9 * np.exp(1j * phis)) * np.exp(1j * i.l * phis)
        worst = max(worst, float(np.abs(vals - vals[0]).max()))
    return worst


def _tau_fock(nmax):
    b = fs.BasisSpec(max(nmax, 40))
    worst = 0.0
    for t in (0.0, 0.5 + 0.3j, -0.6 + 0.7j, 1.0):
        st = fs.build_tau_state(t, b)
        for m in range(5):
            for n in range(5):
                oracle = np.conj(st.amplitude(m, n))
                worst = max(worst, abs(oracle - complex(modes.tau_overlap_fock(m, n, t))))
    return worst


def _tau_lg(nmax):
    b = fs.BasisSpec(max(nmax, 40))
    u = fs.jx_rotation(b)
    worst = 0.0
    taus = (0.0, 0.5 + 0.3j, -0.2 + 0.9j, 0.7 - 0.1j)
    states = {t: fs.build_tau_state(t, b) for t in taus}
    for i in valid_indices(4):
        s = fs.lg_state_beamsplitter(i, b, u)
        for t in taus:
            worst = max(worst, abs(states[t].inner(s) - complex(modes.tau_overlap_lg(i, t))))
    return worst


# -- wigner -------------------------------------------------------------------

def wigner_oracle_error(nmax, n_max=4, points=5, half=1.2):
    b = fs.BasisSpec(nmax)
    u = fs.jx_rotation(b)
    g = np.linspace(-half, half, points)
    grid = np.meshgrid(g, g, g, g, indexing="ij")
    worst = 0.0
    for i in valid_indices(n_max):
        w_oracle = phasespace.wigner_bruteforce_grid(fs.lg_state_beamsplitter(i, b, u), g, g, g, g)
        worst = max(worst, float(np.abs(w_oracle - phasespace.wigner_lg(i, grid)).max()))
    return worst


def _wigner_norm(nmax):
    return max(abs(phasespace.wigner_normalization(i) - 1.0) for i in valid_indices(3))


def sigma_samples():
    s = np.array([-0.8, 0.0, 0.7])
    return [complex(a, b) for a in s for b in s]


def _marginal_tau(nmax):
    worst = 0.0
    for i in valid_indices(3, l_min=0):
        for s in sigma_samples():
            worst = max(
                worst, abs(phasespace.marginal_sigma_analytic(i, s) - phasespace.marginal_sigma_from_tau(i, s))
            )
    return worst


def _marginal_quad(nmax):
    worst = 0.0
    for i in valid_indices(3, l_min=0):
        for s in sigma_samples():
            worst = max(
                worst, abs(phasespace.marginal_sigma_analytic(i, s) - phasespace.marginal_sigma_quadrature(i, s))
            )
    return worst


def _wigner_bound(nmax):
    g = np.linspace(-3, 3, 13)
    grid = np.meshgrid(g, g, g, g, indexing="ij")
    worst = 0.0
    for i in valid_indices(4):
        worst = max(worst, float(np.abs(phasespace.wigner_lg(i, grid)).max()) - 1 / math.pi**2)
    return max(worst, 0.0)


# -- transforms ---------------------------------------------------------------

FRFT_CASES = [(0, 0), (1, 1), (2, 0), (2, 2)]
FRFT_ORDERS = [0.7, math.pi / 4, math.pi / 2]
GWT_CASES = [(0, 0), (0, 2), (1, 1), (1, 3)]


def gwt_tau_grid():
    """5 x 5 grid whose corners sit on |tau| = 1.5."""
    s = np.linspace(-1.5, 1.5, 5) / math.sqrt(2)
    return s[:, None] + 1j * s[None, :]


def _frft_eigen(nmax):
    return max(transforms.frft_eigen_residual(i, a) for i in FRFT_CASES for a in FRFT_ORDERS)


def _frft_beam_splitter(nmax):
    """<tau|B|m,n> is an FrFT eigenfunction for any number-conserving B."""
    b = fs.BasisSpec(max(nmax, 24))
    bs = fs.beam_splitter(math.pi / 3, math.pi / 5, b)
    worst = 0.0
    for m, n in [(1, 0), (1, 1), (2, 1)]:
        out = bs @ fs.fock_state(m, n, b)
        blk = b.block(m + n)
        kets = b.kets[blk]
        coeffs = out.coeffs[blk]

        def field(t, kets=kets, coeffs=coeffs):
            return sum(c * modes.tau_overlap_fock(k1, k2, t) for (k1, k2), c in zip(kets, coeffs))

        tau = transforms._sample_grid()
        sampled = transforms.SampledField(field, transforms.lg_field_quadrature(m + n))
        for a in (0.7, 2.0):
            got = transforms.frft(sampled, a, tau)
            worst = max(worst, float(np.abs(got - np.exp(-1j * a * (m + n)) * field(tau)).max()))
    return worst


def _gwt_identity(nmax):
    tau = gwt_tau_grid()
    return max(float(np.max(transforms.gwt_lg_identity_residual(m, n, tau))) for m, n in GWT_CASES)


def _schmidt(nmax):
    tau = gwt_tau_grid()
    cases = [(0, 0), (1, 2), (2, 2), (2, 1), (3, 0)]
    return max(float(np.max(transforms.schmidt_overlap_check(m, n, tau))) for m, n in cases)


def _gwt_conjugate(nmax):
    x, p = np.meshgrid(np.linspace(-1.5, 1.5, 7), np.linspace(-1.5, 1.5, 7))
    worst = 0.0
    for m in range(4):
        for n in range(4):
            worst = max(worst, float(np.abs(transforms.gwt(m, n, x, p) - np.conj(transforms.gwt(n, m, x, p))).max()))
    return worst


CHECKS = [
    Check("fock.eigen_number", "fock", "N|n,l> = n|n,l>, n <= 6", 1e-10, _eigen_n),
    Check("fock.eigen_angular", "fock", "L|n,l> = l|n,l>, n <= 6", 1e-10, _eigen_l),
    Check("fock.ladder_vs_beamsplitter", "fock", "circular ladder form equals exp(i pi/2 Jx)|m_r,n_r>", 1e-10, _ladder_vs_bs),
    Check("fock.bs_equals_jx", "fock", "B(pi/2, pi/2) = exp(i pi/2 Jx)", 1e-10, _bs_equals_jx),
    Check("fock.unitarity", "fock", "exp(i pi/2 Jx) unitary on every block", 1e-10, _unitarity),
    Check("fock.hermitian", "fock", "N, L, Jx Hermitian", 1e-12, _hermitian),
    Check("fock.circular_algebra", "fock", "A+- commutators and N, L recombination", 1e-12, _circular_algebra),
    Check("fock.entanglement_dimension", "fock", "|n,l> supported on the (n+1)-ket block", 1e-12, _entanglement_dimension),
    Check("fock.jx_decomposition", "fock", "three-factor disentangling of exp(i pi/2 Jx)",
          1e-9, lambda nmax: fs.jx_decomposition_check(fs.BasisSpec(8))),
    Check("fock.quadrature_covariance", "fock", "quadrature conjugation by exp(i pi/2 Jx)",
          1e-9, lambda nmax: fs.quadrature_covariance_check(fs.BasisSpec(8))),
    Check("fock.eta_eigen", "fock", "|eta> eigen-equations", 1e-6, _eta_eigen),
    Check("fock.tau_eigen", "fock", "|tau> eigen-equations", 1e-6, _tau_eigen),
    Check("modes.polynomial_identity", "modes", "two-variable Hermite to Laguerre reduction",
          1e-10, lambda nmax: polynomial_identity_error()),
    Check("modes.eta_overlap", "modes", "<eta|n,l> is the LG mode (Fock oracle)", 1e-5, _eta_overlap),
    Check("modes.eta_orthonormality", "modes", "eta-plane orthonormality of LG modes", 1e-6, _eta_normalization),
    Check("modes.radial_ode", "modes", "radial equation residual O(h^2) ratio - 4", 0.5, _radial_ode),
    Check("modes.angular_phase", "modes", "<eta|n,l> proportional to exp(-i l phi)", 1e-12, _angular_phase),
    Check("modes.tau_overlap_fock", "modes", "<tau|m,n> two-variable Hermite form (Fock oracle)", 1e-5, _tau_fock),
    Check("modes.tau_overlap_lg", "modes", "<tau|n,l> double-sum form (Fock oracle)", 1e-5, _tau_lg),
    Check("wigner.oracle_equivalence", "wigner", "LG Wigner closed form vs displaced-parity oracle",
          1e-8, wigner_oracle_error),
    Check("wigner.normalization", "wigner", "integral of W over phase space is 1", 1e-5, _wigner_norm),
    Check("wigner.bound", "wigner", "|W| <= 1/pi^2 (excess)", 1e-15, _wigner_bound),
    Check("wigner.marginal_tau", "wigner", "marginal closed form = |<tau=sigma|n,l>|^2 / pi", 1e-10, _marginal_tau),
    Check("wigner.marginal_quadrature", "wigner", "marginal closed form = gamma-plane integral of W",
          1e-5, _marginal_quad),
    Check("transforms.frft_eigen", "transforms", "<tau|n,l> is an FrFT eigenfunction, eigenvalue e^{-i alpha n}",
          1e-5, _frft_eigen),
    Check("transforms.frft_beam_splitter", "transforms", "<tau|B|m,n> FrFT eigenfunction for B(pi/3, pi/5)",
          1e-5, _frft_beam_splitter),
    Check("transforms.gwt_identity", "transforms", "LG mode as generalized Wigner transform of HG modes",
          1e-6, _gwt_identity),
    Check("transforms.schmidt_overlap", "transforms", "<m,n|tau> = pi <m|Delta (-1)^N|n>", 1e-6, _schmidt),
    Check("transforms.gwt_conjugate", "transforms", "W_g[h_m,h_n] = conj W_g[h_n,h_m]", 1e-10, _gwt_conjugate),
]


def checks_for(suite):
    if suite == "all":
        return list(CHECKS)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    return [c for c in CHECKS if c.suite == suite]


def run_suite(suite="all", nmax=32, on_result=None):
    """Run every check of ``suite`` and return the report dict."""
    records = []
    for check in checks_for(suite):
        start = time.perf_counter()
        try:
            residual = float(check.run(nmax))
        except Exception as exc:  # a crashing check is a failed check, not a crashed suite
            residual = None
            err = f"{type(exc).__name__}: {exc}"
        else:
            err = None
        ms = (time.perf_counter() - start) * 1e3
        ok = residual is not None and math.isfinite(residual) and residual <= check.tol
        rec = {"id": check.id, "anchor": check.anchor if err is None else f"{check.anchor} [{err}]",
               "residual": residual, "tol": check.tol, "pass": ok, "ms": round(ms, 3)}
        records.append(rec)
        if on_result is not None:
            on_result(rec)
    return {"suite": suite, "checks": records, "pass": all(r["pass"] for r in records)}
