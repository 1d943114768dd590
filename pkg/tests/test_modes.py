import math

import numpy as np
import pytest

from lgkit import fockspace as fs
from lgkit import modes
from lgkit.errors import InvalidModeIndex
from lgkit.quadrature import gauss_hermite
from lgkit.verify import polynomial_identity_error, radial_convergence_ratios, valid_indices


@pytest.fixture(scope="module")
def fock40():
    b = fs.BasisSpec(40)
    return b, fs.jx_rotation(b)


class TestLGWavefunction:
    def test_ground_mode_on_unit_circle(self):
        for phi in (0.0, 1.0, -2.5):
            v = modes.lg_wavefunction_eta((0, 0), modes.EtaPoint.polar(1.0, phi))
            assert v == pytest.approx(math.exp(-0.5), abs=1e-15)
        assert math.exp(-0.5) == pytest.approx(0.60653, abs=1e-5)

    def test_vortex_vanishes_at_origin(self):
        assert modes.lg_wavefunction_eta((2, 2), 0) == 0

    def test_invalid_index(self):
        with pytest.raises(InvalidModeIndex):
            modes.lg_wavefunction_eta((2, 1), 0.3)

    @pytest.mark.parametrize("idx", [(1, 1), (2, 0), (3, 1), (3, -1)])
    def test_normalization(self, idx):
        assert abs(modes.eta_plane_overlap(idx, idx) - 1) < 1e-6

    def test_orthonormality(self):
        idx = valid_indices(3)
        for a in idx:
            for b in idx:
                assert abs(modes.eta_plane_overlap(a, b) - (a == b)) < 1e-6

    def test_angular_dependence(self):
        phis = np.linspace(-math.pi, math.pi, 12, endpoint=False)
        for i in valid_indices(5):
            vals = modes.lg_wavefunction_eta(i, 1.3 * np.exp(1j * phis)) * np.exp(1j * i.l * phis)
            assert np.abs(vals - vals[0]).max() < 1e-13

    def test_fock_oracle_and_sign_rule(self, fock40):
        b, u = fock40
        etas = [0.4 - 0.3j, 0.9j, -0.7 + 0.2j]
        eta_states = [fs.build_eta_state(e, b) for e in etas]
        for i in valid_indices(4):
            s = fs.lg_state_beamsplitter(i, b, u)
            for e, es in zip(etas, eta_states):
                oracle = es.inner(s)
                closed = complex(modes.lg_wavefunction_eta(i, e))
                # exact for l >= 0; negative l differs by (-1)^l
                sign = (-1) ** i.l if i.l < 0 else 1
                assert abs(oracle - sign * closed) < 1e-10


class TestRadialEquation:
    @pytest.mark.parametrize("idx,r,bound", [((0, 0), 1.0, 1e-5), ((2, 0), 1.5, 1e-4), ((3, 1), 0.8, 1e-4)])
    def test_examples(self, idx, r, bound):
        assert modes.radial_equation_residual(idx, r, 1e-3) < bound

    def test_second_order_convergence(self):
        for q in radial_convergence_ratios():
            assert 3.5 <= q <= 4.5

    def test_step_must_be_small(self):
        with pytest.raises(ValueError):
            modes.radial_equation_residual((0, 0), 1e-3, h=1e-3)


class TestHermiteGauss:
    def test_examples(self):
        assert modes.hg_wavefunction(0, 0.0) == pytest.approx(math.pi ** -0.25, abs=1e-15)
        assert modes.hg_wavefunction(0, 0.0) == pytest.approx(0.751126, abs=1e-6)
        assert modes.hg_wavefunction(1, 0.0) == 0

    def test_orthonormality(self):
        # x-nodes of a 64-point Gauss-Hermite rule; h_m h_n e^{x^2} is a polynomial there
        x, w = gauss_hermite(64)
        h = np.array([modes.hg_wavefunction(m, x) for m in range(7)])
        gram = (h * w * np.exp(x * x)) @ h.T
        assert np.abs(gram - np.eye(7)).max() < 1e-8


class TestTauOverlaps:
    def test_fock_examples(self):
        t = 0.3 - 0.7j
        assert modes.tau_overlap_fock(0, 0, t) == pytest.approx(math.exp(-abs(t) ** 2 / 2), abs=1e-15)
        assert modes.tau_overlap_fock(1, 0, 1 + 1j) == pytest.approx((1 - 1j) * math.exp(-1), abs=1e-15)
        assert modes.tau_overlap_fock(1, 1, 1) == pytest.approx(0, abs=1e-15)

    def test_fock_matches_truncated_state(self, fock40):
        b, _ = fock40
        for t in (0.5 + 0.3j, -0.9 + 0.1j):
            st = fs.build_tau_state(t, b)
            for m in range(5):
                for n in range(5):
                    assert abs(np.conj(st.amplitude(m, n)) - modes.tau_overlap_fock(m, n, t)) < 1e-10

    def test_lg_ground(self):
        t = np.array([0, 0.4 + 0.2j, -1.1j])
        assert np.allclose(modes.tau_overlap_lg((0, 0), t), np.exp(-np.abs(t) ** 2 / 2), atol=1e-15)

    def test_lg_examples_against_oracle(self, fock40):
        b, u = fock40
        st = fs.build_tau_state(0.5 + 0.3j, b)
        assert abs(st.inner(fs.lg_state_beamsplitter((1, 1), b, u)) - modes.tau_overlap_lg((1, 1), 0.5 + 0.3j)) < 1e-5
        st0 = fs.build_tau_state(0, b)
        assert abs(st0.inner(fs.lg_state_beamsplitter((2, 2), b, u)) - modes.tau_overlap_lg((2, 2), 0)) < 1e-6

    def test_lg_all_indices_no_phase_offset(self, fock40):
        b, u = fock40
        taus = (0.2 + 0.6j, -0.8 - 0.3j)
        states = [fs.build_tau_state(t, b) for t in taus]
        for i in valid_indices(4):
            s = fs.lg_state_beamsplitter(i, b, u)
            for t, st in zip(taus, states):
                assert abs(st.inner(s) - modes.tau_overlap_lg(i, t)) < 1e-10

    def test_invalid_index(self):
        with pytest.raises(InvalidModeIndex):
            modes.tau_overlap_lg((1, 0), 0.1)

    def test_point_types(self):
        assert modes.tau_overlap_lg((2, 0), modes.TauPoint(0.3 + 0.1j)) == modes.tau_overlap_lg((2, 0), 0.3 + 0.1j)
        p = modes.EtaPoint.polar(2.0, 0.5)
        assert (p.r, p.phi) == pytest.approx((2.0, 0.5))


def test_polynomial_identity():
    assert polynomial_identity_error() < 1e-10
