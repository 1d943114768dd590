import math

import numpy as np
import pytest
from scipy.linalg import expm

from lgkit import fockspace as fs
from lgkit.errors import ConvergenceFailure, CutoffTooSmall, InvalidModeIndex
from lgkit.verify import valid_indices

R2 = math.sqrt(2)


@pytest.fixture(scope="module")
def b32():
    return fs.BasisSpec(32)


@pytest.fixture(scope="module")
def u32(b32):
    return fs.jx_rotation(b32)


@pytest.fixture(scope="module")
def b40():
    return fs.BasisSpec(40)


def vec(basis, entries):
    v = np.zeros(basis.dim, dtype=complex)
    for (k1, k2), c in entries.items():
        v[basis.index(k1, k2)] = c
    return v


class TestBasis:
    def test_dimension_and_order(self):
        b = fs.BasisSpec(3)
        assert b.dim == 10
        assert b.kets[:6] == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
        for pos, (k1, k2) in enumerate(b.kets):
            assert b.index(k1, k2) == pos

    def test_blocks_are_contiguous(self):
        b = fs.BasisSpec(6)
        for t in range(7):
            assert set(b.totals[b.block(t)]) == {t}

    def test_outside_index_raises(self):
        with pytest.raises(CutoffTooSmall):
            fs.BasisSpec(2).index(2, 1)

    def test_guard_mask(self):
        b = fs.BasisSpec(5)
        assert b.guarded().sum() == fs.BasisSpec(3).dim

    @pytest.mark.parametrize("bad", [-1, 2.5])
    def test_invalid_nmax(self, bad):
        with pytest.raises(ValueError):
            fs.BasisSpec(bad)


class TestModeIndex:
    @pytest.mark.parametrize("n,l", [(0, 1), (1, 0), (2, 3), (-1, -1), (3, 2)])
    def test_invalid(self, n, l):
        with pytest.raises(InvalidModeIndex):
            fs.ModeIndex(n, l)

    def test_derived_numbers(self):
        i = fs.ModeIndex(5, -3)
        assert (i.m_rho, i.n_rho, i.radial) == (1, 4, 1)

    def test_count_of_valid_indices(self):
        assert len(valid_indices(6)) == sum(n + 1 for n in range(7))


class TestOperators:
    def test_annihilation_examples(self):
        b = fs.BasisSpec(3)
        a1, a2 = fs.annihilation(1, b), fs.annihilation(2, b)
        assert np.allclose((a1 @ fs.fock_state(1, 0, b)).coeffs, fs.vacuum(b).coeffs)
        assert np.allclose((a1 @ fs.fock_state(2, 0, b)).coeffs, R2 * fs.fock_state(1, 0, b).coeffs)
        assert np.allclose((a2 @ fs.vacuum(b)).coeffs, 0)

    def test_number_and_angular_on_vacuum(self):
        b = fs.BasisSpec(3)
        assert (fs.number_operator(b) @ fs.vacuum(b)).norm() == 0
        assert (fs.angular_momentum_operator(b) @ fs.vacuum(b)).norm() == 0

    def test_angular_on_single_excitation(self):
        b = fs.BasisSpec(3)
        s = fs.TwoModeState(b, vec(b, {(1, 0): 1 / R2, (0, 1): 1j / R2}))
        assert ((fs.angular_momentum_operator(b) @ s) - s).norm() < 1e-15

    def test_hermiticity(self, b32):
        for op in (fs.number_operator(b32), fs.angular_momentum_operator(b32), fs.jx_operator(b32)):
            assert op.is_hermitian()

    def test_circular_algebra(self):
        devs = fs.commutator_checks(fs.BasisSpec(12))
        assert len(devs) == 6
        assert max(devs.values()) < 1e-12

    def test_block_expm_rejects_number_changing_generator(self):
        b = fs.BasisSpec(3)
        with pytest.raises(ValueError):
            fs.block_expm(fs.creation(1, b))


class TestUnitaries:
    def test_jx_rotation_examples(self):
        b = fs.BasisSpec(4)
        u = fs.jx_rotation(b)
        assert np.allclose((u @ fs.vacuum(b)).coeffs, fs.vacuum(b).coeffs, atol=1e-15)
        assert np.allclose((u @ fs.fock_state(1, 0, b)).coeffs, vec(b, {(1, 0): 1 / R2, (0, 1): 1j / R2}),
                           atol=1e-15)

    def test_jx_rotation_matches_dense_expm(self):
        b = fs.BasisSpec(6)
        dense = expm(1j * math.pi / 2 * fs.jx_operator(b).entries)
        assert np.abs(dense - fs.jx_rotation(b).entries).max() < 1e-12

    def test_unitary(self, b32, u32):
        e = u32.entries
        assert np.abs(e.conj().T @ e - np.eye(b32.dim)).max() < 1e-10

    def test_beam_splitter_examples(self):
        b = fs.BasisSpec(4)
        assert np.abs(fs.beam_splitter(0, 1.3, b).entries - np.eye(b.dim)).max() == 0
        out = fs.beam_splitter(math.pi / 2, 0, b) @ fs.fock_state(1, 0, b)
        expected = vec(b, {(1, 0): math.cos(math.pi / 4), (0, 1): -math.sin(math.pi / 4)})
        assert np.allclose(out.coeffs, expected, atol=1e-15)

    def test_beam_splitter_contains_jx_rotation(self):
        b = fs.BasisSpec(10)
        diff = fs.beam_splitter(math.pi / 2, math.pi / 2, b).entries - fs.jx_rotation(b).entries
        assert np.abs(diff).max() < 1e-12

    @pytest.mark.parametrize("nmax,tol", [(0, 1e-15), (4, 1e-10), (8, 1e-9)])
    def test_jx_decomposition(self, nmax, tol):
        assert fs.jx_decomposition_check(fs.BasisSpec(nmax)) <= tol

    @pytest.mark.parametrize("nmax,tol", [(2, 1e-12), (8, 1e-9), (10, 1e-10)])
    def test_quadrature_covariance(self, nmax, tol):
        assert fs.quadrature_covariance_check(fs.BasisSpec(nmax)) < tol

    def test_covariance_survives_without_guard(self):
        # truncated quadratures map block t onto t +- 1 exactly and U is block diagonal
        assert fs.quadrature_covariance_check(fs.BasisSpec(6), guard=0) < 1e-12


class TestLGStates:
    def test_ladder_examples(self):
        b = fs.BasisSpec(4)
        assert np.allclose(fs.lg_state_ladder((0, 0), b).coeffs, fs.vacuum(b).coeffs)
        assert np.allclose(fs.lg_state_ladder((1, 1), b).coeffs, vec(b, {(1, 0): 1 / R2, (0, 1): 1j / R2}))

    def test_ladder_minus_one_up_to_phase(self):
        b = fs.BasisSpec(4)
        s = fs.lg_state_ladder((1, -1), b).coeffs
        ref = vec(b, {(1, 0): 1 / R2, (0, 1): -1j / R2})
        assert abs(abs(np.vdot(ref, s)) - 1) < 1e-14

    def test_beamsplitter_examples(self):
        b = fs.BasisSpec(4)
        u = fs.jx_rotation(b)
        assert np.allclose(fs.lg_state_beamsplitter((0, 0), b, u).coeffs, fs.vacuum(b).coeffs)
        assert np.allclose(fs.lg_state_beamsplitter((1, 1), b, u).coeffs, vec(b, {(1, 0): 1 / R2, (0, 1): 1j / R2}))
        # (2,0) from the 3x3 two-excitation block alone
        blk = b.block(2)
        jx = fs.jx_operator(b).entries[blk, blk]
        col = expm(1j * math.pi / 2 * jx)[:, 1]  # |1,1> is the middle ket of the block
        assert np.allclose(fs.lg_state_beamsplitter((2, 0), b, u).coeffs[blk], col, atol=1e-14)

    def test_eigen_equations(self, b32, u32):
        num, lop = fs.number_operator(b32), fs.angular_momentum_operator(b32)
        for i in valid_indices(6):
            s = fs.lg_state_beamsplitter(i, b32, u32)
            assert ((num @ s) - s * i.n).norm() < 1e-10
            assert ((lop @ s) - s * i.l).norm() < 1e-10
            assert abs(s.norm() - 1) < 1e-12

    def test_ladder_equals_beamsplitter(self, b32, u32):
        for i in valid_indices(6):
            assert (fs.lg_state_ladder(i, b32) - fs.lg_state_beamsplitter(i, b32, u32)).norm() < 1e-10

    def test_support_is_one_block(self, b32, u32):
        for i in valid_indices(6):
            s = fs.lg_state_beamsplitter(i, b32, u32)
            assert np.linalg.norm(s.coeffs[b32.totals != i.n]) == 0
            assert np.count_nonzero(np.abs(s.coeffs) > 1e-12) <= i.n + 1

    def test_orthonormal_family(self, b32, u32):
        idx = valid_indices(4)
        states = np.array([fs.lg_state_beamsplitter(i, b32, u32).coeffs for i in idx])
        assert np.abs(states.conj() @ states.T - np.eye(len(idx))).max() < 1e-12

    def test_cutoff_too_small(self):
        with pytest.raises(CutoffTooSmall):
            fs.lg_state_ladder((3, 1), fs.BasisSpec(2))
        with pytest.raises(CutoffTooSmall):
            fs.lg_state_beamsplitter((3, 1), fs.BasisSpec(2))

    def test_invalid_index_propagates(self):
        with pytest.raises(InvalidModeIndex):
            fs.lg_state_ladder((2, 1), fs.BasisSpec(4))


class TestEntangledStates:
    SAMPLES = [0, 0.5, 1.0, 0.6 + 0.8j, -0.3 + 0.2j, -1j, 0.7 * np.exp(2.2j)]

    @pytest.mark.parametrize("eta", SAMPLES)
    def test_eta_eigen(self, eta, b40):
        assert max(fs.eta_eigen_residuals(eta, b40)) < 1e-6

    @pytest.mark.parametrize("tau", SAMPLES)
    def test_tau_eigen(self, tau, b40):
        assert max(fs.tau_eigen_residuals(tau, b40)) < 1e-6

    def test_unguarded_residual_is_large(self, b40):
        # the truncated vector cannot satisfy the top rows; documents why the guard exists
        assert max(fs.eta_eigen_residuals(0.5, b40, guard=0)) > 1e-2

    def test_tau_low_amplitudes(self, b40):
        t = 0.5 + 0.3j
        s = fs.build_tau_state(t, b40)
        g = math.exp(-abs(t) ** 2 / 2)
        assert s.amplitude(0, 0) == pytest.approx(g, abs=1e-15)
        # |tau> = ... + tau a1+|00> ..., so the |1,0> amplitude is tau; <tau|1,0> is its conjugate
        assert s.amplitude(1, 0) == pytest.approx(t * g, abs=1e-15)
        assert s.amplitude(0, 1) == pytest.approx(-t.conjugate() * g, abs=1e-15)

    def test_eta_overlap_with_lg_modes(self, b40):
        from lgkit.modes import lg_wavefunction_eta

        u = fs.jx_rotation(b40)
        etas = [0.2 * k * np.exp(0.9j * k) for k in range(1, 11)]
        eta_states = {e: fs.build_eta_state(e, b40) for e in etas}
        for i in [(0, 0), (1, 1), (1, -1), (2, 0)]:
            s = fs.lg_state_beamsplitter(i, b40, u)
            sign = (-1) ** i[1] if i[1] < 0 else 1
            for e in etas:
                got = eta_states[e].inner(s)
                want = sign * complex(lg_wavefunction_eta(i, e))
                assert abs(got - want) <= 1e-5 * max(abs(want), 1e-3)

    def test_series_cap_raises(self):
        with pytest.raises(ConvergenceFailure):
            fs.build_eta_state(0.8, fs.BasisSpec(20), cap=3)


class TestEnvironmentDefault:
    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("LGKIT_NMAX", "12")
        assert fs.default_nmax() == 12

    def test_fallback(self, monkeypatch):
        monkeypatch.delenv("LGKIT_NMAX", raising=False)
        assert fs.default_nmax() == 32
