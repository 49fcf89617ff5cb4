import numpy as np
import pytest

from nnlstep.errors import NotAZeroError, SingularPointError
from nnlstep.scattering import (
    BackgroundParams,
    InitialProfile,
    SpectralData,
    jost_at_origin,
    norming_constant,
    pure_step_norming,
    pure_step_spectral,
    reflection,
    spectral_functions,
    spectral_functions_grid,
    transfer_matrix_oracle,
)
from nnlstep.spectrum import pure_step_zeros

from conftest import smooth_step_profile

LAMBDA = np.array([[0.0, -1.0], [1.0, 0.0]])  # Lambda with sigma = -1


def zero_profile(half_width=4.0, dx=0.05):
    bg = BackgroundParams(0.0, 1.0)
    x = np.arange(-half_width, half_width + dx / 2, dx)
    return InitialProfile.from_samples(x, np.zeros_like(x, dtype=complex), bg)


class TestJostAtOrigin:
    def test_zero_data_gives_identity(self):
        prof = zero_profile()
        for k in (0.7, -2.0, 1.3j, 0.4 - 0.9j):
            for which in ("Psi1", "Psi2"):
                m = jost_at_origin(prof, k, which)
                assert np.allclose(m.entries, np.eye(2), atol=1e-10)

    def test_pure_step_matches_transfer_matrix_oracle(self, bg12):
        prof = InitialProfile.pure_step(bg12)
        for k in (0.3, -1.1, 2.4, 0.6 + 0.5j):
            s_oracle = transfer_matrix_oracle(bg12, k)
            psi1 = jost_at_origin(prof, k, "Psi1").entries
            psi2 = jost_at_origin(prof, k, "Psi2").entries
            s_num = np.linalg.solve(psi2, psi1)
            assert np.max(np.abs(s_num - s_oracle)) < 1e-9

    def test_mirror_conjugation_symmetry(self, profile_smooth):
        # Lambda conj(Psi1(0,0,-k)) Lambda^{-1} = Psi2(0,0,k) on the axis
        for k in (0.5, 1.7, -0.8):
            psi1_m = jost_at_origin(profile_smooth, -k, "Psi1").entries
            psi2 = jost_at_origin(profile_smooth, k, "Psi2").entries
            lhs = LAMBDA @ np.conj(psi1_m) @ np.linalg.inv(LAMBDA)
            assert np.max(np.abs(lhs - psi2)) < 1e-8

    def test_unit_determinant_on_real_axis(self, profile_smooth):
        for k in np.linspace(-6.0, 6.0, 9):
            if abs(k) < 0.2:
                continue
            for which in ("Psi1", "Psi2"):
                m = jost_at_origin(profile_smooth, k, which)
                assert abs(m.det - 1.0) < 1e-9

    def test_k_zero_rejected(self, bg12):
        prof = InitialProfile.pure_step(bg12)
        with pytest.raises(SingularPointError):
            jost_at_origin(prof, 0.0, "Psi1")


class TestSpectralFunctions:
    def test_zero_data_trivial(self):
        prof = zero_profile()
        a1, a2, b = spectral_functions(prof, 0.9)
        assert abs(a1 - 1) < 1e-12 and abs(a2 - 1) < 1e-12 and abs(b) < 1e-12

    def test_paper_point_values(self):
        # A = 2, R = 1 at k = 1: a1 = 1 - e^{4i}, a2 = 1, b = i e^{2i}
        bg = BackgroundParams(2.0, 1.0)
        a1, a2, b = pure_step_spectral(bg, 1.0)
        assert abs(a1 - (1 - np.exp(4j))) < 1e-14
        assert abs(a2 - 1.0) < 1e-14
        assert abs(b - 1j * np.exp(2j)) < 1e-14
        # and at k = i: a1 = 1 + e^{-4}
        a1i, _, _ = pure_step_spectral(bg, 1j)
        assert abs(a1i - (1 + np.exp(-4.0))) < 1e-14

    def test_closed_form_symmetry(self, bg12):
        for k in (0.3 + 0.2j, -1.5 + 1.0j, 2.0):
            a1, _, _ = pure_step_spectral(bg12, k)
            a1m, _, _ = pure_step_spectral(bg12, -np.conj(k))
            assert abs(np.conj(a1m) - a1) < 1e-14

    def test_ode_path_matches_closed_forms(self, bg12):
        prof = InitialProfile.pure_step(bg12)
        ks = np.concatenate([np.geomspace(0.05, 20.0, 25),
                             -np.geomspace(0.05, 20.0, 25)])
        a1, a2, b = spectral_functions_grid(prof, ks)
        a1c, a2c, bc = pure_step_spectral(bg12, ks)
        assert np.max(np.abs(a1 - a1c) / np.abs(a1c)) < 1e-8
        assert np.max(np.abs(a2 - a2c)) < 1e-9
        assert np.max(np.abs(b - bc) / np.abs(bc)) < 1e-8

    def test_determinant_identity_on_log_grid(self, profile_smooth):
        half = np.geomspace(0.05, 20.0, 16)
        ks = np.concatenate([-half[::-1], half])
        a1, a2, b = spectral_functions_grid(profile_smooth, ks)
        b_m = b[::-1]
        resid = a1 * a2 - b * np.conj(b_m) - 1.0
        assert np.max(np.abs(resid)) < 1e-10

    def test_a1_symmetry_upper_half_plane(self, profile_smooth):
        for k in (0.8 + 0.4j, -1.2 + 0.7j, 2.5 + 0.1j):
            a1, _, _ = spectral_functions(profile_smooth, k)
            a1m, _, _ = spectral_functions(profile_smooth, -np.conj(k))
            assert abs(np.conj(a1m) - a1) < 1e-9

    def test_small_k_blowup_rate_vs_closed_form(self, bg12):
        # numeric k^2 a1(k) against the closed form at the guard edge
        prof = InitialProfile.pure_step(bg12)
        for k in (1e-3, -1e-3):
            a1, _, _ = spectral_functions(prof, k)
            a1c, _, _ = pure_step_spectral(bg12, k)
            assert abs(k**2 * (a1 - a1c)) < 1e-6
            # and the closed form sits near the predicted -A^2 a2(0)/4 pole
            assert abs(k**2 * a1c + bg12.A**2 / 4.0) < 2.5 * bg12.A**2 * bg12.R * abs(k)


class TestReflection:
    def test_zero_amplitude(self):
        prof = zero_profile()
        spec = SpectralData.from_profile(prof)
        r1, r2 = reflection(spec, 0.8)
        assert abs(r1) < 1e-12 and abs(r2) < 1e-12

    def test_paper_values_pure_step(self):
        bg = BackgroundParams(2.0, 1.0)
        spec = SpectralData.from_pure_step(bg)
        r1, r2 = reflection(spec, 1.0)
        assert abs(r1 - 1j * np.exp(2j) / (1 - np.exp(4j))) < 1e-12
        assert abs(r2 - 1j * np.exp(2j)) < 1e-12

    def test_large_k_decay(self, spec12):
        ks = np.geomspace(5.0, 500.0, 12)
        r1 = np.array([spec12.r1(k) for k in ks])
        r2 = np.array([spec12.r2(k) for k in ks])
        slope1 = np.polyfit(np.log(ks), np.log(np.abs(r1)), 1)[0]
        slope2 = np.polyfit(np.log(ks), np.log(np.abs(r2)), 1)[0]
        assert slope1 < -0.9 and slope2 < -0.9

    def test_unitarity_relation(self, spec12):
        for k in (0.4, -1.3, 3.3):
            r1, r2 = reflection(spec12, k)
            lhs = 1.0 - r1 * r2
            rhs = 1.0 / (spec12.a1(k) * spec12.a2(k))
            assert abs(lhs - rhs) < 1e-12


class TestNormingConstant:
    def test_pure_step_against_oracle(self, bg12, zeros12):
        prof = InitialProfile.pure_step(bg12)
        p = zeros12.p[0]
        eta = norming_constant(prof, p)
        assert abs(eta - pure_step_norming(bg12, p)) < 1e-8

    def test_ratio_consistency_at_refined_zero(self, bg12, zeros12):
        prof = InitialProfile.pure_step(bg12)
        # passes the internal cross-check at rel_tol 1e-6
        norming_constant(prof, zeros12.p[0], rel_tol=1e-6)

    def test_not_a_zero_rejected(self, bg12):
        prof = InitialProfile.pure_step(bg12)
        with pytest.raises(NotAZeroError):
            norming_constant(prof, -0.4 + 0.5j)


class TestTransferMatrixOracle:
    def test_entries_match_closed_forms(self, bg12):
        for k in (0.21, -0.9, 4.0, 1.0 + 1.0j):
            s = transfer_matrix_oracle(bg12, k)
            a1, a2, b = pure_step_spectral(bg12, k)
            assert abs(s[0, 0] - a1) < 1e-11
            assert abs(s[1, 1] - a2) < 1e-11
            assert abs(s[1, 0] - b) < 1e-11
            assert abs(np.linalg.det(s) - 1.0) < 1e-12

    def test_a2_identically_one(self, bg12):
        for k in np.linspace(-3, 3, 7):
            if abs(k) < 0.1:
                continue
            s = transfer_matrix_oracle(bg12, k)
            assert abs(s[1, 1] - 1.0) < 1e-12


class TestProfileValidation:
    def test_rejects_asymmetric_grid(self, bg12):
        x = np.arange(-4.0, 6.0 + 0.025, 0.05)
        q = np.where(x > bg12.R, bg12.A, 0.0).astype(complex)
        with pytest.raises(Exception):
            InitialProfile.from_samples(x, q, bg12)

    def test_rejects_bad_endpoints(self, bg12):
        x = np.arange(-6.0, 6.0 + 0.025, 0.05)
        q = np.full_like(x, 0.3, dtype=complex)
        with pytest.raises(Exception):
            InitialProfile.from_samples(x, q, bg12)

    def test_smooth_profile_round_trip(self, profile_smooth):
        x = profile_smooth.x
        assert abs(profile_smooth.q0(x[0])) < 1e-12
        assert abs(profile_smooth.q0(x[-1]) - profile_smooth.bg.A) < 1e-12
        mid = 0.5 * (x[3] + x[4])
        assert np.isfinite(profile_smooth.q0(mid))
