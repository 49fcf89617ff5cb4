import numpy as np
import pytest

from nnlstep.errors import AssumptionViolation, BifurcationProximityError
from nnlstep.scattering import BackgroundParams, SpectralData, pure_step_spectral
from nnlstep.spectrum import (
    ArgWinding,
    OmegaSet,
    ZeroSet,
    background_zero_set,
    find_omegas,
    find_zeros,
    find_zeros_for,
    pure_step_omegas,
    pure_step_zeros,
    verify_assumptions,
)


def expected_n(bg):
    return int(np.ceil(bg.R * bg.A / np.pi))


class TestPureStepZeros:
    @pytest.mark.parametrize("R", [0.5, 2.0, 4.0, 7.0, 9.7])
    def test_count_intervals_and_residuals(self, R):
        bg = BackgroundParams(1.0, R)
        zs = pure_step_zeros(bg)
        assert zs.n == expected_n(bg)
        for j in range(1, zs.n + 1):
            p = zs.p_index(j)
            lo = -(2 * j - 1) * np.pi / (4.0 * R)
            hi = -(j - 1) * np.pi / (2.0 * R)
            assert lo < p.real < hi
            a1, _, _ = pure_step_spectral(bg, p)
            assert abs(a1) < 1e-10
            # Im p = Re p tan(2 Re p R)
            assert abs(p.imag - p.real * np.tan(2 * p.real * R)) < 1e-9

    def test_count_increments_across_bifurcation(self):
        below = pure_step_zeros(BackgroundParams(1.0, np.pi - 1e-3))
        above = pure_step_zeros(BackgroundParams(1.0, np.pi + 1e-3))
        assert below.n == 1 and above.n == 2

    def test_bifurcation_guard(self):
        with pytest.raises(BifurcationProximityError):
            pure_step_zeros(BackgroundParams(1.0, np.pi))

    def test_nascent_pair_near_real_axis(self):
        # just above R = pi/A the new zero pair sits close to -+ A/2
        bg = BackgroundParams(1.0, np.pi + 1e-4)
        zs = pure_step_zeros(bg)
        assert zs.n == 2
        p2 = zs.p_index(2)
        assert abs(p2 - (-0.5)) < 5e-4
        assert 0 < p2.imag < 5e-4


class TestFindZeros:
    def test_matches_closed_form_zeros(self, bg12, spec12, zeros12):
        found = find_zeros_for(spec12)
        assert len(found) == 2 * zeros12.n
        for p in zeros12.p:
            assert min(abs(z - p) for z in found) < 1e-9
            assert min(abs(z - (-np.conj(p))) for z in found) < 1e-9

    def test_randomized_parameter_draws_match_argument_principle(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            A = rng.uniform(0.4, 2.0)
            ratio = rng.uniform(0.15, 2.6)
            R = ratio * np.pi / A
            if abs(ratio - round(ratio)) < 0.05:
                continue  # keep clear of bifurcations
            bg = BackgroundParams(A, R)
            spec = SpectralData.from_pure_step(bg)
            found = find_zeros_for(spec)
            assert len(found) == 2 * expected_n(bg), (A, R)

    def test_mirror_symmetry_of_refined_zeros(self, spec12):
        for z in find_zeros_for(spec12):
            assert abs(spec12.a1(-np.conj(z))) < 1e-9

    def test_empty_box(self, spec12):
        assert find_zeros(lambda z: np.asarray(spec12.grid(z)[0]),
                          (1.0, 2.0, 1.0, 2.0)) == []


class TestWinding:
    def test_zero_amplitude_no_winding(self):
        spec = SpectralData.from_pure_step(BackgroundParams(0.0, 1.0))
        wind = ArgWinding(spec)
        for xi in (0.1, 0.6, 2.0):
            assert abs(wind(xi)) < 1e-12

    def test_quantization_at_thresholds_n3(self, bg_n3, spec_n3):
        wind = ArgWinding(spec_n3)
        n = expected_n(bg_n3)
        for m in (1, 2):
            omega = (n - m) * np.pi / (2.0 * bg_n3.R)
            assert abs(wind(omega) - (2 * m - 1) * np.pi) < 1e-3 * np.pi

    def test_band_membership(self, bg_n3, spec_n3):
        wind = ArgWinding(spec_n3)
        omegas = pure_step_omegas(bg_n3)
        n = expected_n(bg_n3)
        for m in range(n):
            lo = omegas.omega_index(n - m - 1)
            hi = omegas.omega_index(n - m)
            xi = 0.5 * (lo + hi) if np.isfinite(hi) else lo + 1.0
            xi = max(xi, 5e-3)
            phi = wind(xi)
            assert (2 * m - 1) * np.pi < phi < (2 * m + 1) * np.pi

    def test_additivity(self, spec_n3):
        wind = ArgWinding(spec_n3)
        xi1, xi2 = 1.3, 0.21
        direct = wind(xi2) - wind(xi1)
        # unwrapped variation over (-xi1, -xi2) on a fine grid
        zs = np.linspace(-xi1, -xi2, 4001)
        ang = np.unwrap(np.angle(np.asarray(spec_n3.a1a2(zs))))
        assert abs(direct - (ang[-1] - ang[0])) < 1e-8


class TestOmegas:
    def test_n1_empty(self, spec12, engine12):
        oms = find_omegas(engine12.winding, 1)
        assert oms.omegas == []
        assert oms.omega_index(0) == 0.0
        assert np.isinf(oms.omega_index(1))

    def test_pure_step_values(self, bg_n3, spec_n3):
        wind = ArgWinding(spec_n3)
        oms = find_omegas(wind, 3)
        expect = [j * np.pi / (2.0 * bg_n3.R) for j in (1, 2)]
        assert np.allclose(oms.omegas, expect, atol=1e-6)

    def test_interleaving_with_zeros(self, bg_n3):
        zs = pure_step_zeros(bg_n3)
        oms = pure_step_omegas(bg_n3)
        n = zs.n
        for m in range(1, n):
            assert zs.p_index(m + 1).real < -oms.omega_index(m) < zs.p_index(m).real


class TestVerifyAssumptions:
    def test_valid_pure_step_all_true(self, spec_n3, bg_n3):
        zs = pure_step_zeros(bg_n3)
        oms = pure_step_omegas(bg_n3)
        wind = ArgWinding(spec_n3)
        rep = verify_assumptions(spec_n3, zs, oms, winding=wind)
        assert rep.all_ok, rep.diagnostics

    def test_bifurcation_flags_real_zeros(self):
        # at R = pi/A the real pair +-A/2 violates assumption (a)
        bg = BackgroundParams(1.0, np.pi)
        spec = SpectralData.from_pure_step(bg)
        zs = pure_step_zeros(BackgroundParams(1.0, np.pi - 1e-3))
        rep = verify_assumptions(spec, zs, OmegaSet(omegas=[]))
        assert not rep.zeros_ok
        assert any("real axis" in d for d in rep.diagnostics)

    def test_zero_amplitude_flagged(self):
        spec = SpectralData.from_pure_step(BackgroundParams(0.0, 1.0))
        rep = verify_assumptions(spec, ZeroSet(p=[]), OmegaSet(omegas=[]))
        assert not rep.zeros_ok
        assert not rep.all_ok
        with pytest.raises(AssumptionViolation):
            rep.require()


class TestZeroSetSerialization:
    def test_json_round_trip(self, zeros12, omegas12, tmp_path):
        from nnlstep.io import read_zeros_json, write_zeros_json
        path = tmp_path / "zeros.json"
        write_zeros_json(path, zeros12, omegas12)
        zs, oms = read_zeros_json(path)
        assert zs.n == zeros12.n
        assert np.allclose(zs.p, zeros12.p)
        assert np.allclose(zs.eta, zeros12.eta)
        assert oms.omegas == omegas12.omegas

    def test_ordering_enforced(self):
        with pytest.raises(Exception):
            ZeroSet(p=[-0.5 + 0.2j, -0.1 + 0.3j, -0.3 + 0.1j])
