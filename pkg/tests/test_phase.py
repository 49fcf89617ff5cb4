import numpy as np
import pytest
from scipy.integrate import quad

from nnlstep.errors import BranchError, SectorInconsistencyError
from nnlstep.phase import PhaseEngine, im_nu_branch, theta
from nnlstep.scattering import BackgroundParams, SpectralData
from nnlstep.spectrum import ArgWinding


@pytest.fixture(scope="module")
def eng12(spec12):
    return PhaseEngine(spec12)


@pytest.fixture(scope="module")
def eng_n3(spec_n3):
    return PhaseEngine(spec_n3)


class TestTheta:
    def test_stationary_point_value(self):
        for xi in (0.3, 1.7):
            assert abs(theta(-xi, xi) - (-2.0 * xi**2)) < 1e-14


class TestTrivialAmplitude:
    def test_all_phase_objects_trivial(self):
        spec = SpectralData.from_pure_step(BackgroundParams(0.0, 1.0))
        eng = PhaseEngine(spec)
        assert abs(eng.nu(0.7)) < 1e-12
        assert abs(eng.chi(1j, 0.7)) < 1e-10
        assert abs(eng.delta(1j, 0.7) - 1.0) < 1e-10


class TestNu:
    def test_pure_step_against_quadrature_oracle(self, bg12, spec12, eng12):
        # 1 - r1 r2 = 1/a1 (a2 = 1): Re nu = ln|a1(-xi)|/2pi and Im nu is
        # the a1-phase accumulation, unwrapped independently here
        for xi in (0.35, 0.6, 1.1):
            nu_val = eng12.nu(xi)
            a1 = spec12.a1(-xi)
            assert abs(nu_val.real - np.log(abs(a1)) / (2 * np.pi)) < 1e-12
            zs = np.linspace(-60.0, -xi, 120001)
            a1_grid, _, _ = spec12.grid(zs.astype(complex))
            phi = np.unwrap(np.angle(np.asarray(a1_grid)))
            assert abs(nu_val.imag - (phi[-1] - phi[0]) / (2 * np.pi)) < 1e-4

    def test_mid_sector_band(self, eng_n3, bg_n3):
        # n = 3: omega_1 = pi/14, omega_2 = pi/7; band index drops with xi
        for xi, m in ((0.9, 0), (0.30, 1), (0.15, 2)):
            nu_val = eng_n3.nu(xi)
            assert abs(nu_val.imag - m) < 0.5

    def test_continuity_within_band(self, eng12):
        xis = np.linspace(0.4, 1.2, 9)
        vals = np.array([eng12.nu(x) for x in xis])
        assert np.max(np.abs(np.diff(vals))) < 0.15


class TestChi:
    def test_endpoint_value_two_quadratures(self, eng12):
        # the log-singular endpoint piece of chi(-xi, xi): geometric
        # panels in u = -xi - zeta versus the substitution zeta = -xi - e^{-s}
        xi = 0.6
        h_end = 0.25 * min(1.0, xi)
        chi_prod = eng12.chi(-xi, xi)
        assert np.isfinite(chi_prod.real) and np.isfinite(chi_prod.imag)

        from numpy.polynomial.legendre import leggauss
        gx, gw = leggauss(24)

        def panel_sum(edges, f):
            half = 0.5 * np.diff(edges)
            mid = 0.5 * (edges[:-1] + edges[1:])
            nodes = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
            weights = (half[:, None] * gw[None, :]).ravel()
            return np.sum(f(nodes) * weights)

        # scheme 1: geometric panels in u
        u_edges = np.geomspace(1e-14, h_end, 160)
        v1 = panel_sum(u_edges, lambda u: np.log(u)
                       * eng12._Lprime(-xi - u))
        # scheme 2: exponential substitution u = e^{-s}
        s_edges = np.linspace(-np.log(h_end), 40.0, 160)
        v2 = panel_sum(s_edges, lambda s: (-s) * np.exp(-s)
                       * eng12._Lprime(-xi - np.exp(-s)))
        assert abs(v1 - v2) < 1e-9

    def test_reconstruction_identity_off_contour(self, eng12):
        xi = 0.6
        nu_val = eng12.nu(xi)
        for k in (1j, 0.5 + 0.8j, -0.2 - 0.6j, 3.0):
            lhs = eng12.delta(k, xi)
            rhs = (k + xi) ** (1j * nu_val) * np.exp(eng12.chi(k, xi))
            assert abs(lhs - rhs) < 1e-6 * abs(lhs)

    def test_branch_cut_rejected(self, eng12):
        with pytest.raises(BranchError):
            eng12.chi(-2.0, 0.6)


class TestDelta:
    def test_jump_relation(self, spec12, eng12):
        xi, eps = 0.6, 1e-6
        for s in (-0.8, -1.9, -4.4):
            ratio = eng12.delta(s + 1j * eps, xi) / eng12.delta(s - 1j * eps, xi)
            w = complex(spec12.one_minus_r1r2(s))
            assert abs(ratio - w) < 1e-5 * abs(w)

    def test_modulus_at_zero_vs_real_part_quadrature(self, spec12, eng12):
        # |delta(0, xi)| = exp(Re I/(2 pi i)) with the real part evaluated
        # by an independent adaptive quadrature of Im L / zeta
        xi = 0.6
        d0 = eng12.delta(0.0, xi)

        def im_l_over_zeta(z):
            return float(eng12._L(np.array([z]))[0].imag) / z

        val, _ = quad(im_l_over_zeta, -eng12.k_quad, -xi, limit=1200,
                      epsabs=1e-12, epsrel=1e-12)
        # I/(2 pi i) has real part Im(I)/(2 pi); Im(I) from Im L / (zeta - 0)
        assert abs(abs(d0) - np.exp(val / (2.0 * np.pi))) < 1e-8

    def test_normalization_decay_exponent(self, eng12):
        ks = np.geomspace(1e2, 1e4, 9)
        vals = np.array([abs(eng12.delta(k, 0.6) - 1.0) for k in ks])
        slope = np.polyfit(np.log(ks), np.log(vals), 1)[0]
        assert abs(slope + 1.0) < 0.05

    def test_contour_point_rejected(self, eng12):
        with pytest.raises(BranchError):
            eng12.delta(-1.0, 0.6)

    def test_branch_consistency_random_points(self, eng12):
        rng = np.random.default_rng(11)
        xi = 0.8
        nu_val = eng12.nu(xi)
        for _ in range(20):
            k = complex(rng.uniform(-3, 3), rng.uniform(0.05, 2.5))
            if rng.uniform() < 0.5:
                k = np.conj(k)
            lhs = eng12.delta(k, xi)
            rhs = (k + xi) ** (1j * nu_val) * np.exp(eng12.chi(k, xi))
            assert abs(lhs - rhs) < 1e-6 * abs(lhs)


class TestImNuBranch:
    def test_boundaries(self):
        assert im_nu_branch(0.1 + 0j, 0) == "middle"
        assert im_nu_branch(0.2 + (0 - 1.0 / 6.0) * 1j, 0) == "low"
        assert im_nu_branch(0.2 + 0.4j, 0) == "high"
        assert im_nu_branch(0.2 + 1.0j, 1) == "middle"

    def test_out_of_band_rejected(self):
        with pytest.raises(SectorInconsistencyError):
            im_nu_branch(0.2 + 0.8j, 0)


class TestDirectionCache:
    def test_cached_values_consistent(self, eng12, zeros12):
        pv = eng12.direction(0.6, zeros12)
        assert pv.m == 0
        assert abs(pv.nu - eng12.nu(0.6)) < 1e-14
        assert abs(pv.delta0 - eng12.delta(0.0, 0.6)) < 1e-14
        assert 1 in pv.delta_at_zeros
        again = eng12.direction(0.6, zeros12)
        assert again is pv

    def test_negative_direction_rejected(self, eng12):
        with pytest.raises(Exception):
            eng12.direction(-0.3)

    def test_thread_safety_idempotent_insertion(self, spec12, zeros12):
        from concurrent.futures import ThreadPoolExecutor
        eng = PhaseEngine(spec12)
        xis = [0.31, 0.52, 0.73, 0.94] * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            vals = list(pool.map(lambda x: eng.direction(x, zeros12), xis))
        for x, v in zip(xis, vals):
            assert v is eng.direction(x, zeros12)
