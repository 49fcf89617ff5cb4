"""Scalar Riemann-Hilbert machinery per direction xi > 0.

With w(zeta) = 1 - r1(zeta) r2(zeta) = 1/(a1 a2)(zeta) and L = ln w taken
continuously along (-inf, -xi] (L -> 0 at -infinity), the three objects
computed here are

    delta(k, xi) = exp{ (1/2 pi i) int L(zeta)/(zeta - k) dzeta },
    nu(-xi)      = -(1/2 pi) ln|w(-xi)| - (i/2 pi) int d arg w,
    chi(k, xi)   = -(1/2 pi i) int ln(k - zeta) dL(zeta),

related by delta = (k + xi)^{i nu} e^{chi} with the principal logarithm
of (k + xi) cut along (-inf, -xi].  Im nu(-xi) lies in (m-1/2, m+1/2)
when xi sits strictly inside the m-th winding band; the index m drives
the case split of the long-time formulas.

Quadrature: fixed Gauss-Legendre panels sized to a quarter of the
background oscillation period, a locally adaptive window when k comes
close to the contour, an exponential substitution for the endpoint
logarithm of chi, and an integration-by-parts bound for the truncated
tail.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from ._validation import ConfigError
from .errors import BranchError, NearSingularError, SectorInconsistencyError
from .scattering import SpectralData
from .spectrum import ArgWinding, ZeroSet

__all__ = [
    "PhaseValues",
    "PhasePoint",
    "PhaseEngine",
    "nu",
    "chi",
    "delta",
    "im_nu_branch",
    "theta",
]

_GL_X, _GL_W = leggauss(12)


def theta(k, xi):
    """Phase function theta(k, xi) = 4 k xi + 2 k^2."""
    k = np.asarray(k, dtype=complex)
    return 4.0 * k * xi + 2.0 * k**2


@dataclass(frozen=True)
class PhasePoint:
    k: complex
    xi: float

    @property
    def theta(self) -> complex:
        return complex(theta(self.k, self.xi))


@dataclass
class PhaseValues:
    """Per-direction cache: nu(-xi), chi(-xi, xi), delta(0, xi), band index."""

    xi: float
    nu: complex
    chi_at_minus_xi: complex
    delta0: complex
    m: int
    delta_at_zeros: dict = field(default_factory=dict)


class _PanelRule:
    """Fixed Gauss-Legendre composite rule on prescribed panel edges."""

    def __init__(self, edges: np.ndarray):
        edges = np.asarray(edges, dtype=float)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        self.edges = edges
        self.nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
        self.weights = (half[:, None] * _GL_W[None, :]).ravel()

    def integrate(self, fvals: np.ndarray) -> complex:
        return complex(fvals @ self.weights)


class PhaseEngine:
    """Shared evaluator for nu, chi, delta over one set of spectral data.

    Builds the continuous branch of ln(1 - r1 r2) once (through the
    winding master grid) and caches per-direction panel data, so grid
    sweeps over k reuse all the expensive pieces.  Thread-safe with
    idempotent cache insertion.
    """

    #: distance below which k counts as "near the contour"
    NEAR_CONTOUR = 5e-2

    def __init__(self, spec: SpectralData, *, xi_floor=1e-3, k_quad=None,
                 winding: ArgWinding | None = None):
        self.spec = spec
        self.xi_floor = xi_floor
        self._rate = max(4.0 * spec.bg.R, 1.0)
        if spec.profile is not None:
            self._rate = max(self._rate, 4.0 * abs(spec.profile.x_max))
        if k_quad is None:
            k_quad = self._select_k_quad()
        self.k_quad = k_quad
        if winding is None:
            winding = ArgWinding(
                spec, xi_floor=xi_floor,
                k_cutoff=None if spec.profile is None else max(2.0 * k_quad, 60.0))
        if winding.k_cutoff < k_quad:
            # quadrature panels must stay inside the unwrapped branch grid
            winding = ArgWinding(spec, xi_floor=xi_floor, k_cutoff=1.05 * k_quad)
        self.winding = winding
        self._dir_cache: dict = {}
        self._panel_cache: dict = {}
        self._lock = threading.Lock()

    # -- plumbing -------------------------------------------------------

    def _select_k_quad(self):
        if self.spec.bg.A == 0:
            return 20.0
        if self.spec.profile is not None:
            # ODE-backed evaluations: the one-IBP tail bound at K = 30 is
            # already far below the profile-path tolerances
            return 30.0
        # tail after one integration by parts ~ |L(-K)| / (rate * K)
        k = 50.0
        while k < 1e5:
            tail = abs(self._L_raw(-k)) / (self._rate * k)
            if tail < 1e-9:
                return k
            k *= 1.5
        return k

    def _L_raw(self, zeta):
        """ln|w| part only (branch-free modulus of 1 - r1 r2)."""
        w = 1.0 / self.spec.a1a2(np.atleast_1d(zeta))
        return float(np.log(np.abs(w[0])))

    def _L(self, zeta):
        """Continuous ln(1 - r1 r2) on the contour (vectorized)."""
        zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
        prod = np.asarray(self.spec.a1a2(zeta))
        # arg(1/(a1 a2)) = -arg(a1 a2), branch carried by the master grid
        phase = self.winding.continuous_phase(zeta)
        return -np.log(np.abs(prod)) - 1j * phase

    def _Lprime(self, zeta):
        """dL/dzeta = -(a1 a2)'/(a1 a2), branch-free (vectorized)."""
        zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
        if self.spec.profile is None:
            a1 = np.empty(zeta.size, dtype=complex)
            da = np.empty(zeta.size, dtype=complex)
            a1[:], _, _ = self.spec.grid(zeta.astype(complex))
            for i, z in enumerate(zeta):
                da[i] = self.spec.a1_derivative(complex(z))
            return -da / a1
        h = 1e-6
        wp = np.asarray(self.spec.a1a2(zeta + h))
        wm = np.asarray(self.spec.a1a2(zeta - h))
        return -np.log(wp / wm) / (2.0 * h)

    def _edges(self, lo: float, hi: float) -> np.ndarray:
        """Panel edges with at most a quarter oscillation period each."""
        h_osc = 0.5 * np.pi / self._rate / 2.0
        n = max(int(np.ceil((hi - lo) / h_osc)), 4)
        return np.linspace(lo, hi, n + 1)

    def _delta_rule(self, xi: float):
        key = ("delta", round(xi, 14))
        rule = self._panel_cache.get(key)
        if rule is None:
            r = _PanelRule(self._edges(-self.k_quad, -xi))
            lvals = self._L(r.nodes)
            with self._lock:
                rule = self._panel_cache.setdefault(key, (r, lvals))
        return rule

    def _chi_rule(self, xi: float):
        key = ("chi", round(xi, 14))
        rule = self._panel_cache.get(key)
        if rule is None:
            h_end = 0.25 * min(1.0, xi)
            far = _PanelRule(self._edges(-self.k_quad, -xi - h_end))
            lp_far = self._Lprime(far.nodes)
            # geometric panels in u = -xi - zeta resolve the endpoint log
            u_edges = np.geomspace(1e-14, h_end, 120)
            near = _PanelRule(u_edges)
            lp_near = self._Lprime(-xi - near.nodes)
            with self._lock:
                rule = self._panel_cache.setdefault(
                    key, (far, lp_far, near, lp_near, h_end))
        return rule

    # -- nu ---------------------------------------------------------------

    def nu(self, xi: float) -> complex:
        """nu(-xi) = -(1/2 pi) ln|1 - r1 r2| - (i/2 pi) * int d arg(1 - r1 r2)."""
        if xi < self.xi_floor:
            raise ConfigError(f"xi = {xi} below the evaluation floor")
        w = self.spec.one_minus_r1r2(-xi)
        if abs(w) < 1e-12:
            raise NearSingularError(
                f"1 - r1 r2 = {w:.3e} at k = {-xi}: direction too close to a "
                "spectral singularity")
        phi = self.winding(xi)
        return complex(-np.log(abs(w)) / (2.0 * np.pi) + 1j * phi / (2.0 * np.pi))

    # -- delta ------------------------------------------------------------

    def _cauchy_integral(self, k: complex, xi: float) -> complex:
        k = complex(k)
        if abs(k.imag) < 1e-300 and -self.k_quad - 1.0 <= k.real <= -xi:
            raise BranchError(f"k = {k} lies on the jump contour (-inf, -xi]")
        rule, lvals = self._delta_rule(xi)
        vals = lvals / (rule.nodes - k)
        total = rule.integrate(vals)
        # locally adaptive correction when k hugs the contour
        dist = abs(k.imag) if (-self.k_quad <= k.real <= -xi) else min(
            abs(k + xi), abs(k + self.k_quad))
        if dist < self.NEAR_CONTOUR and -self.k_quad <= k.real <= -xi + self.NEAR_CONTOUR:
            c = min(max(k.real, -self.k_quad), -xi)
            lo = max(c - 0.35, -self.k_quad)
            hi = min(c + 0.35, -xi)
            mask = (rule.nodes >= lo) & (rule.nodes <= hi)
            coarse = complex((vals * rule.weights)[mask].sum())
            total += self._window_integral(k, c, lo, hi) - coarse
        return total

    def _window_integral(self, k: complex, c: float, lo: float, hi: float) -> complex:
        """Accurate Cauchy integral on [lo, hi] for k close to the contour.

        The constant and linear parts of L around c are integrated in
        closed form; the remainder vanishes quadratically at the peak, so
        geometric panels toward c converge without cancellation.
        """
        l_c = complex(self._L(np.array([c]))[0])
        lp_c = complex(self._Lprime(np.array([c]))[0])
        g_min = max(1e-9, 0.02 * abs(k - c))
        edges = [lo]
        if c - lo > 2 * g_min:
            gaps = np.geomspace(c - lo, g_min, 36)
            edges.extend((c - gaps[1:]).tolist())
        if hi - c > 2 * g_min:
            gaps = np.geomspace(g_min, hi - c, 36)
            edges.extend((c + gaps[:-1]).tolist())
        edges.append(hi)
        rule = _PanelRule(np.unique(np.clip(edges, lo, hi)))
        lv = self._L(rule.nodes)
        smooth = (lv - l_c - lp_c * (rule.nodes - c)) / (rule.nodes - k)
        log_jump = np.log(hi - k) - np.log(lo - k)
        closed = l_c * log_jump + lp_c * ((hi - lo) + (k - c) * log_jump)
        return rule.integrate(smooth) + closed

    def delta(self, k: complex, xi: float) -> complex:
        """delta(k, xi) from the Cauchy integral of the continuous log."""
        if xi < self.xi_floor:
            raise ConfigError(f"xi = {xi} below the evaluation floor")
        return complex(np.exp(self._cauchy_integral(k, xi) / (2j * np.pi)))

    # -- chi ---------------------------------------------------------------

    def chi(self, k: complex, xi: float) -> complex:
        """chi(k, xi) = -(1/2 pi i) int ln(k - zeta) dL(zeta).

        The principal branch of ln(k - zeta) is continuous along the
        contour for every admissible k (Im(k - zeta) is constant and the
        real part stays positive whenever it could vanish).
        """
        if xi < self.xi_floor:
            raise ConfigError(f"xi = {xi} below the evaluation floor")
        k = complex(k)
        on_axis = abs(k.imag) < 1e-300
        if on_axis and k.real < -xi:
            raise BranchError(
                f"k = {k} lies on the branch cut of ln(k - zeta)")
        far, lp_far, near, lp_near, h_end = self._chi_rule(xi)
        total = far.integrate(np.log(k - far.nodes) * lp_far)
        # endpoint piece in u = -xi - zeta: log singular only when k = -xi
        u = near.nodes
        total += near.integrate(np.log(k + xi + u) * lp_near)
        # truncated tail, one integration by parts: the boundary term
        # ln(k + K) L(-K) dominates, the remaining integral is O(1e-9)
        l_cut = complex(self._L(np.array([-self.k_quad]))[0])
        total += l_cut * np.log(k + self.k_quad)
        return complex(-total / (2j * np.pi))

    # -- per-direction cache ------------------------------------------------

    def direction(self, xi: float, zeros: ZeroSet | None = None) -> PhaseValues:
        """nu, chi(-xi, xi), delta(0, xi) and delta(p_j, xi), computed once."""
        if xi <= 0:
            raise ConfigError(
                "phase data are defined for xi > 0; negative directions are "
                "served through the mirror symmetry of the reconstruction")
        key = round(float(xi), 14)
        hit = self._dir_cache.get(key)
        if hit is None:
            nu_val = self.nu(xi)
            values = PhaseValues(
                xi=float(xi),
                nu=nu_val,
                chi_at_minus_xi=self.chi(-xi, xi),
                delta0=self.delta(0.0, xi),
                m=int(round(nu_val.imag)),
            )
            if zeros is not None:
                for j, p in enumerate(zeros.p, start=1):
                    values.delta_at_zeros[j] = self.delta(p, xi)
            with self._lock:
                hit = self._dir_cache.setdefault(key, values)
        elif zeros is not None:
            for j, p in enumerate(zeros.p, start=1):
                if j not in hit.delta_at_zeros:
                    hit.delta_at_zeros[j] = self.delta(p, xi)
        return hit


def im_nu_branch(nu_value: complex, m: int) -> str:
    """Theorem case split: 'low' on (m-1/2, m-1/6], 'middle' on
    (m-1/6, m+1/6), 'high' on [m+1/6, m+1/2)."""
    d = nu_value.imag - m
    if not (-0.5 < d < 0.5):
        raise SectorInconsistencyError(
            f"Im nu - m = {d:.4f} outside (-1/2, 1/2): sector index "
            "inconsistent with the winding")
    if d <= -1.0 / 6.0:
        return "low"
    if d < 1.0 / 6.0:
        return "middle"
    return "high"


# -- functional wrappers (build or reuse an engine per spectral data) -----

_engines: "dict[int, PhaseEngine]" = {}
_engines_lock = threading.Lock()


def get_engine(spec: SpectralData, **kw) -> PhaseEngine:
    key = id(spec)
    eng = _engines.get(key)
    if eng is None:
        with _engines_lock:
            eng = _engines.get(key)
            if eng is None:
                eng = PhaseEngine(spec, **kw)
                _engines[key] = eng
    return eng


def nu(spec: SpectralData, xi: float, winding=None) -> complex:
    """nu(-xi); ``winding`` overrides the engine's own winding callable."""
    eng = get_engine(spec)
    if winding is not None:
        w = spec.one_minus_r1r2(-xi)
        if abs(w) < 1e-12:
            raise NearSingularError(f"1 - r1 r2 = {w:.3e} at k = {-xi}")
        return complex(-np.log(abs(w)) / (2.0 * np.pi)
                       + 1j * winding(xi) / (2.0 * np.pi))
    return eng.nu(xi)


def chi(spec: SpectralData, k: complex, xi: float) -> complex:
    return get_engine(spec).chi(k, xi)


def delta(spec: SpectralData, k: complex, xi: float) -> complex:
    return get_engine(spec).delta(k, xi)
