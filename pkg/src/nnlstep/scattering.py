"""Direct scattering for the defocusing nonlocal NLS equation.

The x-part of the Lax pair at t = 0 reads, for the 2x2 matrix Psi(x, k),

    dPsi/dx = -i*k*[sigma3, Psi] + U(x) Psi,
    U(x) = [[0, q0(x)], [conj(q0(-x)), 0]]        (sigma = -1),

with Psi1 -> N_-(k) as x -> -inf and Psi2 -> N_+(k) as x -> +inf, where

    N_+(k) = [[1, A/(2ik)], [0, 1]],   N_-(k) = [[1, 0], [-A/(2ik), 1]].

The spectral functions are 2x2 determinants of Jost columns at x = 0:

    b(k)  = det(Psi2^(1), Psi1^(1)),        k real,
    a1(k) = det(Psi1^(1), Psi2^(2)),        Im k >= 0, k != 0,
    a2(k) = det(Psi2^(1), Psi1^(2)),        Im k <= 0,

and the reflection coefficients are r1 = b/a1, r2 = conj(b(-k))/a2.

For the shifted step q0 = 0 (x < R), A (x > R) everything is available in
closed form:

    a1(k) = 1 - (A^2/(4k^2)) e^{4ikR},  a2(k) = 1,  b(k) = -(A/(2ik)) e^{2ikR}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.linalg import expm

from ._validation import (
    as_complex_array,
    check_background,
    check_positive,
    ConfigError,
)
from .errors import NotAZeroError, NumericalFailure, SingularPointError

__all__ = [
    "BackgroundParams",
    "InitialProfile",
    "JostMatrix",
    "SpectralData",
    "jost_at_origin",
    "spectral_functions",
    "pure_step_spectral",
    "reflection",
    "norming_constant",
    "transfer_matrix_oracle",
    "pure_step_norming",
]

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)

#: generic evaluations keep away from the k^-2 singularity at the origin
K_GUARD = 1e-3

#: adaptive integration tolerances for the Jost ODE
ODE_RTOL = 1e-10
ODE_ATOL = 1e-12


@dataclass(frozen=True)
class BackgroundParams:
    """Step background: amplitude A (field units) and shift R (length units)."""

    A: float
    R: float

    def __post_init__(self):
        check_background(self)


@dataclass
class InitialProfile:
    """Step-like initial datum sampled on a uniform symmetric grid.

    The datum must vanish identically for x <= x_min and equal A for
    x >= x_max, and the grid must cover the mirror interval so that
    conj(q0(-x)) is available wherever the Lax ODE needs it.
    """

    x_min: float
    x_max: float
    dx: float
    samples: np.ndarray
    bg: BackgroundParams
    analytic_step: bool = False
    _spline: CubicSpline | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.samples = as_complex_array(self.samples, "samples")
        if self.x_min >= -self.bg.R or self.x_max <= self.bg.R:
            raise ConfigError("profile must satisfy x_min < -R < R < x_max")
        if abs(self.x_min + self.x_max) > 0.5 * self.dx:
            raise ConfigError("profile grid must be symmetric about x = 0")
        n_expect = int(round((self.x_max - self.x_min) / self.dx)) + 1
        if self.samples.size != n_expect:
            raise ConfigError(
                f"expected {n_expect} samples on the declared grid, "
                f"got {self.samples.size}"
            )
        A = self.bg.A
        if abs(self.samples[0]) > 1e-12 or abs(self.samples[-1] - A) > 1e-12:
            raise ConfigError("profile endpoints must equal 0 (left) and A (right)")

    # -- constructors -------------------------------------------------

    @classmethod
    def pure_step(cls, bg: BackgroundParams, half_width: float | None = None,
                  dx: float = 0.01) -> "InitialProfile":
        """Exact shifted step, flagged analytic (interpolation is bypassed)."""
        if half_width is None:
            half_width = max(2.0 * bg.R, bg.R + 2.0)
        x = np.arange(-half_width, half_width + 0.5 * dx, dx)
        samples = np.where(x > bg.R, bg.A, 0.0).astype(complex)
        return cls(x_min=-half_width, x_max=half_width, dx=dx,
                   samples=samples, bg=bg, analytic_step=True)

    @classmethod
    def from_samples(cls, x, samples, bg: BackgroundParams) -> "InitialProfile":
        x = np.asarray(x, dtype=float)
        dx = x[1] - x[0]
        if not np.allclose(np.diff(x), dx, rtol=0, atol=1e-9 * abs(dx)):
            raise ConfigError("profile grid must be uniform")
        return cls(x_min=float(x[0]), x_max=float(x[-1]), dx=float(dx),
                   samples=samples, bg=bg)

    # -- evaluation ----------------------------------------------------

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.samples.size)

    def _ensure_spline(self):
        if self._spline is None:
            self._spline = CubicSpline(self.x, self.samples)

    def q0(self, x):
        """Initial datum q0(x); background constants outside the grid."""
        x = np.asarray(x, dtype=float)
        if self.analytic_step:
            return np.where(x > self.bg.R, self.bg.A, 0.0).astype(complex)
        self._ensure_spline()
        out = np.asarray(self._spline(np.clip(x, self.x_min, self.x_max)),
                         dtype=complex)
        out = np.where(x <= self.x_min, 0.0, out)
        out = np.where(x >= self.x_max, self.bg.A, out)
        return out

    def q0_mirror_conj(self, x):
        """conj(q0(-x)), the nonlocal partner entering the Lax matrix."""
        return np.conj(self.q0(-np.asarray(x, dtype=float)))

    def breakpoints(self):
        """Discontinuity locations of the Lax matrix coefficients."""
        if self.analytic_step:
            return (-self.bg.R, self.bg.R)
        return ()


@dataclass(frozen=True)
class JostMatrix:
    """Psi_j(0, 0, k) for j in {1, 2} with its evaluation point."""

    entries: np.ndarray
    k: complex
    which: str  # "Psi1" | "Psi2"

    @property
    def det(self) -> complex:
        e = self.entries
        return e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0]


def _n_plus(bg: BackgroundParams, k):
    k = np.asarray(k, dtype=complex)
    n = np.zeros(k.shape + (2, 2), dtype=complex)
    n[..., 0, 0] = 1.0
    n[..., 1, 1] = 1.0
    n[..., 0, 1] = bg.A / (2j * k)
    return n


def _n_minus(bg: BackgroundParams, k):
    k = np.asarray(k, dtype=complex)
    n = np.zeros(k.shape + (2, 2), dtype=complex)
    n[..., 0, 0] = 1.0
    n[..., 1, 1] = 1.0
    n[..., 1, 0] = -bg.A / (2j * k)
    return n


def _check_k(k):
    k = complex(k)
    if k == 0:
        raise SingularPointError("k = 0 is a singular point of the background")
    return k


def _guard_k(k):
    k = _check_k(k)
    if abs(k) < K_GUARD:
        raise SingularPointError(
            f"|k| = {abs(k):.2e} is inside the evaluation guard band "
            f"{K_GUARD:g} around the k = 0 singularity"
        )
    return k


def _segments(profile: InitialProfile, x_from: float, x_to: float):
    """Split [x_from, x_to] (either direction) at coefficient breakpoints."""
    pts = [x_from, x_to]
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    inner = [b for b in profile.breakpoints() if lo < b < hi]
    inner.sort(reverse=x_from > x_to)
    pts[1:1] = inner
    return list(zip(pts[:-1], pts[1:]))


def _integrate_jost(profile: InitialProfile, ks: np.ndarray, which: str,
                    x_stop: float = 0.0, rtol: float = ODE_RTOL,
                    atol: float = ODE_ATOL) -> np.ndarray:
    """Integrate the Jost ODE for a batch of k values at once.

    Returns an array of shape (len(ks), 2, 2) with Psi_j(x_stop, 0, k).
    The batch shares the adaptive steps; the matrix right-hand side is
    vectorized over k, which keeps grid sweeps fast.
    """
    ks = np.atleast_1d(np.asarray(ks, dtype=complex))
    for k in ks:
        _check_k(k)
    n_k = ks.size
    if which == "Psi1":
        x_start, y0 = profile.x_min, _n_minus(profile.bg, ks)
    elif which == "Psi2":
        x_start, y0 = profile.x_max, _n_plus(profile.bg, ks)
    else:
        raise ConfigError(f"which must be 'Psi1' or 'Psi2', got {which!r}")

    two_ik = 2j * ks

    def rhs(x, y):
        psi = y.reshape(n_k, 2, 2)
        q = profile.q0(x)
        qm = profile.q0_mirror_conj(x)
        d = np.empty_like(psi)
        d[:, 0, 0] = q * psi[:, 1, 0]
        d[:, 0, 1] = -two_ik * psi[:, 0, 1] + q * psi[:, 1, 1]
        d[:, 1, 0] = two_ik * psi[:, 1, 0] + qm * psi[:, 0, 0]
        d[:, 1, 1] = qm * psi[:, 0, 1]
        return d.reshape(-1)

    y = y0.reshape(-1)
    for a, b in _segments(profile, x_start, x_stop):
        if a == b:
            continue
        sol = solve_ivp(rhs, (a, b), y, method="DOP853",
                        rtol=rtol, atol=atol)
        if not sol.success:
            raise NumericalFailure(
                f"Jost integration failed on [{a}, {b}]: {sol.message}")
        y = sol.y[:, -1]
    return y.reshape(n_k, 2, 2)


def jost_at_origin(profile: InitialProfile, k: complex, which: str) -> JostMatrix:
    """Psi_j(0, 0, k) by adaptive integration of the Lax x-equation.

    For k off the real axis only the analytically continued column is
    trustworthy (first of Psi1 in the upper half plane, second of Psi2
    there; mirrored for the lower half plane).
    """
    k = _check_k(k)
    entries = _integrate_jost(profile, np.array([k]), which)[0]
    return JostMatrix(entries=entries, k=k, which=which)


def spectral_functions(profile: InitialProfile, k: complex):
    """(a1, a2, b) at k from Jost-column determinants.

    b requires k real; a1 is valid in the closed upper half plane minus 0,
    a2 in the closed lower half plane.  Off the real axis the unused
    columns are discarded.
    """
    k = _check_k(k)
    psi1 = _integrate_jost(profile, np.array([k]), "Psi1")[0]
    psi2 = _integrate_jost(profile, np.array([k]), "Psi2")[0]
    a1 = psi1[0, 0] * psi2[1, 1] - psi1[1, 0] * psi2[0, 1]
    a2 = psi2[0, 0] * psi1[1, 1] - psi2[1, 0] * psi1[0, 1]
    b = psi2[0, 0] * psi1[1, 0] - psi2[1, 0] * psi1[0, 0]
    return a1, a2, b


def spectral_functions_grid(profile: InitialProfile, ks):
    """Vectorized (a1, a2, b) over an array of k values.

    The batch shares adaptive steps, so it is chunked by |k| octave to
    keep slow modes from paying for the fastest oscillation.
    """
    ks = np.atleast_1d(np.asarray(ks, dtype=complex))
    order = np.argsort(np.abs(ks))
    a1 = np.empty(ks.size, dtype=complex)
    a2 = np.empty(ks.size, dtype=complex)
    b = np.empty(ks.size, dtype=complex)
    start = 0
    while start < ks.size:
        k0 = max(abs(ks[order[start]]), 1e-3)
        stop = start
        while stop < ks.size and abs(ks[order[stop]]) <= 4.0 * k0:
            stop += 1
        idx = order[start:stop]
        # background entries scale like A/(2|k|); tighten the tolerances
        # there so the determinant identity stays at the 1e-10 level
        scale = 1.0 + profile.bg.A / (2.0 * k0)
        rtol = max(1e-13, ODE_RTOL / scale**2)
        atol = max(1e-14, ODE_ATOL / scale)
        psi1 = _integrate_jost(profile, ks[idx], "Psi1", rtol=rtol, atol=atol)
        psi2 = _integrate_jost(profile, ks[idx], "Psi2", rtol=rtol, atol=atol)
        a1[idx] = psi1[:, 0, 0] * psi2[:, 1, 1] - psi1[:, 1, 0] * psi2[:, 0, 1]
        a2[idx] = psi2[:, 0, 0] * psi1[:, 1, 1] - psi2[:, 1, 0] * psi1[:, 0, 1]
        b[idx] = psi2[:, 0, 0] * psi1[:, 1, 0] - psi2[:, 1, 0] * psi1[:, 0, 0]
        start = stop
    return a1, a2, b


def pure_step_spectral(bg: BackgroundParams, k):
    """Closed-form (a1, a2, b) for the shifted step background."""
    k = np.asarray(k, dtype=complex)
    if np.any(k == 0):
        raise SingularPointError("k = 0 is a singular point")
    with np.errstate(over="ignore", invalid="ignore"):
        a1 = 1.0 - (bg.A**2 / (4.0 * k**2)) * np.exp(4j * k * bg.R)
        a2 = np.ones_like(k)
        b = -(bg.A / (2j * k)) * np.exp(2j * k * bg.R)
    return a1, a2, b


def reflection(spec: "SpectralData", k: float):
    """Reflection coefficients (r1, r2) at real k != 0."""
    k = float(np.real_if_close(k))
    a1 = spec.a1(k)
    a2 = spec.a2(k)
    if abs(a1) < 1e-12 or abs(a2) < 1e-12:
        raise NumericalFailure(
            f"spectral singularity: a1 or a2 vanishes at k = {k}")
    b = spec.b(k)
    b_m = spec.b(-k)
    return b / a1, np.conj(b_m) / a2


def transfer_matrix_oracle(bg: BackgroundParams, k: complex) -> np.ndarray:
    """Scattering matrix S(k) for the pure step from matrix exponentials.

    The Lax coefficient matrix is piecewise constant on (-inf, -R),
    (-R, R), (R, inf); each piece is propagated exactly with expm and
    the pieces are multiplied.  Independent of the closed forms, so it
    serves as an oracle for the ODE path.
    """
    k = _check_k(k)
    A, R = bg.A, bg.R
    x_out = 2.0 * R + 1.0

    def coeff(u12, u21):
        return np.array([[-1j * k, u12], [u21, 1j * k]], dtype=complex)

    # Lax coefficient pieces: U_- on x < -R, zero on (-R, R), U_+ on x > R
    # Psi1: background normalization at -x_out, then U_- and zero pieces
    phi1 = _n_minus(bg, np.array(k)) @ expm(1j * k * x_out * SIGMA3)
    phi1 = expm((x_out - R) * coeff(0.0, A)) @ phi1
    phi1 = expm(R * coeff(0.0, 0.0)) @ phi1
    # Psi2: background normalization at +x_out, then U_+ and zero pieces
    phi2 = _n_plus(bg, np.array(k)) @ expm(-1j * k * x_out * SIGMA3)
    phi2 = expm(-(x_out - R) * coeff(A, 0.0)) @ phi2
    phi2 = expm(-R * coeff(0.0, 0.0)) @ phi2
    return np.linalg.solve(phi2, phi1)


def pure_step_norming(bg: BackgroundParams, p: complex) -> complex:
    """Closed-form norming constant for the pure step at a zero p of a1."""
    p = complex(p)
    return -(bg.A / (2j * p)) * np.exp(2j * p * bg.R)


def norming_constant(profile: InitialProfile, p: complex,
                     rel_tol: float = 1e-6) -> complex:
    """Norming constant eta with Psi1^(1)(0,0,p) = eta * Psi2^(2)(0,0,p).

    Computed as the ratio of first components and cross-checked on the
    second; a mismatch beyond rel_tol means p is not a zero of a1.
    """
    p = _check_k(p)
    if p.imag <= 0:
        raise ConfigError("norming constants live at zeros with Im p > 0")
    col1 = _integrate_jost(profile, np.array([p]), "Psi1")[0][:, 0]
    col2 = _integrate_jost(profile, np.array([p]), "Psi2")[0][:, 1]
    eta_a = col1[0] / col2[0]
    eta_b = col1[1] / col2[1]
    eta = 0.5 * (eta_a + eta_b)
    if abs(eta_a - eta_b) > rel_tol * abs(eta):
        raise NotAZeroError(
            f"column ratios disagree at p = {p}: {eta_a} vs {eta_b}; "
            "the columns are not proportional there")
    return eta


class SpectralData:
    """Evaluators for a1, a2, b, r1, r2 tied to one initial datum.

    Instances are immutable after construction and safe to share across
    threads for read-only evaluation.  The pure-step constructor uses the
    closed forms; the profile constructor evaluates through the Jost ODE
    with an internal cache.
    """

    def __init__(self, bg: BackgroundParams, evaluator, *, label: str,
                 profile: InitialProfile | None = None):
        self.bg = bg
        self._eval = evaluator  # callable ks -> (a1, a2, b) arrays
        self.label = label
        self.profile = profile
        self._cache: dict = {}

    # -- constructors --------------------------------------------------

    @classmethod
    def from_pure_step(cls, bg: BackgroundParams) -> "SpectralData":
        return cls(bg, lambda ks: pure_step_spectral(bg, ks),
                   label=f"pure-step(A={bg.A}, R={bg.R})")

    @classmethod
    def from_profile(cls, profile: InitialProfile) -> "SpectralData":
        if profile.analytic_step:
            # exact background: closed forms are the profile's own data
            return cls.from_pure_step(profile.bg)
        return cls(profile.bg,
                   lambda ks: spectral_functions_grid(profile, ks),
                   label="profile", profile=profile)

    # -- raw evaluation with memoization -------------------------------

    def _all(self, k):
        key = complex(k)
        hit = self._cache.get(key)
        if hit is None:
            a1, a2, b = self._eval(np.array([key]))
            hit = (complex(a1[0]) if np.ndim(a1) else complex(a1),
                   complex(np.atleast_1d(a2)[0]),
                   complex(np.atleast_1d(b)[0]))
            self._cache[key] = hit
        return hit

    def grid(self, ks):
        """(a1, a2, b) arrays over ks through a single batched solve."""
        ks = np.atleast_1d(np.asarray(ks, dtype=complex))
        return self._eval(ks)

    # -- spectral functions ---------------------------------------------

    def a1(self, k) -> complex:
        return self._all(k)[0]

    def a2(self, k) -> complex:
        return self._all(k)[1]

    def b(self, k) -> complex:
        return self._all(k)[2]

    def a1a2(self, k):
        """Product a1(k) a2(k) on the real axis (vectorized)."""
        ks = np.atleast_1d(np.asarray(k, dtype=complex))
        a1, a2, _ = self._eval(ks)
        out = np.asarray(a1) * np.asarray(a2)
        return out if np.ndim(k) else complex(out[0])

    def r1(self, k) -> complex:
        return reflection(self, k)[0]

    def r2(self, k) -> complex:
        return reflection(self, k)[1]

    def r1r2(self, k):
        """r1(k) r2(k) on the real axis (vectorized over k)."""
        ks = np.atleast_1d(np.asarray(k, dtype=float))
        a1, a2, b = self._eval(ks.astype(complex))
        _, _, bm = self._eval(-ks.astype(complex))
        out = b * np.conj(bm) / (np.asarray(a1) * np.asarray(a2))
        return out if np.ndim(k) else complex(out[0])

    def one_minus_r1r2(self, k):
        """1 - r1 r2 computed as 1/(a1 a2) via the determinant identity."""
        out = 1.0 / self.a1a2(k)
        return out

    def a1_derivative(self, k, h: float = 1e-6) -> complex:
        """da1/dk; closed form for the pure step, central difference else."""
        if self.profile is None:
            A, R = self.bg.A, self.bg.R
            k = complex(k)
            g = (A**2 / (4.0 * k**2)) * np.exp(4j * k * R)
            return g * (2.0 / k - 4j * R)
        return (self.a1(k + h) - self.a1(k - h)) / (2.0 * h)
