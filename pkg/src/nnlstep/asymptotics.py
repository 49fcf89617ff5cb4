"""Sector classification and long-time predictions along rays x = 4 xi t.

For n background zeros the plane splits, per index m = 0..n-1, into

    plateau_right : (-Re p_{n-m},  omega_{n-m})      -> modulated constant
    decay_inner   : (omega_{n-m-1}, -Re p_{n-m})     -> decay
    plateau_left  : (Re p_{n-m},  -omega_{n-m-1})    -> modulated constant
    decay_far_left: (-omega_{n-m},  Re p_{n-m})      -> decay

with omega_0 = 0 and omega_n = inf.  Plateaus are

    right: A delta^2(0, xi) prod_{s<m} (xi / p_{n-s})^2,
    left : -4 conj(p_{n-m})^2 / (A conj(delta^2)(0, -xi))
           * prod_{s<m} (conj(p_{n-s}) / xi)^2,

and the subleading oscillation carries t-powers -1/2 -+ (Im nu - m), a
quadratic phase -+ 4 xi^2 t, a logarithmic phase +- Re nu ln t, and
amplitudes alpha_1..alpha_6 built from Gamma factors, chi(-xi, xi) and
the reflection coefficients.  Directions xi < 0 are served entirely by
phase data at the mirrored direction |xi| (the reconstruction symmetry
of the inverse problem), so the engine is only ever queried at xi > 0.

Along the boundary rays xi = -Re p_{n-m} and their mirrors the solution
is a solitary kink interpolating between the two neighboring regimes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma as cgamma

from ._validation import ConfigError
from .errors import (
    BlowUpPointError,
    DegenerateReflectionError,
    GammaPoleError,
    TransitionZoneError,
)
from .phase import PhaseEngine, PhaseValues, im_nu_branch
from .scattering import SpectralData
from .spectrum import OmegaSet, ZeroSet

__all__ = [
    "Sector",
    "OscTerm",
    "RemainderClass",
    "AsymptoticPrediction",
    "KinkProfile",
    "classify",
    "sector_boundaries",
    "c0_values",
    "plateau",
    "beta_gamma",
    "alpha",
    "predict",
    "evaluate_prediction",
    "kink",
    "kink_profile",
]

FAMILIES = ("plateau_right", "decay_far_left", "plateau_left", "decay_inner")


@dataclass(frozen=True)
class Sector:
    """One of the four ray families together with its index m."""

    family: str
    m: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")

    @property
    def is_plateau(self) -> bool:
        return self.family in ("plateau_right", "plateau_left")


@dataclass(frozen=True)
class OscTerm:
    """amplitude * t^t_power * exp(i (phase_coeff t + logt_coeff ln t))."""

    amplitude: complex
    t_power: float
    phase_coeff: float
    logt_coeff: float

    def value(self, t: float) -> complex:
        return (self.amplitude * t**self.t_power
                * np.exp(1j * (self.phase_coeff * t + self.logt_coeff * np.log(t))))


@dataclass(frozen=True)
class RemainderClass:
    exponent: float
    log_factor: bool = False

    def label(self) -> str:
        return f"O(t^{self.exponent:+.4f}{' ln t' if self.log_factor else ''})"


@dataclass
class AsymptoticPrediction:
    xi: float
    t: float
    sector: Sector
    leading: complex
    oscillatory: list
    remainder: RemainderClass
    nu: complex = field(default=0j)

    def value(self, t: float | None = None) -> complex:
        t = self.t if t is None else t
        return self.leading + sum(term.value(t) for term in self.oscillatory)


def evaluate_prediction(pred: AsymptoticPrediction, t: float | None = None) -> complex:
    return pred.value(t)


# ---------------------------------------------------------------------------
# sectors
# ---------------------------------------------------------------------------

def sector_intervals(zeros: ZeroSet, omegas: OmegaSet):
    """All (family, m, lo, hi) intervals implied by the zero/threshold data."""
    n = zeros.n
    out = []
    for m in range(n):
        rp = zeros.p_index(n - m).real
        w_hi = omegas.omega_index(n - m)
        w_lo = omegas.omega_index(n - m - 1)
        out.append(("plateau_right", m, -rp, w_hi))
        out.append(("decay_inner", m, w_lo, -rp))
        out.append(("plateau_left", m, rp, -w_lo))
        out.append(("decay_far_left", m, -w_hi, rp))
    return out


def sector_boundaries(zeros: ZeroSet, omegas: OmegaSet) -> np.ndarray:
    """Finite sector boundaries: 0, +-Re p_j and +-omega_j, sorted."""
    vals = [0.0]
    for p in zeros.p:
        vals.extend([p.real, -p.real])
    for w in omegas.omegas:
        vals.extend([w, -w])
    return np.array(sorted(vals))


def _guard_width(boundaries: np.ndarray, b: float, fraction: float) -> float:
    gaps = []
    lower = boundaries[boundaries < b - 1e-15]
    upper = boundaries[boundaries > b + 1e-15]
    if lower.size:
        gaps.append(b - lower.max())
    if upper.size:
        gaps.append(upper.min() - b)
    return fraction * min(gaps) if gaps else fraction


def classify(xi: float, zeros: ZeroSet, omegas: OmegaSet,
             guard_fraction: float = 0.05) -> Sector:
    """Sector containing the direction xi, guarding the boundary rays.

    Raises TransitionZoneError inside the guard bands around 0,
    +-Re p_j and +-omega_j, where the ray asymptotics do not apply.
    """
    xi = float(xi)
    bounds = sector_boundaries(zeros, omegas)
    for b in bounds:
        if abs(xi - b) < _guard_width(bounds, b, guard_fraction):
            raise TransitionZoneError(
                f"xi = {xi} is within the guard band of the sector boundary "
                f"{b:.6g} (transition zone)")
    for family, m, lo, hi in sector_intervals(zeros, omegas):
        if lo < xi < hi:
            return Sector(family=family, m=m)
    raise TransitionZoneError(f"xi = {xi} could not be assigned to a sector")


# ---------------------------------------------------------------------------
# plateau constants
# ---------------------------------------------------------------------------

def _prod_xi_over_p(xi: float, m: int, zeros: ZeroSet) -> complex:
    out = 1.0 + 0j
    n = zeros.n
    for s in range(m):
        out *= (xi / zeros.p_index(n - s)) ** 2
    return out


def c0_values(bg_amplitude: float, xi: float, m: int, zeros: ZeroSet,
              delta0: complex):
    """Residue constants (c0_as, c0_as_sharp) at direction xi > 0."""
    if m >= zeros.n:
        raise ConfigError(f"sector index m = {m} needs at least {m + 1} zeros")
    return (c0_as(bg_amplitude, xi, m, zeros, delta0),
            c0_as_sharp(bg_amplitude, xi, m, zeros, delta0))


def c0_as(bg_amplitude: float, xi: float, m: int, zeros: ZeroSet,
          delta0: complex) -> complex:
    """c0_as(xi) = (A delta^2(0,xi) / 2i) * prod_{s<m} (xi/p_{n-s})^2."""
    return (bg_amplitude * delta0**2 / 2j) * _prod_xi_over_p(xi, m, zeros)


def c0_as_sharp(bg_amplitude: float, xi: float, m: int, zeros: ZeroSet,
                delta0: complex) -> complex:
    """c0_as_sharp(xi) = (2i p_{n-m}^2 / (A delta^2(0,xi)))
    * prod_{s<m} (p_{n-s}/xi)^2."""
    if xi == 0:
        raise ConfigError("c0_as_sharp is singular at xi = 0")
    n = zeros.n
    p = zeros.p_index(n - m)
    return (2j * p**2 / (bg_amplitude * delta0**2)) / _prod_xi_over_p(xi, m, zeros)


def plateau(sector: Sector, xi: float, zeros: ZeroSet,
            phase: PhaseValues, bg_amplitude: float) -> complex:
    """Leading modulated constant of the sector (0 in decay families).

    ``phase`` must be the per-direction data at |xi|; for plateau_left
    the conjugated sharp constant at the mirrored direction is used, so
    directions xi < 0 never require phase data of their own.
    """
    if sector.family == "plateau_right":
        return 2j * c0_as(bg_amplitude, xi, sector.m, zeros, phase.delta0)
    if sector.family == "plateau_left":
        return -2j * np.conj(
            c0_as_sharp(bg_amplitude, -xi, sector.m, zeros, phase.delta0))
    return 0j


# ---------------------------------------------------------------------------
# parametrix data and modulating amplitudes
# ---------------------------------------------------------------------------

def _gamma_checked(z: complex) -> complex:
    z = complex(z)
    if abs(z - round(z.real)) < 1e-12 and round(z.real) <= 0 and abs(z.imag) < 1e-12:
        raise GammaPoleError(f"Gamma argument {z} degenerates to a pole")
    val = complex(cgamma(z))
    if not np.isfinite(val.real) or not np.isfinite(val.imag):
        raise GammaPoleError(f"Gamma({z}) overflowed (pole-adjacent argument)")
    return val


def beta_gamma(r1_checked: complex, r2_checked: complex,
               nu_checked: complex):
    """Large-z coefficients (beta, gamma) of the model parametrix.

    Inputs are the modified reflection values at -xi and the shifted
    exponent nu_checked = nu - i m.
    """
    if abs(r1_checked) < 1e-14 or abs(r2_checked) < 1e-14:
        raise DegenerateReflectionError(
            "modified reflection coefficient vanishes at -xi")
    nu_c = complex(nu_checked)
    pref = np.sqrt(2.0 * np.pi) * np.exp(-0.5 * np.pi * nu_c)
    beta = pref * np.exp(-0.75j * np.pi) / (r1_checked * _gamma_checked(-1j * nu_c))
    gam = pref * np.exp(-0.25j * np.pi) / (r2_checked * _gamma_checked(1j * nu_c))
    return beta, gam


def _direction_inputs(xi_abs: float, zeros: ZeroSet, phase: PhaseValues,
                      spec: SpectralData):
    nu_val = phase.nu
    chi_val = phase.chi_at_minus_xi
    r1 = spec.r1(-xi_abs)
    r2 = spec.r2(-xi_abs)
    return nu_val, chi_val, r1, r2


def alpha(j: int, xi: float, m: int, zeros: ZeroSet, phase: PhaseValues,
          spec: SpectralData) -> complex:
    """Modulating amplitude alpha_j(xi) of the long-time expansion.

    j in 1..2 belongs to plateau_right, 4 to decay_inner (both at
    xi > 0); 3 belongs to decay_far_left, 5..6 to plateau_left (xi < 0,
    built from conjugated data at |xi|).  ``phase`` is the per-direction
    cache at |xi|.
    """
    n = zeros.n
    xa = abs(xi)
    nu_val, chi_val, r1, r2 = _direction_inputs(xa, zeros, phase, spec)
    ln2 = np.log(2.0)
    sqpi = np.sqrt(np.pi)

    if j in (1, 2, 4):
        if xi <= 0:
            raise ConfigError(f"alpha_{j} lives on positive directions")
        prod2 = np.prod([(xi + zeros.p_index(n - s)) ** 2
                         for s in range(m)]) if m else 1.0 + 0j
        if j == 1:
            if abs(r2) < 1e-14:
                raise DegenerateReflectionError("r2(-xi) vanishes")
            c0 = c0_as(spec.bg.A, xi, m, zeros, phase.delta0)
            num = sqpi * c0**2 * prod2
            den = xi**2 * r2 * _gamma_checked(1j * nu_val + m)
            arg = (-0.5 * np.pi * (nu_val - 1j * m) + 0.75j * np.pi
                   - 2.0 * chi_val + 3.0 * (1j * nu_val + m) * ln2)
            return complex(num / den * np.exp(arg))
        if abs(r1) < 1e-14:
            raise DegenerateReflectionError("r1(-xi) vanishes")
        arg = (-0.5 * np.pi * (nu_val - 1j * m) + 0.25j * np.pi
               + 2.0 * chi_val - 3.0 * (1j * nu_val + m) * ln2)
        if j == 2:
            den = prod2 * r1 * _gamma_checked(-1j * nu_val - m)
            return complex(sqpi / den * np.exp(arg))
        # j == 4: one extra pole factor relative to alpha_2
        prod2_m = prod2 * (xi + zeros.p_index(n - m)) ** 2
        den = prod2_m * r1 * _gamma_checked(-1j * nu_val - m)
        return complex(sqpi * xi**2 / den * np.exp(arg))

    if j in (3, 5, 6):
        if xi >= 0:
            raise ConfigError(f"alpha_{j} lives on negative directions")
        nu_b = np.conj(nu_val)
        chi_b = np.conj(chi_val)
        prod2 = np.prod([(np.conj(zeros.p_index(n - s)) - xi) ** 2
                         for s in range(m)]) if m else 1.0 + 0j
        if j in (3, 5):
            if abs(r2) < 1e-14:
                raise DegenerateReflectionError("r2 at the mirrored direction vanishes")
            arg = (-0.5 * np.pi * (nu_b + 1j * m) + 0.25j * np.pi
                   - 2.0 * chi_b - 3.0 * (1j * nu_b - m) * ln2)
            gam = _gamma_checked(-1j * nu_b + m)
            if j == 3:
                return complex(sqpi * prod2 / (np.conj(r2) * gam) * np.exp(arg))
            prod2_m = prod2 * (np.conj(zeros.p_index(n - m)) - xi) ** 2
            return complex(sqpi * prod2_m
                           / (xi**2 * np.conj(r2) * gam) * np.exp(arg))
        # j == 6
        if abs(r1) < 1e-14:
            raise DegenerateReflectionError("r1 at the mirrored direction vanishes")
        c0s = c0_as_sharp(spec.bg.A, xa, m, zeros, phase.delta0)
        prod2_m = prod2 * (np.conj(zeros.p_index(n - m)) - xi) ** 2
        arg = (-0.5 * np.pi * (nu_b + 1j * m) + 0.75j * np.pi
               + 2.0 * chi_b + 3.0 * (1j * nu_b - m) * ln2)
        return complex(sqpi * np.conj(c0s) ** 2
                       / (prod2_m * np.conj(r1) * _gamma_checked(1j * nu_b - m))
                       * np.exp(arg))

    raise ConfigError(f"alpha index must be 1..6, got {j}")


# ---------------------------------------------------------------------------
# remainder classes
# ---------------------------------------------------------------------------

def _remainder_r1(d: float) -> RemainderClass:
    if abs(d) < 1e-12:
        return RemainderClass(-1.0, log_factor=True)
    if d > 0:
        return RemainderClass(-1.0)
    return RemainderClass(-1.0 + 2.0 * abs(d))


def _remainder_r2(d: float) -> RemainderClass:
    if abs(d) < 1e-12:
        return RemainderClass(-1.0, log_factor=True)
    if d > 0:
        return RemainderClass(-1.0 + 2.0 * abs(d))
    return RemainderClass(-1.0)


def _remainder_r3(d: float) -> RemainderClass:
    if abs(d) < 1e-12:
        return RemainderClass(-1.0, log_factor=True)
    return RemainderClass(-1.0 + 2.0 * abs(d))


# ---------------------------------------------------------------------------
# full prediction
# ---------------------------------------------------------------------------

def predict(xi: float, t: float, zeros: ZeroSet, omegas: OmegaSet,
            engine: PhaseEngine, spec: SpectralData,
            guard_fraction: float = 0.05,
            phase_values: PhaseValues | None = None) -> AsymptoticPrediction:
    """Assemble the full long-time prediction at (xi, t).

    ``phase_values`` may inject precomputed per-direction data (used by
    tests and batch drivers); otherwise the engine cache is consulted at
    |xi|.
    """
    sector = classify(xi, zeros, omegas, guard_fraction)
    m = sector.m
    xa = abs(xi)
    pv = phase_values if phase_values is not None else engine.direction(xa, zeros)
    nu_val = pv.nu
    d = nu_val.imag - m
    re_nu = nu_val.real
    lead = plateau(sector, xi, zeros, pv, spec.bg.A)
    terms = []

    if sector.family == "plateau_right":
        branch = im_nu_branch(nu_val, m)
        if branch in ("low", "middle"):
            terms.append(OscTerm(alpha(1, xi, m, zeros, pv, spec),
                                 -0.5 - d, -4.0 * xi**2, re_nu))
        if branch in ("middle", "high"):
            terms.append(OscTerm(alpha(2, xi, m, zeros, pv, spec),
                                 -0.5 + d, 4.0 * xi**2, -re_nu))
        rem = {"low": _remainder_r1, "middle": _remainder_r3,
               "high": _remainder_r2}[branch](d)
    elif sector.family == "decay_inner":
        terms.append(OscTerm(alpha(4, xi, m, zeros, pv, spec),
                             -0.5 + d, 4.0 * xi**2, -re_nu))
        rem = _remainder_r2(d)
    elif sector.family == "decay_far_left":
        terms.append(OscTerm(alpha(3, xi, m, zeros, pv, spec),
                             -0.5 - d, 4.0 * xi**2, -re_nu))
        rem = _remainder_r2(d)
    else:  # plateau_left
        branch = im_nu_branch(nu_val, m)
        if branch in ("low", "middle"):
            terms.append(OscTerm(alpha(5, xi, m, zeros, pv, spec),
                                 -0.5 - d, 4.0 * xi**2, -re_nu))
        if branch in ("middle", "high"):
            terms.append(OscTerm(alpha(6, xi, m, zeros, pv, spec),
                                 -0.5 + d, -4.0 * xi**2, re_nu))
        rem = {"low": _remainder_r1, "middle": _remainder_r3,
               "high": _remainder_r2}[branch](d)

    return AsymptoticPrediction(xi=float(xi), t=float(t), sector=sector,
                                leading=lead, oscillatory=terms,
                                remainder=rem, nu=nu_val)


# ---------------------------------------------------------------------------
# kink transitions along xi = +-(-Re p_{n-m})
# ---------------------------------------------------------------------------

@dataclass
class KinkProfile:
    """Solitary kink along x = -+ 4 Re p_{n-m} t +- x0."""

    m: int
    side: str  # "x_positive" | "x_negative"
    p: complex
    eta: complex
    a1_dot: complex
    delta_p: complex
    c0: complex

    def f_as(self, x0: float, t: float) -> complex:
        osc = np.exp(2j * self.p * x0 - 4j * t * abs(self.p) ** 2)
        return self.eta * osc / (self.a1_dot * self.delta_p**2)

    def value(self, x0: float, t: float) -> complex:
        f = self.f_as(x0, t)
        if self.side == "x_positive":
            den = self.p**2 + self.c0 * f
            if abs(den) < 1e-8:
                raise BlowUpPointError(
                    f"kink denominator {den:.2e} at (x0={x0}, t={t})")
            return complex(2j * self.p**2 * self.c0 / den)
        den = np.conj(self.p) ** 2 + np.conj(self.c0) * np.conj(f)
        if abs(den) < 1e-8:
            raise BlowUpPointError(
                f"kink denominator {den:.2e} at (x0={x0}, t={t})")
        return complex(-2j * np.conj(self.p) ** 2 * np.conj(f) / den)


def kink_profile(m: int, side: str, zeros: ZeroSet, engine: PhaseEngine,
                 spec: SpectralData) -> KinkProfile:
    """Assemble the kink data for the transition ray with index m."""
    if side not in ("x_positive", "x_negative"):
        raise ConfigError("side must be 'x_positive' or 'x_negative'")
    n = zeros.n
    if not zeros.eta:
        raise ConfigError("kink profiles need norming constants in the zero set")
    p = zeros.p_index(n - m)
    xi_k = -p.real
    pv = engine.direction(xi_k, zeros)
    delta_p = pv.delta_at_zeros[n - m]
    c0 = c0_as(spec.bg.A, xi_k, m, zeros, pv.delta0)
    return KinkProfile(m=m, side=side, p=p, eta=zeros.eta_index(n - m),
                       a1_dot=spec.a1_derivative(p), delta_p=delta_p, c0=c0)


def kink(m: int, side: str, x0: float, t: float, zeros: ZeroSet,
         engine: PhaseEngine, spec: SpectralData) -> complex:
    """Kink value q at offset x0 along the transition ray (index m)."""
    return kink_profile(m, side, zeros, engine, spec).value(x0, t)
