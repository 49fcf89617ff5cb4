"""Zeros of a1, winding of arg(a1 a2), and the working assumptions.

For the pure step with (n-1)pi/A < R < n*pi/A, a1 has 2n simple zeros
{p_j, -conj(p_j)} in the upper half plane; the real parts solve

    k = +/- (A/2) cos(2kR) exp(-2kR tan(2kR)),   k < 0,

with Im p_j = Re p_j tan(2 Re p_j R), and Re p_j lies in
(-(2j-1)pi/(4R), -(j-1)pi/(2R)).  The thresholds are omega_j = j*pi/(2R).

The continuous winding Phi(xi) of arg(a1 a2) over (-inf, -xi] is
accumulated by phase unwrapping on an adaptively refined grid anchored
at arg -> 0 near -infinity; it crosses (2m-1)*pi exactly at the
omega_{n-m}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._validation import (
    as_float_array,
    check_background,
    check_nonbifurcation,
    zero_count_for,
    ConfigError,
)
from .errors import (
    AssumptionViolation,
    BoxBoundaryZeroError,
    NumericalFailure,
    RefinementError,
)
from .scattering import BackgroundParams, SpectralData

__all__ = [
    "ZeroSet",
    "OmegaSet",
    "AssumptionReport",
    "find_zeros",
    "pure_step_zeros",
    "winding_profile",
    "find_omegas",
    "verify_assumptions",
    "ArgWinding",
    "background_zero_set",
]


@dataclass
class ZeroSet:
    """Left-quadrant zeros p_j of a1 (mirrors -conj(p_j) implied).

    Index convention follows the ordering Re p_n < ... < Re p_1 < 0:
    ``p[j-1]`` is p_j, so ``p[0]`` is the zero closest to the imaginary
    axis.  ``eta`` holds the matching norming constants when known.
    """

    p: list
    eta: list = field(default_factory=list)

    def __post_init__(self):
        self.p = [complex(z) for z in self.p]
        self.eta = [complex(e) for e in self.eta]
        for z in self.p:
            if z.imag <= 0 or z.real >= 0:
                raise ConfigError(f"zero {z} is not in the open left upper quadrant")
        re = [z.real for z in self.p]
        if any(re[i] <= re[i + 1] for i in range(len(re) - 1)):
            raise ConfigError("zeros must be ordered with Re p_n < ... < Re p_1")
        if self.eta and len(self.eta) != len(self.p):
            raise ConfigError("eta must match p in length")

    @property
    def n(self) -> int:
        return len(self.p)

    def p_index(self, j: int) -> complex:
        """p_j with the 1-based paper indexing."""
        return self.p[j - 1]

    def eta_index(self, j: int) -> complex:
        return self.eta[j - 1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": [{"re": z.real, "im": z.imag} for z in self.p],
            "eta": [{"re": e.real, "im": e.imag} for e in self.eta],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ZeroSet":
        return cls(
            p=[complex(d["re"], d["im"]) for d in obj["p"]],
            eta=[complex(d["re"], d["im"]) for d in obj.get("eta", [])],
        )


@dataclass
class OmegaSet:
    """Strictly increasing thresholds omega_1 < ... < omega_{n-1}.

    The conventions omega_0 = 0 and omega_n = +inf are implied and
    available through :meth:`omega_index`.
    """

    omegas: list

    def __post_init__(self):
        self.omegas = [float(w) for w in self.omegas]
        if any(w <= 0 for w in self.omegas):
            raise ConfigError("omegas must be positive")
        if any(a >= b for a, b in zip(self.omegas, self.omegas[1:])):
            raise ConfigError("omegas must be strictly increasing")

    def omega_index(self, j: int) -> float:
        """omega_j including the conventions omega_0 = 0, omega_n = inf."""
        if j <= 0:
            return 0.0
        if j > len(self.omegas):
            return np.inf
        return self.omegas[j - 1]

    def to_json(self) -> list:
        return list(self.omegas)


@dataclass
class AssumptionReport:
    zeros_ok: bool
    a2_nonvanishing: bool
    interleaving_ok: bool
    winding_bands_ok: bool
    diagnostics: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return (self.zeros_ok and self.a2_nonvanishing
                and self.interleaving_ok and self.winding_bands_ok)

    def require(self):
        if not self.all_ok:
            raise AssumptionViolation(
                "assumption report has failures: " + "; ".join(self.diagnostics))

    def to_json(self) -> dict:
        return {
            "zeros_ok": self.zeros_ok,
            "a2_nonvanishing": self.a2_nonvanishing,
            "interleaving_ok": self.interleaving_ok,
            "winding_bands_ok": self.winding_bands_ok,
            "all_ok": self.all_ok,
            "diagnostics": list(self.diagnostics),
        }


# ---------------------------------------------------------------------------
# argument-principle zero search
# ---------------------------------------------------------------------------

def _boundary_winding(f, corners, n_per_edge=256, max_refine=26):
    """Winding number of f around a rectangle by adaptive phase unwrapping.

    Consecutive phase jumps are forced below pi/2 by bisecting offending
    segments; raises if refinement cannot achieve that (a zero is on or
    numerically touching the boundary).
    """
    pts = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        pts.append(a + (b - a) * np.linspace(0.0, 1.0, n_per_edge, endpoint=False))
    z = np.concatenate(pts + [np.array([corners[0]])])
    vals = f(z)
    if np.any(np.abs(vals) == 0):
        raise BoxBoundaryZeroError("zero of a1 on the search box boundary")
    ang = np.angle(vals)
    for _ in range(max_refine):
        d = np.angle(np.exp(1j * np.diff(ang)))
        bad = np.where(np.abs(d) > 0.5 * np.pi)[0]
        if bad.size == 0:
            break
        mids = 0.5 * (z[bad] + z[bad + 1])
        mvals = f(mids)
        if np.any(np.abs(mvals) == 0):
            raise BoxBoundaryZeroError("zero of a1 on the search box boundary")
        z = np.insert(z, bad + 1, mids)
        ang = np.insert(ang, bad + 1, np.angle(mvals))
    else:
        raise BoxBoundaryZeroError(
            "phase jump on the box boundary is irreducible; "
            "a zero sits on or too close to the contour")
    total = np.sum(np.angle(np.exp(1j * np.diff(ang)))) / (2.0 * np.pi)
    n = round(total)
    if abs(total - n) > 0.01:
        raise BoxBoundaryZeroError(
            f"boundary winding {total:.4f} is not an integer within 0.01")
    return int(n)


def _newton_refine(f, z0, tol=1e-10, h=1e-7, max_iter=60, bound=None):
    z = complex(z0)
    for _ in range(max_iter):
        if bound is not None and not (
                bound[0] <= z.real <= bound[1]
                and bound[2] <= z.imag <= bound[3]):
            raise RefinementError(f"Newton left the trusted region at {z}")
        fz = complex(f(np.array([z]))[0])
        if not np.isfinite(fz.real) or not np.isfinite(fz.imag):
            break
        if abs(fz) <= tol:
            return z
        with np.errstate(over="ignore", invalid="ignore"):
            df = complex((f(np.array([z + h])) - f(np.array([z - h])))[0]) / (2 * h)
        if df == 0 or not np.isfinite(df.real) or not np.isfinite(df.imag):
            break
        step = fz / df
        if not np.isfinite(step.real) or not np.isfinite(step.imag):
            break
        z -= step
    fz = complex(f(np.array([z]))[0])
    if np.isfinite(fz.real) and np.isfinite(fz.imag) and abs(fz) <= tol:
        return z
    raise RefinementError(f"Newton refinement stalled at z = {z}")


def find_zeros(a1, box, *, refine_diameter=1e-2, tol=1e-10,
               n_per_edge=256, _depth=0):
    """All zeros of the analytic evaluator ``a1`` inside a rectangle.

    ``box`` is (re_min, re_max, im_min, im_max) in the upper half plane.
    Boxes are subdivided by the argument principle until they hold at
    most one zero or are smaller than ``refine_diameter``; Newton
    iteration then polishes each zero to |a1| <= tol.  The evaluator
    must accept complex arrays.
    """
    re_min, re_max, im_min, im_max = box
    if im_min < 0:
        raise ConfigError("search box must lie in the closed upper half plane")
    corners = [complex(re_min, im_min), complex(re_max, im_min),
               complex(re_max, im_max), complex(re_min, im_max)]
    count = _boundary_winding(a1, corners, n_per_edge=n_per_edge)
    if count == 0:
        return []
    diam = max(re_max - re_min, im_max - im_min)
    if count == 1:
        try:
            z0 = complex(0.5 * (re_min + re_max), 0.5 * (im_min + im_max))
            pad = max(diam, 0.5)
            z = _newton_refine(a1, z0, tol=tol,
                               bound=(re_min - pad, re_max + pad,
                                      max(im_min - pad, 1e-12), im_max + pad))
            if re_min <= z.real <= re_max and im_min <= z.imag <= im_max:
                return [z]
        except RefinementError:
            pass
    if diam <= refine_diameter or _depth > 60:
        raise RefinementError(
            f"box of diameter {diam:.2e} still holds {count} unresolved zeros")
    # subdivide along the longer side; jitter the split if a zero sits on it
    for frac in (0.5, 0.47, 0.55):
        if re_max - re_min >= im_max - im_min:
            mid = re_min + frac * (re_max - re_min)
            sub = [(re_min, mid, im_min, im_max), (mid, re_max, im_min, im_max)]
        else:
            mid = im_min + frac * (im_max - im_min)
            sub = [(re_min, re_max, im_min, mid), (re_min, re_max, mid, im_max)]
        try:
            zeros = []
            for s in sub:
                zeros.extend(find_zeros(
                    a1, s, refine_diameter=refine_diameter, tol=tol,
                    n_per_edge=max(64, n_per_edge // 2), _depth=_depth + 1))
            break
        except BoxBoundaryZeroError:
            if frac == 0.55:
                raise
    if len(zeros) != count:
        raise RefinementError(
            f"subdivision lost zeros: found {len(zeros)}, expected {count}")
    return sorted(zeros, key=lambda z: (z.real, z.imag))


def _default_boxes(bg: BackgroundParams, axis_gap=0.02, floor=1e-6):
    """Two quadrant boxes containing the pure-step zeros and mirrors.

    The boxes stay clear of the double pole of a1 at k = 0; no zeros
    live on the imaginary axis, so the gap loses nothing.
    """
    n = zero_count_for(bg)
    re_lim = (2 * n - 1) * np.pi / (4.0 * bg.R) + 0.25 * bg.A + 0.5
    im_max = 0.75 * bg.A + 0.5
    gap = min(axis_gap, 0.2 * np.pi / (4.0 * bg.R))
    return [(-re_lim, -gap, floor, im_max), (gap, re_lim, floor, im_max)]


def find_zeros_for(spec: SpectralData, box=None, **kw):
    """Zeros of spec.a1 over boxes (default sized from the background)."""
    boxes = [box] if box is not None else _default_boxes(spec.bg)

    def a1_arr(z):
        a1, _, _ = spec.grid(np.asarray(z, dtype=complex))
        return np.asarray(a1)

    zeros = []
    for b in boxes:
        zeros.extend(find_zeros(a1_arr, b, **kw))
    return sorted(zeros, key=lambda z: (z.real, z.imag))


def pure_step_zeros(bg: BackgroundParams, tol: float = 1e-12) -> ZeroSet:
    """Zeros p_j of the pure-step a1 from the transcendental system.

    Bisection brackets each |Re p_j| in ((j-1)pi/(2R), (2j-1)pi/(4R)),
    the imaginary part follows from Im p = Re p tan(2 Re p R), and a
    final Newton step on the closed form polishes the complex root.
    """
    check_background(bg, require_amplitude=True)
    if abs(bg.R * bg.A / np.pi - round(bg.R * bg.A / np.pi)) < 1e-6:
        from .errors import BifurcationProximityError
        raise BifurcationProximityError(
            f"R = {bg.R} is within 1e-6 of a bifurcation value n*pi/A; "
            f"real zeros at +/-{bg.A / 2} appear there")
    check_nonbifurcation(bg)
    n = zero_count_for(bg)
    A, R = bg.A, bg.R

    def g(kappa):
        t = np.tan(2.0 * kappa * R)
        return kappa - 0.5 * A * abs(np.cos(2.0 * kappa * R)) * np.exp(
            -2.0 * kappa * R * t)

    zeros = []
    for j in range(1, n + 1):
        lo = (j - 1) * np.pi / (2.0 * R)
        hi = (2 * j - 1) * np.pi / (4.0 * R)
        eps = (hi - lo) * 1e-12
        kappa = brentq(g, lo + eps, hi - eps, xtol=1e-15, rtol=8.9e-16)
        p = -kappa + 1j * kappa * np.tan(2.0 * kappa * R)

        def a1_closed(z):
            return 1.0 - (A**2 / (4.0 * z**2)) * np.exp(4j * z * R)

        p = _newton_refine(lambda z: a1_closed(np.asarray(z)), p, tol=tol)
        zeros.append(p)
    # paper indexing: p_1 closest to the imaginary axis
    zeros.sort(key=lambda z: -z.real)
    return ZeroSet(p=zeros)


def background_zero_set(spec: SpectralData, box=None, *,
                        eta_from=None, tol=1e-10) -> ZeroSet:
    """Locate zeros of a1, keep the left-quadrant family, attach eta.

    ``eta_from`` is an optional callable p -> eta; by default the
    pure-step closed form is used when the data are a pure step,
    otherwise norming constants are left empty.
    """
    zeros = find_zeros_for(spec, box, tol=tol)
    left = sorted([z for z in zeros if z.real < 0], key=lambda z: -z.real)
    right = [z for z in zeros if z.real >= 0]
    if len(left) != len(right):
        raise AssumptionViolation(
            f"zero set is not mirror-symmetric: {len(left)} left vs "
            f"{len(right)} right zeros")
    if eta_from is None and spec.profile is None:
        from .scattering import pure_step_norming
        eta_from = lambda p: pure_step_norming(spec.bg, p)
    eta = [eta_from(p) for p in left] if eta_from is not None else []
    return ZeroSet(p=left, eta=eta)


# ---------------------------------------------------------------------------
# winding of arg(a1 a2)
# ---------------------------------------------------------------------------

class ArgWinding:
    """Continuous winding of arg(a1 a2) along (-inf, -xi].

    A master grid on [-k_cutoff, -xi_floor] is unwrapped once (adaptive
    bisection keeps consecutive jumps below pi/2) and queries interpolate
    or refine locally.  The branch is anchored at the principal argument
    at -k_cutoff, where |r1 r2| <= r_tail guarantees an anchoring error
    below 2 * r_tail.
    """

    def __init__(self, spec: SpectralData, *, xi_floor=1e-3,
                 k_cutoff=None, r_tail=1e-10, max_refine=40):
        self.spec = spec
        self.xi_floor = xi_floor
        if k_cutoff is None:
            k_cutoff = self._select_cutoff(r_tail)
        self.k_cutoff = k_cutoff
        self.max_refine = max_refine
        self._build_master()

    def _select_cutoff(self, r_tail):
        bg = self.spec.bg
        if bg.A == 0:
            return 10.0
        if self.spec.profile is None:
            # |r1 r2| ~ (A^2/4k^2) / |a1|; solve for the closed form
            k = max(2.0 * bg.A, 10.0)
            while abs(self.spec.r1r2(-k)) > r_tail and k < 1e7:
                k *= 1.6
            return k
        # profile path: cap the cutoff, the anchoring error stays analytic
        k = max(2.0 * bg.A, 20.0)
        while abs(self.spec.r1r2(-k)) > max(r_tail, 1e-8) and k < 200.0:
            k *= 1.6
        return k

    def _density_nodes(self):
        bg = self.spec.bg
        rate = max(4.0 * bg.R, 1.0)
        if self.spec.profile is not None:
            rate = max(rate, 4.0 * abs(self.spec.profile.x_max))
        h_osc = 0.5 * np.pi / rate / 3.0
        dense_edge = -max(2.0 * max(bg.A, 0.5), 2.0 * self.xi_floor)
        dense = np.arange(dense_edge, -self.xi_floor + 0.5 * h_osc, h_osc)
        # geometric far zone; |a1 a2 - 1| is small there so sparse is safe
        n_geo = max(int(np.ceil(np.log(-self.k_cutoff / dense_edge)
                                / np.log(1.12))), 8)
        geo = -np.geomspace(-dense_edge, self.k_cutoff, n_geo)[::-1]
        nodes = np.unique(np.concatenate([geo, dense, [-self.xi_floor]]))
        return nodes[nodes <= -self.xi_floor]

    def _build_master(self):
        z = self._density_nodes()
        w = np.asarray(self.spec.a1a2(z))
        anchor = w[0]
        if abs(anchor - 1.0) > 0.5:
            raise NumericalFailure(
                "a1 a2 is not close to 1 at the winding cutoff; "
                "increase k_cutoff")
        ang = np.angle(w)
        z, ang = self._refine(z, ang)
        self.zeta = z
        self.phi = np.concatenate([[ang[0]], ang[0] + np.cumsum(
            np.angle(np.exp(1j * np.diff(ang))))])

    def _refine(self, z, ang):
        for _ in range(self.max_refine):
            d = np.angle(np.exp(1j * np.diff(ang)))
            bad = np.where(np.abs(d) > 0.5 * np.pi)[0]
            if bad.size == 0:
                return z, ang
            mids = 0.5 * (z[bad] + z[bad + 1])
            mang = np.angle(np.asarray(self.spec.a1a2(mids)))
            z = np.insert(z, bad + 1, mids)
            ang = np.insert(ang, bad + 1, mang)
        raise NumericalFailure(
            "winding grid refinement exhausted: an irreducible phase jump "
            "suggests a zero of a1 a2 on or near the contour")

    def continuous_phase(self, zeta):
        """Unwrapped arg(a1 a2) at contour points zeta <= -xi_floor."""
        zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
        if np.any(zeta > -self.xi_floor + 1e-15) or np.any(zeta < self.zeta[0]):
            raise ConfigError("contour point outside the winding master grid")
        idx = np.searchsorted(self.zeta, zeta, side="right") - 1
        idx = np.clip(idx, 0, self.zeta.size - 1)
        out = np.empty_like(zeta)
        w = np.asarray(self.spec.a1a2(zeta))
        for i, (zv, j) in enumerate(zip(zeta, idx)):
            base = self.phi[j]
            jump = float(np.angle(w[i] * np.exp(-1j * base)))
            if abs(jump) > 0.4 * np.pi and zv > self.zeta[j]:
                # continue the branch through a locally refined subgrid
                sub = np.linspace(self.zeta[j], zv, 17)[1:]
                sv = np.asarray(self.spec.a1a2(sub))
                ang = base
                prev = np.exp(1j * base)
                for v in sv:
                    ang += float(np.angle(v / prev))
                    prev = v
                out[i] = ang
            else:
                out[i] = base + jump
        return out if np.ndim(zeta) else float(out[0])

    def __call__(self, xi: float) -> float:
        """Phi(xi): total variation of arg(a1 a2) over (-inf, -xi]."""
        if xi < self.xi_floor:
            raise ConfigError(
                f"winding request xi = {xi} below the floor {self.xi_floor}")
        return float(self.continuous_phase(np.array([-xi]))[0])


def winding_profile(spec: SpectralData, xi: float, **kw) -> float:
    """Phi(xi) for a one-off query (builds a fresh master grid)."""
    return ArgWinding(spec, **kw)(xi)


def find_omegas(winding, n: int, *, xi_max=None, tol=1e-10) -> OmegaSet:
    """Solve Phi(omega_j) = (2(n-j)-1)*pi for j = 1..n-1.

    ``winding`` is a callable xi -> Phi(xi); crossings are bracketed on
    a geometric scan grid and polished with brentq.
    """
    if n <= 1:
        return OmegaSet(omegas=[])
    floor = getattr(winding, "xi_floor", 1e-3)
    if xi_max is None:
        xi_max = 10.0
        while winding(xi_max) > 0.5 * np.pi and xi_max < 1e4:
            xi_max *= 2.0
    grid = np.geomspace(max(1.5 * floor, 1e-3), xi_max, 400)
    phis = np.array([winding(x) for x in grid])
    omegas = []
    for j in range(1, n):
        target = (2 * (n - j) - 1) * np.pi
        f = phis - target
        idx = np.where(f[:-1] * f[1:] <= 0)[0]
        if idx.size == 0:
            raise AssumptionViolation(
                f"no crossing of the winding level {target / np.pi:.0f}*pi; "
                "assumption (c) fails")
        i = idx[0]
        omega = brentq(lambda x: winding(x) - target, grid[i], grid[i + 1],
                       xtol=tol)
        omegas.append(omega)
    return OmegaSet(omegas=sorted(omegas))


# ---------------------------------------------------------------------------
# assumptions (a)-(c)
# ---------------------------------------------------------------------------

def verify_assumptions(spec: SpectralData, zeros: ZeroSet, omegas: OmegaSet,
                       winding=None) -> AssumptionReport:
    """Check assumptions (a)-(c) and report violations without raising."""
    diags = []

    # (a): n >= 1, simple zeros, strict ordering, no zeros close to R
    zeros_ok = True
    if zeros.n == 0:
        zeros_ok = False
        diags.append("no background zeros found (n = 0): outside theorem scope")
    for z in zeros.p:
        if abs(spec.a1_derivative(z)) < 1e-8:
            zeros_ok = False
            diags.append(f"zero {z} is not simple (|a1'| < 1e-8)")
    re = [z.real for z in zeros.p]
    if any(re[i] - re[i + 1] <= 1e-8 for i in range(len(re) - 1)):
        zeros_ok = False
        diags.append("Re p_j ordering is not strict (margin 1e-8)")
    if spec.bg.A > 0:
        k_probe = np.concatenate([
            np.linspace(-2.0 * max(spec.bg.A, 1.0), -1e-2, 160),
            np.linspace(1e-2, 2.0 * max(spec.bg.A, 1.0), 160),
            # bifurcation candidates: real zeros appear exactly at +-A/2
            np.array([-0.5 * spec.bg.A, 0.5 * spec.bg.A])])
        a1_real, _, _ = spec.grid(k_probe.astype(complex))
        i_min = int(np.argmin(np.abs(a1_real)))
        if np.min(np.abs(a1_real)) < 1e-6:
            zeros_ok = False
            diags.append(
                f"a1 nearly vanishes on the real axis near k = "
                f"{k_probe[i_min]:.6g} (real zeros, e.g. at a bifurcation)")

    # (b): a2 nonvanishing in the closed lower half plane (sampled box)
    a2_ok = True
    if spec.bg.A > 0:
        scale = max(2.0 * spec.bg.A, 2.0)
        rr, ii = np.meshgrid(np.linspace(-3 * scale, 3 * scale, 21),
                             np.linspace(-2.0 * scale, 0.0, 9))
        box = (rr + 1j * ii).ravel()
        box = box[np.abs(box) > 1e-2]
        _, a2_vals, _ = spec.grid(box)
        if np.min(np.abs(np.asarray(a2_vals))) < 1e-6:
            a2_ok = False
            diags.append("a2 nearly vanishes in the sampled lower half plane")

    # (c): interleaving and winding bands
    inter_ok = True
    n = zeros.n
    if len(omegas.omegas) != max(n - 1, 0):
        inter_ok = False
        diags.append(f"expected {max(n - 1, 0)} omegas for n = {n}, "
                     f"got {len(omegas.omegas)}")
    else:
        for m in range(1, n):
            lo, hi = zeros.p_index(m + 1).real, zeros.p_index(m).real
            if not (lo < -omegas.omega_index(m) < hi):
                inter_ok = False
                diags.append(
                    f"interleaving fails: Re p_{m+1} < -omega_{m} < Re p_{m} "
                    f"violated for m = {m}")

    bands_ok = True
    if winding is not None and n >= 1 and inter_ok:
        for m in range(0, n):
            lo = omegas.omega_index(n - m - 1)
            hi = omegas.omega_index(n - m)
            if np.isinf(hi):
                hi = max(2.0 * lo, lo + 2.0, 2.0)
            xi_mid = 0.5 * (lo + hi) if lo > 0 else 0.5 * hi
            try:
                phi = winding(max(xi_mid, 2e-3))
            except Exception as exc:  # refinement failures count as violations
                bands_ok = False
                diags.append(f"winding evaluation failed at xi = {xi_mid}: {exc}")
                continue
            if not ((2 * m - 1) * np.pi < phi < (2 * m + 1) * np.pi):
                bands_ok = False
                diags.append(
                    f"winding {phi / np.pi:.3f}*pi at mid-band xi = {xi_mid:.4g} "
                    f"is outside (({2*m-1})pi, ({2*m+1})pi)")
    return AssumptionReport(zeros_ok=zeros_ok, a2_nonvanishing=a2_ok,
                            interleaving_ok=inter_ok, winding_bands_ok=bands_ok,
                            diagnostics=diags)


def pure_step_omegas(bg: BackgroundParams) -> OmegaSet:
    """Closed-form thresholds omega_j = j*pi/(2R) for the pure step."""
    n = zero_count_for(bg)
    return OmegaSet(omegas=[j * np.pi / (2.0 * bg.R) for j in range(1, n)])
