"""Estimator-style facade over the scattering -> spectrum -> phase pipeline.

``StepAsymptoticsModel.fit`` runs the direct problem once (spectral
data, zeros with norming constants, thresholds, assumption report) and
``predict`` evaluates the long-time formulas along rays, so the
pipeline composes with standard tooling (``get_params``/``set_params``,
``clone``).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import check_nonbifurcation
from .asymptotics import classify, kink_profile, predict
from .errors import AssumptionViolation
from .phase import PhaseEngine
from .scattering import (
    BackgroundParams,
    InitialProfile,
    SpectralData,
    norming_constant,
)
from .spectrum import (
    background_zero_set,
    find_omegas,
    verify_assumptions,
)

__all__ = ["StepAsymptoticsModel"]


class StepAsymptoticsModel(BaseEstimator):
    """Long-time ray asymptotics fitted to one step-like initial datum.

    Parameters
    ----------
    guard_fraction : float
        Relative width of the exclusion bands around sector boundaries.
    zero_box : tuple or None
        Optional (re_min, re_max, im_min, im_max) override for the zero
        search region.
    xi_floor : float
        Smallest direction magnitude served by the phase machinery.
    require_assumptions : bool
        When True (default), predict refuses to run unless the fitted
        assumption report is all-true.
    """

    def __init__(self, guard_fraction=0.05, zero_box=None, xi_floor=1e-3,
                 require_assumptions=True):
        self.guard_fraction = guard_fraction
        self.zero_box = zero_box
        self.xi_floor = xi_floor
        self.require_assumptions = require_assumptions

    # -- fitting ----------------------------------------------------------

    def fit(self, profile, y=None):
        """Run direct scattering and the spectral analysis.

        ``profile`` is an InitialProfile or BackgroundParams (treated as
        the exact step).
        """
        if isinstance(profile, BackgroundParams):
            profile = InitialProfile.pure_step(profile)
        if not isinstance(profile, InitialProfile):
            raise TypeError("fit expects an InitialProfile or BackgroundParams")
        check_nonbifurcation(profile.bg)
        self.profile_ = profile
        self.spectral_ = SpectralData.from_profile(profile)
        if profile.analytic_step:
            self.zeros_ = background_zero_set(self.spectral_, self.zero_box)
        else:
            self.zeros_ = background_zero_set(
                self.spectral_, self.zero_box,
                eta_from=lambda p: norming_constant(profile, p))
        self.engine_ = PhaseEngine(self.spectral_, xi_floor=self.xi_floor)
        self.omegas_ = find_omegas(self.engine_.winding, self.zeros_.n)
        self.report_ = verify_assumptions(
            self.spectral_, self.zeros_, self.omegas_,
            winding=self.engine_.winding)
        return self

    def _check_fitted(self):
        if not hasattr(self, "spectral_"):
            raise NotFittedError(
                "this StepAsymptoticsModel instance is not fitted yet")
        if self.require_assumptions and not self.report_.all_ok:
            raise AssumptionViolation(
                "assumption report has failures: "
                + "; ".join(self.report_.diagnostics))

    # -- inference ----------------------------------------------------------

    def classify(self, xi):
        self._check_fitted()
        return classify(float(xi), self.zeros_, self.omegas_,
                        self.guard_fraction)

    def predict_one(self, xi, t):
        self._check_fitted()
        return predict(float(xi), float(t), self.zeros_, self.omegas_,
                       self.engine_, self.spectral_, self.guard_fraction)

    def predict(self, xi, t):
        """Asymptotic q(4 xi t, t) for array-like xi and t (broadcast)."""
        self._check_fitted()
        xi_arr, t_arr = np.broadcast_arrays(np.asarray(xi, dtype=float),
                                            np.asarray(t, dtype=float))
        out = np.empty(xi_arr.shape, dtype=complex)
        for idx in np.ndindex(xi_arr.shape):
            out[idx] = self.predict_one(xi_arr[idx], t_arr[idx]).value()
        return out if out.ndim else complex(out)

    def kink(self, m, side):
        self._check_fitted()
        return kink_profile(m, side, self.zeros_, self.engine_, self.spectral_)
