import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from nnlstep.errors import AssumptionViolation, TransitionZoneError
from nnlstep.model import StepAsymptoticsModel
from nnlstep.scattering import BackgroundParams, InitialProfile


@pytest.fixture(scope="module")
def fitted(bg12):
    return StepAsymptoticsModel().fit(bg12)


class TestEstimatorProtocol:
    def test_get_set_params_round_trip(self):
        model = StepAsymptoticsModel(guard_fraction=0.07)
        params = model.get_params()
        assert params["guard_fraction"] == 0.07
        model.set_params(guard_fraction=0.03)
        assert model.guard_fraction == 0.03

    def test_clone_keeps_params_drops_state(self, fitted):
        fresh = clone(fitted)
        assert fresh.get_params() == fitted.get_params()
        assert not hasattr(fresh, "spectral_")

    def test_not_fitted_raises(self):
        with pytest.raises(NotFittedError):
            StepAsymptoticsModel().predict(1.0, 20.0)

    def test_fit_rejects_wrong_type(self):
        with pytest.raises(TypeError):
            StepAsymptoticsModel().fit([1, 2, 3])


class TestFittedState:
    def test_fit_populates_pipeline(self, fitted, zeros12):
        assert fitted.zeros_.n == zeros12.n == 1
        assert np.allclose(fitted.zeros_.p, zeros12.p)
        assert fitted.omegas_.omegas == []
        assert fitted.report_.all_ok

    def test_predict_matches_module_ops(self, fitted, bg12):
        from nnlstep.asymptotics import predict as predict_op
        xi, t = 0.8, 25.0
        expected = predict_op(xi, t, fitted.zeros_, fitted.omegas_,
                              fitted.engine_, fitted.spectral_).value()
        got = fitted.predict(xi, t)
        assert abs(got - expected) < 1e-14

    def test_predict_broadcasts(self, fitted):
        out = fitted.predict([0.8, -0.8], 25.0)
        assert out.shape == (2,)
        assert np.all(np.isfinite(out.view(float)))

    def test_guard_band_propagates(self, fitted):
        xi_k = -fitted.zeros_.p[0].real
        with pytest.raises(TransitionZoneError):
            fitted.predict_one(xi_k, 20.0)

    def test_kink_profile_and_classify(self, fitted):
        sec = fitted.classify(1.0)
        assert sec.family == "plateau_right"
        prof = fitted.kink(0, "x_positive")
        assert np.isfinite(prof.value(2.0, 20.0).real)

    def test_smooth_profile_fit(self, profile_smooth):
        model = StepAsymptoticsModel().fit(profile_smooth)
        assert model.zeros_.n == 1
        # perturbed zero stays near the pure-step one
        from nnlstep.spectrum import pure_step_zeros
        p_ref = pure_step_zeros(profile_smooth.bg).p[0]
        assert abs(model.zeros_.p[0] - p_ref) < 0.2
        # eta computed from the profile Jost columns
        assert len(model.zeros_.eta) == 1
        val = model.predict(0.9, 20.0)
        assert np.isfinite(val.real)

    def test_bifurcation_rejected_at_fit(self):
        with pytest.raises(AssumptionViolation):
            StepAsymptoticsModel().fit(BackgroundParams(1.0, np.pi))
