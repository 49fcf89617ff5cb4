import numpy as np
import pytest

from nnlstep.scattering import (
    BackgroundParams,
    InitialProfile,
    SpectralData,
    pure_step_norming,
)
from nnlstep.phase import PhaseEngine
from nnlstep.spectrum import pure_step_omegas, pure_step_zeros


@pytest.fixture(scope="session")
def bg12():
    return BackgroundParams(1.0, 2.0)


@pytest.fixture(scope="session")
def spec12(bg12):
    return SpectralData.from_pure_step(bg12)


@pytest.fixture(scope="session")
def zeros12(bg12):
    zs = pure_step_zeros(bg12)
    zs.eta = [pure_step_norming(bg12, p) for p in zs.p]
    return zs


@pytest.fixture(scope="session")
def omegas12(bg12):
    return pure_step_omegas(bg12)


@pytest.fixture(scope="session")
def engine12(spec12):
    return PhaseEngine(spec12)


@pytest.fixture(scope="session")
def bg_n3():
    # three background zeros: 2 pi < R A < 3 pi
    return BackgroundParams(1.0, 7.0)


@pytest.fixture(scope="session")
def spec_n3(bg_n3):
    return SpectralData.from_pure_step(bg_n3)


def smooth_step_profile(bg, half_width=6.0, dx=0.02, bump=0.0):
    """C^2 compactly supported step-like datum: quintic ramp plus an
    optional complex bump, exactly 0 / A outside the grid walls."""
    x = np.arange(-half_width, half_width + 0.5 * dx, dx)

    def smooth01(u):
        u = np.clip(u, 0.0, 1.0)
        return u**3 * (10.0 - 15.0 * u + 6.0 * u**2)

    w = 0.8
    q = bg.A * smooth01((x - bg.R + w) / (2.0 * w)).astype(complex)
    if bump:
        u = np.clip((x - 0.5) / 1.2, -1.0, 1.0)
        q += bump * (1.0 - u**2) ** 3
    return InitialProfile.from_samples(x, q, bg)


@pytest.fixture(scope="session")
def profile_smooth(bg12):
    return smooth_step_profile(bg12, bump=0.15 + 0.1j)
