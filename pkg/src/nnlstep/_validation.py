"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from .errors import BifurcationProximityError, ConfigError

#: relative guard around bifurcation values R = n*pi/A (in units of pi)
BIFURCATION_GUARD = 1e-6 * np.pi


def as_complex_array(x, name="x"):
    arr = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(arr.view(float))):
        raise ConfigError(f"{name} contains non-finite values")
    return arr


def as_float_array(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ConfigError(f"{name} contains non-finite values")
    return arr


def check_positive(value, name):
    if not np.isfinite(value) or value <= 0:
        raise ConfigError(f"{name} must be positive, got {value!r}")
    return float(value)


def check_background(bg, *, require_amplitude=False):
    """Validate background parameters (A, R).

    A = 0 is tolerated at the scattering level (trivial data); analyses
    that rely on the background-induced zeros must pass
    ``require_amplitude=True``.
    """
    if not np.isfinite(bg.A) or bg.A < 0:
        raise ConfigError(f"amplitude A must be >= 0, got {bg.A!r}")
    if not np.isfinite(bg.R) or bg.R <= 0:
        raise ConfigError(f"shift R must be positive, got {bg.R!r}")
    if require_amplitude and bg.A == 0:
        raise ConfigError("amplitude A must be strictly positive here")
    return bg


def check_nonbifurcation(bg):
    """Reject R within the guard band of a bifurcation value n*pi/A.

    The guard is |R*A/pi - round(R*A/pi)| < pi*1e-6, which also rejects
    A = 0 (where R*A/pi = 0 is itself a bifurcation value).
    """
    ratio = bg.R * bg.A / np.pi
    if abs(ratio - round(ratio)) < BIFURCATION_GUARD:
        raise BifurcationProximityError(
            f"R={bg.R} is within the guard band of a bifurcation value "
            f"n*pi/A (n={round(ratio)}); real zeros at +/-A/2 appear there"
        )
    return bg


def zero_count_for(bg) -> int:
    """Number n of left-half-plane zeros for the pure step: (n-1)pi/A < R < n pi/A."""
    check_nonbifurcation(bg)
    return int(np.ceil(bg.R * bg.A / np.pi))


def check_sorted_strict(values, name, *, margin=1e-8):
    values = as_float_array(values, name)
    if values.size > 1 and np.any(np.diff(values) <= margin):
        raise ConfigError(f"{name} must be strictly increasing (margin {margin})")
    return values
