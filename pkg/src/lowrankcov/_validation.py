"""Input validation helpers shared by the functional and estimator APIs."""

from __future__ import annotations

import numpy as np

from .errors import ConfigError


def check_coeff_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce ``X`` to a finite, float64, 2-d (n, level) array."""
    if hasattr(X, "coeffs"):
        X = X.coeffs
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"{name} must be a 2-d (n_samples, level) array, got ndim={X.ndim}")
    if X.shape[0] < 1:
        raise ValueError(f"{name} must contain at least one sample")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite entries")
    return X


def check_vector(v, name: str = "v") -> np.ndarray:
    v = np.asarray(v, dtype=np.float64).ravel()
    if v.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def check_level(level: int, l_max: int, name: str = "level") -> int:
    level = int(level)
    if not 1 <= level <= l_max:
        raise ValueError(f"{name}={level} out of range [1, {l_max}]")
    return level


def check_positive(value, name: str):
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return value


def check_nonnegative(value, name: str):
    if not value >= 0:
        raise ValueError(f"{name} must be nonnegative, got {value!r}")
    return value


def config_check(condition: bool, field: str, message: str) -> None:
    """Raise :class:`ConfigError` with a field path when ``condition`` fails."""
    if not condition:
        raise ConfigError(f"{field}: {message}")


def readonly(a: np.ndarray) -> np.ndarray:
    """Return a C-contiguous float64 copy with the writeable flag cleared."""
    out = np.array(a, dtype=np.float64, order="C", copy=True)
    out.flags.writeable = False
    return out
