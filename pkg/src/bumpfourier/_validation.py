"""Input validation helpers shared by the public modules."""

import math
import numbers

import numpy as np


def check_finite_scalar(value, name):
    """Return ``value`` as a float, rejecting NaN, inf and non-numbers."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


def check_positive(value, name):
    value = check_finite_scalar(value, name)
    if value <= 0:
        raise ValueError(f"{name} must be > 0, got {value}")
    return value


def check_nonnegative(value, name):
    value = check_finite_scalar(value, name)
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value}")
    return value


def check_int(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def is_power_of_two(n):
    return n >= 1 and n & (n - 1) == 0


def check_power_of_two(value, name, minimum=1):
    value = check_int(value, name, minimum=minimum)
    if not is_power_of_two(value):
        raise ValueError(f"{name} must be a power of two, got {value}")
    return value


def check_odd_grid(value, name="grid_points"):
    value = check_int(value, name, minimum=3)
    if value % 2 == 0:
        raise ValueError(f"{name} must be odd (composite Simpson), got {value}")
    return value


def as_float_array(x, name="x"):
    """Convert ``x`` to a float ndarray and reject NaNs.

    Infinite values are allowed; windows are total functions and vanish there.
    """
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise ValueError(f"{name} contains NaN")
    return arr
