"""Input validation helpers shared by the functional API and the estimators."""

import numpy as np

from .exceptions import DimensionError, InputError


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex128 array.

    A copy is made only when the dtype or layout requires it.  Inputs are
    never modified in place by this package, so callers may pass views.
    """
    try:
        arr = np.asarray(a, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: cannot convert to a complex matrix ({exc})") from None
    if arr.ndim != 2:
        raise DimensionError(f"{name}: expected a 2-D array, got {arr.ndim}-D")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"{name}: empty matrix of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: contains NaN or infinite entries")
    return arr


def check_square(a, name="matrix"):
    arr = as_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name}: expected a square matrix, got shape {arr.shape}")
    return arr


def check_pair(a, b, names=("a", "b")):
    """Validate two square matrices of the same order."""
    a = check_square(a, names[0])
    b = check_square(b, names[1])
    if a.shape != b.shape:
        raise DimensionError(
            f"{names[0]} and {names[1]} have different orders: {a.shape[0]} vs {b.shape[0]}"
        )
    return a, b
