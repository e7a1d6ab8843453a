"""Input checks shared by the estimator and the command line."""
from __future__ import annotations

import numpy as np

from .fischer import FischerSpace


def check_third_table(third) -> np.ndarray:
    """Validate a square integer third-point table (-1 marks commuting pairs)."""
    arr = np.asarray(third)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square 2-d table, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError("third-point table must have an integer dtype")
    n = arr.shape[0]
    if arr.size and (arr.min() < -1 or arr.max() >= n):
        raise ValueError("entries must lie in -1..n-1")
    return arr


def check_space(X) -> FischerSpace:
    """Accept a FischerSpace or a third-point table and return a FischerSpace."""
    if isinstance(X, FischerSpace):
        return X
    return FischerSpace(check_third_table(X))


def check_elements(X, n: int) -> np.ndarray:
    """Rows of 0/1 values of length ``n``, as uint8."""
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise ValueError(f"expected rows of length {n}, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("algebra elements must be 0/1 vectors")
    return arr.astype(np.uint8)
