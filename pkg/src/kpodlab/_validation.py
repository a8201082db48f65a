"""Input validation helpers shared by all public entry points."""

from __future__ import annotations

import numpy as np


class DimensionError(ValueError):
    """Shapes of paired inputs do not agree."""


def as_data_matrix(X, name: str = "X") -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={X.ndim}")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise DimensionError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite entries")
    return X


def as_mask_matrix(R, shape: tuple[int, int] | None = None, name: str = "R") -> np.ndarray:
    R = np.asarray(R, dtype=np.float64)
    if R.ndim == 1:
        R = R.reshape(1, -1)
    if R.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={R.ndim}")
    if shape is not None and R.shape != tuple(shape):
        raise DimensionError(f"{name} has shape {R.shape}, expected {tuple(shape)}")
    bad = (R != 0.0) & (R != 1.0)
    if bad.any():
        raise ValueError(f"{name} must contain only 0/1 entries")
    return R


def as_center_matrix(M, p: int | None = None, name: str = "M") -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2 or M.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix")
    if p is not None and M.shape[1] != p:
        raise DimensionError(f"{name} has {M.shape[1]} columns, expected {p}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def as_vector(v, length: int | None = None, name: str = "v") -> np.ndarray:
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if length is not None and v.shape[0] != length:
        raise DimensionError(f"{name} has length {v.shape[0]}, expected {length}")
    return v


def frozen(a: np.ndarray) -> np.ndarray:
    """Return ``a`` marked read-only (results are immutable by contract)."""
    a.setflags(write=False)
    return a
