"""Headerless CSV serialization for matrices and masks.

Rows are observations; floats are written with ``repr`` so that a
load/save round trip is exact and output bytes are reproducible.
"""

from __future__ import annotations

import os

import numpy as np

from ._validation import DimensionError, as_mask_matrix


def load_matrix_csv(path, allow_nan: bool = False) -> np.ndarray:
    try:
        X = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as exc:
        raise ValueError(f"{path}: not a numeric headerless CSV ({exc})") from exc
    if X.size == 0:
        raise ValueError(f"{path}: empty matrix")
    if not allow_nan and not np.all(np.isfinite(X)):
        raise ValueError(f"{path}: contains non-finite entries")
    return X


def load_mask_csv(path, shape: tuple[int, int] | None = None) -> np.ndarray:
    R = load_matrix_csv(path)
    try:
        return as_mask_matrix(R, shape=shape, name=str(path))
    except DimensionError:
        raise
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def save_matrix_csv(path, A) -> None:
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    with open(path, "w", newline="\n") as fh:
        for row in A:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")


def save_mask_csv(path, R) -> None:
    R = as_mask_matrix(R)
    with open(path, "w", newline="\n") as fh:
        for row in R:
            fh.write(",".join(str(int(v)) for v in row))
            fh.write("\n")


def split_nan(X) -> tuple[np.ndarray, np.ndarray]:
    """Split a NaN-coded matrix into (zero-filled data, response mask)."""
    X = np.asarray(X, dtype=np.float64)
    R = np.isfinite(X).astype(np.float64)
    return np.where(R > 0, X, 0.0), R


def atomic_write(path, write_fn) -> None:
    """Write via a temp file + rename so readers never see partial files."""
    tmp = f"{path}.tmp.{os.getpid()}"
    write_fn(tmp)
    os.replace(tmp, path)
