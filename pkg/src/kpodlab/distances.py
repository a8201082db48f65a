"""Squared-distance kernels, complete and partial.

The partial (masked) kernel sums squared coordinate differences only
over observed coordinates: entries with a zero response indicator
contribute nothing regardless of the placeholder value stored there.

Both pairwise kernels iterate over centers with identical elementwise
operations, so with an all-ones mask the partial kernel produces
bit-identical distances to the complete one.
"""

from __future__ import annotations

import numpy as np

from ._validation import DimensionError, as_vector


def masked_sq_dist(x, r, mu) -> float:
    """Partial squared distance sum_j r_j * (x_j - mu_j)^2.

    Parameters
    ----------
    x, mu : length-p vectors
    r : length-p vector of 0/1 response indicators

    Returns
    -------
    float
        Nonnegative partial squared distance.
    """
    x = as_vector(x, name="x")
    r = as_vector(r, length=x.shape[0], name="r")
    mu = as_vector(mu, length=x.shape[0], name="mu")
    if ((r != 0.0) & (r != 1.0)).any():
        raise ValueError("r must contain only 0/1 entries")
    d = x - mu
    return float((d * d * r).sum())


def pairwise_sq_dists(X: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances from every row of X to every row of M."""
    if X.shape[1] != M.shape[1]:
        raise DimensionError(f"X has {X.shape[1]} columns, centers have {M.shape[1]}")
    n, k = X.shape[0], M.shape[0]
    D = np.empty((n, k), dtype=np.float64)
    work = np.empty_like(X)
    for l in range(k):
        np.subtract(X, M[l], out=work)
        np.multiply(work, work, out=work)
        np.sum(work, axis=1, out=D[:, l])
    return D


def masked_pairwise_sq_dists(X: np.ndarray, R: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Partial squared distances from every row of (X, R) to every row of M."""
    if X.shape != R.shape:
        raise DimensionError(f"X has shape {X.shape}, mask has shape {R.shape}")
    if X.shape[1] != M.shape[1]:
        raise DimensionError(f"X has {X.shape[1]} columns, centers have {M.shape[1]}")
    n, k = X.shape[0], M.shape[0]
    D = np.empty((n, k), dtype=np.float64)
    work = np.empty_like(X)
    for l in range(k):
        np.subtract(X, M[l], out=work)
        np.multiply(work, work, out=work)
        np.multiply(work, R, out=work)
        np.sum(work, axis=1, out=D[:, l])
    return D
