"""Multi-restart Lloyd k-means on complete data matrices.

Each restart initializes centers at k distinct data rows sampled without
replacement from a restart-specific child seed, then alternates
nearest-center assignment (ties to the lowest cluster index) and mean
updates until the assignment stops changing, the relative loss decrease
falls below ``rel_tol``, or ``max_iters`` is reached. The best restart by
final loss wins; earlier restarts win ties.

Empty-cluster repair: when an update leaves a cluster without members,
its center moves to the data row with the largest current point loss and
the assignment is redone once. Such iterations may increase the loss and
are flagged in the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_center_matrix, as_data_matrix, frozen
from .distances import pairwise_sq_dists
from .rng import rng_for


@dataclass(frozen=True)
class FitOptions:
    """Options shared by all fits.

    ``seed`` is the parent seed; restart i draws from the child stream
    ("restart", i), so results are independent of execution order.
    """

    k: int
    restarts: int = 30
    max_iters: int = 200
    rel_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.rel_tol < 0:
            raise ValueError("rel_tol must be >= 0")


@dataclass(frozen=True)
class FitResult:
    """Outcome of a multi-restart fit.

    ``loss_trace`` holds the per-iteration losses of the winning restart
    (entry 0 is the post-initialization loss); ``repair_iterations`` flags
    the trace entries produced by empty-cluster repair, which are exempt
    from the monotone-descent guarantee.
    """

    centers: np.ndarray
    assignment: np.ndarray
    loss: float
    iterations: int
    restarts_run: int
    loss_trace: tuple[float, ...]
    repair_iterations: tuple[int, ...]
    converged_by: str


def km_loss(X, M) -> float:
    """Mean over rows of the squared distance to the nearest center."""
    X = as_data_matrix(X)
    M = as_center_matrix(M, p=X.shape[1])
    return float(pairwise_sq_dists(X, M).min(axis=1).mean())


def km_assign(X, M) -> np.ndarray:
    """Nearest-center labels; ties break to the lowest center index."""
    X = as_data_matrix(X)
    M = as_center_matrix(M, p=X.shape[1])
    return pairwise_sq_dists(X, M).argmin(axis=1)


def km_update(X, labels, k: int, prev) -> np.ndarray:
    """Per-cluster means; clusters without members keep their previous row."""
    X = as_data_matrix(X)
    labels = np.asarray(labels)
    M = as_center_matrix(prev, p=X.shape[1])
    if M.shape[0] != k:
        raise ValueError(f"prev has {M.shape[0]} rows, expected k={k}")
    return _update_means(X, labels, k, M)


def _update_means(X: np.ndarray, labels: np.ndarray, k: int, prev: np.ndarray) -> np.ndarray:
    M = np.array(prev, copy=True)
    for l in range(k):
        members = labels == l
        cnt = int(members.sum())
        if cnt:
            M[l] = X[members].sum(axis=0) / float(cnt)
    return M


def _init_rows(n: int, k: int, seed: int, restart: int) -> np.ndarray:
    """Indices of the k distinct data rows seeding one restart."""
    rng = rng_for(seed, "restart", restart)
    return rng.choice(n, size=k, replace=False)


def _lloyd(X: np.ndarray, M: np.ndarray, max_iters: int, rel_tol: float):
    n, _ = X.shape
    k = M.shape[0]
    tiny = np.finfo(np.float64).tiny
    D = pairwise_sq_dists(X, M)
    a = D.argmin(axis=1)
    trace = [float(D.min(axis=1).mean())]
    repairs: list[int] = []
    converged = "max_iters"
    for it in range(1, max_iters + 1):
        M = _update_means(X, a, k, M)
        counts = np.bincount(a, minlength=k)
        if (counts == 0).any():
            point_loss = pairwise_sq_dists(X, M).min(axis=1)
            for l in np.nonzero(counts == 0)[0]:
                target = int(point_loss.argmax())
                M[l] = X[target]
                point_loss[target] = -np.inf
            D = pairwise_sq_dists(X, M)
            a = D.argmin(axis=1)
            trace.append(float(D.min(axis=1).mean()))
            repairs.append(it)
            continue
        D = pairwise_sq_dists(X, M)
        a_new = D.argmin(axis=1)
        loss_new = float(D.min(axis=1).mean())
        prev = trace[-1]
        trace.append(loss_new)
        if np.array_equal(a_new, a):
            a = a_new
            converged = "assignment"
            break
        if prev - loss_new < rel_tol * max(prev, tiny):
            a = a_new
            converged = "tol"
            break
        a = a_new
    return M, a, trace, repairs, converged


def km_fit(X, opts: FitOptions) -> FitResult:
    """Best-of-restarts Lloyd fit.

    Raises
    ------
    ValueError
        If ``opts.k`` exceeds the number of rows.
    """
    X = as_data_matrix(X)
    n = X.shape[0]
    if opts.k > n:
        raise ValueError(f"k={opts.k} exceeds number of rows n={n}")
    best = None
    for ri in range(opts.restarts):
        M0 = X[_init_rows(n, opts.k, opts.seed, ri)].copy()
        M, a, trace, repairs, converged = _lloyd(X, M0, opts.max_iters, opts.rel_tol)
        if best is None or trace[-1] < best[2][-1]:
            best = (M, a, trace, repairs, converged)
    M, a, trace, repairs, converged = best
    return FitResult(
        centers=frozen(M),
        assignment=frozen(a),
        loss=trace[-1],
        iterations=len(trace) - 1,
        restarts_run=opts.restarts,
        loss_trace=tuple(trace),
        repair_iterations=tuple(repairs),
        converged_by=converged,
    )


class KMeans(BaseEstimator, ClusterMixin):
    """scikit-learn style front end for :func:`km_fit`."""

    def __init__(self, n_clusters=3, restarts=30, max_iters=200, rel_tol=1e-8,
                 random_state=0):
        self.n_clusters = n_clusters
        self.restarts = restarts
        self.max_iters = max_iters
        self.rel_tol = rel_tol
        self.random_state = random_state

    def _options(self) -> FitOptions:
        return FitOptions(k=self.n_clusters, restarts=self.restarts,
                          max_iters=self.max_iters, rel_tol=self.rel_tol,
                          seed=self.random_state)

    def fit(self, X, y=None):
        result = km_fit(X, self._options())
        self.result_ = result
        self.cluster_centers_ = result.centers
        self.labels_ = result.assignment
        self.inertia_ = result.loss
        self.n_iter_ = result.iterations
        self.n_features_in_ = result.centers.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        return km_assign(X, self.cluster_centers_)

    def transform(self, X):
        check_is_fitted(self, "cluster_centers_")
        X = as_data_matrix(X)
        return pairwise_sq_dists(X, as_center_matrix(self.cluster_centers_, p=X.shape[1]))

    def score(self, X, y=None):
        check_is_fitted(self, "cluster_centers_")
        return -km_loss(X, self.cluster_centers_)
