"""k-POD clustering: k-means on incomplete data via partial distances.

The loss is the mean over rows of the minimal partial squared distance to
any center, i.e. unobserved coordinates are simply dropped from every
distance. ``kpod_fit`` minimizes it by block-coordinate descent
(nearest-center assignment under partial distances, then per-cluster
means of the observed entries). ``kpod_fit_imputed_form`` minimizes the
equivalent completed-matrix objective ||Y - UM||_F^2 subject to Y
agreeing with X on observed entries, keeping an explicit completed matrix
Y whose missing entries always equal the assigned center's coordinates;
with the same seed it reproduces kpod_fit's loss trajectory.

Conventions shared with the k-means module: restart seeding, tie-breaking
to the lowest index, termination rules, and empty-cluster repair. With an
all-ones mask, kpod_fit is field-identical to km_fit under the same seed.

Edge rules: rows with no observed entries contribute zero loss, receive
label 0 and are reported in the result; center cells whose cluster/column
has no observed data keep their previous value and cells never updated
from their initialization are reported as degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_center_matrix, as_data_matrix, as_mask_matrix, frozen
from .distances import masked_pairwise_sq_dists
from .io import split_nan
from .kmeans import FitOptions, _init_rows
from .missing import all_missing_rows


@dataclass(frozen=True)
class KpodFitResult:
    """Outcome of a k-POD fit.

    Beyond the k-means result fields, ``degenerate_cells`` lists
    (cluster, column) pairs never updated from their initial value and
    ``all_missing_rows`` lists rows without any observed entry.
    """

    centers: np.ndarray
    assignment: np.ndarray
    loss: float
    iterations: int
    restarts_run: int
    loss_trace: tuple[float, ...]
    repair_iterations: tuple[int, ...]
    converged_by: str
    degenerate_cells: tuple[tuple[int, int], ...]
    all_missing_rows: tuple[int, ...]


def _check_triple(X, R, M=None):
    X = as_data_matrix(X)
    R = as_mask_matrix(R, shape=X.shape)
    if M is None:
        return X, R
    return X, R, as_center_matrix(M, p=X.shape[1])


def kpod_loss(X, R, M) -> float:
    """Mean over rows of the minimal partial squared distance to a center."""
    X, R, M = _check_triple(X, R, M)
    return float(masked_pairwise_sq_dists(X, R, M).min(axis=1).mean())


def kpod_assign(X, R, M) -> np.ndarray:
    """Nearest-center labels under partial distances.

    Ties break to the lowest index; rows with nothing observed have all
    distances equal to zero and therefore get label 0.
    """
    X, R, M = _check_triple(X, R, M)
    return masked_pairwise_sq_dists(X, R, M).argmin(axis=1)


def kpod_update(X, R, labels, prev) -> np.ndarray:
    """Per-cluster, per-column means of the observed entries.

    A cell with no observed data in its cluster/column keeps the previous
    center value (the degenerate-cell rule).
    """
    X, R = _check_triple(X, R)
    prev = as_center_matrix(prev, p=X.shape[1])
    M, _ = _masked_update(X * R, R, np.asarray(labels), prev)
    return M


def _masked_update(XR, R, labels, prev):
    """Masked mean update; also reports which cells received data."""
    k = prev.shape[0]
    M = np.array(prev, copy=True)
    updated = np.zeros(M.shape, dtype=bool)
    for l in range(k):
        members = labels == l
        if members.any():
            sums = XR[members].sum(axis=0)
            cnts = R[members].sum(axis=0)
            obs = cnts > 0
            M[l, obs] = sums[obs] / cnts[obs]
            updated[l] = obs
    return M, updated


def _init_centers(X, R, rows, col_means):
    """Initial centers: data rows with unobserved entries filled by
    observed column means."""
    return np.where(R[rows] > 0, X[rows], col_means)


def _observed_col_means(X, R):
    cnts = R.sum(axis=0)
    sums = (X * R).sum(axis=0)
    return np.where(cnts > 0, sums / np.maximum(cnts, 1.0), 0.0)


def _repair_fill(X, R, target, prev_row):
    """Repair rule: take the target row's observed coordinates, keep the
    previous center value elsewhere (placeholders must never leak)."""
    return np.where(R[target] > 0, X[target], prev_row)


def _kpod_lloyd(X, R, XR, M, max_iters, rel_tol):
    n, p = X.shape
    k = M.shape[0]
    tiny = np.finfo(np.float64).tiny
    D = masked_pairwise_sq_dists(X, R, M)
    a = D.argmin(axis=1)
    trace = [float(D.min(axis=1).mean())]
    repairs: list[int] = []
    ever_updated = np.zeros((k, p), dtype=bool)
    converged = "max_iters"
    for it in range(1, max_iters + 1):
        M, updated = _masked_update(XR, R, a, M)
        ever_updated |= updated
        counts = np.bincount(a, minlength=k)
        if (counts == 0).any():
            point_loss = masked_pairwise_sq_dists(X, R, M).min(axis=1)
            for l in np.nonzero(counts == 0)[0]:
                target = int(point_loss.argmax())
                M[l] = _repair_fill(X, R, target, M[l])
                ever_updated[l] |= R[target] > 0
                point_loss[target] = -np.inf
            D = masked_pairwise_sq_dists(X, R, M)
            a = D.argmin(axis=1)
            trace.append(float(D.min(axis=1).mean()))
            repairs.append(it)
            continue
        D = masked_pairwise_sq_dists(X, R, M)
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
    return M, a, trace, repairs, converged, ever_updated


def _imputed_pairwise(X, Rb, M):
    """Euclidean distances after imputing each row with the candidate
    center: bit-identical to the partial distances."""
    n, k = X.shape[0], M.shape[0]
    D = np.empty((n, k), dtype=np.float64)
    for l in range(k):
        d = np.where(Rb, X, M[l]) - M[l]
        np.multiply(d, d, out=d)
        np.sum(d, axis=1, out=D[:, l])
    return D


def _imputed_lloyd(X, R, Rb, M, max_iters, rel_tol):
    """One restart of the completed-matrix formulation.

    Maintains Y with missing entries equal to the assigned center's
    coordinates. The assignment step minimizes the completed objective
    jointly over (labels, free entries of Y): each candidate distance is a
    plain Euclidean distance after imputing the row with that candidate
    center. The center step solves the joint (centers, free entries)
    minimization for fixed labels, whose closed form averages the
    constrained (observed) part of Y per cluster. Both steps therefore
    coincide with the partial-distance steps and the loss trajectory
    matches kpod_fit's exactly.
    """
    n, p = X.shape
    k = M.shape[0]
    tiny = np.finfo(np.float64).tiny
    D = _imputed_pairwise(X, Rb, M)
    a = D.argmin(axis=1)
    trace = [float(D.min(axis=1).mean())]
    Y = np.where(Rb, X, M[a])
    repairs: list[int] = []
    ever_updated = np.zeros((k, p), dtype=bool)
    converged = "max_iters"
    for it in range(1, max_iters + 1):
        M, updated = _masked_update(Y * R, R, a, M)
        ever_updated |= updated
        counts = np.bincount(a, minlength=k)
        if (counts == 0).any():
            point_loss = _imputed_pairwise(X, Rb, M).min(axis=1)
            for l in np.nonzero(counts == 0)[0]:
                target = int(point_loss.argmax())
                M[l] = _repair_fill(X, R, target, M[l])
                ever_updated[l] |= Rb[target]
                point_loss[target] = -np.inf
            D = _imputed_pairwise(X, Rb, M)
            a = D.argmin(axis=1)
            trace.append(float(D.min(axis=1).mean()))
            repairs.append(it)
            Y = np.where(Rb, X, M[a])
            continue
        D = _imputed_pairwise(X, Rb, M)
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
        Y = np.where(Rb, X, M[a])
    return M, a, trace, repairs, converged, ever_updated


def _run_restarts(X, R, opts: FitOptions, restart_fn) -> KpodFitResult:
    n = X.shape[0]
    if opts.k > n:
        raise ValueError(f"k={opts.k} exceeds number of rows n={n}")
    col_means = _observed_col_means(X, R)
    best = None
    for ri in range(opts.restarts):
        rows = _init_rows(n, opts.k, opts.seed, ri)
        M0 = _init_centers(X, R, rows, col_means)
        out = restart_fn(M0)
        if best is None or out[2][-1] < best[2][-1]:
            best = out
    M, a, trace, repairs, converged, ever_updated = best
    degenerate = tuple(
        (int(l), int(j)) for l, j in np.argwhere(~ever_updated)
    )
    return KpodFitResult(
        centers=frozen(M),
        assignment=frozen(a),
        loss=trace[-1],
        iterations=len(trace) - 1,
        restarts_run=opts.restarts,
        loss_trace=tuple(trace),
        repair_iterations=tuple(repairs),
        converged_by=converged,
        degenerate_cells=degenerate,
        all_missing_rows=tuple(int(i) for i in all_missing_rows(R)),
    )


def kpod_fit(X, R, opts: FitOptions) -> KpodFitResult:
    """Best-of-restarts block-coordinate descent on the partial-distance loss."""
    X, R = _check_triple(X, R)
    XR = X * R
    return _run_restarts(
        X, R, opts,
        lambda M0: _kpod_lloyd(X, R, XR, M0, opts.max_iters, opts.rel_tol),
    )


def kpod_fit_imputed_form(X, R, opts: FitOptions) -> KpodFitResult:
    """Equivalent completed-matrix formulation (explicit Y bookkeeping)."""
    X, R = _check_triple(X, R)
    Rb = R > 0
    return _run_restarts(
        X, R, opts,
        lambda M0: _imputed_lloyd(X, R, Rb, M0, opts.max_iters, opts.rel_tol),
    )


def impute_completion(X, R, centers, assignment) -> np.ndarray:
    """The completed matrix induced by a fit: observed entries from X,
    unobserved entries from the assigned center."""
    X, R = _check_triple(X, R)
    centers = as_center_matrix(centers, p=X.shape[1])
    assignment = np.asarray(assignment)
    return np.where(R > 0, X, centers[assignment])


class KPod(BaseEstimator, ClusterMixin):
    """scikit-learn style front end for :func:`kpod_fit`.

    Missing entries may be passed either as NaNs in X or as an explicit
    0/1 response mask.
    """

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

    @staticmethod
    def _coerce(X, mask):
        if mask is None:
            return split_nan(X)
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        R = as_mask_matrix(mask, shape=X.shape)
        X = np.where(R > 0, X, 0.0)
        if not np.all(np.isfinite(X)):
            raise ValueError("observed entries must be finite")
        return X, R

    def fit(self, X, y=None, mask=None):
        X, R = self._coerce(X, mask)
        result = kpod_fit(X, R, self._options())
        self.result_ = result
        self.cluster_centers_ = result.centers
        self.labels_ = result.assignment
        self.inertia_ = result.loss
        self.n_iter_ = result.iterations
        self.degenerate_cells_ = result.degenerate_cells
        self.all_missing_rows_ = result.all_missing_rows
        self.n_features_in_ = result.centers.shape[1]
        return self

    def predict(self, X, mask=None):
        check_is_fitted(self, "cluster_centers_")
        X, R = self._coerce(X, mask)
        return kpod_assign(X, R, self.cluster_centers_)

    def fit_predict(self, X, y=None, mask=None):
        return self.fit(X, mask=mask).labels_
