import numpy as np
import pytest
from sklearn.base import clone

from kpodlab import KMeans, KPod, km_fit, kpod_fit, FitOptions


@pytest.fixture()
def blobs():
    rng = np.random.default_rng(1)
    X = np.vstack([rng.normal(size=(40, 2)), rng.normal(size=(40, 2)) + [8.0, 0.0]])
    R = (rng.random(X.shape) < 0.85).astype(float)
    return X, R


def test_kmeans_estimator_wraps_functional_fit(blobs):
    X, _ = blobs
    est = KMeans(n_clusters=2, restarts=5, random_state=3).fit(X)
    res = km_fit(X, FitOptions(k=2, restarts=5, seed=3))
    assert np.array_equal(est.cluster_centers_, res.centers)
    assert np.array_equal(est.labels_, res.assignment)
    assert est.inertia_ == res.loss
    assert est.n_iter_ == res.iterations
    assert np.array_equal(est.predict(X), est.labels_)
    assert est.transform(X).shape == (80, 2)
    assert est.score(X) == -res.loss


def test_kmeans_get_set_params_and_clone(blobs):
    X, _ = blobs
    est = KMeans(n_clusters=2, restarts=4, random_state=9)
    params = est.get_params()
    assert params["n_clusters"] == 2 and params["restarts"] == 4
    est2 = clone(est).set_params(restarts=6)
    assert est2.get_params()["restarts"] == 6
    a = KMeans(n_clusters=2, restarts=4, random_state=9).fit(X)
    b = clone(est).fit(X)
    assert np.array_equal(a.cluster_centers_, b.cluster_centers_)


def test_kpod_estimator_nan_and_mask_paths_agree(blobs):
    X, R = blobs
    nan_coded = np.where(R > 0, X, np.nan)
    a = KPod(n_clusters=2, restarts=5, random_state=2).fit(nan_coded)
    b = KPod(n_clusters=2, restarts=5, random_state=2).fit(
        np.where(R > 0, X, 0.0), mask=R)
    assert np.array_equal(a.cluster_centers_, b.cluster_centers_)
    assert np.array_equal(a.labels_, b.labels_)
    res = kpod_fit(np.where(R > 0, X, 0.0), R, FitOptions(k=2, restarts=5, seed=2))
    assert np.array_equal(a.cluster_centers_, res.centers)
    assert a.degenerate_cells_ == res.degenerate_cells
    assert a.all_missing_rows_ == res.all_missing_rows


def test_kpod_predict_and_fit_predict(blobs):
    X, R = blobs
    nan_coded = np.where(R > 0, X, np.nan)
    est = KPod(n_clusters=2, restarts=5, random_state=2)
    labels = est.fit_predict(nan_coded)
    assert np.array_equal(labels, est.labels_)
    assert np.array_equal(est.predict(nan_coded), est.labels_)


def test_kpod_rejects_nan_at_observed_positions():
    X = np.array([[np.nan, 1.0], [2.0, 3.0]])
    mask = np.ones((2, 2))
    with pytest.raises(ValueError):
        KPod(n_clusters=1).fit(X, mask=mask)


def test_unfitted_predict_raises(blobs):
    X, _ = blobs
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        KMeans(n_clusters=2).predict(X)
    with pytest.raises(NotFittedError):
        KPod(n_clusters=2).predict(X)
