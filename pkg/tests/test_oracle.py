import numpy as np

from kpodlab import (
    FitOptions,
    canonicalize_centers,
    estimate_reference,
    mse_centers,
    preset,
    sample_gmm,
)
from kpodlab.io import save_matrix_csv
from kpodlab.rng import derive_seed


def test_canonicalize_sorts_rows_lexicographically():
    M = np.array([[2.0, 0.0], [0.0, 5.0], [0.0, 1.0]])
    out = canonicalize_centers(M)
    assert np.array_equal(out, [[0.0, 1.0], [0.0, 5.0], [2.0, 0.0]])


def test_k1_reference_is_sample_mean():
    spec = preset("s1").gmm
    opts = FitOptions(k=1, restarts=3, seed=5)
    M = estimate_reference(spec, 1, 20_000, opts)
    X, _ = sample_gmm(spec, 20_000, derive_seed(5, "reference-sample"))
    assert np.allclose(M[0], X.mean(axis=0), atol=1e-10)


def test_reference_close_to_true_means(oracle_cache):
    spec = preset("s1").gmm
    opts = FitOptions(k=3, restarts=10, seed=0)
    M = estimate_reference(spec, 3, 100_000, opts, cache_dir=oracle_cache)
    for mu in spec.means:
        assert np.min(np.linalg.norm(M - mu, axis=1)) < 0.15


def test_reference_stable_across_seeds(oracle_cache):
    spec = preset("s1").gmm
    a = estimate_reference(spec, 3, 100_000, FitOptions(k=3, restarts=10, seed=0),
                           cache_dir=oracle_cache)
    b = estimate_reference(spec, 3, 100_000, FitOptions(k=3, restarts=10, seed=123),
                           cache_dir=oracle_cache)
    assert mse_centers(a, b) < 0.01


def test_cache_roundtrip_and_reuse(tmp_path):
    spec = preset("s1").gmm
    opts = FitOptions(k=2, restarts=2, seed=3)
    first = estimate_reference(spec, 2, 2_000, opts, cache_dir=tmp_path)
    files = list(tmp_path.glob("reference-*.csv"))
    assert len(files) == 1
    # rows are canonicalized before caching
    assert np.array_equal(first, canonicalize_centers(first))
    # the second call must read the cache: plant a sentinel and observe it
    sentinel = np.array([[1.0, 2.0], [3.0, 4.0]])
    save_matrix_csv(files[0], sentinel)
    again = estimate_reference(spec, 2, 2_000, opts, cache_dir=tmp_path)
    assert np.array_equal(again, sentinel)
    # different options miss the cache
    other = estimate_reference(spec, 2, 2_000, FitOptions(k=2, restarts=3, seed=3),
                               cache_dir=tmp_path)
    assert not np.array_equal(other, sentinel)
