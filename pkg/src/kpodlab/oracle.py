"""Reference centers: large-sample k-means as the stand-in for the
population-optimal cluster centers."""

from __future__ import annotations

import dataclasses
import hashlib
import os

import numpy as np

from .io import atomic_write, load_matrix_csv, save_matrix_csv
from .kmeans import FitOptions, km_fit
from .rng import derive_seed
from .synthetic import GmmSpec, sample_gmm


def canonicalize_centers(M: np.ndarray) -> np.ndarray:
    """Rows sorted lexicographically, so all consumers agree on order."""
    M = np.asarray(M, dtype=np.float64)
    order = np.lexsort(M.T[::-1])
    return M[order]


def _cache_key(spec: GmmSpec, k: int, n_large: int, opts: FitOptions) -> str:
    h = hashlib.sha256()
    h.update(spec.stable_hash().encode())
    h.update(
        f"|k={k}|n={n_large}|seed={opts.seed}|restarts={opts.restarts}"
        f"|max_iters={opts.max_iters}|rel_tol={opts.rel_tol!r}".encode()
    )
    return h.hexdigest()[:20]


def estimate_reference(
    spec: GmmSpec,
    k: int,
    n_large: int,
    opts: FitOptions,
    cache_dir: str | os.PathLike | None = None,
) -> np.ndarray:
    """Fit k-means to a fresh sample of size ``n_large`` and return the
    lexicographically sorted centers.

    Results are cached as CSV files keyed by the mixture, k, sample size
    and fit options when ``cache_dir`` is given. n_large around 1e5 and at
    least 10 restarts are recommended for a stable reference.
    """
    opts = dataclasses.replace(opts, k=int(k))
    path = None
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"reference-{_cache_key(spec, k, n_large, opts)}.csv")
        if os.path.exists(path):
            M = load_matrix_csv(path)
            if M.shape == (k, spec.p):
                return M
    X, _ = sample_gmm(spec, n_large, derive_seed(opts.seed, "reference-sample"))
    M = canonicalize_centers(km_fit(X, opts).centers)
    if path is not None:
        atomic_write(path, lambda tmp: save_matrix_csv(tmp, M))
    return M
