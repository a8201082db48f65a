"""Shared test utilities: instance generators and brute-force oracles."""

from __future__ import annotations

from itertools import product

import numpy as np


def random_instance(rng, n, p, k, q_low=0.2, q_high=1.0):
    """Random data, MCAR-style mask and centers for identity checks."""
    X = rng.normal(scale=2.0, size=(n, p))
    q = rng.uniform(q_low, q_high, size=p)
    R = (rng.random((n, p)) < q).astype(float)
    M = rng.normal(scale=2.0, size=(k, p))
    return X, R, M


def enumerate_kmeans_loss(X, k):
    """Global optimum of the complete-data loss over all label vectors."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    best = np.inf
    for labels in product(range(k), repeat=n):
        a = np.asarray(labels)
        total = 0.0
        for l in range(k):
            members = a == l
            if members.any():
                mu = X[members].mean(axis=0)
                total += ((X[members] - mu) ** 2).sum()
        best = min(best, total / n)
    return best


def enumerate_kpod_loss(X, R, k):
    """Global optimum of the partial-distance loss over all label vectors.

    Centers are the exact per-cluster masked means; cells without observed
    data carry no loss term.
    """
    X = np.asarray(X, dtype=float)
    R = np.asarray(R, dtype=float)
    n = X.shape[0]
    XR = X * R
    best = np.inf
    for labels in product(range(k), repeat=n):
        a = np.asarray(labels)
        total = 0.0
        for l in range(k):
            members = a == l
            if not members.any():
                continue
            cnts = R[members].sum(axis=0)
            obs = cnts > 0
            mu = np.zeros(X.shape[1])
            mu[obs] = XR[members].sum(axis=0)[obs] / cnts[obs]
            diff = (X[members] - mu) ** 2 * R[members]
            total += diff[:, obs].sum()
        best = min(best, total / n)
    return best
