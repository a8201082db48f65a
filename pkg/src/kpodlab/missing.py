"""MCAR mask generation, complete-case extraction, pattern grouping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_data_matrix, as_mask_matrix
from .rng import rng_for


@dataclass(frozen=True)
class McarSpec:
    """Per-column observation probabilities q_j, each in (0, 1].

    Column j of a generated mask is an independent Bernoulli(q_j) sample,
    independent of any data (missing completely at random). q_j > 0 for
    every column guarantees complete cases occur with positive probability.
    """

    q: tuple[float, ...]

    def __post_init__(self):
        q = tuple(float(v) for v in np.asarray(self.q, dtype=np.float64).reshape(-1))
        if len(q) == 0:
            raise ValueError("q must have at least one entry")
        for v in q:
            if not (0.0 < v <= 1.0):
                raise ValueError(f"observation probabilities must lie in (0, 1], got {v}")
        object.__setattr__(self, "q", q)

    @classmethod
    def from_rate(cls, rate: float, p: int) -> "McarSpec":
        """Uniform per-column missing ``rate`` in [0, 1): q_j = 1 - rate."""
        rate = float(rate)
        if not (0.0 <= rate < 1.0):
            raise ValueError(f"missing rate must lie in [0, 1), got {rate}")
        return cls((1.0 - rate,) * int(p))

    @property
    def p(self) -> int:
        return len(self.q)


def gen_mask(n: int, spec: McarSpec, seed: int) -> np.ndarray:
    """n x p response-indicator matrix with independent Bernoulli(q_j) columns."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = rng_for(seed)
    u = rng.random((int(n), spec.p))
    return (u < np.asarray(spec.q)).astype(np.float64)


def complete_cases(X, R) -> np.ndarray:
    """Rows of X whose mask row is all ones, original order preserved."""
    X = as_data_matrix(X)
    R = as_mask_matrix(R, shape=X.shape)
    keep = R.all(axis=1)
    return X[keep]


def complete_case_indices(R) -> np.ndarray:
    R = as_mask_matrix(R)
    return np.nonzero(R.all(axis=1))[0]


def all_missing_rows(R) -> np.ndarray:
    """Indices of rows with no observed entry at all."""
    R = as_mask_matrix(R)
    return np.nonzero(~R.any(axis=1))[0]


def group_patterns(R) -> dict[tuple[int, ...], list[int]]:
    """Bucket row indices by their exact missingness pattern.

    Every row index lands in exactly one bucket; keys are 0/1 tuples and
    iterate in lexicographic order.
    """
    R = as_mask_matrix(R)
    bits = R.astype(np.int8)
    patterns, inverse = np.unique(bits, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    return {
        tuple(int(b) for b in patterns[g]): np.nonzero(inverse == g)[0].tolist()
        for g in range(patterns.shape[0])
    }
