"""Gaussian-mixture generators and the named experiment presets."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .missing import McarSpec
from .rng import rng_for

_TRIANGLE_MEANS = ((0.0, 0.0), (3.0, 0.0), (1.5, math.sqrt(6.75)))


@dataclass(frozen=True)
class GmmSpec:
    """Mixture of k Gaussians: weights on the simplex, k x p means,
    k symmetric positive-definite p x p covariances."""

    weights: np.ndarray
    means: np.ndarray
    covariances: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        m = np.atleast_2d(np.array(self.means, dtype=np.float64))
        c = np.array(self.covariances, dtype=np.float64)
        k, p = m.shape
        if w.shape[0] != k:
            raise ValueError(f"{w.shape[0]} weights for {k} components")
        if (w <= 0).any() or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be positive and sum to 1")
        if c.shape != (k, p, p):
            raise ValueError(f"covariances must have shape {(k, p, p)}, got {c.shape}")
        chols = []
        for l in range(k):
            if not np.allclose(c[l], c[l].T, atol=1e-12):
                raise ValueError(f"covariance {l} is not symmetric")
            try:
                chols.append(np.linalg.cholesky(c[l]))
            except np.linalg.LinAlgError as exc:
                raise ValueError(f"covariance {l} is not positive definite") from exc
        for a in (w, m, c):
            a.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", m)
        object.__setattr__(self, "covariances", c)
        identity = all(np.array_equal(c[l], np.eye(p)) for l in range(k))
        object.__setattr__(self, "_chols", tuple(chols))
        object.__setattr__(self, "_identity", identity)

    @classmethod
    def isotropic(cls, weights, means) -> "GmmSpec":
        means = np.atleast_2d(np.asarray(means, dtype=np.float64))
        k, p = means.shape
        return cls(weights, means, np.broadcast_to(np.eye(p), (k, p, p)).copy())

    @property
    def k(self) -> int:
        return self.means.shape[0]

    @property
    def p(self) -> int:
        return self.means.shape[1]

    def stable_hash(self) -> str:
        h = hashlib.sha256()
        for a in (self.weights, self.means, self.covariances):
            h.update(str(a.shape).encode())
            h.update(np.ascontiguousarray(a, dtype=np.float64).tobytes())
        return h.hexdigest()[:16]


def sample_gmm(spec: GmmSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw n rows from the mixture; also return the latent component labels."""
    if n < 1:
        raise ValueError("n must be >= 1")
    n = int(n)
    rng = rng_for(seed)
    labels = rng.choice(spec.k, size=n, p=spec.weights)
    z = rng.standard_normal((n, spec.p))
    if spec._identity:
        X = spec.means[labels] + z
    else:
        X = np.empty((n, spec.p), dtype=np.float64)
        for l in range(spec.k):
            rows = labels == l
            X[rows] = spec.means[l] + z[rows] @ spec._chols[l].T
    return X, labels


def _padded_means(p: int) -> np.ndarray:
    means = np.zeros((3, p), dtype=np.float64)
    for l, m in enumerate(_TRIANGLE_MEANS):
        means[l, :2] = m
    return means


@dataclass(frozen=True)
class PresetBundle:
    """A named experiment parameterization.

    ``mcar`` is None for the table settings (s1/s2/s3), whose per-column
    missing rate is supplied separately by the experiment config.
    """

    name: str
    gmm: GmmSpec
    mcar: McarSpec | None
    default_n: int

    @property
    def k(self) -> int:
        return self.gmm.k


PRESET_NAMES = ("intro", "a", "b", "s1", "s2", "s3")


def preset(name: str) -> PresetBundle:
    """Named presets.

    s1/s2/s3: equal-weight 3-component mixtures with identity covariance in
    2, 5 and 50 dimensions; the first two mean coordinates trace an
    equilateral triangle of side 3, remaining coordinates are zero. Missing
    rates for these are supplied separately.

    a/b: the s1/s2 mixtures with every column observed with probability 2/3.

    intro: a 2-D two-component mixture symmetric about the y-axis (means
    (-3, 0) and (3, 0), equal weights, identity covariance) observed with
    q = (1/3, 2/3). The mixture parameters are a documented harness choice.
    """
    w3 = (1.0 / 3.0,) * 3
    if name == "intro":
        gmm = GmmSpec.isotropic((0.5, 0.5), [[-3.0, 0.0], [3.0, 0.0]])
        return PresetBundle(name, gmm, McarSpec((1.0 / 3.0, 2.0 / 3.0)), 10_000)
    if name == "a":
        gmm = GmmSpec.isotropic(w3, _padded_means(2))
        return PresetBundle(name, gmm, McarSpec((2.0 / 3.0,) * 2), 10_000)
    if name == "b":
        gmm = GmmSpec.isotropic(w3, _padded_means(5))
        return PresetBundle(name, gmm, McarSpec((2.0 / 3.0,) * 5), 10_000)
    if name == "s1":
        return PresetBundle(name, GmmSpec.isotropic(w3, _padded_means(2)), None, 3_000)
    if name == "s2":
        return PresetBundle(name, GmmSpec.isotropic(w3, _padded_means(5)), None, 5_000)
    if name == "s3":
        return PresetBundle(name, GmmSpec.isotropic(w3, _padded_means(50)), None, 10_000)
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
