"""Center-error criterion, loss decomposition check, Monte-Carlo losses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._validation import as_center_matrix
from .distances import masked_pairwise_sq_dists, pairwise_sq_dists
from .kpod import kpod_loss, _check_triple
from .missing import McarSpec, gen_mask, group_patterns
from .rng import derive_seed
from .synthetic import GmmSpec, sample_gmm


def mse_centers(M_hat, M_star) -> float:
    """Sum over estimated centers of the squared distance to the nearest
    reference center.

    Matching each estimated row independently to its nearest reference row
    makes the criterion invariant to index permutations on either side. No
    bijection is enforced; see :func:`mse_centers_bijective` for the
    assignment-problem diagnostic variant.
    """
    M_hat = as_center_matrix(M_hat, name="M_hat")
    M_star = as_center_matrix(M_star, p=M_hat.shape[1], name="M_star")
    return float(pairwise_sq_dists(M_hat, M_star).min(axis=1).sum())


def mse_centers_bijective(M_hat, M_star) -> float:
    """Diagnostic variant matching centers one-to-one (optimal bijection).

    Requires equal center counts. Not used for any replication number.
    """
    M_hat = as_center_matrix(M_hat, name="M_hat")
    M_star = as_center_matrix(M_star, p=M_hat.shape[1], name="M_star")
    if M_hat.shape[0] != M_star.shape[0]:
        raise ValueError("bijective matching requires equal center counts")
    D = pairwise_sq_dists(M_hat, M_star)
    rows, cols = linear_sum_assignment(D)
    return float(D[rows, cols].sum())


@dataclass(frozen=True)
class DecompositionReport:
    """Partial-distance loss versus its pattern-weighted recomposition.

    ``lhs`` is the direct loss; ``rhs`` re-evaluates it as the weighted sum
    over observed missingness patterns of the restricted complete-data
    losses; the two agree as an algebraic identity.
    """

    lhs: float
    rhs: float
    per_pattern: tuple[tuple[tuple[int, ...], float, float], ...]
    abs_diff: float

    def scaled_diff(self) -> float:
        return self.abs_diff / (1.0 + abs(self.lhs))

    def to_text(self) -> str:
        lines = [
            f"direct partial-distance loss : {self.lhs!r}",
            f"pattern-weighted recomposition: {self.rhs!r}",
            f"absolute difference           : {self.abs_diff!r}",
            "pattern / weight / restricted loss:",
        ]
        for pattern, weight, loss in self.per_pattern:
            bits = "".join(str(b) for b in pattern)
            lines.append(f"  {bits}  {weight!r}  {loss!r}")
        return "\n".join(lines)

    def rows(self) -> list[tuple[str, str, str]]:
        return [
            ("".join(str(b) for b in pattern), repr(weight), repr(loss))
            for pattern, weight, loss in self.per_pattern
        ]

    def save_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write("pattern,weight,restricted_loss\n")
            for bits, weight, loss in self.rows():
                fh.write(f"{bits},{weight},{loss}\n")


def decomposition_check(X, R, M) -> DecompositionReport:
    """Verify the pattern decomposition of the partial-distance loss.

    The right-hand side is evaluated through an independent route: rows
    are grouped by exact missingness pattern and each group's restricted
    loss is accumulated in plain Python arithmetic, never touching the
    vectorized kernels.
    """
    X, R, M = _check_triple(X, R, M)
    n = X.shape[0]
    lhs = kpod_loss(X, R, M)
    x_rows = X.tolist()
    m_rows = M.tolist()
    per_pattern = []
    rhs = 0.0
    for pattern, idx in group_patterns(R).items():
        observed = [j for j, bit in enumerate(pattern) if bit]
        total = 0.0
        for i in idx:
            xi = x_rows[i]
            best = None
            for mu in m_rows:
                s = 0.0
                for j in observed:
                    d = xi[j] - mu[j]
                    s += d * d
                if best is None or s < best:
                    best = s
            total += best
        restricted = total / len(idx)
        weight = len(idx) / n
        rhs += weight * restricted
        per_pattern.append((pattern, weight, restricted))
    return DecompositionReport(
        lhs=lhs,
        rhs=rhs,
        per_pattern=tuple(per_pattern),
        abs_diff=abs(lhs - rhs),
    )


@dataclass(frozen=True)
class McLossEstimate:
    """Coupled Monte-Carlo estimates of the two expected losses."""

    km_mean: float
    km_se: float
    kpod_mean: float
    kpod_se: float
    n_mc: int


def _pointwise_losses(X, R, M):
    km = pairwise_sq_dists(X, M).min(axis=1)
    kpod = masked_pairwise_sq_dists(X, R, M).min(axis=1)
    return km, kpod


def mc_expected_loss(spec: GmmSpec, q: McarSpec, M, n_mc: int, seed: int) -> McLossEstimate:
    """Monte-Carlo mean and standard error of the pointwise complete and
    partial losses, on coupled draws (same data sample for both)."""
    if n_mc < 2:
        raise ValueError("n_mc must be >= 2")
    M = as_center_matrix(M, p=spec.p)
    X, _ = sample_gmm(spec, n_mc, derive_seed(seed, "mc-data"))
    R = gen_mask(n_mc, q, derive_seed(seed, "mc-mask"))
    km, kpod = _pointwise_losses(X, R, M)
    return McLossEstimate(
        km_mean=float(km.mean()),
        km_se=float(km.std(ddof=1) / np.sqrt(n_mc)),
        kpod_mean=float(kpod.mean()),
        kpod_se=float(kpod.std(ddof=1) / np.sqrt(n_mc)),
        n_mc=int(n_mc),
    )
