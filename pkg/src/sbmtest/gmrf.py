"""Gaussian Markov random field adaptation of the graph tests.

Nodes carry jointly Gaussian observations with precision Theta = I + gamma A,
so the graph is only visible through sample correlations. The pipeline:
sample via Cholesky back-substitution, form sample correlation matrices, and
substitute them for adjacency matrices in the test statistics. Since the
covariance is approximately I - gamma A, the community signal lives at the
bottom of the correlation spectrum; recovery therefore clusters the surrogate
I - C_hat, whose top eigenvectors match those of A.

No analytic threshold is known for the correlation-based statistic, so the
decision rule is fit from data: a 1-D linear discriminant between simulated
null and alternative statistic values, scored by repeated stratified
cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .graph_core import Graph, Partition, distortion
from .recovery import RecoverySettings, spectral_partition_matrix
from .seeding import make_rng

__all__ = [
    "GmrfModel",
    "SampleMatrix",
    "NotPositiveDefiniteError",
    "build_precision",
    "sample_gmrf",
    "correlation_matrix",
    "weighted_t_statistic",
    "recover_from_correlation",
    "gmrf_two_sample",
    "gmrf_naive_compare",
    "LdaRule",
    "fit_lda_threshold",
    "cross_validated_risk",
]

MAX_DENSE_N = 4000


class NotPositiveDefiniteError(ValueError):
    """The assembled precision matrix has a nonpositive eigenvalue."""


@dataclass(frozen=True)
class GmrfModel:
    n: int
    gamma: float
    precision: np.ndarray
    chol: np.ndarray


@dataclass(frozen=True)
class SampleMatrix:
    """t rows of n-dimensional observations."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D matrix")
        object.__setattr__(self, "values", values)

    @property
    def t(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])


def build_precision(G: Graph, gamma: float) -> GmrfModel:
    """Assemble Theta = I + gamma A and its lower Cholesky factor."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if G.n > MAX_DENSE_N:
        raise ValueError(f"dense pipeline is limited to n <= {MAX_DENSE_N}")
    theta = np.eye(G.n)
    if G.m:
        rows = G.edges[:, 0]
        cols = G.edges[:, 1]
        theta[rows, cols] = gamma
        theta[cols, rows] = gamma
    try:
        chol = np.linalg.cholesky(theta)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            "precision matrix is not positive definite; resample the graph"
        ) from exc
    return GmrfModel(n=G.n, gamma=float(gamma), precision=theta, chol=chol)


def sample_gmrf(model: GmrfModel, t: int, seed: int) -> SampleMatrix:
    """Draw t i.i.d. rows from N(0, Theta^{-1}).

    With Theta = R R^T and xi standard normal, solving R^T zeta = xi gives
    zeta with covariance (R^T)^{-1} R^{-1} = Theta^{-1}.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    rng = make_rng(seed)
    xi = rng.standard_normal((model.n, t))
    zeta = scipy.linalg.solve_triangular(model.chol.T, xi, lower=False)
    return SampleMatrix(values=zeta.T)


def correlation_matrix(samples: SampleMatrix) -> np.ndarray:
    """Sample correlation with the mean-subtracted, divisor t-1 covariance."""
    if samples.t < 2:
        raise ValueError("need at least 2 samples")
    centered = samples.values - samples.values.mean(axis=0)
    cov = centered.T @ centered / (samples.t - 1)
    std = np.sqrt(np.diag(cov))
    if np.any(std == 0):
        raise ValueError("zero-variance column")
    corr = cov / np.outer(std, std)
    np.clip(corr, -1.0, 1.0, out=corr)
    np.fill_diagonal(corr, 1.0)
    return corr


def weighted_t_statistic(C: np.ndarray, x: Partition) -> float:
    """Real-valued within-minus-across statistic: sum over u < v of x_u x_v C_uv.

    Reduces to the integer edge statistic when C is an adjacency matrix; the
    diagonal is excluded.
    """
    C = np.asarray(C, dtype=np.float64)
    if C.shape != (x.n, x.n):
        raise ValueError("matrix dimension must match the partition")
    labels = x.labels.astype(np.float64)
    quad = labels @ C @ labels
    return float((quad - np.trace(C)) / 2.0)


def recover_from_correlation(
    C: np.ndarray,
    settings: Optional[RecoverySettings] = None,
    diagnostics: Optional[dict] = None,
) -> Partition:
    """Cluster nodes from a correlation matrix.

    The covariance is I - gamma A to first order, so I - C is the adjacency
    stand-in whose leading eigenvectors carry the communities.
    """
    C = np.asarray(C, dtype=np.float64)
    surrogate = np.eye(C.shape[0]) - C
    settings = settings if settings is not None else RecoverySettings(tau=0.0)
    return spectral_partition_matrix(surrogate, settings, diagnostics=diagnostics)


def gmrf_two_sample(
    samples_a: SampleMatrix,
    samples_b: SampleMatrix,
    settings: Optional[RecoverySettings] = None,
) -> float:
    """Difference statistic T^xhat(C_a) - T^xhat(C_b), xhat estimated from C_a.

    No subsampling is applied; the dependence between xhat and C_a makes for
    better empirical separation, and the threshold is fit from data anyway.
    """
    if samples_a.n != samples_b.n:
        raise ValueError("sample sets must share the dimension")
    c_a = correlation_matrix(samples_a)
    c_b = correlation_matrix(samples_b)
    x_hat = recover_from_correlation(c_a, settings)
    return weighted_t_statistic(c_a, x_hat) - weighted_t_statistic(c_b, x_hat)


def gmrf_naive_compare(
    samples_a: SampleMatrix,
    samples_b: SampleMatrix,
    settings: Optional[RecoverySettings] = None,
) -> int:
    """Recover a partition from each correlation matrix and return their distortion."""
    if samples_a.n != samples_b.n:
        raise ValueError("sample sets must share the dimension")
    x_hat = recover_from_correlation(correlation_matrix(samples_a), settings)
    y_hat = recover_from_correlation(correlation_matrix(samples_b), settings)
    return distortion(x_hat, y_hat)


@dataclass(frozen=True)
class LdaRule:
    """1-D linear discriminant: reject on the alternative side of the threshold."""

    threshold: float
    reject_above: bool
    degenerate: bool = False

    def rejects(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.float64)
        if self.degenerate:
            return np.zeros(values.shape, dtype=bool)
        if self.reject_above:
            return values > self.threshold
        return values < self.threshold


def fit_lda_threshold(null_values, alt_values) -> LdaRule:
    """Equal-prior, pooled-variance linear discriminant in one dimension.

    With equal priors and a shared variance the decision boundary is the
    midpoint of the class means; the orientation puts the alternative mean on
    the rejecting side. Identical classes are flagged degenerate (the rule
    then never rejects, so each class is fully misclassified on one side).
    """
    null_values = np.asarray(null_values, dtype=np.float64)
    alt_values = np.asarray(alt_values, dtype=np.float64)
    if null_values.size == 0 or alt_values.size == 0:
        raise ValueError("both classes must be non-empty")
    m0 = float(null_values.mean())
    m1 = float(alt_values.mean())
    pooled_var = float(
        (np.sum((null_values - m0) ** 2) + np.sum((alt_values - m1) ** 2))
        / max(null_values.size + alt_values.size - 2, 1)
    )
    if m0 == m1 and pooled_var == 0.0:
        return LdaRule(threshold=m0, reject_above=True, degenerate=True)
    return LdaRule(threshold=(m0 + m1) / 2.0, reject_above=m1 > m0)


def cross_validated_risk(
    null_values,
    alt_values,
    folds: int = 10,
    repeats: int = 10,
    seed: int = 0,
) -> float:
    """Mean held-out FA + MD of the linear discriminant.

    Stratified k-fold cross-validation, repeated with fresh shuffles; each
    fold's risk is the held-out false-alarm fraction plus the held-out
    missed-detection fraction, and the result is the mean over all folds and
    repeats.
    """
    null_values = np.asarray(null_values, dtype=np.float64)
    alt_values = np.asarray(alt_values, dtype=np.float64)
    if null_values.size < folds or alt_values.size < folds:
        raise ValueError("need at least `folds` samples per class")
    rng = make_rng(seed)
    risks = []
    for _ in range(repeats):
        perm0 = rng.permutation(null_values.size)
        perm1 = rng.permutation(alt_values.size)
        folds0 = np.array_split(perm0, folds)
        folds1 = np.array_split(perm1, folds)
        for f0, f1 in zip(folds0, folds1):
            mask0 = np.ones(null_values.size, dtype=bool)
            mask0[f0] = False
            mask1 = np.ones(alt_values.size, dtype=bool)
            mask1[f1] = False
            rule = fit_lda_threshold(null_values[mask0], alt_values[mask1])
            if rule.degenerate:
                risks.append(1.0)
                continue
            fa = float(np.mean(rule.rejects(null_values[f0])))
            md = float(np.mean(~rule.rejects(alt_values[f1])))
            risks.append(fa + md)
    return float(np.mean(risks))
