"""Goodness-of-fit test for a hypothesized partition.

Given a reference partition x0 and a graph G drawn from a block model, the
test compares the count of edges of the smaller-bias type against its null
mean plus a Bernstein-style fluctuation radius. For a > b the across count
is used; for b > a the within count. The alternative (at least s relabeled
nodes) inflates the statistic's mean, so large values reject.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .cut_statistics import cut_counts
from .graph_core import Graph, Partition, SbmParams, distortion, snr
from .recovery import RecoverySettings, spectral_partition

__all__ = ["GofConfig", "TestResult", "gof_threshold", "gof_test", "naive_gof"]

# Fluctuation constants from the one-sided Bernstein bound for the null count:
# the radius max(sqrt((16/3) n p log(2/d)), (16/3) log(2/d)) keeps the false
# alarm probability below delta/2 in both the sparse and dense count regimes.
DEFAULT_C_SQRT = math.sqrt(16.0 / 3.0)
DEFAULT_C_LOG = 16.0 / 3.0


@dataclass(frozen=True)
class GofConfig:
    delta: float = 0.05
    c_sqrt: float = DEFAULT_C_SQRT
    c_log: float = DEFAULT_C_LOG

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.c_sqrt <= 0 or self.c_log <= 0:
            raise ValueError("constants must be positive")


@dataclass(frozen=True)
class TestResult:
    """Outcome of a single hypothesis test."""

    statistic: float
    threshold: float
    reject: bool
    diagnostics: dict = field(default_factory=dict)


def gof_threshold(params: SbmParams, config: GofConfig = GofConfig()) -> float:
    """Null mean plus fluctuation radius for the test statistic.

    For a > b: bn/4 + max(c_sqrt sqrt(nb log(2/delta)), c_log log(2/delta)).
    For b > a the across pairs are replaced by the n^2/4 - n/2 within pairs,
    so the center is an/4 - a/2 and b is replaced by a in the radius.
    """
    n, a, b = params.n, params.a, params.b
    if a == b:
        raise ValueError("a == b carries no community signal")
    log_term = math.log(2.0 / config.delta)
    if a > b:
        center = b * n / 4.0
        radius = max(config.c_sqrt * math.sqrt(n * b * log_term), config.c_log * log_term)
    else:
        center = a * n / 4.0 - a / 2.0
        radius = max(config.c_sqrt * math.sqrt(n * a * log_term), config.c_log * log_term)
    return center + radius


def gof_test(
    G: Graph,
    x0: Partition,
    params: SbmParams,
    config: GofConfig = GofConfig(),
) -> TestResult:
    """Test whether G is consistent with the partition x0."""
    if x0.n != G.n or params.n != G.n:
        raise ValueError("graph, partition, and params must agree on n")
    counts = cut_counts(G, x0)
    threshold = gof_threshold(params, config)
    statistic = float(counts.across if params.a > params.b else counts.within)
    lam = snr(params)
    diagnostics = {
        "across": counts.across,
        "within": counts.within,
        "snr": lam,
        "delta": config.delta,
        "branch": "across" if params.a > params.b else "within",
    }
    return TestResult(
        statistic=statistic,
        threshold=threshold,
        reject=statistic > threshold,
        diagnostics=diagnostics,
    )


def naive_gof(
    G: Graph,
    x0: Partition,
    s: int,
    settings: Optional[RecoverySettings] = None,
) -> TestResult:
    """Recover a partition from G and reject when it is far from x0.

    The decision rule declares a change when the recovered partition is at
    distortion at least s/2 from x0.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    settings = settings if settings is not None else RecoverySettings()
    diagnostics = {}
    x_hat = spectral_partition(G, settings, diagnostics=diagnostics)
    d = distortion(x0, x_hat)
    diagnostics["distortion"] = d
    return TestResult(
        statistic=float(d),
        threshold=s / 2.0,
        reject=d >= s / 2.0,
        diagnostics=diagnostics,
    )
