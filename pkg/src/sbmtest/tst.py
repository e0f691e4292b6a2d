"""Two-sample test for a change in community structure.

Given independent graphs G and H over the same nodes, the test subsamples G
into a recovery part G1 and a holdout part Gtilde, recovers a partition from
G1 alone, and compares the holdout statistic (rescaled to full-graph units)
against the same statistic on H:

    T = (1 / (1 - eta)) * t(Gtilde, x_hat) - t(H, x_hat).

Under the null the two terms share their mean and T concentrates around 0;
under an s-change the mean gap grows like s (n - s) (a - b) / n. The default
decision is one-sided (reject for large positive T), matching the sign of the
alternative mean for a > b; a two-sided variant is available in the config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .cut_statistics import t_statistic
from .graph_core import Graph, SbmParams, subsample_edges
from .gof import TestResult
from .recovery import RecoverySettings, spectral_partition
from .seeding import derive_seed

__all__ = ["TstConfig", "two_sample_test", "expected_t_gap"]


@dataclass(frozen=True)
class TstConfig:
    """Subsampling rate, threshold multiplier, and recovery settings.

    Defaults eta=0.85 and kappa=3/4 are the tuned experimental choices; the
    theory-faithful variant (eta=1/2, a larger constant, two-sided decision)
    remains reachable through these fields. `delta` is recorded in the
    diagnostics for bookkeeping but does not enter the threshold.
    """

    eta: float = 0.85
    kappa: float = 0.75
    two_sided: bool = False
    delta: Optional[float] = None
    recovery: RecoverySettings = field(default_factory=RecoverySettings)

    def __post_init__(self):
        if not 0 < self.eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")


def two_sample_test(
    G: Graph,
    H: Graph,
    params: Optional[SbmParams] = None,
    config: TstConfig = TstConfig(),
    seed: int = 0,
) -> TestResult:
    """Test whether G and H share their latent partition.

    The threshold is kappa * sqrt(n (a + b) log(6n)). When params is None,
    n (a + b) is estimated as 2 (|E(G)| + |E(H)|), since each graph holds
    about n (a + b) / 4 edges.
    """
    if G.n != H.n:
        raise ValueError("graphs must share the node count")
    n = G.n
    if params is not None:
        if params.n != n:
            raise ValueError("params.n must match the graphs")
        nab = n * (params.a + params.b)
        estimated = False
    else:
        nab = 2.0 * (G.m + H.m)
        estimated = True
    if nab <= 0:
        if G.m == 0 and H.m == 0:
            # no edges anywhere: nothing to reject on
            return TestResult(0.0, 0.0, False,
                              {"empty": True, "eta": config.eta})
        raise ValueError("n (a + b) must be positive")

    g1, g_tilde = subsample_edges(G, config.eta, derive_seed(seed, "tst-subsample"))
    rec = config.recovery
    diag: dict = {}
    x_hat = spectral_partition(
        g1,
        RecoverySettings(rec.tau, rec.max_iters, rec.tol,
                         derive_seed(seed, "tst-recover", rec.seed)),
        diagnostics=diag,
    )
    t_holdout = t_statistic(g_tilde, x_hat)
    t_other = t_statistic(H, x_hat)
    raw = t_holdout / (1.0 - config.eta) - t_other
    statistic = abs(raw) if config.two_sided else raw
    threshold = config.kappa * math.sqrt(nab * math.log(6.0 * n))
    return TestResult(
        statistic=float(statistic),
        threshold=float(threshold),
        reject=statistic > threshold,
        diagnostics={
            "raw": float(raw),
            "t_holdout": t_holdout,
            "t_other": t_other,
            "nab": float(nab),
            "nab_estimated": estimated,
            "eta": config.eta,
            "kappa": config.kappa,
            "two_sided": config.two_sided,
            "delta": config.delta,
            "converged": diag.get("converged"),
        },
    )


def expected_t_gap(n: int, s: int, k_errors: int, a: float, b: float) -> float:
    """Exact mean of t(G', x_hat) - t(H, x_hat) with k uniform recovery errors.

    G' is a fresh graph from the null partition x and H one from an s-changed
    partition; x_hat has exactly k errors against x, placed uniformly. The
    closed form is

        ((a - b) / n) * s (n - s) * ((1 - 2k/n)^2 - 4 k (n - k) / (n^2 (n - 1))).
    """
    if not 0 <= s <= n / 2:
        raise ValueError("s must lie in [0, n/2]")
    if not 0 <= k_errors <= n / 2:
        raise ValueError("k_errors must lie in [0, n/2]")
    k = k_errors
    shrink = (1.0 - 2.0 * k / n) ** 2 - 4.0 * k * (n - k) / (n ** 2 * (n - 1.0))
    return (a - b) / n * s * (n - s) * shrink
