"""Monte Carlo risk estimation, grid sweeps, and dataset ingestion.

The risk of a scheme at a grid cell (s, alpha) is estimated over M trials:
the false-alarm rate on null instances and the missed-detection rate on
instances where the latent partition has changed by s nodes. Grids follow the
synthetic protocol: fixed ratio b/a, SNR = alpha * SNR0 with
SNR0 = (3/4) log(n/100), and the deterministic balanced shift perturbation.

Per-trial seeds are derived from the top-level seed together with the scheme
name, cell coordinates, and trial index, so results do not depend on
execution order.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .gof import GofConfig, TestResult, gof_test, naive_gof
from .graph_core import (
    Graph,
    Partition,
    SbmParams,
    balanced_partition,
    params_from_snr,
    perturb_partition,
    sample_sbm,
    snr,
    sparsify,
)
from .recovery import RecoverySettings, naive_tst
from .seeding import derive_seed
from .tst import TstConfig, two_sample_test

__all__ = [
    "SCHEMES",
    "RiskRow",
    "LabeledGraph",
    "snr_base",
    "estimate_risk",
    "grid_sweep",
    "load_edge_list",
    "load_labels",
    "load_labeled_graph",
    "largest_connected_component",
    "estimate_params",
    "semi_synthetic_tst",
]

SCHEMES = ("gof", "naive-gof", "tst", "naive-tst")

CSV_HEADER = ["scheme", "n", "a", "b", "alpha", "snr", "s", "M", "fa", "md", "risk", "seed"]


@dataclass(frozen=True)
class RiskRow:
    scheme: str
    n: int
    a: float
    b: float
    alpha: float
    snr: float
    s: int
    trials: int
    fa: float
    md: float
    seed: int

    @property
    def risk(self) -> float:
        return self.fa + self.md


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: Partition
    node_names: Optional[list] = None

    def __post_init__(self):
        if self.labels.n != self.graph.n:
            raise ValueError("labels length must equal the node count")


def snr_base(n: int) -> float:
    """The grid's base SNR unit, (3/4) log(n/100)."""
    return 0.75 * math.log(n / 100.0)


def _run_scheme(
    scheme: str,
    G: Graph,
    other: Graph | Partition,
    s: int,
    params: SbmParams,
    gof_config: GofConfig,
    tst_config: TstConfig,
    recovery: RecoverySettings,
    seed: int,
) -> TestResult:
    if scheme == "gof":
        return gof_test(G, other, params, gof_config)
    if scheme == "naive-gof":
        return naive_gof(G, other, s, RecoverySettings(
            recovery.tau, recovery.max_iters, recovery.tol, seed))
    if scheme == "tst":
        return two_sample_test(G, other, params, tst_config, seed=seed)
    if scheme == "naive-tst":
        return naive_tst(G, other, s, RecoverySettings(
            recovery.tau, recovery.max_iters, recovery.tol, seed))
    raise ValueError(f"unknown scheme: {scheme!r}")


def estimate_risk(
    scheme: str,
    n: int,
    s: int,
    params: SbmParams,
    trials: int = 100,
    seed: int = 0,
    alpha: float = float("nan"),
    gof_config: GofConfig = GofConfig(delta=0.01),
    tst_config: TstConfig = TstConfig(),
    recovery: RecoverySettings = RecoverySettings(),
) -> tuple[float, float]:
    """Monte Carlo (false-alarm rate, missed-detection rate) at one grid cell.

    Each trial draws fresh graphs: the null instance uses the base balanced
    partition x, the alternative the deterministic s-shift of x. For the
    two-sample schemes the null pair is (G, G') with a shared partition and
    the alternative pair (G, H); the same G and internal seed serve both, so
    size and power are measured on coupled randomness.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme: {scheme!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if s < 1:
        raise ValueError("s must be >= 1 (the alternative is undefined for s = 0)")
    if scheme == "gof" and params.a == params.b:
        raise ValueError("the goodness-of-fit statistic requires a != b")

    x = balanced_partition(n)
    y = perturb_partition(x, s, mode="shift")
    alpha_token = repr(float(alpha))
    false_alarms = 0
    missed = 0
    for trial in range(trials):
        cell_seed = derive_seed(seed, scheme, s, alpha_token, trial)
        G = sample_sbm(params, x, derive_seed(cell_seed, "null-g"))
        H = sample_sbm(params, y, derive_seed(cell_seed, "alt-h"))
        if scheme in ("gof", "naive-gof"):
            null_result = _run_scheme(scheme, G, x, s, params, gof_config,
                                      tst_config, recovery, derive_seed(cell_seed, "size"))
            alt_result = _run_scheme(scheme, H, x, s, params, gof_config,
                                     tst_config, recovery, derive_seed(cell_seed, "power"))
        else:
            G_prime = sample_sbm(params, x, derive_seed(cell_seed, "null-g2"))
            pair_seed = derive_seed(cell_seed, "pair")
            null_result = _run_scheme(scheme, G, G_prime, s, params, gof_config,
                                      tst_config, recovery, pair_seed)
            alt_result = _run_scheme(scheme, G, H, s, params, gof_config,
                                     tst_config, recovery, pair_seed)
        false_alarms += int(null_result.reject)
        missed += int(not alt_result.reject)
    return false_alarms / trials, missed / trials


def _format_number(value: float) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not CSV cells")
    if float(value) == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _write_rows(path, rows: list[RiskRow]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([
                row.scheme,
                row.n,
                _format_number(row.a),
                _format_number(row.b),
                _format_number(row.alpha),
                _format_number(row.snr),
                row.s,
                row.trials,
                _format_number(row.fa),
                _format_number(row.md),
                _format_number(row.risk),
                row.seed,
            ])


def grid_sweep(spec: dict, out_dir, seed: int = 0) -> dict:
    """Run the risk grid described by `spec` and write one CSV per scheme.

    Spec keys (flat, TOML-friendly): n, trials, schemes, s_values,
    alpha_values, b_over_a (default 1/3), eta, kappa, delta, tau. SNR at a
    cell is alpha * (3/4) log(n/100). Returns {scheme: csv_path}.
    """
    import os

    n = int(spec.get("n", 1000))
    trials = int(spec.get("trials", 100))
    schemes = list(spec.get("schemes", list(SCHEMES)))
    s_values = [int(v) for v in spec.get("s_values", [])]
    alpha_values = [float(v) for v in spec.get("alpha_values", [])]
    ratio = float(spec.get("b_over_a", 1.0 / 3.0))
    delta = float(spec.get("delta", 0.01))
    eta = float(spec.get("eta", 0.85))
    kappa = float(spec.get("kappa", 0.75))
    tau = spec.get("tau")
    recovery = RecoverySettings(tau=tau)
    gof_config = GofConfig(delta=delta)
    tst_config = TstConfig(eta=eta, kappa=kappa, recovery=recovery)

    for scheme in schemes:
        if scheme not in SCHEMES:
            raise ValueError(f"unknown scheme in spec: {scheme!r}")

    os.makedirs(out_dir, exist_ok=True)
    base = snr_base(n)
    outputs = {}
    for scheme in schemes:
        rows = []
        for s in s_values:
            for alpha in alpha_values:
                lam = alpha * base
                params = params_from_snr(n, lam, ratio)
                cell_seed = derive_seed(seed, "cell", scheme, s, repr(alpha))
                fa, md = estimate_risk(
                    scheme, n, s, params, trials=trials, seed=seed,
                    alpha=alpha, gof_config=gof_config,
                    tst_config=tst_config, recovery=recovery,
                )
                rows.append(RiskRow(
                    scheme=scheme, n=n, a=params.a, b=params.b, alpha=alpha,
                    snr=snr(params), s=s, trials=trials, fa=fa, md=md,
                    seed=cell_seed,
                ))
        path = os.path.join(out_dir, f"{scheme}.csv")
        _write_rows(path, rows)
        outputs[scheme] = path
    return outputs


def load_edge_list(path) -> tuple[Graph, Optional[list]]:
    """Parse a whitespace-separated edge list.

    Each non-comment line holds two node tokens; '#' starts a comment. Node
    ids may be nonnegative integers (used directly, the graph then spans
    0..max) or arbitrary names (assigned dense indices in order of first
    appearance; the name table is returned).
    """
    pairs = []
    tokens_seen = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"malformed edge line: {line!r}")
            pairs.append(tuple(parts))
            tokens_seen.extend(parts)
    all_int = all(tok.isdigit() for tok in tokens_seen)
    if all_int:
        edges = [(int(u), int(v)) for u, v in pairs]
        n = max((max(u, v) for u, v in edges), default=-1) + 1
        names = None
    else:
        index: dict = {}
        for tok in tokens_seen:
            if tok not in index:
                index[tok] = len(index)
        edges = [(index[u], index[v]) for u, v in pairs]
        n = len(index)
        names = list(index.keys())
    if n == 0:
        raise ValueError("edge list is empty")
    return Graph.from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2)), names


def load_labels(path, n: int, names: Optional[list] = None) -> Partition:
    """Parse "node label" lines; labels in {+1, -1, 0, 1} with 0 mapped to -1."""
    index = {name: i for i, name in enumerate(names)} if names is not None else None
    labels = np.zeros(n, dtype=np.int8)
    seen = np.zeros(n, dtype=bool)
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"malformed label line: {line!r}")
            node_tok, label_tok = parts
            if index is not None:
                if node_tok not in index:
                    raise ValueError(f"unknown node in labels: {node_tok!r}")
                node = index[node_tok]
            else:
                node = int(node_tok)
                if not 0 <= node < n:
                    raise ValueError(f"unknown node in labels: {node_tok!r}")
            if label_tok in ("+1", "1"):
                labels[node] = 1
            elif label_tok in ("-1", "0"):
                labels[node] = -1
            else:
                raise ValueError(f"non-binary label: {label_tok!r}")
            seen[node] = True
    if not seen.all():
        raise ValueError("labels missing for some nodes")
    return Partition(labels)


def load_labeled_graph(edge_path, label_path) -> LabeledGraph:
    graph, names = load_edge_list(edge_path)
    labels = load_labels(label_path, graph.n, names)
    return LabeledGraph(graph=graph, labels=labels, node_names=names)


def largest_connected_component(g: LabeledGraph) -> LabeledGraph:
    """Induced subgraph on the largest component, nodes re-indexed densely."""
    graph = g.graph
    if graph.n == 0:
        raise ValueError("empty graph")
    if graph.m:
        adj = sp.csr_matrix(
            (np.ones(graph.m), (graph.edges[:, 0], graph.edges[:, 1])),
            shape=(graph.n, graph.n),
        )
    else:
        adj = sp.csr_matrix((graph.n, graph.n))
    _, assignment = connected_components(adj, directed=False)
    sizes = np.bincount(assignment)
    keep = assignment == int(np.argmax(sizes))
    new_index = -np.ones(graph.n, dtype=np.int64)
    new_index[keep] = np.arange(int(keep.sum()))
    mask = keep[graph.edges[:, 0]] & keep[graph.edges[:, 1]]
    edges = new_index[graph.edges[mask]]
    sub = Graph.from_edges(int(keep.sum()), edges)
    labels = Partition(g.labels.labels[keep])
    names = [g.node_names[i] for i in np.flatnonzero(keep)] if g.node_names else None
    return LabeledGraph(graph=sub, labels=labels, node_names=names)


def estimate_params(g: LabeledGraph) -> SbmParams:
    """Method-of-moments (a, b) from a labeled graph.

    a = n * within_edges / within_pairs and likewise for b, with pair counts
    from the actual community sizes.
    """
    labels = g.labels.labels
    n = g.graph.n
    n_plus = int(np.count_nonzero(labels == 1))
    n_minus = n - n_plus
    if n_plus == 0 or n_minus == 0:
        raise ValueError("labels describe a single community")
    within_pairs = n_plus * (n_plus - 1) // 2 + n_minus * (n_minus - 1) // 2
    across_pairs = n_plus * n_minus
    if g.graph.m == 0:
        return SbmParams(n=n, a=0.0, b=0.0)
    prods = labels[g.graph.edges[:, 0]].astype(int) * labels[g.graph.edges[:, 1]].astype(int)
    within_edges = int(np.count_nonzero(prods == 1))
    across_edges = g.graph.m - within_edges
    return SbmParams(
        n=n,
        a=n * within_edges / within_pairs,
        b=n * across_edges / across_pairs,
    )


def semi_synthetic_tst(
    g: LabeledGraph,
    s: int,
    rho: float,
    trials: int,
    seed: int,
    params: Optional[SbmParams] = None,
    tst_config: TstConfig = TstConfig(),
    recovery: RecoverySettings = RecoverySettings(tau=1.0),
) -> dict:
    """Two-sample testing of a real labeled graph against synthetic peers.

    Size: the observed graph versus a fresh block model draw with the same
    labels. Power: versus a draw whose partition has s randomly relabeled
    nodes. All graphs are sparsified at rate rho before testing. Returns
    false-alarm and missed-detection rates for the proposed and the
    recover-and-compare schemes.
    """
    if params is None:
        params = estimate_params(g)
    x_true = g.labels
    fa = {"tst": 0, "naive-tst": 0}
    md = {"tst": 0, "naive-tst": 0}
    for trial in range(trials):
        t_seed = derive_seed(seed, "dataset", s, trial)
        g_rho = sparsify(g.graph, rho, derive_seed(t_seed, "rho-g"))
        g_prime = sparsify(
            sample_sbm(params, x_true, derive_seed(t_seed, "null")),
            rho, derive_seed(t_seed, "rho-null"))
        y = perturb_partition(x_true, s, mode="random-relabel",
                              seed=derive_seed(t_seed, "relabel"))
        h = sparsify(
            sample_sbm(params, y, derive_seed(t_seed, "alt")),
            rho, derive_seed(t_seed, "rho-alt"))
        scaled = SbmParams(params.n, params.a * rho, params.b * rho)
        pair_seed = derive_seed(t_seed, "pair")
        null_res = two_sample_test(g_rho, g_prime, scaled, tst_config, seed=pair_seed)
        alt_res = two_sample_test(g_rho, h, scaled, tst_config, seed=pair_seed)
        fa["tst"] += int(null_res.reject)
        md["tst"] += int(not alt_res.reject)
        rec = RecoverySettings(recovery.tau, recovery.max_iters, recovery.tol, pair_seed)
        null_naive = naive_tst(g_rho, g_prime, s, rec)
        alt_naive = naive_tst(g_rho, h, s, rec)
        fa["naive-tst"] += int(null_naive.reject)
        md["naive-tst"] += int(not alt_naive.reject)
    return {
        "params": params,
        "rho": rho,
        "s": s,
        "trials": trials,
        "fa": {k: v / trials for k, v in fa.items()},
        "md": {k: v / trials for k, v in md.items()},
    }
