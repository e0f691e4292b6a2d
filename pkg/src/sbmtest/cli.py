"""Command line interface.

Single-test subcommands (gof, naive-gof, tst, naive-tst) print the test
result as key=value lines and exit with code 0 on accept, 1 on reject, and 2
on any error. Batch subcommands (sample, sweep, dataset, gmrf, bounds) exit
0 on success and 2 on error. All randomness flows from explicit --seed flags,
so reruns with identical flags reproduce outputs byte for byte.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bounds import tst_converse
from .gmrf import (
    build_precision,
    cross_validated_risk,
    gmrf_naive_compare,
    gmrf_two_sample,
    sample_gmrf,
)
from .gof import GofConfig, TestResult, gof_test, naive_gof
from .graph_core import (
    SbmParams,
    balanced_partition,
    params_from_snr,
    perturb_partition,
    sample_sbm,
)
from .harness import (
    estimate_params,
    grid_sweep,
    largest_connected_component,
    load_labeled_graph,
    semi_synthetic_tst,
    snr_base,
)
from .recovery import RecoverySettings, naive_tst
from .seeding import derive_seed
from .tst import TstConfig, two_sample_test

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_ERROR = 2


def _print_result(result: TestResult) -> int:
    print(f"statistic={result.statistic}")
    print(f"threshold={result.threshold}")
    print(f"reject={str(result.reject).lower()}")
    for key in sorted(result.diagnostics):
        print(f"{key}={result.diagnostics[key]}")
    return EXIT_REJECT if result.reject else EXIT_ACCEPT


def _load_graph_and_labels(args):
    labeled = load_labeled_graph(args.edges, args.labels)
    return labeled


def _params_from_args(args, graph=None, labels=None):
    if args.a is not None and args.b is not None:
        n = graph.n if graph is not None else args.n
        return SbmParams(n=n, a=args.a, b=args.b), False
    if graph is not None and labels is not None:
        from .harness import LabeledGraph

        return estimate_params(LabeledGraph(graph, labels)), True
    return None, False


def _cmd_sample(args) -> int:
    params = SbmParams(n=args.n, a=args.a, b=args.b)
    x = balanced_partition(args.n)
    if args.s:
        x = perturb_partition(x, args.s, mode="shift")
    graph = sample_sbm(params, x, args.seed)
    lines = [f"# n={args.n} a={args.a} b={args.b} s={args.s} seed={args.seed}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_ACCEPT


def _cmd_gof(args) -> int:
    labeled = _load_graph_and_labels(args)
    params, estimated = _params_from_args(args, labeled.graph, labeled.labels)
    result = gof_test(labeled.graph, labeled.labels, params,
                      GofConfig(delta=args.delta))
    if estimated:
        result.diagnostics["params_estimated"] = True
        result.diagnostics["a_hat"] = params.a
        result.diagnostics["b_hat"] = params.b
    return _print_result(result)


def _cmd_naive_gof(args) -> int:
    labeled = _load_graph_and_labels(args)
    settings = RecoverySettings(tau=args.tau, seed=args.seed)
    return _print_result(naive_gof(labeled.graph, labeled.labels, args.s, settings))


def _load_pair(args):
    from .harness import load_edge_list

    g, names_g = load_edge_list(args.edges_g)
    h, names_h = load_edge_list(args.edges_h)
    if g.n != h.n:
        n = max(g.n, h.n)
        from .graph_core import Graph

        g = Graph(n, g.edges)
        h = Graph(n, h.edges)
    return g, h


def _cmd_tst(args) -> int:
    g, h = _load_pair(args)
    params = SbmParams(n=g.n, a=args.a, b=args.b) if args.a is not None and args.b is not None else None
    config = TstConfig(eta=args.eta, kappa=args.kappa, two_sided=args.two_sided,
                       recovery=RecoverySettings(tau=args.tau))
    return _print_result(two_sample_test(g, h, params, config, seed=args.seed))


def _cmd_naive_tst(args) -> int:
    g, h = _load_pair(args)
    settings = RecoverySettings(tau=args.tau, seed=args.seed)
    return _print_result(naive_tst(g, h, args.s, settings))


def _cmd_sweep(args) -> int:
    if args.spec:
        import tomli

        with open(args.spec, "rb") as handle:
            spec = tomli.load(handle)
    else:
        spec = {}
    outputs = grid_sweep(spec, args.out, seed=args.seed)
    for scheme in sorted(outputs):
        print(f"{scheme}={outputs[scheme]}")
    return EXIT_ACCEPT


def _cmd_dataset(args) -> int:
    labeled = load_labeled_graph(args.edges, args.labels)
    print(f"nodes_raw={labeled.graph.n}")
    print(f"edges_raw={labeled.graph.m}")
    lcc = largest_connected_component(labeled)
    print(f"nodes_lcc={lcc.graph.n}")
    print(f"edges_lcc={lcc.graph.m}")
    params = (SbmParams(lcc.graph.n, args.a, args.b)
              if args.a is not None and args.b is not None
              else estimate_params(lcc))
    print(f"a_hat={params.a}")
    print(f"b_hat={params.b}")
    report = semi_synthetic_tst(
        lcc, s=args.s, rho=args.rho, trials=args.trials, seed=args.seed,
        params=params, recovery=RecoverySettings(tau=args.tau),
    )
    for scheme in ("tst", "naive-tst"):
        fa = report["fa"][scheme]
        md = report["md"][scheme]
        print(f"{scheme}_fa={fa}")
        print(f"{scheme}_md={md}")
        print(f"{scheme}_risk={fa + md}")
    return EXIT_ACCEPT


def _cmd_gmrf(args) -> int:
    n = args.n
    base = (10.0 / 11.0) * np.log(n / 100.0)
    if args.a is not None and args.b is not None:
        params = SbmParams(n=n, a=args.a, b=args.b)
    else:
        params = params_from_snr(n, 30.0 * base, 0.1)
    gamma = args.gamma if args.gamma is not None else 3.0 / (params.a + params.b)
    x = balanced_partition(n)
    y = perturb_partition(x, args.s, mode="shift")
    null_vals, alt_vals = [], []
    null_naive, alt_naive = [], []
    for trial in range(args.trials):
        t_seed = derive_seed(args.seed, "gmrf", trial)
        g = sample_sbm(params, x, derive_seed(t_seed, "g"))
        g_prime = sample_sbm(params, x, derive_seed(t_seed, "g2"))
        h = sample_sbm(params, y, derive_seed(t_seed, "h"))
        model = build_precision(g, gamma)
        model_prime = build_precision(g_prime, gamma)
        model_alt = build_precision(h, gamma)
        z = sample_gmrf(model, args.t, derive_seed(t_seed, "z"))
        z_prime = sample_gmrf(model_prime, args.t, derive_seed(t_seed, "z2"))
        upsilon = sample_gmrf(model_alt, args.t, derive_seed(t_seed, "u"))
        null_vals.append(gmrf_two_sample(z, z_prime))
        alt_vals.append(gmrf_two_sample(z, upsilon))
        null_naive.append(gmrf_naive_compare(z, z_prime))
        alt_naive.append(gmrf_naive_compare(z, upsilon))
    risk = cross_validated_risk(null_vals, alt_vals, seed=derive_seed(args.seed, "cv"))
    risk_naive = cross_validated_risk(null_naive, alt_naive,
                                      seed=derive_seed(args.seed, "cv-naive"))
    print(f"n={n}")
    print(f"a={params.a}")
    print(f"b={params.b}")
    print(f"gamma={gamma}")
    print(f"s={args.s}")
    print(f"t={args.t}")
    print(f"trials={args.trials}")
    print(f"cv_risk_proposed={risk}")
    print(f"cv_risk_naive={risk_naive}")
    return EXIT_ACCEPT


def _cmd_bounds(args) -> int:
    report = tst_converse(args.n, args.s, args.a, args.b)
    header = ["n", "a", "b", "s", "nu", "bc", "chi2_upper",
              "chi2_risk_quarter_flag", "tau", "gamma_upper",
              "beta_upper", "tst_risk_lower"]
    values = [args.n, args.a, args.b, args.s, report.nu, report.bc,
              report.chi2_upper, report.chi2_risk_quarter_flag, report.tau,
              report.gamma_upper,
              "" if report.beta_upper is None else report.beta_upper,
              "" if report.tst_risk_lower is None else report.tst_risk_lower]
    print(",".join(header))
    print(",".join(str(v) for v in values))
    return EXIT_ACCEPT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbmtest",
        description="Community-structure tests for sparse stochastic block models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a block model graph as an edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s", type=int, default=0,
                   help="shift the planted partition by s nodes before sampling")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("gof", help="goodness-of-fit test of a labeled graph")
    p.add_argument("--edges", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--delta", type=float, default=0.05)
    p.set_defaults(func=_cmd_gof)

    p = sub.add_parser("naive-gof", help="recover a partition and compare to the labels")
    p.add_argument("--edges", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_naive_gof)

    p = sub.add_parser("tst", help="two-sample test between two edge lists")
    p.add_argument("--edges-g", required=True)
    p.add_argument("--edges-h", required=True)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--eta", type=float, default=0.85)
    p.add_argument("--kappa", type=float, default=0.75)
    p.add_argument("--two-sided", action="store_true")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_tst)

    p = sub.add_parser("naive-tst", help="recover and compare partitions of two graphs")
    p.add_argument("--edges-g", required=True)
    p.add_argument("--edges-h", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_naive_tst)

    p = sub.add_parser("sweep", help="run a risk grid and write one CSV per scheme")
    p.add_argument("--spec", default=None, help="TOML grid description")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("dataset", help="ingest a labeled graph and run semi-synthetic tests")
    p.add_argument("--edges", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--s", type=int, default=100)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_dataset)

    p = sub.add_parser("gmrf", help="node-observation pipeline with cross-validated risk")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--s", type=int, default=200)
    p.add_argument("--t", type=int, default=400, help="samples per correlation matrix")
    p.add_argument("--trials", type=int, default=100,
                   help="statistic draws per class for the discriminant")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gmrf)

    p = sub.add_parser("bounds", help="print the theoretical bound report as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except Exception as exc:  # surfaced as exit code 2 with a message
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
