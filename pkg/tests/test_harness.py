import csv
import math

import numpy as np
import pytest

from sbmtest import (
    GofConfig,
    LabeledGraph,
    Partition,
    SbmParams,
    balanced_partition,
    estimate_params,
    estimate_risk,
    grid_sweep,
    largest_connected_component,
    load_edge_list,
    load_labeled_graph,
    load_labels,
    sample_sbm,
    semi_synthetic_tst,
    snr_base,
)
from sbmtest.graph_core import Graph


class TestEstimateRisk:
    def test_gof_degenerate_params_rejected(self):
        with pytest.raises(ValueError):
            estimate_risk("gof", 100, 10, SbmParams(100, 5, 5), trials=2)

    def test_s_zero_rejected(self):
        with pytest.raises(ValueError):
            estimate_risk("gof", 100, 0, SbmParams(100, 15, 5), trials=2)

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            estimate_risk("other", 100, 10, SbmParams(100, 15, 5), trials=2)

    def test_rates_are_fractions(self):
        fa, md = estimate_risk("gof", 200, 40, SbmParams(200, 20, 5), trials=12,
                               seed=4, gof_config=GofConfig(delta=0.05))
        assert 0 <= fa <= 1 and 0 <= md <= 1

    def test_deterministic(self):
        args = ("tst", 200, 40, SbmParams(200, 25, 8))
        r1 = estimate_risk(*args, trials=6, seed=5)
        r2 = estimate_risk(*args, trials=6, seed=5)
        assert r1 == r2

    def test_strong_signal_gof_resolves(self):
        # far alternative at strong SNR: both error rates should vanish
        fa, md = estimate_risk("gof", 400, 150, SbmParams(400, 40, 8),
                               trials=15, seed=6)
        assert fa == 0.0
        assert md == 0.0


class TestGridSweep:
    def read_csv(self, path):
        with open(path, newline="") as handle:
            return list(csv.reader(handle))

    def test_empty_grid_header_only(self, tmp_path):
        outputs = grid_sweep({"schemes": ["gof"], "s_values": [],
                              "alpha_values": []}, tmp_path, seed=1)
        rows = self.read_csv(outputs["gof"])
        assert rows == [["scheme", "n", "a", "b", "alpha", "snr", "s", "M",
                         "fa", "md", "risk", "seed"]]

    def test_small_grid_contents(self, tmp_path):
        spec = {
            "n": 200,
            "trials": 5,
            "schemes": ["gof", "naive-gof"],
            "s_values": [10, 40],
            "alpha_values": [2.0, 8.0],
        }
        outputs = grid_sweep(spec, tmp_path, seed=2)
        assert set(outputs) == {"gof", "naive-gof"}
        for path in outputs.values():
            rows = self.read_csv(path)
            assert len(rows) == 5
            header = rows[0]
            for row in rows[1:]:
                record = dict(zip(header, row))
                fa, md, risk = float(record["fa"]), float(record["md"]), float(record["risk"])
                assert 0 <= fa <= 1 and 0 <= md <= 1
                assert risk == fa + md
                lam = float(record["snr"])
                alpha = float(record["alpha"])
                assert lam == pytest.approx(alpha * snr_base(200), rel=1e-9)
                for cell in row:
                    assert cell != ""

    def test_deterministic_bytes(self, tmp_path):
        spec = {"n": 120, "trials": 3, "schemes": ["tst"],
                "s_values": [20], "alpha_values": [6.0]}
        out1 = tmp_path / "one"
        out2 = tmp_path / "two"
        grid_sweep(spec, out1, seed=3)
        grid_sweep(spec, out2, seed=3)
        assert (out1 / "tst.csv").read_bytes() == (out2 / "tst.csv").read_bytes()

    def test_unknown_scheme_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            grid_sweep({"schemes": ["bogus"], "s_values": [1],
                        "alpha_values": [1.0]}, tmp_path)


class TestEdgeListIO:
    def test_path_graph(self, tmp_path):
        path = tmp_path / "edges.txt"
        path.write_text("# a comment\n0 1\n1 2\n")
        graph, names = load_edge_list(path)
        assert names is None
        assert graph.n == 3
        assert graph.edges.tolist() == [[0, 1], [1, 2]]

    def test_duplicates_and_self_loops_dropped(self, tmp_path):
        path = tmp_path / "edges.txt"
        path.write_text("0 1\n1 0\n2 2\n0 1\n")
        graph, _ = load_edge_list(path)
        assert graph.m == 1

    def test_named_nodes(self, tmp_path):
        path = tmp_path / "edges.txt"
        path.write_text("alice bob\nbob carol\n")
        graph, names = load_edge_list(path)
        assert names == ["alice", "bob", "carol"]
        assert graph.n == 3

    def test_labels_zero_maps_to_minus(self, tmp_path):
        edges = tmp_path / "edges.txt"
        edges.write_text("0 1\n1 2\n")
        labels = tmp_path / "labels.txt"
        labels.write_text("0 1\n1 0\n2 -1\n")
        graph, names = load_edge_list(edges)
        x = load_labels(labels, graph.n, names)
        assert x.labels.tolist() == [1, -1, -1]

    def test_unknown_node_in_labels(self, tmp_path):
        edges = tmp_path / "edges.txt"
        edges.write_text("0 1\n")
        labels = tmp_path / "labels.txt"
        labels.write_text("0 1\n1 -1\n7 1\n")
        graph, names = load_edge_list(edges)
        with pytest.raises(ValueError):
            load_labels(labels, graph.n, names)

    def test_non_binary_label(self, tmp_path):
        edges = tmp_path / "edges.txt"
        edges.write_text("0 1\n")
        labels = tmp_path / "labels.txt"
        labels.write_text("0 2\n1 1\n")
        graph, names = load_edge_list(edges)
        with pytest.raises(ValueError):
            load_labels(labels, graph.n, names)


class TestLcc:
    def test_connected_graph_unchanged(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        labeled = LabeledGraph(g, Partition(np.array([1, 1, -1, -1])))
        lcc = largest_connected_component(labeled)
        assert lcc.graph.n == 4
        assert lcc.graph.m == 3

    def test_keeps_largest(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        labeled = LabeledGraph(g, Partition(np.array([1, 1, -1, -1, 1])))
        lcc = largest_connected_component(labeled)
        assert lcc.graph.n == 3
        assert lcc.labels.labels.tolist() == [1, 1, -1]

    def test_names_carried(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        labeled = LabeledGraph(
            g, Partition(np.array([1, -1, 1, -1])), ["a", "b", "c", "d"])
        lcc = largest_connected_component(labeled)
        assert lcc.node_names in (["a", "b"], ["c", "d"])


class TestEstimateParams:
    def test_recovers_truth(self):
        n, a, b = 2000, 20, 4
        x = balanced_partition(n)
        params = SbmParams(n, a, b)
        for seed in range(10):
            g = sample_sbm(params, x, seed)
            est = estimate_params(LabeledGraph(g, x))
            assert est.a == pytest.approx(a, rel=0.1)
            assert est.b == pytest.approx(b, rel=0.1)

    def test_empty_graph(self):
        est = estimate_params(LabeledGraph(Graph.from_edges(4, []),
                                           Partition(np.array([1, 1, -1, -1]))))
        assert est.a == 0.0 and est.b == 0.0

    def test_single_community_rejected(self):
        with pytest.raises(ValueError):
            estimate_params(LabeledGraph(Graph.from_edges(2, [(0, 1)]),
                                         Partition(np.array([1, 1]))))


class TestSemiSynthetic:
    def test_report_shape(self):
        n = 300
        x = balanced_partition(n)
        params = SbmParams(n, 30, 5)
        g = sample_sbm(params, x, 1)
        report = semi_synthetic_tst(LabeledGraph(g, x), s=60, rho=0.8,
                                    trials=4, seed=2)
        assert set(report["fa"]) == {"tst", "naive-tst"}
        for scheme in report["fa"]:
            assert 0 <= report["fa"][scheme] <= 1
            assert 0 <= report["md"][scheme] <= 1
