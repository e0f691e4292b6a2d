import math

import numpy as np
import pytest

from sbmtest import (
    Graph,
    RecoverySettings,
    balanced_partition,
    distortion,
    naive_tst,
    params_from_snr,
    perturb_partition,
    sample_sbm,
    spectral_partition,
    spectral_partition_matrix,
)
from sbmtest.seeding import make_rng


def two_cliques(n_half=5):
    n = 2 * n_half
    edges = [(i, j) for i in range(n_half) for j in range(i + 1, n_half)]
    edges += [(i, j) for i in range(n_half, n) for j in range(i + 1, n)]
    return Graph.from_edges(n, edges)


class TestSpectralPartition:
    def test_disjoint_cliques_exact(self):
        g = two_cliques()
        x_hat = spectral_partition(g)
        assert distortion(x_hat, balanced_partition(10)) == 0

    def test_labels_are_signs(self):
        g = sample_sbm(params_from_snr(200, 8.0, 1 / 3), balanced_partition(200), 1)
        x_hat = spectral_partition(g)
        assert set(np.unique(x_hat.labels)) <= {-1, 1}

    def test_deterministic_given_seed(self):
        g = sample_sbm(params_from_snr(200, 8.0, 1 / 3), balanced_partition(200), 2)
        a = spectral_partition(g, RecoverySettings(seed=9))
        b = spectral_partition(g, RecoverySettings(seed=9))
        assert np.array_equal(a.labels, b.labels)

    def test_moderate_snr_accuracy(self):
        # at SNR 2 log n the recovered partition should be within 5% of truth
        n = 1000
        params = params_from_snr(n, 2 * math.log(n), 1 / 3)
        x = balanced_partition(n)
        for seed in range(8):
            g = sample_sbm(params, x, seed)
            x_hat = spectral_partition(g, RecoverySettings(seed=seed))
            assert distortion(x_hat, x) <= 0.05 * n

    def test_isomorphism_equivariance(self):
        n = 200
        params = params_from_snr(n, 10.0, 1 / 3)
        x = balanced_partition(n)
        g = sample_sbm(params, x, 3)
        rng = make_rng(8)
        perm = rng.permutation(n)
        relabeled = Graph.from_edges(n, perm[g.edges])
        x_hat = spectral_partition(g, RecoverySettings(seed=1))
        y_hat = spectral_partition(relabeled, RecoverySettings(seed=1))
        # compare up to the relabeling and a global sign
        pushed = np.empty(n, dtype=np.int8)
        pushed[perm] = x_hat.labels
        h = int(np.count_nonzero(pushed != y_hat.labels))
        assert min(h, n - h) <= 0.02 * n

    def test_residual_tolerance(self):
        g = sample_sbm(params_from_snr(300, 12.0, 1 / 3), balanced_partition(300), 5)
        diag = {}
        spectral_partition(g, RecoverySettings(tol=1e-8), diagnostics=diag)
        assert diag["converged"]
        scale = max(abs(v) for v in diag["eigenvalues"])
        assert all(r <= 1e-8 * max(scale, 1.0) for r in diag["residuals"])

    def test_too_small(self):
        with pytest.raises(ValueError):
            spectral_partition(Graph.from_edges(1, []))


class TestMatrixVariant:
    def test_matches_graph_version_on_adjacency(self):
        g = sample_sbm(params_from_snr(120, 10.0, 1 / 3), balanced_partition(120), 6)
        A = np.zeros((120, 120))
        for u, v in g.edges:
            A[u, v] = A[v, u] = 1.0
        x_sparse = spectral_partition(g, RecoverySettings(tau=0.0, seed=2))
        x_dense = spectral_partition_matrix(A, RecoverySettings(tau=0.0, seed=2))
        assert distortion(x_sparse, x_dense) <= 2

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            spectral_partition_matrix(np.zeros((3, 4)))


class TestNaiveTst:
    def test_same_graph_accepts(self):
        g = two_cliques(8)
        result = naive_tst(g, g, s=2)
        assert not result.reject
        assert result.statistic == 0

    def test_planted_change_rejects(self):
        n = 400
        params = params_from_snr(n, 20.0, 1 / 3)
        x = balanced_partition(n)
        y = perturb_partition(x, n // 2, "shift")
        g = sample_sbm(params, x, 1)
        h = sample_sbm(params, y, 2)
        assert naive_tst(g, h, s=10).reject

    def test_n_mismatch(self):
        with pytest.raises(ValueError):
            naive_tst(two_cliques(4), two_cliques(5), s=2)
