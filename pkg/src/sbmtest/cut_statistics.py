"""Edge-count statistics with respect to a partition.

For a graph G and label vector x, the across count is the number of edges
joining differently labeled nodes and the within count the rest. These equal
the quadratic forms (1/4) x^T (D - G) x and (1/4) x^T (D + G) x, with D the
degree matrix; the combinatorial O(m) evaluation is used here and the
quadratic forms serve as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_core import Graph, Partition

__all__ = ["CutCounts", "cut_counts", "t_statistic"]


@dataclass(frozen=True)
class CutCounts:
    across: int
    within: int

    @property
    def total(self) -> int:
        return self.across + self.within


def _edge_products(G: Graph, x: Partition) -> np.ndarray:
    if x.n != G.n:
        raise ValueError(f"length mismatch: partition {x.n}, graph {G.n}")
    if G.m == 0:
        return np.empty(0, dtype=np.int64)
    labels = x.labels.astype(np.int64)
    return labels[G.edges[:, 0]] * labels[G.edges[:, 1]]


def cut_counts(G: Graph, x: Partition) -> CutCounts:
    """Count edges across and within the cut defined by x."""
    prods = _edge_products(G, x)
    within = int(np.count_nonzero(prods == 1))
    return CutCounts(across=G.m - within, within=within)


def t_statistic(G: Graph, x: Partition) -> int:
    """within - across; equals the sum of x_u x_v over edges (u, v)."""
    return int(_edge_products(G, x).sum())
