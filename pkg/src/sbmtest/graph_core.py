"""Partitions, sparse graphs, and stochastic block model sampling.

The model on n nodes with parameters (a, b) and a +/-1 label vector x places
an edge on the pair {u, v} independently with probability

    (a + b) / 2n + (a - b) / 2n * x_u * x_v,

so same-label pairs connect with probability a/n and cross-label pairs with
probability b/n. Sampling is done blockwise with geometric gap-skipping so the
expected cost is O(n + m) rather than O(n^2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .seeding import derive_seed, make_rng

__all__ = [
    "Partition",
    "Graph",
    "SbmParams",
    "distortion",
    "snr",
    "params_from_snr",
    "sample_sbm",
    "subsample_edges",
    "sparsify",
    "perturb_partition",
    "balanced_partition",
]


@dataclass(frozen=True)
class Partition:
    """A +/-1 label vector over n nodes."""

    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int8)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("labels must be a non-empty 1-D vector")
        if not np.all(np.abs(labels) == 1):
            raise ValueError("every label must be +1 or -1")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def is_balanced(self) -> bool:
        return int(self.labels.sum()) == 0

    def flipped(self) -> "Partition":
        return Partition(-self.labels)


def balanced_partition(n: int) -> Partition:
    """The canonical balanced partition: first half +1, second half -1."""
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 2")
    labels = np.ones(n, dtype=np.int8)
    labels[n // 2:] = -1
    return Partition(labels)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as a sorted, deduplicated edge list.

    ``edges`` is an (m, 2) integer array with edges[i, 0] < edges[i, 1],
    sorted lexicographically. A CSR-style adjacency index (``adj_offsets``,
    ``adj_neighbors``) provides O(degree) neighbor access.
    """

    n: int
    edges: np.ndarray
    adj_offsets: np.ndarray = field(repr=False, compare=False, default=None)
    adj_neighbors: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if edges.min() < 0 or edges.max() >= self.n:
                raise ValueError("edge endpoint out of range")
            if np.any(edges[:, 0] >= edges[:, 1]):
                raise ValueError("edges must satisfy u < v (no self-loops)")
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            edges = edges[order]
            dup = np.all(edges[1:] == edges[:-1], axis=1)
            if np.any(dup):
                raise ValueError("duplicate edges")
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)

        endpoints = np.concatenate((edges[:, 0], edges[:, 1]))
        others = np.concatenate((edges[:, 1], edges[:, 0]))
        counts = np.bincount(endpoints, minlength=self.n)
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        order = np.argsort(endpoints, kind="stable")
        neighbors = others[order]
        offsets.setflags(write=False)
        neighbors.setflags(write=False)
        object.__setattr__(self, "adj_offsets", offsets)
        object.__setattr__(self, "adj_neighbors", neighbors)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a graph from an arbitrary pair list.

        Endpoints are reordered to u < v, self-loops are dropped, and
        duplicates are merged.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            edges = np.sort(edges, axis=1)
            edges = edges[edges[:, 0] != edges[:, 1]]
            edges = np.unique(edges, axis=0)
        return cls(n=n, edges=edges)

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def neighbors(self, u: int) -> np.ndarray:
        return self.adj_neighbors[self.adj_offsets[u]:self.adj_offsets[u + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.adj_offsets)


@dataclass(frozen=True)
class SbmParams:
    """Block model parameters (n, a, b); edge probabilities are a/n and b/n."""

    n: int
    a: float
    b: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be nonnegative")
        if self.a > self.n or self.b > self.n:
            raise ValueError("a/n and b/n must be at most 1")


def distortion(x: Partition, y: Partition) -> int:
    """Hamming distance between label vectors, minimized over a global sign flip."""
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")
    h = int(np.count_nonzero(x.labels != y.labels))
    return min(h, x.n - h)


def snr(params: SbmParams) -> float:
    """The signal-to-noise ratio (a - b)^2 / (a + b)."""
    total = params.a + params.b
    if total == 0:
        raise ValueError("SNR undefined for a + b = 0")
    return (params.a - params.b) ** 2 / total


def params_from_snr(n: int, snr_target: float, ratio_b_over_a: float) -> SbmParams:
    """Invert the SNR relation for a fixed ratio r = b/a.

    With b = r a, the SNR is a (1 - r)^2 / (1 + r), which gives
    a = snr (1 + r) / (1 - r)^2.
    """
    if snr_target <= 0:
        raise ValueError("snr_target must be positive")
    if not 0 < ratio_b_over_a < 1:
        raise ValueError("ratio must lie in (0, 1)")
    r = ratio_b_over_a
    a = snr_target * (1 + r) / (1 - r) ** 2
    b = r * a
    if a > n:
        raise ValueError(f"required a = {a:.3f} exceeds n = {n}")
    return SbmParams(n=n, a=a, b=b)


def _bernoulli_hits(count: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Indices of successes among `count` independent Bernoulli(p) slots.

    Uses geometric gap-skipping so the cost is O(count * p) rather than
    O(count).
    """
    if count <= 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(count, dtype=np.int64)
    chunks = []
    pos = -1
    batch = max(64, int(count * p * 1.2) + 16)
    while pos < count - 1:
        gaps = rng.geometric(p, size=batch).astype(np.int64)
        positions = pos + np.cumsum(gaps)
        inside = positions[positions < count]
        chunks.append(inside)
        if inside.size < positions.size:
            break
        pos = int(positions[-1])
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def _within_pairs(idx: np.ndarray, flat: np.ndarray) -> np.ndarray:
    """Map flat indices over the c-choose-2 pairs of `idx` to node id pairs.

    Pairs (i, j) with i < j are ordered lexicographically; the flat index of
    (i, j) is i(2c - i - 1)/2 + (j - i - 1).
    """
    c = idx.size
    if flat.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    k = flat.astype(np.float64)
    i = np.floor((2 * c - 1 - np.sqrt((2 * c - 1) ** 2 - 8 * k)) / 2).astype(np.int64)
    # fix rounding at block boundaries
    base = i * (2 * c - i - 1) // 2
    too_big = base > flat
    while np.any(too_big):
        i[too_big] -= 1
        base = i * (2 * c - i - 1) // 2
        too_big = base > flat
    next_base = (i + 1) * (2 * c - i - 2) // 2
    too_small = next_base <= flat
    while np.any(too_small):
        i[too_small] += 1
        base = i * (2 * c - i - 1) // 2
        next_base = (i + 1) * (2 * c - i - 2) // 2
        too_small = next_base <= flat
    j = flat - base + i + 1
    return np.column_stack((idx[i], idx[j]))


def sample_sbm(params: SbmParams, x: Partition, seed: int) -> Graph:
    """Draw a graph from the block model with planted partition x.

    Each pair is present independently; same-label pairs with probability
    a/n, cross-label pairs with probability b/n. Expected runtime O(n + m).
    """
    if x.n != params.n:
        raise ValueError("partition length must equal params.n")
    n, a, b = params.n, params.a, params.b
    if a + b >= n / 4:
        warnings.warn(
            "a + b >= n/4: sampling is exact but the sparse regime assumptions "
            "behind the tests may not hold",
            stacklevel=2,
        )
    p_in = a / n
    p_out = b / n
    rng = make_rng(seed)
    plus = np.flatnonzero(x.labels == 1)
    minus = np.flatnonzero(x.labels == -1)

    parts = []
    for idx in (plus, minus):
        c = idx.size
        total = c * (c - 1) // 2
        flat = _bernoulli_hits(total, p_in, rng)
        parts.append(_within_pairs(idx, flat))
    total_cross = plus.size * minus.size
    flat = _bernoulli_hits(total_cross, p_out, rng)
    if flat.size:
        u = plus[flat // max(minus.size, 1)]
        v = minus[flat % max(minus.size, 1)]
        parts.append(np.column_stack((u, v)))
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges)


def subsample_edges(G: Graph, rate: float, seed: int) -> tuple[Graph, Graph]:
    """Split G into two edge-disjoint graphs by independent edge tosses.

    Each edge goes to the first graph with probability `rate`, else to the
    second; the union is exactly G.
    """
    if not 0 < rate < 1:
        raise ValueError("rate must lie in (0, 1)")
    rng = make_rng(seed)
    mask = rng.random(G.m) < rate
    return Graph(G.n, G.edges[mask]), Graph(G.n, G.edges[~mask])


def sparsify(G: Graph, rate: float, seed: int) -> Graph:
    """Keep each edge independently with probability `rate`; rate=1 is the identity."""
    if not 0 < rate <= 1:
        raise ValueError("rate must lie in (0, 1]")
    if rate == 1.0:
        return G
    rng = make_rng(seed)
    mask = rng.random(G.m) < rate
    return Graph(G.n, G.edges[mask])


def perturb_partition(x: Partition, s: int, mode: str, seed: int = 0) -> Partition:
    """Produce a partition at distortion s from x.

    `shift` mode is the deterministic balanced construction: the first
    floor(s/2) nodes of each label class swap labels, giving distortion
    2*floor(s/2) (equal to s for even s) while preserving balance. The
    `random-relabel` mode flips s uniformly chosen nodes; distortion is s
    but balance is not preserved.
    """
    if s < 0 or s > x.n // 2:
        raise ValueError("s must lie in [0, n/2]")
    if s == 0:
        return x
    labels = x.labels.copy()
    if mode == "shift":
        half = s // 2
        plus = np.flatnonzero(labels == 1)[:half]
        minus = np.flatnonzero(labels == -1)[:half]
        labels[plus] = -1
        labels[minus] = 1
    elif mode == "random-relabel":
        rng = make_rng(derive_seed(seed, "relabel", s))
        flip = rng.choice(x.n, size=s, replace=False)
        labels[flip] = -labels[flip]
    else:
        raise ValueError(f"unknown mode: {mode!r}")
    return Partition(labels)
