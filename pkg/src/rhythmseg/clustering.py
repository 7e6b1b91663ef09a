"""Density-based clustering of segments (HDBSCAN*).

The pipeline runs in raw segment space under the taxicab metric:

1. core distance of every point: distance to its ``min_samples``-th nearest
   neighbour, counting the point itself;
2. mutual reachability ``max(core_i, core_j, d(i, j))``;
3. exact minimum spanning tree by Prim's algorithm (O(n^2) time, O(n) memory);
4. single-linkage dendrogram, condensed with ``min_cluster_size``;
5. excess-of-mass cluster selection; everything else is noise (-1).

Ties are always resolved by input index, so identical input gives identical
labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import PatternDuration, Segment, normalize

__all__ = [
    "NOISE",
    "ClusterSummary",
    "ClusterLabeling",
    "pairwise_l1",
    "hdbscan_labels",
    "cluster_segments",
    "medoid",
    "medoid_index",
]

NOISE = -1
_CHUNK_ENTRIES = 1 << 22


def pairwise_l1(X: np.ndarray, Y: np.ndarray | None = None) -> np.ndarray:
    """Taxicab distance matrix; the same arithmetic the clusterer uses row by row."""
    X = np.asarray(X, dtype=float)
    Y = X if Y is None else np.asarray(Y, dtype=float)
    out = np.empty((len(X), len(Y)))
    for i in range(len(X)):
        out[i] = _l1_row(Y, X[i])
    return out


def _l1_row(X: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.abs(X - x).sum(axis=1)


def _row_source(data: np.ndarray, precomputed: bool) -> Callable[[int], np.ndarray]:
    if precomputed:
        return lambda i: np.asarray(data[i], dtype=float)
    return lambda i: _l1_row(data, data[i])


def _core_distances(row: Callable[[int], np.ndarray], n: int, k: int) -> np.ndarray:
    core = np.empty(n)
    for i in range(n):
        core[i] = np.partition(row(i), k - 1)[k - 1]
    return core


def _prim_mst(row: Callable[[int], np.ndarray], core: np.ndarray) -> np.ndarray:
    """MST of the mutual-reachability graph as rows ``(a, b, weight)``.

    ``np.argmin`` returns the first minimum, so ties go to the lowest index.
    """
    n = len(core)
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    parent = np.zeros(n, dtype=int)
    edges = np.empty((n - 1, 3))
    current = 0
    in_tree[0] = True
    for e in range(n - 1):
        mr = np.maximum(np.maximum(row(current), core), core[current])
        closer = (mr < best) & ~in_tree
        best[closer] = mr[closer]
        parent[closer] = current
        cand = np.where(in_tree, np.inf, best)
        nxt = int(np.argmin(cand))
        edges[e] = (parent[nxt], nxt, best[nxt])
        in_tree[nxt] = True
        current = nxt
    return edges


def _single_linkage(mst: np.ndarray, n: int) -> np.ndarray:
    """Dendrogram rows ``(left, right, distance, size)``; merged nodes get ids n, n+1, ..."""
    order = np.argsort(mst[:, 2], kind="stable")
    parent = np.arange(2 * n - 1)
    size = np.ones(2 * n - 1, dtype=int)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    out = np.empty((n - 1, 4))
    for k, idx in enumerate(order):
        a, b, w = mst[idx]
        ra, rb = find(int(a)), find(int(b))
        new = n + k
        parent[ra] = parent[rb] = new
        size[new] = size[ra] + size[rb]
        out[k] = (ra, rb, w, size[new])
    return out


def _bfs(hierarchy: np.ndarray, root: int, n: int) -> list[int]:
    result: list[int] = []
    queue = [root]
    while queue:
        result.extend(queue)
        queue = [int(c) for x in queue if x >= n for c in hierarchy[x - n, :2]]
    return result


def _condense(hierarchy: np.ndarray, n: int, min_cluster_size: int) -> list[tuple[int, int, float, int]]:
    """Condensed tree rows ``(parent, child, lambda, child_size)``.

    Cluster ids start at ``n`` (the root); point ids are ``0..n-1``.
    """
    root = 2 * n - 2
    relabel = np.zeros(root + 1, dtype=int)
    relabel[root] = n
    next_label = n + 1
    ignore = np.zeros(root + 1, dtype=bool)
    rows: list[tuple[int, int, float, int]] = []

    def count(node: int) -> int:
        return int(hierarchy[node - n, 3]) if node >= n else 1

    def shed(node: int, parent: int, lam: float) -> None:
        for sub in _bfs(hierarchy, node, n):
            if sub < n:
                rows.append((parent, sub, lam, 1))
            ignore[sub] = True

    for node in _bfs(hierarchy, root, n):
        if node < n or ignore[node]:
            continue
        left, right, dist, _ = hierarchy[node - n]
        left, right = int(left), int(right)
        lam = 1.0 / dist if dist > 0 else np.inf
        lc, rc = count(left), count(right)
        p = int(relabel[node])
        if lc >= min_cluster_size and rc >= min_cluster_size:
            relabel[left] = next_label
            rows.append((p, next_label, lam, lc))
            relabel[right] = next_label + 1
            rows.append((p, next_label + 1, lam, rc))
            next_label += 2
        elif lc < min_cluster_size and rc < min_cluster_size:
            shed(left, p, lam)
            shed(right, p, lam)
        elif lc < min_cluster_size:
            relabel[right] = p
            shed(left, p, lam)
        else:
            relabel[left] = p
            shed(right, p, lam)
    return rows


def _stabilities(rows: list[tuple[int, int, float, int]], n: int) -> dict[int, float]:
    birth: dict[int, float] = {n: 0.0}
    for parent, child, lam, _ in rows:
        if child >= n:
            birth[child] = lam
    stability = {c: 0.0 for c in birth}
    for parent, child, lam, size in rows:
        b = birth[parent]
        # lambda == birth (both inf for duplicate points) contributes nothing
        stability[parent] += 0.0 if lam == b else (lam - b) * size
    return stability


def _select_eom(rows: list[tuple[int, int, float, int]], n: int, allow_single_cluster: bool) -> list[int]:
    stability = _stabilities(rows, n)
    children: dict[int, list[int]] = {}
    for parent, child, _, _ in rows:
        if child >= n:
            children.setdefault(parent, []).append(child)
    nodes = sorted(stability, reverse=True)
    if not allow_single_cluster:
        nodes = nodes[:-1]
    selected = {c: True for c in nodes}
    # children always carry larger ids than their parent, so this is bottom-up
    for node in nodes:
        sub = sum(stability[c] for c in children.get(node, []))
        if sub > stability[node]:
            selected[node] = False
            stability[node] = sub
        else:
            stack = list(children.get(node, []))
            while stack:
                c = stack.pop()
                selected[c] = False
                stack.extend(children.get(c, []))
    return sorted(c for c, keep in selected.items() if keep)


def _label_points(rows: list[tuple[int, int, float, int]], n: int, clusters: list[int]) -> np.ndarray:
    chosen = set(clusters)
    up: dict[int, int] = {}
    for parent, child, _, _ in rows:
        up[child] = parent
    label_of = {c: i for i, c in enumerate(clusters)}
    labels = np.full(n, NOISE, dtype=int)
    for p in range(n):
        node = p
        while node in up:
            node = up[node]
            if node in chosen:
                labels[p] = label_of[node]
                break
    return labels


def hdbscan_labels(
    data: np.ndarray,
    min_cluster_size: int = 10,
    min_samples: int | None = None,
    precomputed: bool = False,
    allow_single_cluster: bool = False,
) -> np.ndarray:
    """HDBSCAN* flat labels for points (taxicab) or a precomputed distance matrix.

    ``min_samples`` defaults to ``min_cluster_size``.
    """
    if min_cluster_size < 2:
        raise ValueError(f"min_cluster_size must be >= 2, got {min_cluster_size}")
    k = min_cluster_size if min_samples is None else min_samples
    if k < 1:
        raise ValueError(f"min_samples must be >= 1, got {k}")
    data = np.asarray(data, dtype=float)
    n = len(data)
    if precomputed and data.shape != (n, n):
        raise ValueError(f"precomputed distances must be square, got shape {data.shape}")
    if n < max(min_cluster_size, 2):
        return np.full(n, NOISE, dtype=int)
    k = min(k, n)
    row = _row_source(data, precomputed)
    core = _core_distances(row, n, k)
    mst = _prim_mst(row, core)
    hierarchy = _single_linkage(mst, n)
    rows = _condense(hierarchy, n, min_cluster_size)
    clusters = _select_eom(rows, n, allow_single_cluster)
    return _label_points(rows, n, clusters)


def medoid_index(X: np.ndarray) -> int:
    """Index of the row with the smallest summed L1 distance; first one wins ties."""
    X = np.asarray(X, dtype=float)
    if len(X) == 0:
        raise ValueError("medoid of an empty set is undefined")
    totals = np.empty(len(X))
    # keep the (chunk, n, dim) temporary near 4M entries
    chunk = max(1, _CHUNK_ENTRIES // X.size)
    for start in range(0, len(X), chunk):
        block = X[start:start + chunk]
        totals[start:start + len(block)] = np.abs(block[:, None, :] - X[None, :, :]).sum(axis=(1, 2))
    return int(np.argmin(totals))


def medoid(members: Sequence[Segment]) -> Segment:
    if len(members) == 0:
        raise ValueError("medoid of an empty set is undefined")
    return members[medoid_index(np.asarray([m.values for m in members]))]


@dataclass(frozen=True)
class ClusterSummary:
    id: int
    size: int
    medoid: Segment
    medoid_pd: PatternDuration


@dataclass(frozen=True)
class ClusterLabeling:
    """Per-segment labels (``-1`` is noise) plus one summary per cluster."""

    labels: tuple[int, ...]
    clusters: tuple[ClusterSummary, ...]
    origins: tuple[tuple[str, int] | None, ...] = ()
    min_cluster_size: int = 10

    @property
    def n_noise(self) -> int:
        return sum(1 for v in self.labels if v == NOISE)

    def cluster(self, cid: int) -> ClusterSummary:
        for c in self.clusters:
            if c.id == cid:
                return c
        raise KeyError(cid)


def cluster_segments(
    segments: Sequence[Segment],
    min_cluster_size: int = 10,
    min_samples: int | None = None,
    distances: np.ndarray | None = None,
) -> ClusterLabeling:
    """Cluster equal-length segments with HDBSCAN* under the taxicab metric.

    A precomputed ``distances`` matrix may replace the metric; with
    ``pairwise_l1`` of the same segments it gives identical labels.
    """
    if len(segments) == 0:
        return ClusterLabeling((), (), (), min_cluster_size)
    lengths = {len(s) for s in segments}
    if len(lengths) != 1:
        raise ValueError(f"segments have mixed lengths: {sorted(lengths)}")
    X = np.asarray([s.values for s in segments], dtype=float)
    if distances is not None:
        labels = hdbscan_labels(distances, min_cluster_size, min_samples, precomputed=True)
    else:
        labels = hdbscan_labels(X, min_cluster_size, min_samples)
    summaries = []
    for cid in range(labels.max() + 1 if len(labels) else 0):
        idx = np.flatnonzero(labels == cid)
        m = segments[int(idx[medoid_index(X[idx])])]
        summaries.append(ClusterSummary(cid, len(idx), m, normalize(m)))
    return ClusterLabeling(
        labels=tuple(int(v) for v in labels),
        clusters=tuple(summaries),
        origins=tuple(s.origin for s in segments),
        min_cluster_size=min_cluster_size,
    )
