"""Cluster transition networks.

Clusters become nodes; an edge ``i -> j`` counts how often a segment in
cluster ``i`` is directly followed (next start index, same sequence) by a
segment in cluster ``j``. Noise segments break the chain: a transition into
or out of noise is dropped, never bridged. Edges below the prune threshold
are removed; nodes are always kept.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .clustering import NOISE, ClusterLabeling
from .quantal import integer_ratio_label, parse_ratio_label

__all__ = [
    "DEFAULT_PRUNE_THRESHOLD",
    "Node",
    "Edge",
    "TransitionNetwork",
    "count_transitions",
    "build_network",
    "path_rhythm",
]

DEFAULT_PRUNE_THRESHOLD = 15


@dataclass(frozen=True)
class Node:
    id: int
    size: int
    pattern: tuple[float, ...]
    duration: float
    label: str | None = None

    @property
    def r(self) -> float:
        return self.pattern[0]


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    count: int


@dataclass(frozen=True)
class TransitionNetwork:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    prune_threshold: int

    def node(self, nid: int) -> Node:
        for nd in self.nodes:
            if nd.id == nid:
                return nd
        raise KeyError(nid)

    def has_edge(self, source: int, target: int) -> bool:
        return any(e.source == source and e.target == target for e in self.edges)

    def node_by_label(self, label: str) -> Node:
        hits = [nd for nd in self.nodes if nd.label == label]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} nodes carry the label {label!r}")
        return hits[0]

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"id": nd.id, "size": nd.size, "r": nd.r, "duration": nd.duration, "label": nd.label}
                for nd in self.nodes
            ],
            "edges": [{"from": e.source, "to": e.target, "count": e.count} for e in self.edges],
            "prune_threshold": self.prune_threshold,
        }


def count_transitions(
    labels: Sequence[int],
    origins: Sequence[tuple[str, int] | None],
) -> Counter:
    """Unpruned ``(from, to) -> count`` over successive same-sequence segments."""
    if len(labels) != len(origins):
        raise ValueError(f"{len(labels)} labels but {len(origins)} segment origins")
    if any(o is None for o in origins):
        raise ValueError("every segment needs an origin to define successors")
    where = {o: i for i, o in enumerate(origins)}
    if len(where) != len(origins):
        raise ValueError("segment origins are not unique")
    counts: Counter = Counter()
    for i, (sid, start) in enumerate(origins):
        j = where.get((sid, start + 1))
        if j is None:
            continue
        a, b = labels[i], labels[j]
        if a != NOISE and b != NOISE:
            counts[(a, b)] += 1
    return counts


def build_network(
    labeling: ClusterLabeling,
    origins: Sequence[tuple[str, int] | None] | None = None,
    prune_threshold: int = DEFAULT_PRUNE_THRESHOLD,
    quantum: float | None = None,
) -> TransitionNetwork:
    """Nodes from clusters, edges from successive segments, pruned below ``prune_threshold``.

    ``origins`` defaults to the ones stored on the labeling. With a
    ``quantum`` the nodes carry the integer-ratio label of their medoid.
    """
    if prune_threshold < 1:
        raise ValueError(f"prune_threshold must be >= 1, got {prune_threshold}")
    origins = labeling.origins if origins is None else tuple(origins)
    counts = count_transitions(labeling.labels, origins)
    nodes = tuple(
        Node(
            id=c.id,
            size=c.size,
            pattern=c.medoid_pd.pattern.weights,
            duration=c.medoid_pd.duration,
            label=integer_ratio_label(c.medoid, quantum) if quantum else None,
        )
        for c in labeling.clusters
    )
    edges = tuple(
        Edge(a, b, n) for (a, b), n in sorted(counts.items()) if n >= prune_threshold
    )
    return TransitionNetwork(nodes, edges, prune_threshold)


def path_rhythm(
    network: TransitionNetwork,
    node_path: Sequence[int],
    quantum: float | None = None,
) -> tuple[int, ...]:
    """Rhythm (in quanta) produced by walking ``node_path`` through the network.

    The first node contributes all of its multiples, every later node only
    its last one. Nodes without a label are labeled from their medoid when a
    ``quantum`` is given.
    """
    if not node_path:
        raise ValueError("empty path")
    for a, b in zip(node_path[:-1], node_path[1:]):
        if not network.has_edge(a, b):
            raise ValueError(f"no edge {a} -> {b} in the network")
    multiples = []
    for nid in node_path:
        nd = network.node(nid)
        label = nd.label
        if label is None and quantum is not None:
            seg = tuple(p * nd.duration for p in nd.pattern)
            label = integer_ratio_label(seg, quantum)
        if label is None:
            raise ValueError(f"node {nid} has no integer-ratio label")
        multiples.append(parse_ratio_label(label))
    rhythm = list(multiples[0])
    rhythm.extend(m[-1] for m in multiples[1:])
    return tuple(rhythm)
