from __future__ import annotations

import json

import pytest

from rhythmseg.clustering import NOISE
from rhythmseg.network import (
    DEFAULT_PRUNE_THRESHOLD,
    Edge,
    Node,
    TransitionNetwork,
    build_network,
    count_transitions,
    path_rhythm,
)


def test_count_transitions_within_sequences_only():
    labels = [0, 1, 0, 1, 1]
    origins = [("a", 0), ("a", 1), ("a", 2), ("b", 0), ("b", 1)]
    counts = count_transitions(labels, origins)
    assert counts == {(0, 1): 1, (1, 0): 1, (1, 1): 1}


def test_noise_is_not_bridged():
    labels = [0, NOISE, 1, 1]
    origins = [("a", 0), ("a", 1), ("a", 2), ("a", 3)]
    assert count_transitions(labels, origins) == {(1, 1): 1}


def test_origin_order_does_not_matter():
    labels = [1, 0, 1]
    origins = [("a", 2), ("a", 1), ("a", 0)]
    assert count_transitions(labels, origins) == {(1, 0): 1, (0, 1): 1}


@pytest.mark.parametrize(
    "labels,origins",
    [([0], []), ([0, 1], [("a", 0), None]), ([0, 1], [("a", 0), ("a", 0)])],
)
def test_count_transitions_validation(labels, origins):
    with pytest.raises(ValueError):
        count_transitions(labels, origins)


def test_default_threshold():
    assert DEFAULT_PRUNE_THRESHOLD == 15


def test_repeated_network(repeated_labeling, repeated_network):
    net = repeated_network
    assert len(net.nodes) == len(repeated_labeling.clusters)
    labels = sorted(nd.label for nd in net.nodes)
    assert labels == ["1:3", "2:4", "3:2", "3:3", "4:1"]
    cycle = ["3:3", "3:2", "2:4", "4:1", "1:3", "3:3"]
    ids = [net.node_by_label(l).id for l in cycle]
    for a, b in zip(ids[:-1], ids[1:]):
        assert net.has_edge(a, b)
    assert len(net.edges) == 5
    assert all(e.count >= 15 for e in net.edges)
    # four nodes span the five intervals of one template cycle
    assert path_rhythm(net, ids[:4]) == (3, 3, 2, 4, 1)


def test_pruning_keeps_nodes(repeated_labeling):
    net = build_network(repeated_labeling, prune_threshold=10_000)
    assert net.edges == ()
    assert len(net.nodes) == len(repeated_labeling.clusters)


def test_pruning_threshold_is_inclusive(repeated_labeling):
    counts = count_transitions(repeated_labeling.labels, repeated_labeling.origins)
    lowest = min(counts.values())
    net = build_network(repeated_labeling, prune_threshold=lowest)
    assert len(net.edges) == len(counts)


def test_bad_threshold(repeated_labeling):
    with pytest.raises(ValueError):
        build_network(repeated_labeling, prune_threshold=0)


def hand_network():
    nodes = (
        Node(0, 20, (0.5, 0.5), 3.0, "3:3"),
        Node(1, 20, (3 / 7, 4 / 7), 3.5, "3:4"),
        Node(2, 20, (4 / 6, 2 / 6), 3.0, "4:2"),
        Node(3, 20, (2 / 6, 4 / 6), 3.0, None),
    )
    edges = (Edge(0, 1, 30), Edge(1, 2, 30), Edge(2, 3, 30))
    return TransitionNetwork(nodes, edges, 15)


def test_path_rhythm_labels_from_quantum():
    net = hand_network()
    assert path_rhythm(net, [0, 1, 2, 3], quantum=0.5) == (3, 3, 4, 2, 4)


def test_path_rhythm_needs_labels_and_edges():
    net = hand_network()
    with pytest.raises(ValueError):
        path_rhythm(net, [2, 3])
    with pytest.raises(ValueError):
        path_rhythm(net, [0, 2])
    with pytest.raises(ValueError):
        path_rhythm(net, [])


def test_to_dict_shape(repeated_network):
    d = repeated_network.to_dict()
    assert list(d) == ["nodes", "edges", "prune_threshold"]
    assert list(d["nodes"][0]) == ["id", "size", "r", "duration", "label"]
    assert list(d["edges"][0]) == ["from", "to", "count"]
    json.dumps(d)


def test_node_lookup(repeated_network):
    with pytest.raises(KeyError):
        repeated_network.node(99)
    with pytest.raises(KeyError):
        repeated_network.node_by_label("9:9")


def loop_labels(reps):
    labels = [0, 1, 2] * reps
    return labels, [("s", k) for k in range(len(labels))]


def test_deterministic_loop_network():
    labels, origins = loop_labels(100)
    counts = count_transitions(labels, origins)
    assert counts == {(0, 1): 100, (1, 2): 100, (2, 0): 99}
    # count conservation: every successive pair of clustered segments lands on one edge
    assert sum(counts.values()) == len(labels) - 1


def test_all_noise_gives_no_edges():
    labels, origins = loop_labels(10)
    assert count_transitions([NOISE] * len(labels), origins) == {}


def test_self_loops_counted():
    assert count_transitions([4, 4, 4], [("s", 0), ("s", 1), ("s", 2)]) == {(4, 4): 2}


def test_prune_monotone(repeated_labeling):
    sizes = [len(build_network(repeated_labeling, prune_threshold=t).edges) for t in (1, 15, 199, 200, 201)]
    assert sizes == sorted(sizes, reverse=True)


def test_network_is_deterministic(repeated_labeling):
    assert build_network(repeated_labeling, quantum=0.5) == build_network(repeated_labeling, quantum=0.5)


def test_single_node_path():
    net = TransitionNetwork((Node(0, 12, (0.4, 0.6), 2.5, "2:3"),), (), 15)
    assert path_rhythm(net, [0]) == (2, 3)
