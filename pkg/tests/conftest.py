from __future__ import annotations

import sys

import pytest

from rhythmseg.clustering import cluster_segments
from rhythmseg.core import extract_segments
from rhythmseg.network import build_network
from rhythmseg.synth import RepeatTemplate, gen_repeated

TEMPLATE = (3, 3, 2, 4, 1)
QUANTUM = 0.5


@pytest.fixture(scope="session")
def repeated_seq():
    tpl = RepeatTemplate(TEMPLATE, quantum=QUANTUM, noise_sigma=QUANTUM / 20, repeats=200)
    return gen_repeated(tpl, seed=7)


@pytest.fixture(scope="session")
def repeated_segments(repeated_seq):
    return extract_segments(repeated_seq, 2)


@pytest.fixture(scope="session")
def repeated_labeling(repeated_segments):
    return cluster_segments(repeated_segments, min_cluster_size=10)


@pytest.fixture(scope="session")
def repeated_network(repeated_labeling):
    return build_network(repeated_labeling, prune_threshold=15, quantum=QUANTUM)


def pytest_terminal_summary(terminalreporter):
    # one PASS/FAIL line per acceptance criterion that ran in this session
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(acceptance.RESULTS):
            terminalreporter.write_line(acceptance.report_line(k))
