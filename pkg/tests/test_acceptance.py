"""Acceptance suite: twelve exit criteria for the package.

Each criterion is a function returning ``(passed, detail)``. Under pytest
every criterion is one test, and a PASS/FAIL line per criterion is printed
in the terminal summary. Run the file directly for the same lines without
pytest:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from rhythmseg.cli import main as cli_main
from rhythmseg.clustering import NOISE, cluster_segments
from rhythmseg.core import (
    IntervalSequence,
    Pattern,
    Segment,
    anisochrony,
    denormalize,
    extract_segments,
    mean_anisochrony,
    normalize,
    npvi,
    pattern_distance,
    rhythm_ratio,
    segment_array,
    segment_distance,
)
from rhythmseg.network import Edge, Node, TransitionNetwork, build_network, path_rhythm
from rhythmseg.quantal import integer_ratio_label, parse_ratio_label, quantality_score
from rhythmseg.synth import (
    RepeatTemplate,
    gen_quantal_geometric,
    gen_repeated,
    gen_uniform,
    template_ngrams,
)
from rhythmseg.viz import (
    PlotSpec,
    max_duration_boundary,
    min_duration_boundary,
    pattern_duration_data,
    pattern_duration_plot,
    phase_plot,
    raster_plot,
    ratio_curve,
    ratio_plot,
    triangle_data,
    triangle_plot,
)

TEMPLATE = (3, 3, 2, 4, 1)
Q = 0.5
RESULTS: dict[int, tuple[bool, str]] = {}


def repeated_dataset(seed: int = 7) -> IntervalSequence:
    return gen_repeated(RepeatTemplate(TEMPLATE, quantum=Q, noise_sigma=Q / 20, repeats=200), seed=seed)


# ---------------------------------------------------------------- criteria

def criterion_1() -> tuple[bool, str]:
    pd = normalize(Segment((0.1, 0.1, 0.2)))
    errs = [
        abs(segment_distance((1, 2, 3), (4, 5, 6)) - 9),
        max(abs(a - b) for a, b in zip(pd.pattern.weights, (0.25, 0.25, 0.5))),
        abs(pd.duration - 0.4),
        abs(pattern_distance((0.25, 0.75), (0.75, 0.25)) - 0.5),
        abs(rhythm_ratio(3, 2) - 0.6),
    ]
    return max(errs) <= 1e-12, f"max error {max(errs):.1e}"


def criterion_2() -> tuple[bool, str]:
    ok = anisochrony((0.5, 0.5)) == 0 and anisochrony((0.25, 0.75)) == 0.5
    corners = all(anisochrony(Pattern.corner(n, i)) == 1.0 for n in (2, 3, 4, 5) for i in range(n))
    r = np.linspace(0, 1, 1001)
    err = max(abs(anisochrony((x, 1 - x)) - abs(2 * x - 1)) for x in r)
    return ok and corners and err < 1e-12, f"anchors {ok}, corners exact {corners}, line max error {err:.1e}"


def criterion_3() -> tuple[bool, str]:
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(1000):
        k = int(rng.integers(2, 201))
        x = np.exp(rng.uniform(np.log(0.05), np.log(5.0), size=k))
        seq = IntervalSequence(tuple(x))
        worst = max(worst, abs(npvi(seq) - 200 * mean_anisochrony(extract_segments(seq, 2))))
    dt = time.perf_counter() - t0
    return worst < 1e-10 and dt < 5, f"max |difference| {worst:.1e}, {dt:.2f} s"


def criterion_4() -> tuple[bool, str]:
    rng = np.random.default_rng(4)
    checks = failures = 0
    for _ in range(12500):
        n = int(rng.integers(2, 7))
        x, y, z = (tuple(rng.uniform(0.01, 5.0, n)) for _ in range(3))
        dxy, dyz, dxz = segment_distance(x, y), segment_distance(y, z), segment_distance(x, z)
        p, q, s = (normalize(Segment(v)).pattern for v in (x, y, z))
        pxy, pyz, pxz = pattern_distance(p, q), pattern_distance(q, s), pattern_distance(p, s)
        scale = float(rng.uniform(0.01, 100.0))
        seg = Segment(x)
        pd = normalize(seg)
        back = denormalize(pd).values
        scaled = normalize(Segment(tuple(scale * v for v in x)))
        results = [
            # metric axioms, segment distance
            segment_distance(x, x) == 0 and dxy > 0,
            dxy == segment_distance(y, x),
            dxz <= (dxy + dyz) * (1 + 1e-12),
            # metric axioms and range, pattern distance
            pattern_distance(p, p) == 0 and pxy == pattern_distance(q, p),
            pxz <= (pxy + pyz) * (1 + 1e-12) + 1e-15 and 0 <= pxy <= 1 + 1e-12,
            # round trip
            max(abs(a - b) / b for a, b in zip(back, x)) <= 1e-12,
            # scale invariance of the pattern, homogeneity of the duration
            max(abs(a - b) for a, b in zip(scaled.pattern.weights, pd.pattern.weights)) <= 1e-12
            and abs(scaled.duration - scale * pd.duration) <= 1e-12 * scale * pd.duration,
            # duration is the L1 norm
            abs(pd.duration - float(np.abs(np.asarray(x)).sum())) <= 1e-12 * pd.duration,
        ]
        checks += len(results)
        failures += results.count(False)
    return failures == 0 and checks >= 100_000, f"{checks} checks, {failures} failures"


def criterion_5() -> tuple[bool, str]:
    t0 = time.perf_counter()
    q = 0.5
    seq = gen_repeated(RepeatTemplate((1, 3, 9), quantum=q, noise_sigma=q / 50, repeats=200), seed=5)
    lab = cluster_segments(extract_segments(seq, 2), 10)
    pts = [(c.medoid_pd.pattern.ratio, c.medoid_pd.duration / q) for c in lab.clusters]
    expected = [(0.25, 4), (0.25, 12), (0.90, 10)]
    mirrors = [(0.75, 4), (0.75, 12), (0.10, 10)]
    hit = all(any(abs(r - er) <= 0.02 and abs(d - ed) <= 0.2 for r, d in pts) for er, ed in expected)
    mirrored = any(abs(r - mr) <= 0.05 and abs(d - md) <= 0.5 for r, d in pts for mr, md in mirrors)
    dt = time.perf_counter() - t0
    shown = ", ".join(f"({r:.3f}, {d:.2f})" for r, d in pts)
    return hit and not mirrored and dt < 10, f"medoids {shown}; {dt:.2f} s"


def criterion_6() -> tuple[bool, str]:
    t0 = time.perf_counter()
    segs = extract_segments(repeated_dataset(), 2)
    lab = cluster_segments(segs, 10)
    bigrams = {(TEMPLATE[i], TEMPLATE[(i + 1) % len(TEMPLATE)]) for i in range(len(TEMPLATE))}
    labels_ok = all(
        (lbl := integer_ratio_label(c.medoid, Q)) is not None and parse_ratio_label(lbl) in bigrams
        for c in lab.clusters
    )
    truth_tuples = template_ngrams(TEMPLATE, len(segs), 2)
    classes = {t: k for k, t in enumerate(sorted(set(truth_tuples)))}
    truth = np.array([classes[t] for t in truth_tuples])
    pred = np.array(lab.labels)
    keep = pred != NOISE
    acc = 0.0
    if keep.any():
        table = np.zeros((pred.max() + 1, len(classes)), dtype=int)
        np.add.at(table, (pred[keep], truth[keep]), 1)
        rows, cols = linear_sum_assignment(-table)
        acc = table[rows, cols].sum() / keep.sum()
    dt = time.perf_counter() - t0
    ok = labels_ok and len(lab.clusters) > 0 and acc >= 0.95 and dt < 30
    return ok, f"{len(lab.clusters)} clusters, medoid labels cyclic {labels_ok}, matched {acc:.3f}, {dt:.2f} s"


def criterion_7() -> tuple[bool, str]:
    lab = cluster_segments(extract_segments(repeated_dataset(), 2), 10)
    net = build_network(lab, prune_threshold=15, quantum=Q)
    cycle = ["3:3", "3:2", "2:4", "4:1", "1:3", "3:3"]
    try:
        ids = [net.node_by_label(l).id for l in cycle]
    except KeyError as exc:
        return False, f"missing node: {exc}"
    edges = all(net.has_edge(a, b) for a, b in zip(ids[:-1], ids[1:]))
    rhythm = path_rhythm(net, ids[:4]) if edges else None
    clave = TransitionNetwork(
        nodes=(Node(0, 20, (0.5, 0.5), 3.0, "3:3"), Node(1, 20, (3 / 7, 4 / 7), 3.5, "3:4"),
               Node(2, 20, (4 / 6, 2 / 6), 3.0, "4:2"), Node(3, 20, (2 / 6, 4 / 6), 3.0, "2:4")),
        edges=(Edge(0, 1, 20), Edge(1, 2, 20), Edge(2, 3, 20)),
        prune_threshold=15,
    )
    clave_rhythm = path_rhythm(clave, [0, 1, 2, 3])
    ok = edges and rhythm == (3, 3, 2, 4, 1) and clave_rhythm == (3, 3, 4, 2, 4)
    return ok, f"cycle edges {edges}, cycle rhythm {rhythm}, clave rhythm {clave_rhythm}"


def criterion_8() -> tuple[bool, str]:
    t0 = time.perf_counter()
    q_score = quantality_score(gen_quantal_geometric(10_000, 0.2, 0.5, 0.2 / 20, seed=8), 0.2, 0.25)
    uniform = gen_uniform(10_000, 0.2, 2.0, seed=8)
    scores = [quantality_score(uniform, q, 0.25) for q in np.linspace(0.1, 0.5, 81)]
    dt = time.perf_counter() - t0
    worst = max(abs(s - 0.5) for s in scores)
    ok = q_score >= 0.95 and worst <= 0.05 and dt < 5
    return ok, f"quantal {q_score:.4f}, uniform in [{min(scores):.4f}, {max(scores):.4f}] over 81 quanta, {dt:.2f} s"


def criterion_9() -> tuple[bool, str]:
    X = segment_array(gen_uniform(100_001, 0.2, 2.0, seed=9), 2)
    d = X.sum(axis=1)
    r = X[:, 0] / d
    below = int(np.sum(d < min_duration_boundary(r, 0.2)))
    above = int(np.sum(d > max_duration_boundary(r, 2.0)))
    return below == 0 and above == 0 and len(X) == 100_000, f"{len(X)} segments, {below} below, {above} above"


def _plots(seed: int, spec: PlotSpec) -> dict[str, str]:
    seq = repeated_dataset(seed)
    s2, s3 = extract_segments(seq, 2), extract_segments(seq, 3)
    l2, l3 = cluster_segments(s2, 10), cluster_segments(s3, 10)
    n2, n3 = build_network(l2, quantum=Q), build_network(l3, quantum=Q)
    return {
        "raster": raster_plot(s2, spec),
        "phase": phase_plot(s2, spec, trajectories=True, labeling=l2),
        "ratio": ratio_plot(s2, spec),
        "pattern_duration": pattern_duration_plot(s2, l2, n2, Q, spec, interval_bounds=(0.4, 2.1),
                                                  trajectories=True),
        "triangle": triangle_plot(s3, l3, n3, Q, spec),
    }


def criterion_10() -> tuple[bool, str]:
    spec = PlotSpec()
    a, b = _plots(10, spec), _plots(10, spec)
    identical = all(a[k] == b[k] for k in a)
    segs = extract_segments(repeated_dataset(10), 2)
    diff = float(np.max(np.abs(ratio_curve(segs, spec).density - pattern_duration_data(segs, spec).top.density)))
    tri = triangle_data(extract_segments(repeated_dataset(10), 3), spec, Q)
    centroid = tri.to_px(np.eye(3)).mean(axis=0)
    off = float(np.max(np.abs(tri.to_px([1 / 3, 1 / 3, 1 / 3])[0] - centroid)))
    ok = identical and diff < 1e-9 and off < 0.5
    return ok, f"byte-identical {identical} ({len(a)} kinds), marginal diff {diff:.1e}, centroid offset {off:.2e} px"


def criterion_11() -> tuple[bool, str]:
    lab = cluster_segments(extract_segments(repeated_dataset(), 3), 10)
    center = Pattern.center(3)
    dists = [pattern_distance(c.medoid_pd.pattern, center) for c in lab.clusters]
    ok = len(dists) > 0 and min(dists) > 0.05
    return ok, f"{len(dists)} length-3 clusters, nearest medoid at pattern distance {min(dists, default=float('nan')):.3f}"


def criterion_12() -> tuple[bool, str]:
    t0 = time.perf_counter()
    with tempfile.TemporaryDirectory() as tmp:
        data, out = Path(tmp) / "rep.csv", Path(tmp) / "out"
        c1 = cli_main(["-q", "synth", "--kind", "repeated", "--template", "3,3,2,4,1", "--quantum", "0.5",
                       "--repeats", "200", "--seed", "7", "-o", str(data)])
        c2 = cli_main(["-q", "analyze", str(data), "--quantum", "0.5", "-o", str(out)])
        files = {p.name for p in out.iterdir()} if out.exists() else set()
    svgs = sum(f.endswith(".svg") for f in files)
    needed = {"measures.json", "labels.csv", "network.json"}
    dt = time.perf_counter() - t0
    ok = c1 == 0 and c2 == 0 and needed <= files and svgs >= 4 and dt < 60
    return ok, f"exit codes {c1}/{c2}, {svgs} SVG files, required outputs present {needed <= files}, {dt:.2f} s"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}


def run_criterion(k: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[k]()
    RESULTS[k] = (ok, detail)
    return ok, detail


def report_line(k: int) -> str:
    ok, detail = RESULTS[k]
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.acceptance
@pytest.mark.parametrize("k", list(CRITERIA))
def test_criterion(k):
    ok, detail = run_criterion(k)
    print(report_line(k))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k in CRITERIA:
        run_criterion(k)
        print(report_line(k))
        failed += not RESULTS[k][0]
    sys.exit(1 if failed else 0)
