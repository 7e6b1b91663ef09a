"""Command-line interface: ``rhythmseg {synth,measure,cluster,plot,analyze}``.

Exit status is 0 on success, 1 for usage errors and 2 for data errors
(unreadable or malformed input, parameters the data cannot satisfy). All
diagnostics go to standard error; only requested results go to standard
output.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .clustering import cluster_segments
from .io import (
    Corpus,
    LoadError,
    attach_quanta,
    compute_measures,
    corpus_segments,
    load_cycles,
    load_intervals,
    load_onsets,
    write_intervals,
    write_json,
    write_labels,
    write_network,
)
from .network import DEFAULT_PRUNE_THRESHOLD, build_network
from .quantal import DEFAULT_THETA
from .synth import (
    RepeatTemplate,
    gen_grid_events,
    gen_quantal_geometric,
    gen_quantal_uniform,
    gen_repeated,
    gen_uniform,
)
from .viz import (
    PlotSpec,
    pattern_duration_plot,
    phase_plot,
    raster_plot,
    ratio_plot,
    triangle_plot,
)

__all__ = ["main", "build_parser"]

log = logging.getLogger("rhythmseg")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

SYNTH_KINDS = ("uniform", "geometric", "quantal-uniform", "repeated", "grid")
PLOT_KINDS = ("raster", "phase", "ratio", "pattern-duration", "triangle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; route that to status 1
    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _bounds(text: str) -> str | tuple[float, float]:
    if text in ("auto", "none"):
        return text
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto', 'none' or 'LO,HI', got {text!r}") from None
    return lo, hi


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input")
    g.add_argument("input", type=Path, help="interval CSV (sequence_id,interval_s) or onset CSV")
    g.add_argument("--format", choices=("auto", "intervals", "onsets"), default="auto",
                   help="input layout; auto picks intervals when the header has interval_s")
    g.add_argument("--onset-col", default="onset_s")
    g.add_argument("--instrument-col", default="instrument")
    g.add_argument("--song-col", default="song")
    g.add_argument("--max-bad-fraction", type=float, default=0.0,
                   help="tolerated fraction of unparsable onset rows")
    g.add_argument("--song", help="analyze only the sequences of this song")
    q = p.add_argument_group("quantum")
    q.add_argument("--quantum", type=float, help="quantum in seconds (overrides --cycles)")
    q.add_argument("--cycles", type=Path, help="cycle CSV (song,cycle_onset_s)")
    q.add_argument("--subdivisions", type=int, default=16, help="quanta per metrical cycle")


def _add_clustering(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("clustering")
    g.add_argument("--min-cluster-size", type=int, default=10)
    g.add_argument("--min-samples", type=int, default=None)
    g.add_argument("--prune-threshold", type=int, default=DEFAULT_PRUNE_THRESHOLD)


def _add_plot_style(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("plot")
    g.add_argument("--annotation-max", type=int, default=6,
                   help="largest multiple annotated on quantal pattern-duration plots")
    g.add_argument("--bandwidth", type=float, default=None, help="KDE bandwidth (default Silverman)")
    g.add_argument("--bounds", type=_bounds, default="auto",
                   help="interval bounds for duration boundaries: auto, none or LO,HI")
    g.add_argument("--width", type=int, default=480)
    g.add_argument("--height", type=int, default=400)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rhythmseg", description="Rhythmic segment analysis of interval sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-q", "--quiet", action="store_true", help="only report errors")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="generate a synthetic dataset as interval CSV")
    p.add_argument("--kind", choices=SYNTH_KINDS, required=True)
    p.add_argument("--count", type=int, default=2000, help="number of intervals (non-repeated kinds)")
    p.add_argument("--repeats", type=int, default=200, help="template repetitions (repeated kind)")
    p.add_argument("--template", type=_int_list, default=(3, 3, 2, 4, 1),
                   help="comma-separated multiples for the repeated kind")
    p.add_argument("--quantum", type=float, default=None,
                   help="quantum or grid step in seconds (default 0.2, or 0.5 for repeated)")
    p.add_argument("--sigma", type=float, default=None, help="noise sd in seconds (default quantum/20)")
    p.add_argument("--lo", type=float, default=0.2, help="lower bound for uniform intervals")
    p.add_argument("--hi", type=float, default=2.0, help="upper bound for uniform intervals")
    p.add_argument("--success-p", type=float, default=0.5, help="geometric success probability")
    p.add_argument("--max-multiple", type=int, default=11, help="largest multiple (quantal-uniform)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, required=True, help="interval CSV to write ('-' for stdout)")

    p = sub.add_parser("measure", help="print nPVI, mean anisochrony and quantality")
    _add_input(p)
    p.add_argument("--n", type=int, action="append", help="segment length(s) for anisochrony (default 2 and 3)")
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--output-format", choices=("json", "table"), default="json")

    p = sub.add_parser("cluster", help="cluster segments and build the transition network")
    _add_input(p)
    p.add_argument("--n", type=int, default=2, help="segment length")
    _add_clustering(p)
    p.add_argument("--labels", type=Path, required=True, help="labels CSV to write")
    p.add_argument("--network", type=Path, help="network JSON to write")

    p = sub.add_parser("plot", help="draw one plot as SVG")
    _add_input(p)
    p.add_argument("--kind", choices=PLOT_KINDS, required=True)
    p.add_argument("--n", type=int, default=None,
                   help="segment length; the triangle needs 3, every other kind 2 (default)")
    p.add_argument("--clusters", action="store_true",
                   help="color by cluster and overlay the transition network")
    p.add_argument("--trajectories", action="store_true", help="connect successive segments")
    _add_clustering(p)
    _add_plot_style(p)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("analyze", help="full pipeline into an output directory")
    _add_input(p)
    p.add_argument("--n", type=int, default=2, help="segment length for clustering and the network")
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    _add_clustering(p)
    _add_plot_style(p)
    p.add_argument("-o", "--outdir", type=Path, required=True)
    return parser


# ---------------------------------------------------------------- loading

def _sniff_intervals(path: Path) -> bool:
    try:
        with path.open(encoding="utf-8") as fh:
            head = fh.readline()
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror or exc}") from exc
    return "interval_s" in [h.strip() for h in head.split(",")]


def _load(args: argparse.Namespace) -> tuple[Corpus, float | None]:
    """Corpus selected by the input flags and the single quantum that applies to it."""
    fmt = args.format
    if fmt == "auto":
        fmt = "intervals" if _sniff_intervals(args.input) else "onsets"
    if fmt == "intervals":
        corpus = load_intervals(args.input)
    else:
        corpus = load_onsets(args.input, args.onset_col, args.instrument_col or None,
                             args.song_col or None, args.max_bad_fraction)
    if args.cycles is not None:
        corpus = attach_quanta(corpus, load_cycles(args.cycles, args.max_bad_fraction), args.subdivisions)
    if args.song is not None:
        keep = tuple(s for s in corpus.sequences if s.song == args.song)
        if not keep:
            raise LoadError(f"{args.input}: no sequences for song {args.song!r}")
        corpus = Corpus(keep, corpus.quanta, corpus.source, corpus.dropped, corpus.warnings)
    for w in corpus.warnings:
        log.warning("%s", w)
    if not corpus.sequences:
        raise LoadError(f"{args.input}: no sequences found")

    if args.quantum is not None:
        if not args.quantum > 0:
            raise LoadError(f"--quantum must be positive, got {args.quantum}")
        return corpus, args.quantum
    found = {corpus.quantum_for(s) for s in corpus.sequences}
    if len(found) == 1:
        return corpus, found.pop()
    log.warning("sequences carry different quanta %s; pass --song or --quantum to use quanta axes",
                sorted(q for q in found if q is not None))
    return corpus, None


def _interval_bounds(corpus: Corpus, bounds) -> tuple[float, float] | None:
    if bounds == "none":
        return None
    if bounds == "auto":
        values = [v for s in corpus.sequences for v in s.intervals]
        return (min(values), max(values)) if values else None
    return bounds


def _spec(args: argparse.Namespace, quantum: float | None) -> PlotSpec:
    return PlotSpec(width=args.width, height=args.height, quantum=quantum,
                    annotation_max=args.annotation_max, bandwidth=args.bandwidth)


# ---------------------------------------------------------------- commands

def _synth(args: argparse.Namespace) -> dict:
    kind = args.kind
    if kind == "uniform":
        seq = gen_uniform(args.count, args.lo, args.hi, seed=args.seed)
    elif kind == "geometric":
        seq = gen_quantal_geometric(args.count, args.quantum or 0.2, args.success_p, args.sigma, seed=args.seed)
    elif kind == "quantal-uniform":
        seq = gen_quantal_uniform(args.count, args.quantum or 0.2, args.max_multiple, args.sigma, seed=args.seed)
    elif kind == "grid":
        seq = gen_grid_events(args.count, args.quantum or 0.2, args.sigma, seed=args.seed)
    else:
        tpl = RepeatTemplate(args.template, args.quantum or 0.5, args.sigma, args.repeats)
        seq = gen_repeated(tpl, seed=args.seed)
    if str(args.output) == "-":
        sys.stdout.write("sequence_id,interval_s\n")
        sys.stdout.writelines(f"{seq.id},{v!r}\n" for v in seq.intervals)
    else:
        write_intervals([seq], args.output)
        log.info("wrote %d intervals to %s", len(seq), args.output)
    return {"intervals": len(seq)}


def _measure(args: argparse.Namespace) -> None:
    corpus, quantum = _load(args)
    lengths = tuple(args.n) if args.n else (2, 3)
    m = compute_measures(corpus, lengths, quantum, args.theta)
    if args.output_format == "json":
        json.dump(m, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return

    def show(v) -> str:
        return "n/a" if v is None else f"{v:.6g}"

    rows = [("npvi", show(m["npvi"]))]
    rows += [(f"mean_anisochrony[n={n}]", show(v)) for n, v in m["mean_anisochrony"].items()]
    rows += [(f"quantality.{k}", show(v)) for k, v in m["quantality"].items()]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        sys.stdout.write(f"{k.ljust(width)}  {v}\n")


def _cluster(corpus: Corpus, quantum: float | None, n: int, args: argparse.Namespace):
    segs = corpus_segments(corpus, n)
    if not segs:
        raise LoadError(f"no length-{n} segments: every sequence is shorter than {n} intervals")
    t0 = time.perf_counter()
    labeling = cluster_segments(segs, args.min_cluster_size, args.min_samples)
    network = build_network(labeling, prune_threshold=args.prune_threshold, quantum=quantum)
    log.info("n=%d: %d segments, %d clusters, %d noise, %d edges (%.2f s)", n, len(segs),
             len(labeling.clusters), labeling.n_noise, len(network.edges), time.perf_counter() - t0)
    return segs, labeling, network


def _cluster_cmd(args: argparse.Namespace) -> None:
    corpus, quantum = _load(args)
    _, labeling, network = _cluster(corpus, quantum, args.n, args)
    write_labels(labeling, args.labels)
    if args.network is not None:
        write_network(network, args.network)


def _plot_length(kind: str) -> int:
    return 3 if kind == "triangle" else 2


def _render(kind: str, corpus: Corpus, quantum: float | None, args: argparse.Namespace,
            clusters: bool, trajectories: bool, cached: dict | None = None) -> str:
    spec = _spec(args, quantum)
    n = _plot_length(kind)
    labeling = network = None
    if clusters and kind in ("phase", "pattern-duration", "triangle"):
        if cached is not None and n in cached:
            segs, labeling, network = cached[n]
        else:
            segs, labeling, network = _cluster(corpus, quantum, n, args)
    else:
        segs = corpus_segments(corpus, n)
    if not segs:
        raise LoadError(f"no length-{n} segments to plot")
    if kind == "raster":
        return raster_plot(segs, spec)
    if kind == "phase":
        return phase_plot(segs, spec, trajectories=trajectories, labeling=labeling)
    if kind == "ratio":
        return ratio_plot(segs, spec)
    if kind == "pattern-duration":
        return pattern_duration_plot(segs, labeling, network, quantum, spec,
                                     interval_bounds=_interval_bounds(corpus, args.bounds),
                                     trajectories=trajectories)
    return triangle_plot(segs, labeling, network, quantum, spec)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _plot_cmd(args: argparse.Namespace) -> None:
    n = _plot_length(args.kind)
    if args.n is not None and args.n != n:
        raise UsageError(f"rhythmseg plot: error: --kind {args.kind} draws length-{n} segments, got --n {args.n}")
    corpus, quantum = _load(args)
    svg = _render(args.kind, corpus, quantum, args, args.clusters, args.trajectories)
    _write_text(args.output, svg)


def _analyze(args: argparse.Namespace, argv: Sequence[str]) -> None:
    t0 = time.perf_counter()
    corpus, quantum = _load(args)
    out: Path = args.outdir
    out.mkdir(parents=True, exist_ok=True)
    outputs: list[str] = []

    measures = compute_measures(corpus, (2, 3), quantum, args.theta)
    write_json(measures, out / "measures.json")
    outputs.append("measures.json")

    cached = {args.n: _cluster(corpus, quantum, args.n, args)}
    _, labeling, network = cached[args.n]
    write_labels(labeling, out / "labels.csv")
    write_network(network, out / "network.json")
    outputs += ["labels.csv", "network.json"]
    if args.n != 3 and corpus_segments(corpus, 3):
        cached[3] = _cluster(corpus, quantum, 3, args)
        write_labels(cached[3][1], out / "labels_n3.csv")
        write_network(cached[3][2], out / "network_n3.json")
        outputs += ["labels_n3.csv", "network_n3.json"]

    for kind in PLOT_KINDS:
        n = _plot_length(kind)
        if not corpus_segments(corpus, n):
            log.warning("skipping %s plot: no length-%d segments", kind, n)
            continue
        name = f"{kind.replace('-', '_')}.svg"
        _write_text(out / name, _render(kind, corpus, quantum, args, True, kind == "pattern-duration", cached))
        outputs.append(name)

    manifest = {
        "rhythmseg_version": __version__,
        "command": ["rhythmseg", *argv],
        "input": str(args.input),
        "cycles": str(args.cycles) if args.cycles else None,
        "sequences": [{"id": s.id, "song": s.song, "instrument": s.instrument, "intervals": len(s)}
                      for s in corpus.sequences],
        "dropped_intervals": corpus.dropped,
        "warnings": list(corpus.warnings),
        "parameters": {
            "n": args.n,
            "quantum": quantum,
            "theta": args.theta,
            "min_cluster_size": args.min_cluster_size,
            "min_samples": args.min_samples,
            "prune_threshold": args.prune_threshold,
            "annotation_max": args.annotation_max,
            "bandwidth": args.bandwidth,
            "bounds": list(b) if (b := _interval_bounds(corpus, args.bounds)) else None,
        },
        "outputs": outputs,
    }
    write_json(manifest, out / "manifest.json")
    log.info("wrote %d files to %s in %.1f s", len(outputs) + 1, out, time.perf_counter() - t0)


def _setup_logging(quiet: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("rhythmseg: %(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.ERROR if quiet else logging.INFO)
    log.propagate = False


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    _setup_logging(args.quiet)
    try:
        if args.command == "synth":
            _synth(args)
        elif args.command == "measure":
            _measure(args)
        elif args.command == "cluster":
            _cluster_cmd(args)
        elif args.command == "plot":
            _plot_cmd(args)
        else:
            _analyze(args, argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (LoadError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
