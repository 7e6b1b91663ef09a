"""Reading corpora from CSV and writing analysis results.

Three tabular inputs are understood:

* onset CSV, one event per row, grouped into sequences by song and
  instrument (column names are configurable);
* interval CSV with header ``sequence_id,interval_s``;
* cycle CSV with header ``song,cycle_onset_s``, used to derive one quantum
  per song.

Outputs are CSV for labels and intervals and JSON for everything else. JSON
keys keep insertion order so files diff cleanly between runs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .clustering import ClusterLabeling
from .core import IntervalSequence, extract_segments, npvi, segment_anisochrony
from .network import TransitionNetwork
from .quantal import DEFAULT_THETA, quantality_score, quantum_from_cycles

__all__ = [
    "LoadError",
    "Corpus",
    "load_onsets",
    "load_intervals",
    "load_cycles",
    "attach_quanta",
    "corpus_segments",
    "compute_measures",
    "write_intervals",
    "write_labels",
    "write_network",
    "write_json",
]

PathLike = str | Path


class LoadError(ValueError):
    """Malformed input file; the message names the file and the offending row."""


@dataclass(frozen=True)
class Corpus:
    """Interval sequences plus where they came from.

    ``quanta`` maps song names to a strictly positive quantum; songs without
    an entry have no quantum. ``dropped`` counts non-positive onset
    differences removed while loading, and ``warnings`` collects
    human-readable notes about anything else that was skipped.
    """

    sequences: tuple[IntervalSequence, ...] = ()
    quanta: Mapping[str, float] = field(default_factory=dict)
    source: str | None = None
    dropped: int = 0
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        ids = [s.id for s in self.sequences]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"sequence ids are not unique: {dup}")
        for song, q in self.quanta.items():
            if not q > 0:
                raise ValueError(f"quantum for song {song!r} must be positive, got {q!r}")
        object.__setattr__(self, "sequences", tuple(self.sequences))
        object.__setattr__(self, "quanta", dict(self.quanta))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    def __len__(self) -> int:
        return len(self.sequences)

    def quantum_for(self, seq: IntervalSequence) -> float | None:
        return self.quanta.get(seq.song) if seq.song is not None else None

    def sequence(self, sid: str) -> IntervalSequence:
        for s in self.sequences:
            if s.id == sid:
                return s
        raise KeyError(sid)


def _read_rows(path: PathLike) -> tuple[list[str], list[tuple[int, dict[str, str]]]]:
    """Header plus ``(line_number, row)`` pairs; blank lines are skipped."""
    p = Path(path)
    try:
        with p.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                return [], []
            header = [h.strip() for h in header]
            rows = []
            for row in reader:
                if not row or all(not c.strip() for c in row):
                    continue
                rows.append((reader.line_num, dict(zip(header, (c.strip() for c in row)))))
    except OSError as exc:
        raise LoadError(f"{p}: {exc.strerror or exc}") from exc
    return header, rows


def _require(path: PathLike, header: list[str], columns: Iterable[str]) -> None:
    missing = [c for c in columns if c not in header]
    if missing:
        raise LoadError(f"{path}: missing required column(s) {missing}; header is {header}")


def _parse_float(text: str | None) -> float:
    if text is None or text == "":
        raise ValueError("empty")
    v = float(text)
    if not math.isfinite(v):
        raise ValueError("not finite")
    return v


def _check_bad(path: PathLike, bad: list[tuple[int, str]], total: int, max_bad_fraction: float) -> None:
    if bad and len(bad) > max_bad_fraction * total:
        line, why = bad[0]
        raise LoadError(
            f"{path}: row {line}: {why} ({len(bad)} of {total} rows unparsable, "
            f"allowed fraction {max_bad_fraction})"
        )


def load_onsets(
    path: PathLike,
    onset_col: str = "onset_s",
    instrument_col: str | None = "instrument",
    song_col: str | None = "song",
    max_bad_fraction: float = 0.0,
) -> Corpus:
    """Read onset times and difference them per (song, instrument).

    Groups appear in the order of their first row. Onsets inside a group are
    sorted before differencing, and zero or negative differences (duplicate
    onsets) are dropped and counted in ``Corpus.dropped``. The instrument and
    song columns are optional; when absent from the header every row falls
    into one group along that axis.
    """
    header, rows = _read_rows(path)
    if not header:
        return Corpus(source=str(path))
    _require(path, header, [onset_col])
    use_inst = instrument_col is not None and instrument_col in header
    use_song = song_col is not None and song_col in header
    groups: dict[tuple[str | None, str | None], list[float]] = {}
    bad: list[tuple[int, str]] = []
    for line, row in rows:
        try:
            t = _parse_float(row.get(onset_col))
        except ValueError:
            bad.append((line, f"cannot parse onset {row.get(onset_col)!r}"))
            continue
        key = (row.get(song_col) or None if use_song else None,
               row.get(instrument_col) or None if use_inst else None)
        groups.setdefault(key, []).append(t)
    _check_bad(path, bad, len(rows), max_bad_fraction)

    sequences = []
    dropped = 0
    warnings = [f"skipped unparsable row {line}: {why}" for line, why in bad]
    for (song, inst), onsets in groups.items():
        onsets.sort()
        diffs = [b - a for a, b in zip(onsets[:-1], onsets[1:])]
        kept = [d for d in diffs if d > 0]
        if len(kept) < len(diffs):
            dropped += len(diffs) - len(kept)
        sid = "/".join(p for p in (song, inst) if p is not None) or "onsets"
        sequences.append(IntervalSequence(tuple(kept), id=sid, song=song, instrument=inst))
    if dropped:
        warnings.append(f"dropped {dropped} non-positive onset difference(s)")
    return Corpus(tuple(sequences), source=str(path), dropped=dropped, warnings=tuple(warnings))


def load_intervals(path: PathLike) -> Corpus:
    """Read ``sequence_id,interval_s`` rows; sequences keep file order.

    Any unparsable or non-positive interval is an error naming its row.
    """
    header, rows = _read_rows(path)
    if not header:
        return Corpus(source=str(path))
    _require(path, header, ["sequence_id", "interval_s"])
    groups: dict[str, list[float]] = {}
    for line, row in rows:
        sid = row.get("sequence_id", "")
        if not sid:
            raise LoadError(f"{path}: row {line}: empty sequence_id")
        try:
            v = _parse_float(row.get("interval_s"))
        except ValueError:
            raise LoadError(f"{path}: row {line}: cannot parse interval {row.get('interval_s')!r}") from None
        if v <= 0:
            raise LoadError(f"{path}: row {line}: interval must be positive, got {v!r}")
        groups.setdefault(sid, []).append(v)
    seqs = tuple(IntervalSequence(tuple(v), id=sid) for sid, v in groups.items())
    return Corpus(seqs, source=str(path))


def load_cycles(path: PathLike, max_bad_fraction: float = 0.0) -> dict[str, list[float]]:
    """Cycle onsets per song from ``song,cycle_onset_s`` rows, sorted ascending."""
    header, rows = _read_rows(path)
    if not header:
        return {}
    _require(path, header, ["song", "cycle_onset_s"])
    cycles: dict[str, list[float]] = {}
    bad: list[tuple[int, str]] = []
    for line, row in rows:
        try:
            t = _parse_float(row.get("cycle_onset_s"))
        except ValueError:
            bad.append((line, f"cannot parse cycle onset {row.get('cycle_onset_s')!r}"))
            continue
        cycles.setdefault(row.get("song", ""), []).append(t)
    _check_bad(path, bad, len(rows), max_bad_fraction)
    return {song: sorted(ts) for song, ts in cycles.items()}


def attach_quanta(
    corpus: Corpus,
    cycles: Mapping[str, Sequence[float]],
    subdivisions: int = 16,
) -> Corpus:
    """Derive a quantum per song from its cycle onsets.

    Songs without usable cycle annotations get no quantum, and a warning
    records that their duration axes stay in seconds.
    """
    quanta = dict(corpus.quanta)
    warnings = list(corpus.warnings)
    for song, onsets in cycles.items():
        try:
            quanta[song] = quantum_from_cycles(onsets, subdivisions)
        except ValueError as exc:
            warnings.append(f"song {song!r}: no quantum from cycles ({exc})")
    seen = set()
    for seq in corpus.sequences:
        song = seq.song
        if song in quanta or song in seen:
            continue
        seen.add(song)
        who = f"song {song!r}" if song is not None else f"sequence {seq.id!r} (no song)"
        warnings.append(f"{who} has no cycle annotation; quantum-based features disabled")
    return replace(corpus, quanta=quanta, warnings=tuple(warnings))


def corpus_segments(corpus: Corpus | Sequence[IntervalSequence], n: int) -> list:
    """Length-``n`` segments of every sequence, cut sequence by sequence."""
    seqs = corpus.sequences if isinstance(corpus, Corpus) else corpus
    out = []
    for s in seqs:
        out.extend(extract_segments(s, n))
    return out


def compute_measures(
    corpus: Corpus | Sequence[IntervalSequence],
    lengths: Sequence[int] = (2, 3),
    quantum: float | None = None,
    theta: float = DEFAULT_THETA,
) -> dict:
    """Corpus-level nPVI, mean anisochrony per segment length and quantality.

    All figures pool over sequences without crossing sequence boundaries, so
    the pooled nPVI still equals 200 times the pooled length-2 anisochrony.
    Undefined values (too few intervals, no quantum) are ``None``.
    """
    seqs = list(corpus.sequences if isinstance(corpus, Corpus) else corpus)
    pairs = corpus_segments(seqs, 2)
    if len(seqs) == 1:
        pooled_npvi = npvi(seqs[0]) if pairs else None
    else:
        pooled_npvi = 200.0 * sum(segment_anisochrony(s) for s in pairs) / len(pairs) if pairs else None
    aniso: dict[str, float | None] = {}
    for n in lengths:
        segs = corpus_segments(seqs, n)
        aniso[str(n)] = sum(segment_anisochrony(s) for s in segs) / len(segs) if segs else None
    score = None
    if quantum is not None:
        intervals = [v for s in seqs for v in s.intervals]
        score = quantality_score(intervals, quantum, theta) if intervals else None
    return {
        "npvi": pooled_npvi,
        "mean_anisochrony": aniso,
        "quantality": {"quantum": quantum, "theta": theta, "score": score},
    }


def _open_out(path: PathLike):
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    return p.open("w", newline="", encoding="utf-8")


def write_intervals(sequences: Corpus | Iterable[IntervalSequence], path: PathLike) -> None:
    seqs = sequences.sequences if isinstance(sequences, Corpus) else sequences
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sequence_id", "interval_s"])
        for s in seqs:
            for v in s.intervals:
                w.writerow([s.id, repr(float(v))])


def write_labels(labeling: ClusterLabeling, path: PathLike) -> None:
    """One row per segment: origin sequence, start index and cluster label."""
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sequence_id", "start_index", "label"])
        for origin, label in zip(labeling.origins, labeling.labels):
            sid, start = origin if origin is not None else ("", -1)
            w.writerow([sid, start, label])


def write_json(obj, path: PathLike) -> None:
    with _open_out(path) as fh:
        json.dump(obj, fh, indent=2, allow_nan=False)
        fh.write("\n")


def write_network(network: TransitionNetwork, path: PathLike) -> None:
    write_json(network.to_dict(), path)
