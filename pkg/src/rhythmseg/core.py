"""Segments, patterns and durations on the rhythm simplex.

A sequence of intervals is cut into overlapping fixed-length segments
(interval n-grams). Every segment factors into a duration (its L1 norm)
and a pattern (the segment divided by its duration), a point on the
(n-1)-simplex. Distances and the anisochrony measure live here too.

All values are immutable; every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PATTERN_TOL",
    "IntervalSequence",
    "Segment",
    "Pattern",
    "PatternDuration",
    "extract_segments",
    "segment_array",
    "normalize",
    "denormalize",
    "rhythm_ratio",
    "segment_distance",
    "pattern_distance",
    "anisochrony",
    "segment_anisochrony",
    "mean_anisochrony",
    "npvi",
    "mean_reference_distance",
]

PATTERN_TOL = 1e-9


def _as_float_tuple(values: Iterable[float]) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class IntervalSequence:
    """Ordered, strictly positive durations from one source.

    ``id`` identifies the sequence inside a corpus; ``song`` and
    ``instrument`` are optional labels carried along for reporting.
    """

    intervals: tuple[float, ...]
    id: str = "seq"
    song: str | None = None
    instrument: str | None = None

    def __post_init__(self) -> None:
        values = _as_float_tuple(self.intervals)
        for k, v in enumerate(values):
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"interval {k} of sequence {self.id!r} is not strictly positive: {v!r}")
        object.__setattr__(self, "intervals", values)

    def __len__(self) -> int:
        return len(self.intervals)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.intervals, dtype=float)


@dataclass(frozen=True)
class Segment:
    """``n >= 2`` consecutive intervals; ``origin`` is ``(sequence id, start index)``."""

    values: tuple[float, ...]
    origin: tuple[str, int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        values = _as_float_tuple(self.values)
        if len(values) < 2:
            raise ValueError(f"a segment needs at least 2 intervals, got {len(values)}")
        if any(not np.isfinite(v) or v <= 0 for v in values):
            raise ValueError(f"segment entries must be strictly positive: {values}")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def duration(self) -> float:
        return sum(self.values)


@dataclass(frozen=True)
class Pattern:
    """Relative durations: non-negative weights summing to one.

    Weights whose sum is within ``PATTERN_TOL`` of one are renormalized;
    anything further off is rejected.
    """

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        w = _as_float_tuple(self.weights)
        if len(w) < 2:
            raise ValueError(f"a pattern needs at least 2 weights, got {len(w)}")
        if any(not np.isfinite(v) or v < 0 or v > 1 + PATTERN_TOL for v in w):
            raise ValueError(f"pattern weights must lie in [0, 1]: {w}")
        total = sum(w)
        if abs(total - 1.0) > PATTERN_TOL:
            raise ValueError(f"pattern weights must sum to 1 (got {total!r})")
        if total != 1.0:
            w = tuple(min(v / total, 1.0) for v in w)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def ratio(self) -> float:
        """Rhythm ratio; only defined for length-2 patterns."""
        if len(self.weights) != 2:
            raise ValueError("the rhythm ratio is only defined for length-2 patterns")
        return self.weights[0]

    @classmethod
    def center(cls, n: int) -> "Pattern":
        """The isochronous pattern ``(1/n, ..., 1/n)``."""
        return cls((1.0 / n,) * n)

    @classmethod
    def corner(cls, n: int, i: int) -> "Pattern":
        w = [0.0] * n
        w[i] = 1.0
        return cls(tuple(w))


@dataclass(frozen=True)
class PatternDuration:
    pattern: Pattern
    duration: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.duration) or self.duration <= 0:
            raise ValueError(f"duration must be strictly positive, got {self.duration!r}")


def extract_segments(seq: IntervalSequence, n: int) -> list[Segment]:
    """Slide a length-``n`` window with hop 1 over the intervals of ``seq``.

    Sequences shorter than ``n`` give an empty list. Corpora should be
    segmented sequence by sequence so that no segment straddles two sources.
    """
    if n < 2:
        raise ValueError(f"segment length must be >= 2, got {n}")
    iv = seq.intervals
    return [Segment(iv[k:k + n], origin=(seq.id, k)) for k in range(len(iv) - n + 1)]


def segment_array(seq: IntervalSequence | Sequence[float], n: int) -> np.ndarray:
    """Segments of ``seq`` as a ``(K - n + 1, n)`` array (possibly empty)."""
    if n < 2:
        raise ValueError(f"segment length must be >= 2, got {n}")
    x = seq.as_array() if isinstance(seq, IntervalSequence) else np.asarray(seq, dtype=float)
    if len(x) < n:
        return np.empty((0, n))
    return np.lib.stride_tricks.sliding_window_view(x, n).copy()


def normalize(seg: Segment) -> PatternDuration:
    d = seg.duration
    return PatternDuration(Pattern(tuple(v / d for v in seg.values)), d)


def denormalize(pd: PatternDuration) -> Segment:
    """Multiply a pattern back out by its duration."""
    if not pd.duration > 0:
        raise ValueError(f"duration must be strictly positive, got {pd.duration!r}")
    return Segment(tuple(p * pd.duration for p in pd.pattern.weights))


def rhythm_ratio(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise ValueError(f"rhythm ratio needs two positive durations, got {a!r}, {b!r}")
    return a / (a + b)


def _values(x: Segment | Pattern | Sequence[float]) -> tuple[float, ...]:
    if isinstance(x, Segment):
        return x.values
    if isinstance(x, Pattern):
        return x.weights
    return _as_float_tuple(x)


def segment_distance(x: Segment | Sequence[float], y: Segment | Sequence[float]) -> float:
    """Taxicab (L1) distance between two equal-length segments."""
    a, b = _values(x), _values(y)
    if len(a) != len(b):
        raise ValueError(f"segment lengths differ: {len(a)} != {len(b)}")
    return sum(abs(u - v) for u, v in zip(a, b))


def pattern_distance(p: Pattern | Sequence[float], q: Pattern | Sequence[float]) -> float:
    """Total variation distance: half the L1 distance, so corners are 1 apart."""
    a, b = _values(p), _values(q)
    if len(a) != len(b):
        raise ValueError(f"pattern lengths differ: {len(a)} != {len(b)}")
    return 0.5 * sum(abs(u - v) for u, v in zip(a, b))


def anisochrony(p: Pattern | Sequence[float]) -> float:
    """Normalized distance from isochrony: 0 at the simplex center, 1 at corners."""
    w = _values(p)
    n = len(w)
    if n < 2:
        raise ValueError("anisochrony needs a pattern of length >= 2")
    if n == 2:
        # |p1 - 1/2| + |p2 - 1/2| == |p1 - p2| when p1 + p2 == 1; exact in floats
        return abs(w[0] - w[1])
    # n/(2(n-1)) * sum|p_i - 1/n| rewritten so that corners give exactly 1
    return sum(abs(n * v - 1.0) for v in w) / (2.0 * (n - 1))


def segment_anisochrony(x: Segment | Sequence[float]) -> float:
    v = _values(x)
    if len(v) == 2:
        # same as anisochrony(normalize(x)) but without the intermediate rounding
        return abs(v[0] - v[1]) / (v[0] + v[1])
    return anisochrony(normalize(x if isinstance(x, Segment) else Segment(v)).pattern)


def mean_anisochrony(segments: Iterable[Segment | Sequence[float]]) -> float:
    values = [segment_anisochrony(s) for s in segments]
    if not values:
        raise ValueError("mean anisochrony of an empty segment set is undefined")
    return float(np.mean(values))


def npvi(seq: IntervalSequence | Sequence[float]) -> float:
    """Normalized pairwise variability index of an interval sequence."""
    iv = seq.intervals if isinstance(seq, IntervalSequence) else _as_float_tuple(seq)
    k = len(iv)
    if k < 2:
        raise ValueError(f"nPVI needs at least 2 intervals, got {k}")
    total = sum(abs((a - b) / (a + b)) for a, b in zip(iv[:-1], iv[1:]))
    return 200.0 / (k - 1) * total


def mean_reference_distance(
    patterns: Sequence[Pattern | Sequence[float]],
    reference: Pattern | Sequence[float],
) -> float:
    """Mean pattern distance to ``reference``, scaled into [0, 1].

    The scale is the largest distance from the reference to any simplex
    corner, so the isochronous reference gives back the mean anisochrony.
    """
    if len(patterns) == 0:
        raise ValueError("need at least one pattern")
    ref = np.asarray(_values(reference), dtype=float)
    n = len(ref)
    if np.any(ref < 0) or abs(ref.sum() - 1.0) > PATTERN_TOL:
        raise ValueError("reference must be a point on the simplex")
    P = np.asarray([_values(p) for p in patterns], dtype=float)
    if P.shape[1] != n:
        raise ValueError(f"pattern length {P.shape[1]} does not match reference length {n}")
    # distance from ref to corner i is 1 - ref[i]
    maxcorner = 1.0 - float(ref.min())
    d = 0.5 * np.abs(P - ref).sum(axis=1)
    return float(np.mean(d / maxcorner))
