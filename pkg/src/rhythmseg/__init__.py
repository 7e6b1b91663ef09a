"""Rhythmic segment analysis.

Cut interval sequences into fixed-length segments, factor them into
patterns and durations, measure anisochrony and nPVI, annotate quantal
structure, cluster segments and summarize their succession as a transition
network, and draw the results as SVG.
"""

from .clustering import ClusterLabeling, cluster_segments, medoid
from .core import (
    IntervalSequence,
    Pattern,
    PatternDuration,
    Segment,
    anisochrony,
    denormalize,
    extract_segments,
    mean_anisochrony,
    mean_reference_distance,
    normalize,
    npvi,
    pattern_distance,
    rhythm_ratio,
    segment_anisochrony,
    segment_distance,
)
from .network import TransitionNetwork, build_network, path_rhythm
from .quantal import annotate, duration_in_quanta, integer_ratio_label, quantum_from_cycles

__version__ = "0.1.0"

__all__ = [
    "ClusterLabeling",
    "cluster_segments",
    "medoid",
    "IntervalSequence",
    "Pattern",
    "PatternDuration",
    "Segment",
    "anisochrony",
    "denormalize",
    "extract_segments",
    "mean_anisochrony",
    "mean_reference_distance",
    "normalize",
    "npvi",
    "pattern_distance",
    "rhythm_ratio",
    "segment_anisochrony",
    "segment_distance",
    "TransitionNetwork",
    "build_network",
    "path_rhythm",
    "annotate",
    "duration_in_quanta",
    "integer_ratio_label",
    "quantum_from_cycles",
]
