"""Quantum-based annotation of interval data.

A dataset is quantal when its intervals sit close to integer multiples
``m * q`` of a quantum ``q``. The quantum is always supplied from outside
(generator parameters or metrical cycle annotations); it is never searched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import IntervalSequence, Segment

__all__ = [
    "DEFAULT_THETA",
    "QuantalAnnotation",
    "annotate",
    "quantality_score",
    "integer_ratio_label",
    "parse_ratio_label",
    "quantum_from_cycles",
    "duration_in_quanta",
]

DEFAULT_THETA = 0.25


def _check_quantum(quantum: float) -> None:
    if not quantum > 0:
        raise ValueError(f"quantum must be positive, got {quantum!r}")


def _check_theta(theta: float) -> None:
    if not 0 < theta <= 0.5:
        raise ValueError(f"theta must lie in (0, 0.5], got {theta!r}")


def _decompose(x: np.ndarray, quantum: float) -> tuple[np.ndarray, np.ndarray]:
    # round half up so residuals fall in [-q/2, q/2)
    m = np.maximum(np.floor(x / quantum + 0.5), 1).astype(int)
    return m, x - m * quantum


def _near(residuals: np.ndarray, quantum: float, theta: float) -> np.ndarray:
    # clamped residuals (interval < q/2) fall at or below -q/2 and never count
    return (np.abs(residuals) < theta * quantum) & (residuals > -quantum / 2)


@dataclass(frozen=True)
class QuantalAnnotation:
    """Per-interval multiples and residuals for a fixed quantum.

    ``intervals[i] == multiples[i] * quantum + residuals[i]``; ``score`` is the
    fraction of intervals whose residual is below ``theta * quantum``.
    """

    quantum: float
    theta: float
    multiples: tuple[int, ...]
    residuals: tuple[float, ...]
    score: float


def annotate(
    seq: IntervalSequence | Sequence[float],
    quantum: float,
    theta: float = DEFAULT_THETA,
) -> QuantalAnnotation:
    """Round every interval to its nearest quantum multiple (at least 1)."""
    _check_quantum(quantum)
    _check_theta(theta)
    x = seq.as_array() if isinstance(seq, IntervalSequence) else np.asarray(seq, dtype=float)
    m, res = _decompose(x, quantum)
    score = float(np.mean(_near(res, quantum, theta))) if len(x) else 0.0
    return QuantalAnnotation(
        quantum=float(quantum),
        theta=float(theta),
        multiples=tuple(int(v) for v in m),
        residuals=tuple(float(v) for v in res),
        score=score,
    )


def quantality_score(
    seq: IntervalSequence | Sequence[float],
    quantum: float,
    theta: float = DEFAULT_THETA,
) -> float:
    return annotate(seq, quantum, theta).score


def integer_ratio_label(
    seg: Segment | Sequence[float],
    quantum: float,
    theta: float = DEFAULT_THETA,
) -> str | None:
    """``"m1:m2:...:mn"`` if every interval is near a multiple, else ``None``.

    Labels are not reduced: ``(1.0, 2.0)`` with ``q = 0.5`` is ``"2:4"``.
    """
    _check_quantum(quantum)
    _check_theta(theta)
    x = np.asarray(seg.values if isinstance(seg, Segment) else seg, dtype=float)
    m, res = _decompose(x, quantum)
    if not np.all(_near(res, quantum, theta)):
        return None
    return ":".join(str(int(v)) for v in m)


def parse_ratio_label(label: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in label.split(":"))
    except ValueError:
        raise ValueError(f"not an integer-ratio label: {label!r}") from None
    if len(parts) < 2 or any(p < 1 for p in parts):
        raise ValueError(f"not an integer-ratio label: {label!r}")
    return parts


def quantum_from_cycles(cycle_onsets: Sequence[float], subdivisions: int = 16) -> float:
    """Median metrical-cycle duration divided by ``subdivisions``.

    With 16 subdivisions of a 4/4 cycle this is the 16th-note duration.
    """
    t = np.asarray(cycle_onsets, dtype=float)
    if len(t) < 2:
        raise ValueError(f"need at least 2 cycle onsets, got {len(t)}")
    if subdivisions < 1:
        raise ValueError(f"subdivisions must be >= 1, got {subdivisions}")
    d = np.diff(t)
    if np.any(d <= 0):
        raise ValueError("cycle onsets must be strictly increasing")
    return float(np.median(d)) / subdivisions


def duration_in_quanta(d: float, quantum: float) -> float:
    _check_quantum(quantum)
    return d / quantum
