"""Seeded generators for synthetic rhythmic data.

Every generator draws from ``numpy.random.Generator(PCG64(seed))``, so a
given seed reproduces the same intervals bit for bit on any platform with
the same NumPy bit-generator stream.

Noise that would push an interval to zero or below is redrawn rather than
clipped, which keeps the residual distribution Gaussian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import IntervalSequence

__all__ = [
    "RepeatTemplate",
    "DEFAULT_TEMPLATE",
    "make_rng",
    "gen_uniform",
    "gen_quantal_geometric",
    "gen_quantal_uniform",
    "gen_repeated",
    "gen_grid_events",
    "template_ngrams",
]

_MAX_REDRAWS = 1000


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _default_sigma(quantum: float, noise_sigma: float | None) -> float:
    return quantum / 20 if noise_sigma is None else float(noise_sigma)


def _check_quantum(quantum: float, noise_sigma: float) -> None:
    if not quantum > 0:
        raise ValueError(f"quantum must be positive, got {quantum!r}")
    if noise_sigma < 0:
        raise ValueError(f"noise_sigma must be non-negative, got {noise_sigma!r}")


def _add_noise(base: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Add N(0, sigma^2) noise to ``base``, redrawing entries that end up <= 0."""
    if sigma == 0 or len(base) == 0:
        return base.astype(float)
    out = base + rng.normal(0.0, sigma, size=len(base))
    bad = np.flatnonzero(out <= 0)
    for _ in range(_MAX_REDRAWS):
        if len(bad) == 0:
            return out
        out[bad] = base[bad] + rng.normal(0.0, sigma, size=len(bad))
        bad = bad[out[bad] <= 0]
    raise ValueError("noise too large for the base intervals: could not draw positive intervals")


def gen_uniform(count: int, lo: float = 0.2, hi: float = 2.0, seed: int = 0) -> IntervalSequence:
    """``count`` i.i.d. intervals uniform on ``[lo, hi]``."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if not (lo > 0 and hi > lo):
        raise ValueError(f"need 0 < lo < hi, got lo={lo!r}, hi={hi!r}")
    rng = make_rng(seed)
    x = rng.uniform(lo, hi, size=count)
    return IntervalSequence(tuple(x), id="uniform")


def gen_quantal_geometric(
    count: int,
    quantum: float = 0.2,
    success_p: float = 0.5,
    noise_sigma: float | None = None,
    seed: int = 0,
) -> IntervalSequence:
    """Noisy quantum multiples with geometric multiples on {1, 2, ...}.

    ``noise_sigma`` defaults to ``quantum / 20``.
    """
    sigma = _default_sigma(quantum, noise_sigma)
    _check_quantum(quantum, sigma)
    if not 0 < success_p < 1:
        raise ValueError(f"success_p must lie in (0, 1), got {success_p!r}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = make_rng(seed)
    m = rng.geometric(success_p, size=count)
    x = _add_noise(m * quantum, sigma, rng)
    return IntervalSequence(tuple(x), id="geometric")


def gen_quantal_uniform(
    count: int,
    quantum: float = 0.2,
    max_multiple: int = 11,
    noise_sigma: float | None = None,
    seed: int = 0,
) -> IntervalSequence:
    """Noisy quantum multiples with multiples uniform on {1, ..., max_multiple}."""
    sigma = _default_sigma(quantum, noise_sigma)
    _check_quantum(quantum, sigma)
    if max_multiple < 1:
        raise ValueError(f"max_multiple must be >= 1, got {max_multiple}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = make_rng(seed)
    m = rng.integers(1, max_multiple, size=count, endpoint=True)
    x = _add_noise(m * quantum, sigma, rng)
    return IntervalSequence(tuple(x), id="quantal-uniform")


@dataclass(frozen=True)
class RepeatTemplate:
    """Integer template looped ``repeats`` times, scaled by ``quantum``.

    ``noise_sigma`` is in seconds and must stay below half a quantum.
    """

    multiples: tuple[int, ...]
    quantum: float = 0.5
    noise_sigma: float | None = None
    repeats: int = 200

    def __post_init__(self) -> None:
        mult = tuple(int(m) for m in self.multiples)
        if not mult or any(m < 1 for m in mult):
            raise ValueError(f"multiples must be a non-empty list of integers >= 1, got {self.multiples!r}")
        if any(m != float(orig) for m, orig in zip(mult, self.multiples)):
            raise ValueError(f"multiples must be integers, got {self.multiples!r}")
        object.__setattr__(self, "multiples", mult)
        sigma = _default_sigma(self.quantum, self.noise_sigma)
        _check_quantum(self.quantum, sigma)
        if not sigma < self.quantum / 2:
            raise ValueError(f"noise_sigma ({sigma}) must be below quantum / 2 ({self.quantum / 2})")
        object.__setattr__(self, "noise_sigma", sigma)
        if self.repeats < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")


# Sub-rhythm read off the repeated dataset's transition network (3:3:2:4:1);
# the full clapping-pattern-plus-coda template is not reproduced here.
DEFAULT_TEMPLATE = RepeatTemplate(multiples=(3, 3, 2, 4, 1), quantum=0.5)


def gen_repeated(template: RepeatTemplate = DEFAULT_TEMPLATE, seed: int = 0) -> IntervalSequence:
    base = np.tile(np.asarray(template.multiples, dtype=float), template.repeats) * template.quantum
    rng = make_rng(seed)
    x = _add_noise(base, template.noise_sigma, rng)
    return IntervalSequence(tuple(x), id="repeated")


def gen_grid_events(
    count: int,
    grid: float = 0.2,
    jitter_sigma: float | None = None,
    seed: int = 0,
    occupancy: float = 0.5,
) -> IntervalSequence:
    """Intervals between jittered events placed on a regular grid.

    Each grid slot is occupied by an independent coin flip with probability
    ``occupancy``; occupied slots get Gaussian timing jitter. ``count`` is the
    number of intervals returned. A jittered event that would not come strictly
    after its predecessor is redrawn.
    """
    sigma = _default_sigma(grid, jitter_sigma)
    _check_quantum(grid, sigma)
    if not 0 < occupancy <= 1:
        raise ValueError(f"occupancy must lie in (0, 1], got {occupancy!r}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = make_rng(seed)
    if count == 0:
        return IntervalSequence((), id="grid")
    # gaps between occupied slots are geometric with the occupancy as success rate
    gaps = rng.geometric(occupancy, size=count)
    if sigma == 0:
        return IntervalSequence(tuple(gaps * grid), id="grid")
    slots = np.concatenate([[0], np.cumsum(gaps)])
    times = slots * grid + rng.normal(0.0, sigma, size=len(slots))
    for k in range(1, len(times)):
        for _ in range(_MAX_REDRAWS):
            if times[k] > times[k - 1]:
                break
            times[k] = slots[k] * grid + rng.normal(0.0, sigma)
        else:
            raise ValueError("jitter too large: could not keep events ordered")
    return IntervalSequence(tuple(np.diff(times)), id="grid")


def template_ngrams(multiples: Sequence[int], count: int, n: int = 2) -> list[tuple[int, ...]]:
    """Ground-truth multiples of the first ``count`` length-``n`` segments of a looped template."""
    k = len(multiples)
    return [tuple(multiples[(i + j) % k] for j in range(n)) for i in range(count)]
