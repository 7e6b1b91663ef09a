from __future__ import annotations

import numpy as np
import pytest

from rhythmseg.synth import (
    DEFAULT_TEMPLATE,
    RepeatTemplate,
    gen_grid_events,
    gen_quantal_geometric,
    gen_quantal_uniform,
    gen_repeated,
    gen_uniform,
    template_ngrams,
)

GENERATORS = [
    lambda seed: gen_uniform(500, seed=seed),
    lambda seed: gen_quantal_geometric(500, seed=seed),
    lambda seed: gen_quantal_uniform(500, seed=seed),
    lambda seed: gen_repeated(RepeatTemplate((1, 2), repeats=50), seed=seed),
    lambda seed: gen_grid_events(500, seed=seed),
]


@pytest.mark.parametrize("gen", GENERATORS)
def test_same_seed_same_intervals(gen):
    assert gen(3).intervals == gen(3).intervals
    assert gen(3).intervals != gen(4).intervals


@pytest.mark.parametrize("gen", GENERATORS)
def test_all_intervals_positive(gen):
    assert min(gen(0).intervals) > 0


def test_uniform_range_and_moments():
    x = gen_uniform(20000, 0.2, 2.0, seed=1).as_array()
    assert x.min() >= 0.2 and x.max() <= 2.0
    assert x.mean() == pytest.approx(1.1, abs=0.02)


def test_geometric_multiples():
    q = 0.2
    x = gen_quantal_geometric(20000, q, success_p=0.5, seed=2).as_array()
    m = np.floor(x / q + 0.5)
    assert m.min() >= 1
    # P(m == 1) = p for a geometric distribution on {1, 2, ...}
    assert np.mean(m == 1) == pytest.approx(0.5, abs=0.02)
    resid = x - m * q
    assert np.std(resid) == pytest.approx(q / 20, rel=0.05)


def test_quantal_uniform_multiples_cover_range():
    x = gen_quantal_uniform(5000, 0.1, max_multiple=5, noise_sigma=0, seed=0).as_array()
    assert set(np.round(x / 0.1).astype(int)) == {1, 2, 3, 4, 5}


def test_repeated_tiles_template():
    tpl = RepeatTemplate((3, 1, 2), quantum=0.25, noise_sigma=0.0, repeats=4)
    seq = gen_repeated(tpl)
    assert seq.intervals == tuple(v * 0.25 for v in (3, 1, 2) * 4)


def test_default_template():
    assert DEFAULT_TEMPLATE.multiples == (3, 3, 2, 4, 1)
    assert DEFAULT_TEMPLATE.quantum == 0.5
    assert DEFAULT_TEMPLATE.noise_sigma == pytest.approx(0.025)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"multiples": ()},
        {"multiples": (0, 1)},
        {"multiples": (1.5, 2)},
        {"multiples": (1, 2), "noise_sigma": 0.3, "quantum": 0.5},
        {"multiples": (1, 2), "quantum": 0.0},
        {"multiples": (1, 2), "repeats": 0},
    ],
)
def test_repeat_template_validation(kwargs):
    with pytest.raises(ValueError):
        RepeatTemplate(**kwargs)


def test_grid_without_jitter_is_exact_multiples():
    x = gen_grid_events(1000, grid=0.2, jitter_sigma=0.0, seed=5).as_array()
    m = x / 0.2
    assert np.allclose(m, np.round(m), atol=1e-12)
    assert len(x) == 1000


def test_grid_jitter_keeps_order():
    x = gen_grid_events(2000, grid=0.2, jitter_sigma=0.05, seed=1)
    assert len(x) == 2000 and min(x.intervals) > 0


@pytest.mark.parametrize(
    "call",
    [
        lambda: gen_uniform(-1),
        lambda: gen_uniform(10, lo=2.0, hi=1.0),
        lambda: gen_quantal_geometric(10, success_p=1.0),
        lambda: gen_quantal_geometric(10, noise_sigma=-0.1),
        lambda: gen_quantal_uniform(10, max_multiple=0),
        lambda: gen_grid_events(10, occupancy=0.0),
    ],
)
def test_bad_parameters_raise(call):
    with pytest.raises(ValueError):
        call()


def test_template_ngrams_wrap_cyclically():
    assert template_ngrams((3, 3, 2, 4, 1), 6) == [(3, 3), (3, 2), (2, 4), (4, 1), (1, 3), (3, 3)]
    assert template_ngrams((1, 2), 3, n=3) == [(1, 2, 1), (2, 1, 2), (1, 2, 1)]


def test_empty_generation():
    assert len(gen_uniform(0)) == 0
    assert len(gen_grid_events(0)) == 0
