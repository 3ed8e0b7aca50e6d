from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_series, small_series
from discspaces.families import build
from discspaces.norms import hardy_norm
from discspaces.quadrature import RadialGrid, area_integral
from discspaces.norms import log_dirichlet_density
from discspaces.random_series import (
    EXHAUSTIVE_LIMIT,
    SignSequence,
    coefficient_log_sum,
    duren_weight_integral,
    khinchine_extrapolated,
    khinchine_ratio,
    rademacher_at,
    randomize,
    sample_signs,
    seeded_signs,
)
from discspaces.refinement import Verdict, classify
from discspaces.series import CoeffSeries


def test_rademacher_examples():
    assert rademacher_at(0, 0.3) == 1
    assert rademacher_at(0, 0.7) == -1
    assert rademacher_at(0, 0.5) == 0
    assert rademacher_at(0, 0) == 0 and rademacher_at(0, 1) == 0
    assert rademacher_at(2, 0.3) == 1
    with pytest.raises(ValueError):
        rademacher_at(0, 1.5)


@settings(max_examples=1000)
@given(st.integers(0, 60), st.fractions(0, 1, max_denominator=10**6))
def test_rademacher_consistency(n, t):
    frac = (t * 2**n) % 1
    assert rademacher_at(n, t) == rademacher_at(0, frac)


def test_sign_sequence_validation():
    with pytest.raises(ValueError):
        SignSequence(np.array([1, 0, -1]))
    SignSequence(np.array([1, 0, -1]), measure_zero=True)


def test_sample_signs_sources():
    s = sample_signs(8, t=Fraction(1, 3))
    assert s.signs.tolist() == [1, -1] * 4 and not s.measure_zero
    assert sample_signs(10, seed=4).signs.tolist() == sample_signs(10, seed=4).signs.tolist()
    z = sample_signs(4, t=0)
    assert z.measure_zero
    with pytest.raises(ValueError):
        sample_signs(4)
    with pytest.raises(ValueError):
        sample_signs(4, seed=1, t=0.3)


def test_seeded_signs_are_schedule_independent():
    batch = seeded_signs(16, 100, 5)
    assert batch[3].signs.tolist() == sample_signs(16, seed=103).signs.tolist()


def test_randomize():
    f = random_series(1, 10)
    ones = SignSequence(np.ones(11))
    assert randomize(f, ones) == f
    assert randomize(f, SignSequence(-np.ones(11))) == f.scale(-1)
    with pytest.raises(ValueError):
        randomize(f, SignSequence(np.ones(5)))


@settings(max_examples=20)
@given(small_series(max_degree=30), st.integers(0, 1000))
def test_randomize_preserves_h2(f, seed):
    g = randomize(f, sample_signs(len(f), seed=seed))
    assert math.isclose(hardy_norm(g, 2).value, hardy_norm(f, 2).value, rel_tol=1e-12)


def test_khinchine_examples():
    assert khinchine_ratio([3.0], 1.7).ratio == pytest.approx(1.0, abs=1e-15)
    assert khinchine_ratio([1.0, 1.0], 4).ratio == 2.0
    rep = khinchine_ratio(np.arange(1, 9), 2)
    assert abs(rep.ratio - 1) < 1e-12 and rep.method == "exhaustive" and rep.trials == 256


def test_khinchine_errors_and_modes():
    with pytest.raises(ValueError):
        khinchine_ratio([0.0, 0.0], 2)
    with pytest.raises(ValueError):
        khinchine_ratio([1.0], 0)
    with pytest.raises(ValueError):
        khinchine_ratio(np.ones(EXHAUSTIVE_LIMIT + 1), 2, exhaustive=True)
    assert khinchine_ratio(np.ones(30), 2, 500).method == "MonteCarlo"


@settings(max_examples=30)
@given(
    st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=1, max_size=10).filter(
        lambda c: sum(abs(x) ** 2 for x in c) > 1e-6
    ),
    st.sampled_from([1.0, 3.0, 4.0]),
    st.floats(0, 2 * math.pi),
    st.randoms(use_true_random=False),
)
def test_khinchine_invariances(c, p, phase, rnd):
    base = khinchine_ratio(c, p).ratio
    perm = list(c)
    rnd.shuffle(perm)
    assert math.isclose(khinchine_ratio(perm, p).ratio, base, rel_tol=1e-12)
    rotated = [x * complex(math.cos(phase), math.sin(phase)) for x in c]
    assert math.isclose(khinchine_ratio(rotated, p).ratio, base, rel_tol=1e-12)


@settings(max_examples=30)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=12).filter(lambda c: sum(x * x for x in c) > 1e-6))
def test_khinchine_increasing_in_p(c):
    r = [khinchine_ratio(c, p).ratio ** (1 / p) for p in (1, 2, 4)]
    assert r[0] <= r[1] * (1 + 1e-12) and r[1] <= r[2] * (1 + 1e-12)


def test_khinchine_extrapolation_bracket():
    lo, hi = sorted(khinchine_extrapolated(np.ones(64), 4))
    assert 2.8 < lo < hi < 3.0  # E|S|^4 / n^2 = 3 - 2/n
    with pytest.raises(ValueError):
        khinchine_extrapolated(np.ones(13), 4)


def test_duren_weight_examples():
    z = CoeffSeries([0, 1])
    assert math.isclose(duren_weight_integral(z, 0.0).value, 0.5, rel_tol=1e-10)
    # int_0^1 x (log 1/x)^2 dx = 2/8
    assert math.isclose(duren_weight_integral(z, 2.0).value, 0.25, rel_tol=1e-10)
    assert duren_weight_integral(CoeffSeries([5.0]), 2.0).value == 0.0
    with pytest.raises(ValueError):
        duren_weight_integral(z, -1.0)


def test_duren_weight_bounded_for_random_gap_series():
    vals = [
        duren_weight_integral(build("gap_power", 2**j, {"exponent": 3.0, "shift": 1.0, "kmin": 0, "seed": 5})).value
        for j in range(10, 15)
    ]
    assert classify(vals) == Verdict.BOUNDED


def test_coefficient_log_sum():
    assert coefficient_log_sum(CoeffSeries([0, 1]), 2.0) == 0.0
    a = lambda N: CoeffSeries(np.r_[0.0, 1.0 / np.arange(1, N + 1)])
    s16, s20 = coefficient_log_sum(a(2**16), 2.0), coefficient_log_sum(a(2**20), 2.0)
    assert abs(s16 - s20) / s20 < 0.01
    with pytest.raises(ValueError):
        coefficient_log_sum(a(4), 0.0)


def test_log_dirichlet_integral_tracks_log_sum():
    # the weight (1-|z|^2) turns |a_n|^2 n^2 into |a_n|^2 up to the log factor
    ratios = []
    for seed in range(10):
        rng = np.random.default_rng(seed)
        n = np.arange(2, 257)
        c = np.r_[0.0, 0.0, rng.normal(size=255) / n ** rng.uniform(0.5, 1.0)]
        f = CoeffSeries(c)
        area = area_integral(log_dirichlet_density(f, 2.0), RadialGrid.for_degree(256))
        ratios.append(area / coefficient_log_sum(f, 2.0))
    assert max(ratios) / min(ratios) < 2.0


def test_effective_degree_survives_underflow():
    from discspaces.quadrature import effective_degree

    c = np.zeros(2049)
    c[2048] = 1.0
    assert effective_degree(CoeffSeries(c), 1e-3) == 2048
