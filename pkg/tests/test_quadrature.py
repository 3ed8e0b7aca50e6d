from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from conftest import random_series, small_series
from discspaces.quadrature import (
    CircleGrid,
    RadialGrid,
    SeriesDensity,
    area_integral,
    auto_circle_size,
    beta_log_integral,
    effective_degree,
    integral_mean,
    radial_integral,
    ring_power_mean,
    ring_values,
    sup_mean,
)
from discspaces.series import CoeffSeries, evaluate_many


def test_circle_grid_validation_and_refine():
    with pytest.raises(ValueError):
        CircleGrid(0)
    g = CircleGrid(8, 0.5)
    assert np.allclose(g.angles(), 2 * np.pi * (np.arange(8) + 0.5) / 8)
    with pytest.raises(ValueError):
        g.refine()
    fine = CircleGrid(8).refine()
    assert fine.M == 16 and np.allclose(fine.angles()[::2], CircleGrid(8).angles())


def test_auto_circle_size_is_power_of_two():
    for d in (0, 1, 7, 8, 100, 4096):
        M = auto_circle_size(d)
        assert M >= 2 * d and M >= 16 and M & (M - 1) == 0


@given(small_series(max_degree=40), st.floats(0.0, 0.99), st.sampled_from([0.0, 0.5]))
def test_ring_values_exact(f, r, offset):
    M = 64
    theta = 2 * np.pi * (np.arange(M) + offset) / M
    direct = evaluate_many(f, r * np.exp(1j * theta))
    assert np.allclose(ring_values(f, r, M, offset), direct, atol=1e-10)


def test_ring_values_folds_aliases_exactly():
    # degree above M: z^M and 1 coincide on the M-point grid
    f = CoeffSeries(np.r_[1.0, np.zeros(15), 1.0])
    vals = ring_values(f, 1.0, 16)
    assert np.allclose(vals, 2.0)


@settings(max_examples=40)
@given(small_series(max_degree=30), st.floats(0.0, 0.999))
def test_parseval_for_p2(f, r):
    n = np.arange(len(f))
    expect = np.sum(np.abs(f.coeffs) ** 2 * r ** (2 * n))
    assert math.isclose(ring_power_mean(f, 2, r), expect, rel_tol=1e-12, abs_tol=1e-300)


@settings(max_examples=30)
@given(small_series(max_degree=30), st.floats(0.1, 0.95))
def test_p2_fft_path_agrees_with_shortcut(f, r):
    # a grid with an offset bypasses the Parseval shortcut
    via_fft = ring_power_mean(f, 2, r, CircleGrid(128, 0.5))
    assert math.isclose(via_fft, ring_power_mean(f, 2, r), rel_tol=1e-10)


def test_integral_mean_domain():
    f = CoeffSeries([1, 1])
    with pytest.raises(ValueError):
        integral_mean(f, 2, 1.0)
    with pytest.raises(ValueError):
        integral_mean(f, 0, 0.5)
    assert math.isclose(integral_mean(f, 2, 0.5), math.sqrt(1.25))


def test_sup_mean_is_lower_bound_of_max_modulus():
    f = CoeffSeries([1, 1])
    assert sup_mean(f, 0.5) <= 1.5 + 1e-15
    assert sup_mean(f, 0.5) > 1.49


def test_effective_degree_drops_negligible_terms():
    f = CoeffSeries(np.ones(10_000))
    d = effective_degree(f, 0.5)
    assert d < 100 and 0.5**d < 1e-17
    assert effective_degree(f, 1.0) == 9_999


def test_radial_grid_integrates_polynomials_in_log_variable():
    g = RadialGrid.geometric(30)
    assert g.r_max == 1 - 2.0**-30
    val = radial_integral(lambda r: r**5, g)
    assert math.isclose(val, (g.r_max**6) / 6, rel_tol=1e-12)


def test_radial_grid_cells_are_levels():
    g = RadialGrid.for_degree(100)
    lo = 1 - 2.0 ** -g.cell.astype(float)
    assert np.all(g.nodes >= lo - 1e-15)


def test_midpoint_scheme_available():
    g = RadialGrid.geometric(12, 64, scheme="midpoint")
    assert math.isclose(radial_integral(lambda r: 1.0, g), g.r_max, rel_tol=1e-12)
    with pytest.raises(ValueError):
        RadialGrid.geometric(4, scheme="simpson")


def test_area_of_disc_and_weighted_moment():
    g = RadialGrid.for_degree(4)
    one = SeriesDensity(CoeffSeries([1.0]), 2.0, lambda r: 1.0)
    # dA = dx dy / pi, so the disc has area 1 (up to the r_max cut)
    assert math.isclose(area_integral(one, g), g.r_max**2, rel_tol=1e-12)
    w = SeriesDensity(CoeffSeries([1.0]), 2.0, lambda r: 1 - r, edge_exponent=1.0)
    # int (1-|z|) dA = 2 int (1-r) r dr = 1/3
    assert math.isclose(area_integral(w, g), 1 / 3, rel_tol=1e-10)


def test_area_integral_callable_needs_grid():
    g = RadialGrid.geometric(4)
    with pytest.raises(ValueError):
        area_integral(lambda r, t: np.ones_like(t), g)
    val = area_integral(lambda r, t: np.ones_like(t), g, CircleGrid(8))
    assert math.isclose(val, g.r_max**2, rel_tol=1e-12)


def test_bergman_closed_form_through_area_integral():
    # (alpha+1) int (1-|z|)^alpha |z^n|^2 dA = 2 (alpha+1) B(2n+2, alpha+1)
    n, alpha = 50, 1.5
    f = CoeffSeries(np.r_[np.zeros(n), 1.0])
    d = SeriesDensity(f, 2.0, lambda r: (1 - r) ** alpha, edge_exponent=alpha)
    val = (alpha + 1) * area_integral(d, RadialGrid.for_degree(n))
    expect = 2 * (alpha + 1) * special.beta(2 * n + 2, alpha + 1)
    assert math.isclose(val, expect, rel_tol=1e-10)


@pytest.mark.parametrize("n,m,alpha", [(10, 1, 2.0), (1000, 3, 2.0), (50, 0, 0.5), (0, 2, 1.0)])
def test_beta_log_integral_oracle(n, m, alpha):
    f = lambda x: x**n * (1 - x) ** m * (-math.log1p(-x)) ** alpha
    ref, _ = integrate.quad(f, 0, 1, limit=500, epsabs=0, epsrel=1e-12, points=[1 - 1 / (n + 1)])
    assert math.isclose(beta_log_integral(n, m, alpha), ref, rel_tol=1e-7)


def test_beta_log_alpha_zero_is_beta_function():
    for n, m in [(5, 2), (200, 1), (2**16, 3)]:
        assert math.isclose(beta_log_integral(n, m, 0.0), special.beta(n + 1, m + 1), rel_tol=1e-9)


def test_beta_log_rejects_bad_input():
    with pytest.raises(ValueError):
        beta_log_integral(-1, 1, 1.0)
    with pytest.raises(ValueError):
        beta_log_integral(1, 1, -1.0)


def test_random_series_helper_is_deterministic():
    assert random_series(3, 5) == random_series(3, 5)
