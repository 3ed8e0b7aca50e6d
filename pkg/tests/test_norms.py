from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from conftest import random_series, small_series
from discspaces.families import build
from discspaces.norms import (
    DyadicBox,
    SpaceKind,
    SpaceParams,
    bergman_norm,
    bloch_seminorm,
    bmoa_density,
    box_ratios,
    carleson_constant,
    default_maxlevel,
    dirichlet_norm,
    dirichlet_seminorm,
    growth_bound_check,
    hardy_norm,
    hinf_norm,
    log_bloch_seminorm,
    log_carleson_constant,
    mu_gq_density,
    space_norm,
)
from discspaces.quadrature import SeriesDensity
from discspaces.refinement import Verdict, classify
from discspaces.series import CoeffSeries, log_kernel_series, mobius_series


def monomial(n: int, c: complex = 1.0) -> CoeffSeries:
    out = np.zeros(n + 1, dtype=complex)
    out[n] = c
    return CoeffSeries(out)


# -- parameters -------------------------------------------------------------------


def test_space_params_validation():
    with pytest.raises(ValueError):
        SpaceParams("Sobolev")
    with pytest.raises(ValueError):
        SpaceParams(SpaceKind.BERGMAN, 2.0, -1.0)
    with pytest.raises(ValueError):
        SpaceParams(SpaceKind.HARDY, 0.0)
    with pytest.raises(ValueError):
        SpaceParams(SpaceKind.LOG_BLOCH, alpha=0.0)
    assert SpaceParams.dirichlet(0.5).is_standard_dirichlet
    assert not SpaceParams(SpaceKind.DIRICHLET, 2.0, 0.0).is_standard_dirichlet


def test_space_params_round_trip_and_label():
    s = SpaceParams(SpaceKind.DIRICHLET, 0.5, -0.5)
    assert SpaceParams.from_dict(s.to_dict()) == s
    assert s.label() == "D^0.5_-0.5"
    assert SpaceParams.from_dict({"kind": "Hardy", "p": "inf"}).p == math.inf


def test_dyadic_box_validation():
    DyadicBox(3, 7)
    with pytest.raises(ValueError):
        DyadicBox(3, 8)
    with pytest.raises(ValueError):
        DyadicBox(-1, 0)


# -- Hardy ----------------------------------------------------------------------------


def test_hardy_constant_and_monomial():
    assert math.isclose(hardy_norm(CoeffSeries([3.0]), 1.5).value, 3.0)
    assert math.isclose(hardy_norm(monomial(7), 2).value, 1.0, rel_tol=1e-14)


def test_hardy_h2_is_parseval():
    for seed in range(5):
        f = random_series(seed, 64)
        expect = math.sqrt(float(np.sum(np.abs(f.coeffs) ** 2)))
        assert math.isclose(hardy_norm(f, 2).value, expect, rel_tol=1e-12)


def test_hardy_p_inf_is_hinf():
    f = mobius_series(0.4, 200)
    assert hardy_norm(f, math.inf).value == hinf_norm(f).value


def test_hinf_mobius_and_positive_gap_series():
    assert math.isclose(hinf_norm(mobius_series(0.7j, 1024)).value, 1.0, abs_tol=1e-6)
    f = build("gap_power", 2**10, {"exponent": 0.0, "kmin": 0})
    assert math.isclose(hinf_norm(f).value, 11.0, rel_tol=1e-12)


# -- Bergman and Dirichlet ------------------------------------------------------------


def test_bergman_closed_forms():
    assert math.isclose(bergman_norm(CoeffSeries([1.0]), 2, 0.0).value, 1.0, rel_tol=1e-10)
    assert math.isclose(bergman_norm(monomial(1), 2, 0.0).value, math.sqrt(0.5), rel_tol=1e-10)


def test_bergman_geometric_partial_sum_against_beta_oracle():
    N, alpha = 64, 1.0
    f = CoeffSeries(np.ones(N + 1))
    n = np.arange(N + 1)
    expect = np.sum(2 * (alpha + 1) * special.beta(2 * n + 2, alpha + 1))
    assert math.isclose(bergman_norm(f, 2, alpha).value ** 2, expect, rel_tol=1e-10)


def test_dirichlet_constant_and_monomial():
    assert math.isclose(dirichlet_norm(CoeffSeries([2.5]), 1.0, 0.0).value, 2.5)
    # (alpha+1) int (1-|z|) |1|^2 dA = 2/3 for f = z, p = 2, alpha = 1
    v = dirichlet_seminorm(monomial(1), 2, 1.0, power=True).value
    assert math.isclose(v, 2 / 3, rel_tol=1e-10)


def test_d21_seminorm_closed_form_and_h2_comparison():
    for seed in range(10):
        f = random_series(100 + seed, 128)
        n = np.arange(129)
        closed = float(np.sum(2 * n / (2 * n + 1.0) * np.abs(f.coeffs) ** 2))
        semi2 = dirichlet_seminorm(f, 2, 1.0, power=True).value
        assert math.isclose(semi2, closed, rel_tol=1e-8)
        d2 = dirichlet_norm(f, 2, 1.0).value ** 2
        h2 = hardy_norm(f, 2).value ** 2
        assert 0.5 <= d2 / h2 <= 2.0


def test_dirichlet_rejects_bad_parameters():
    with pytest.raises(ValueError):
        dirichlet_seminorm(monomial(2), 2.0, -1.5)
    with pytest.raises(ValueError):
        bergman_norm(monomial(2), 0.0, 0.0)


# -- sup-type -----------------------------------------------------------------------


def test_bloch_of_z_is_one():
    assert math.isclose(bloch_seminorm(monomial(1)).value, 1.0, rel_tol=1e-12)


@pytest.mark.parametrize("a", [0.3, 0.7, 0.9j])
def test_bloch_of_mobius_is_one(a):
    assert math.isclose(bloch_seminorm(mobius_series(a, 4096)).value, 1.0, abs_tol=1e-4)


def test_bloch_of_gap_series_is_stable():
    vals = [bloch_seminorm(build("gap_power", 2**K, {"exponent": 0.0})).value for K in (8, 11, 14)]
    assert max(vals) / min(vals) < 1.1


def test_log_bloch_constant_is_zero():
    assert log_bloch_seminorm(CoeffSeries([4.0]), 1.0).value == 0.0
    with pytest.raises(ValueError):
        log_bloch_seminorm(monomial(1), 0.0)


def test_log_bloch_of_log_kernel_diverges():
    vals = [log_bloch_seminorm(log_kernel_series(0.0, 4**j), 0.5).value for j in range(2, 6)]
    assert classify(vals) == Verdict.DIVERGING


def test_log_bloch_of_gap_series_bounded():
    # g = sum k^(-2) z^(2^k) with alpha = 1/q = 2
    vals = [log_bloch_seminorm(build("gap_power", 2**j, {"exponent": 2.0}), 2.0).value for j in range(10, 15)]
    assert classify(vals) == Verdict.BOUNDED


# -- Carleson boxes -------------------------------------------------------------------


def test_constant_density_carleson_ratios():
    c = 2.5
    dens = SeriesDensity(CoeffSeries([1.0]), 2.0, lambda r: c, edge_exponent=0.0)
    ratios = box_ratios(dens, 4)
    assert math.isclose(float(ratios[0][0]), c, rel_tol=1e-10)
    for lev, r in enumerate(ratios):
        # S(I) has area |I| (2 - 2^-l) 2^-l under dA / pi with |I| normalised
        expect = c * (2 - 2.0**-lev) * 2.0**-lev
        assert np.allclose(r, expect, rtol=1e-10)


def test_bmoa_density_of_z_peaks_at_level_zero():
    est = carleson_constant(bmoa_density(monomial(1)), 5)
    assert math.isclose(est.value, 0.5, rel_tol=1e-10)
    assert est.grid["argmax_box"][0] == 0


def test_log_carleson_with_power_zero_is_carleson():
    for seed in range(5):
        d = bmoa_density(random_series(seed, 32))
        assert log_carleson_constant(d, 0.0, 3).value == carleson_constant(d, 3).value


def test_log_kernel_box_constant_stabilises():
    f = log_kernel_series(0.0, 2**12)
    vals = [carleson_constant(bmoa_density(f), lev).value for lev in (4, 6, 8, 10)]
    assert classify(vals) == Verdict.BOUNDED


def test_log_kernel_log_box_constant_grows():
    vals = [
        log_carleson_constant(bmoa_density(log_kernel_series(0.0, N)), 2.0, default_maxlevel(N)).value
        for N in (16, 256, 4096, 65536)
    ]
    assert classify(vals) == Verdict.DIVERGING


def test_box_ratio_checks():
    d = bmoa_density(monomial(3))
    with pytest.raises(ValueError):
        box_ratios(d, -1)
    with pytest.raises(ValueError):
        box_ratios(d, 3, M=20)


def test_mu_gq_density_special_cases():
    assert mu_gq_density(CoeffSeries([3.0]), 1.0).ring(0.5, 8).sum() == 0.0
    d = mu_gq_density(monomial(1), 1.0)
    assert np.allclose(d.ring(0.7, 16), 1.0)
    with pytest.raises(ValueError):
        mu_gq_density(monomial(1), 0.0)


def test_mu_gq_geometric_gap_series_has_finite_constant():
    g = lambda N: build("gap_power", N, {"exponent": 0.0, "kmin": 0})
    vals = []
    for N in (16, 256, 4096, 65536):
        f = g(N)
        f = CoeffSeries(f.coeffs * np.where(f.coeffs != 0, 1.0 / np.maximum(np.arange(len(f)), 1), 0))
        vals.append(carleson_constant(mu_gq_density(f, 1.0), default_maxlevel(N)).value)
    assert classify(vals) == Verdict.BOUNDED


# -- growth of means ------------------------------------------------------------------


def test_growth_bound_check_cases():
    assert growth_bound_check(CoeffSeries([2.0]), 2.0)["trivial"]
    rep = growth_bound_check(monomial(1), 2.0)
    assert rep["passed"] and rep["sup_ratio"] < 1.5
    ratios = [growth_bound_check(build("gap_power", 2**K, {"exponent": 0.0, "kmin": 0}), 2.0)["sup_ratio"] for K in (6, 10, 14)]
    assert max(ratios) / min(ratios) < 1.5
    assert growth_bound_check(log_kernel_series(0.0, 4096), 2.0)["passed"]


# -- properties -----------------------------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(small_series(max_degree=16), st.floats(0.1, 10.0), st.floats(0, 6.28))
def test_homogeneity(f, size, phase):
    c = size * complex(math.cos(phase), math.sin(phase))
    cf = f.scale(c)
    for p in (0.5, 2.0):
        assert math.isclose(hardy_norm(cf, p).value, size * hardy_norm(f, p).value, rel_tol=1e-12)
        assert math.isclose(bergman_norm(cf, p, 0.5).value, size * bergman_norm(f, p, 0.5).value, rel_tol=1e-12)
        assert math.isclose(
            dirichlet_seminorm(cf, p, p - 1, power=True).value,
            size**p * dirichlet_seminorm(f, p, p - 1, power=True).value,
            rel_tol=1e-12,
        )
    assert math.isclose(bloch_seminorm(cf).value, size * bloch_seminorm(f).value, rel_tol=1e-9)
    assert math.isclose(hinf_norm(cf).value, size * hinf_norm(f).value, rel_tol=1e-9)
    assert math.isclose(
        carleson_constant(bmoa_density(cf), 3).value,
        size**2 * carleson_constant(bmoa_density(f), 3).value,
        rel_tol=1e-12,
    )


@settings(max_examples=10, deadline=None)
@given(small_series(max_degree=24), st.sampled_from([(0.5, 1.0), (1.0, 2.0), (1.5, 3.0)]))
def test_dirichlet_inclusion_inequality(f, pq):
    p, q = pq
    bloch = bloch_seminorm(f).value
    lhs = dirichlet_seminorm(f, q, q - 1, power=True).value
    rhs = (q / p) * bloch ** (q - p) * dirichlet_seminorm(f, p, p - 1, power=True).value
    assert lhs <= rhs * (1 + 1e-6)


def test_sup_estimates_increase_under_refinement():
    f = random_series(9, 40)
    coarse = bloch_seminorm(f, polish=False, per_octave=4).value
    fine = bloch_seminorm(f, polish=False, per_octave=8).value
    assert fine >= coarse - 1e-15


def test_space_norm_dispatch():
    f = CoeffSeries([1.0, 0.5])
    assert math.isclose(space_norm(f, SpaceParams(SpaceKind.HARDY, 2.0)).value, math.sqrt(1.25))
    assert math.isclose(space_norm(f, SpaceParams(SpaceKind.BLOCH)).value, 1.5, rel_tol=1e-12)
    bmoa = space_norm(f, SpaceParams(SpaceKind.BMOA)).value
    assert bmoa > 1.0
    # |f(0)| plus the square root of the log-weighted box constant
    blog = space_norm(f, SpaceParams(SpaceKind.BMOA_LOG)).value
    box = log_carleson_constant(bmoa_density(f), 2.0, default_maxlevel(f.degree)).value
    assert math.isclose(blog, 1.0 + math.sqrt(box), rel_tol=1e-12)
    d = space_norm(f, SpaceParams.dirichlet(2.0)).value
    assert math.isclose(d, dirichlet_norm(f, 2.0, 1.0).value)
