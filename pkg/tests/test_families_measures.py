from __future__ import annotations

import math

import numpy as np
import pytest

from discspaces.families import FAMILIES, build, embedding_suite, gap_coefficients
from discspaces.measures import QUANTITY_KINDS, measure
from discspaces.norms import bloch_seminorm, dirichlet_seminorm, hardy_norm, hinf_norm
from discspaces.series import CoeffSeries, cauchy_product, log_kernel_series


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_every_family_builds(family):
    params = {"exponent": 1.0} if family == "gap_power" else {}
    f = build(family, 64, params)
    assert isinstance(f, CoeffSeries) and f.degree <= 64


def test_unknown_family():
    with pytest.raises(ValueError):
        build("nope", 8)


def test_log_kernel_square_is_a_product():
    L = log_kernel_series(0.0, 40)
    expected = cauchy_product(L, L).coeffs[:41]
    assert np.allclose(build("log_kernel_sq", 40).coeffs, expected, atol=1e-14)


def test_one_minus_z_log_is_a_product():
    L = log_kernel_series(0.0, 40)
    expected = cauchy_product(CoeffSeries([1.0, -1.0]), L).coeffs[:41]
    assert np.allclose(build("one_minus_z_log", 40).coeffs, expected, atol=1e-14)


def test_gap_power_coefficients():
    f = build("gap_power", 64, {"exponent": 2.0})
    assert f.support.tolist() == [2, 4, 8, 16, 32, 64]
    assert np.allclose(f.coeffs[f.support], gap_coefficients(6, 2.0))
    g = build("gap_power", 64, {"exponent": 1.0, "shift": 1.0, "kmin": 0})
    assert g.coeffs[1] == 1.0 and g.coeffs[64] == pytest.approx(1 / 7)


def test_random_signs_are_shared_across_truncations():
    small = build("gap_power", 2**6, {"exponent": 1.0, "seed": 9})
    large = build("gap_power", 2**12, {"exponent": 1.0, "seed": 9})
    assert np.array_equal(large.coeffs[: len(small)], small.coeffs)
    assert set(np.abs(large.coeffs[large.support]) * np.arange(1, 13)) == {1.0}


def test_fournier_family_interpolates_and_is_bounded():
    f = build("fournier", 4**5, {"exponent": 1.0})
    assert np.allclose([f.coeffs[4**k] for k in range(6)], [1 / (k + 1) for k in range(6)], atol=1e-13)
    bound = math.prod(math.sqrt(1 + 1 / (k + 1) ** 2) for k in range(6))
    assert hinf_norm(f).value <= bound * (1 + 1e-9)


def test_embedding_suite():
    suite = embedding_suite()
    assert len(suite) == 12 and len({label for label, _, _ in suite}) == 12
    for _, family, params in suite:
        build(family, 32, params)


def test_measure_agrees_with_direct_calls():
    f = build("gap_power", 256, {"exponent": 1.0})
    m = measure(f, ["hinf", "hardy:2", "bloch", "dsemi:1:0", "coeffsum:2"])
    assert m["hinf"] == pytest.approx(hinf_norm(f).value)
    assert m["hardy:2"] == pytest.approx(hardy_norm(f, 2).value)
    assert m["bloch"] == pytest.approx(bloch_seminorm(f).value)
    assert m["dsemi:1:0"] == pytest.approx(dirichlet_seminorm(f, 1, 0, power=True).value)
    assert m["coeffsum:2"] == pytest.approx(m["hardy:2"] ** 2)


def test_measure_box_quantities_share_a_pass():
    f = build("monomial", 16)
    m = measure(f, ["bmoa", "bmoa_log", "mu:2"], maxlevel=3)
    # mu:2 is the BMOA measure itself
    assert m["mu:2"] == pytest.approx(m["bmoa"], rel=1e-12)
    assert m["bmoa_log"] > 0


def test_measure_rejects_unknown_names():
    assert "hinf" in QUANTITY_KINDS
    with pytest.raises(ValueError):
        measure(CoeffSeries([1.0]), ["sobolev:2"])
