"""Named test functions, each truncated at a requested degree N.

A family is a builder ``(N, **params) -> CoeffSeries``.  Scenarios refer to
families by name so that a whole experiment can live in a JSON file.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .fournier import FournierInput, fournier_sparse
from .random_series import sample_signs
from .series import CoeffSeries, gap_series, lacunary_to_dense, log_kernel_series, mobius_series

__all__ = ["FAMILIES", "build", "gap_coefficients", "embedding_suite"]

Builder = Callable[..., CoeffSeries]


def _monomial(N: int, n: int = 1, c: float = 1.0) -> CoeffSeries:
    out = np.zeros(max(N, n) + 1, dtype=complex)
    out[n] = c
    return CoeffSeries(out)


def _constant(N: int, c: float = 1.0) -> CoeffSeries:
    return CoeffSeries([c])


def _mobius(N: int, a_re: float = 0.5, a_im: float = 0.0) -> CoeffSeries:
    return mobius_series(complex(a_re, a_im), N)


def _log_kernel(N: int, theta: float = 0.0) -> CoeffSeries:
    return log_kernel_series(theta, N)


def _log_kernel_sq(N: int) -> CoeffSeries:
    # (log 1/(1-z))^2 = sum 2 H_{n-1} z^n / n
    n = np.arange(1, N + 1)
    harmonic = np.concatenate([[0.0], np.cumsum(1.0 / n[:-1])])
    out = np.zeros(N + 1)
    out[1:] = 2.0 * harmonic / n
    return CoeffSeries(out)


def _one_minus_z_log(N: int) -> CoeffSeries:
    # (1-z) log 1/(1-z) = z - sum_{n>=2} z^n / (n(n-1))
    out = np.zeros(N + 1)
    out[1] = 1.0
    n = np.arange(2, N + 1)
    out[2:] = -1.0 / (n * (n - 1.0))
    return CoeffSeries(out)


def _geometric(N: int) -> CoeffSeries:
    return CoeffSeries(np.ones(N + 1))


def gap_coefficients(K: int, exponent: float, shift: float = 0.0, kmin: int = 1) -> np.ndarray:
    """``(k + shift)^-exponent`` for ``k = kmin .. K``."""
    k = np.arange(kmin, K + 1, dtype=float)
    return (k + shift) ** -exponent


def _gap_power(
    N: int,
    exponent: float,
    shift: float = 0.0,
    kmin: int = 1,
    base: int = 2,
    seed: int | None = None,
) -> CoeffSeries:
    """``sum_{k>=kmin} (k+shift)^-exponent z^{base^k}``, optionally with random signs."""
    spec = gap_series(lambda k: (k + shift) ** -exponent, N, base=base, kmin=kmin)
    f = lacunary_to_dense(spec, N)
    if seed is not None:
        # draw a fixed-length sequence so truncations share their signs
        s = sample_signs(max(64, len(spec)), seed=seed).signs[: len(spec)]
        out = np.array(f.coeffs)
        out[list(spec.indices)] *= s
        f = CoeffSeries(out)
    return f


def _fournier(N: int, exponent: float = 1.0, base: int = 4) -> CoeffSeries:
    """Bounded function with coefficient ``(k+1)^-exponent`` at ``base^k``, k up to ``log_base N``."""
    K = int(math.floor(math.log(N, base) + 1e-12))
    inp = FournierInput(
        tuple((k + 1.0) ** -exponent for k in range(K + 1)),
        tuple(base**k for k in range(K + 1)),
    )
    phi = fournier_sparse(inp)[0]
    return phi.to_series(N)


FAMILIES: dict[str, Builder] = {
    "constant": _constant,
    "monomial": _monomial,
    "mobius": _mobius,
    "log_kernel": _log_kernel,
    "log_kernel_sq": _log_kernel_sq,
    "one_minus_z_log": _one_minus_z_log,
    "geometric": _geometric,
    "gap_power": _gap_power,
    "fournier": _fournier,
}


def build(family: str, N: int, params: dict | None = None) -> CoeffSeries:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return builder(N, **(params or {}))


def embedding_suite() -> list[tuple[str, str, dict]]:
    """Twelve functions spread across the BMOA-type scale: (label, family, params)."""
    return [
        ("z", "monomial", {}),
        ("mobius", "mobius", {"a_re": 0.5}),
        ("log", "log_kernel", {}),
        ("log_sq", "log_kernel_sq", {}),
        ("one_minus_z_log", "one_minus_z_log", {}),
        ("gap_k0", "gap_power", {"exponent": 0.0}),
        ("gap_k05", "gap_power", {"exponent": 0.5}),
        ("gap_k08", "gap_power", {"exponent": 0.8}),
        ("gap_k1", "gap_power", {"exponent": 1.0}),
        ("gap_k15", "gap_power", {"exponent": 1.5}),
        ("gap_k2", "gap_power", {"exponent": 2.0}),
        ("gap_k1_signed", "gap_power", {"exponent": 1.0, "seed": 7}),
    ]
