"""Named quantities of a truncated series, computed with shared work.

Quantity names are ``kind`` or ``kind:arg[:arg]``:

==================  ====================================================
``hinf``            sup of ``|f|`` on the unit circle
``hardy:p``         H^p norm
``bergman:p:a``     A^p_a norm
``dnorm:p:a``       D^p_a norm
``dsemi:p:a``       ``||f'||^p_{A^p_a}``, the p-th power of the seminorm
``bloch``           Bloch seminorm
``logbloch:a``      log-Bloch seminorm with exponent a
``bmoa``            dyadic Carleson constant of ``(1-|z|^2)|f'|^2 dA``
``bmoa_log``        the same with the ``(log 2/|I|)^2`` factor
``mu:q``            Carleson constant of ``|f'|^q (1-|z|^2)^(q-1) dA``
``coeffsum:p``      ``sum |a_n|^p`` over nonzero coefficients
``logsum:a``        ``sum_{n>=2} |a_n|^2 (log n)^a``
``duren:s``         ``int (1-r)(log 1/(1-r))^s M_inf(r, f')^2 dr``
==================  ====================================================
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .norms import (
    bergman_norm,
    bloch_weight,
    bmoa_density,
    box_ratios,
    default_maxlevel,
    dirichlet_norm,
    dirichlet_seminorm,
    hardy_norm,
    hinf_norm,
    log_bloch_weight,
    mu_gq_density,
    weighted_sups,
)
from .random_series import coefficient_log_sum, duren_weight_integral
from .series import CoeffSeries, derivative

__all__ = ["measure", "QUANTITY_KINDS"]

QUANTITY_KINDS = (
    "hinf",
    "hardy",
    "bergman",
    "dnorm",
    "dsemi",
    "bloch",
    "logbloch",
    "bmoa",
    "bmoa_log",
    "mu",
    "coeffsum",
    "logsum",
    "duren",
)


def _parse(name: str) -> tuple[str, list[float]]:
    kind, *args = name.split(":")
    if kind not in QUANTITY_KINDS:
        raise ValueError(f"unknown quantity {name!r}")
    return kind, [float(a) for a in args]


def _box_sup(ratios: list[np.ndarray], power: float) -> float:
    return max(
        float(np.max(r)) * ((lev + 1) * math.log(2.0)) ** power for lev, r in enumerate(ratios)
    )


def measure(f: CoeffSeries, names: Iterable[str], *, maxlevel: int | None = None) -> dict[str, float]:
    """Evaluate each named quantity of f.

    Sup-type quantities share one sweep of circle maxima of f', and the two
    BMOA box quantities share one pass over the Carleson boxes.
    """
    names = list(names)
    parsed = {name: _parse(name) for name in names}
    out: dict[str, float] = {}

    sup_names = [n for n, (k, _) in parsed.items() if k in ("bloch", "logbloch")]
    if sup_names:
        weights = [
            bloch_weight if parsed[n][0] == "bloch" else log_bloch_weight(parsed[n][1][0])
            for n in sup_names
        ]
        for n, est in zip(sup_names, weighted_sups(derivative(f), weights)):
            out[n] = est.value

    if any(parsed[n][0] in ("bmoa", "bmoa_log") for n in names):
        lev = maxlevel if maxlevel is not None else default_maxlevel(f.degree)
        ratios = box_ratios(bmoa_density(f), lev)
        for n in names:
            if parsed[n][0] == "bmoa":
                out[n] = _box_sup(ratios, 0.0)
            elif parsed[n][0] == "bmoa_log":
                out[n] = _box_sup(ratios, 2.0)

    for n in names:
        if n in out:
            continue
        kind, args = parsed[n]
        if kind == "hinf":
            out[n] = hinf_norm(f).value
        elif kind == "hardy":
            out[n] = hardy_norm(f, args[0]).value
        elif kind == "bergman":
            out[n] = bergman_norm(f, args[0], args[1]).value
        elif kind == "dnorm":
            out[n] = dirichlet_norm(f, args[0], args[1]).value
        elif kind == "dsemi":
            out[n] = dirichlet_seminorm(f, args[0], args[1], power=True).value
        elif kind == "mu":
            lev = maxlevel if maxlevel is not None else default_maxlevel(f.degree)
            out[n] = _box_sup(box_ratios(mu_gq_density(f, args[0]), lev), 0.0)
        elif kind == "coeffsum":
            a = np.abs(f.coeffs[f.support])
            out[n] = float(np.sum(a ** args[0]))
        elif kind == "logsum":
            out[n] = coefficient_log_sum(f, args[0])
        elif kind == "duren":
            out[n] = duren_weight_integral(f, args[0]).value
    return out
