"""Norm and seminorm estimators for the classical spaces on the disc.

Conventions, fixed for the whole package:

* angular means use ``dt/2pi`` and area integrals ``dA = dx dy / pi``;
* ``||f||_{A^p_alpha}^p = (alpha+1) int_D (1-|z|)^alpha |f|^p dA``;
* ``||f||_{D^p_alpha}^p = |f(0)|^p + ||f'||_{A^p_alpha}^p``;
* Bloch-type and BMOA-type quantities carry the weight ``1 - |z|^2``.

Sup-type quantities (H^inf, Bloch, log-Bloch) are grid maxima refined by a
local Nelder-Mead polish, so they are lower bounds for the true suprema.
Box quantities (BMOA, BMOA_log, Carleson measures) are maxima over dyadic
Carleson boxes; level ``l`` box ``j`` sits over the arc
``[2 pi j 2^-l, 2 pi (j+1) 2^-l)`` with ``1 - 2^-l <= r < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .quadrature import (
    CircleGrid,
    RadialGrid,
    SeriesDensity,
    auto_circle_size,
    effective_degree,
    ring_power_mean,
    ring_values,
)
from .refinement import NormEstimate
from .series import CoeffSeries, derivative

__all__ = [
    "SpaceKind",
    "SpaceParams",
    "DyadicBox",
    "hardy_norm",
    "hinf_norm",
    "bergman_norm",
    "dirichlet_norm",
    "dirichlet_seminorm",
    "bloch_seminorm",
    "log_bloch_seminorm",
    "weighted_sup",
    "weighted_sups",
    "bloch_weight",
    "log_bloch_weight",
    "box_ratios",
    "carleson_constant",
    "log_carleson_constant",
    "bmoa_density",
    "mu_gq_density",
    "log_dirichlet_density",
    "growth_bound_check",
    "default_maxlevel",
    "space_norm",
]


class SpaceKind:
    HARDY = "Hardy"
    BERGMAN = "Bergman"
    DIRICHLET = "DirichletType"
    BLOCH = "Bloch"
    LOG_BLOCH = "LogBloch"
    BMOA = "BMOA"
    BMOA_LOG = "BMOALog"

    ALL = (HARDY, BERGMAN, DIRICHLET, BLOCH, LOG_BLOCH, BMOA, BMOA_LOG)


@dataclass(frozen=True)
class SpaceParams:
    """Which space, and its exponents.

    ``p = inf`` is allowed for Hardy (H^inf).  For ``LogBloch`` ``alpha`` is
    the exponent of the logarithmic weight.
    """

    kind: str
    p: float | None = None
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in SpaceKind.ALL:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind in (SpaceKind.HARDY, SpaceKind.BERGMAN, SpaceKind.DIRICHLET):
            if self.p is None or not self.p > 0:
                raise ValueError(f"{self.kind} needs p > 0")
        if self.kind in (SpaceKind.BERGMAN, SpaceKind.DIRICHLET):
            if self.alpha is None or not self.alpha > -1:
                raise ValueError(f"{self.kind} needs alpha > -1")
        if self.kind == SpaceKind.LOG_BLOCH and (self.alpha is None or not self.alpha > 0):
            raise ValueError("LogBloch needs alpha > 0")

    @property
    def is_standard_dirichlet(self) -> bool:
        """True for the scale ``D^p_{p-1}``."""
        return (
            self.kind == SpaceKind.DIRICHLET
            and self.p is not None
            and self.alpha is not None
            and math.isclose(self.alpha, self.p - 1.0, abs_tol=1e-12)
        )

    @classmethod
    def dirichlet(cls, p: float) -> SpaceParams:
        return cls(SpaceKind.DIRICHLET, p, p - 1.0)

    def label(self) -> str:
        if self.kind == SpaceKind.HARDY:
            return f"H^{self.p:g}"
        if self.kind == SpaceKind.BERGMAN:
            return f"A^{self.p:g}_{self.alpha:g}"
        if self.kind == SpaceKind.DIRICHLET:
            return f"D^{self.p:g}_{self.alpha:g}"
        if self.kind == SpaceKind.LOG_BLOCH:
            return f"B_log,{self.alpha:g}"
        return self.kind

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "alpha": self.alpha}

    @classmethod
    def from_dict(cls, data: dict) -> SpaceParams:
        p = data.get("p")
        if isinstance(p, str):
            p = float(p)
        return cls(data["kind"], p, data.get("alpha"))


@dataclass(frozen=True)
class DyadicBox:
    """Carleson box over the arc of normalised length ``2^-level``."""

    level: int
    index: int

    def __post_init__(self) -> None:
        if self.level < 0 or not 0 <= self.index < 2**self.level:
            raise ValueError("need level >= 0 and 0 <= index < 2^level")

    @property
    def arc_length(self) -> float:
        return 2 * math.pi * 2.0**-self.level

    @property
    def start_angle(self) -> float:
        return 2 * math.pi * self.index * 2.0**-self.level

    @property
    def inner_radius(self) -> float:
        return 1.0 - 2.0**-self.level

    def contains(self, r: float, theta: float) -> bool:
        t = theta % (2 * math.pi)
        return (
            self.inner_radius <= r < 1.0
            and self.start_angle <= t < self.start_angle + self.arc_length
        )


def _default_rgrid(f: CoeffSeries, rgrid: RadialGrid | None) -> RadialGrid:
    return rgrid if rgrid is not None else RadialGrid.for_degree(max(f.degree, 1))


# -- Hardy -------------------------------------------------------------------


def hardy_norm(
    f: CoeffSeries,
    p: float,
    rgrid: RadialGrid | None = None,
    cgrid: CircleGrid | None = None,
) -> NormEstimate:
    """``sup_r M_p(r, f)`` over the radial nodes and the boundary circle.

    A truncated series is a polynomial, so its integral means increase up to
    ``r = 1`` where they are finite; the boundary circle is included.
    """
    if math.isinf(p):
        return hinf_norm(f, cgrid)
    if not p > 0:
        raise ValueError("p must be positive")
    rgrid = _default_rgrid(f, rgrid)
    means = [ring_power_mean(f, p, float(r), cgrid) for r in rgrid.nodes]
    means.append(ring_power_mean(f, p, 1.0, cgrid))
    value = max(means) ** (1.0 / p)
    return NormEstimate(
        value,
        f.degree,
        {"radial": rgrid.to_dict(), "boundary": True, "p": p},
    )


def hinf_norm(f: CoeffSeries, cgrid: CircleGrid | None = None, *, polish: bool = True) -> NormEstimate:
    """Sup of ``|f|`` on the closed disc, i.e. on the unit circle for a polynomial."""
    if len(f) == 0:
        return NormEstimate(0.0, f.degree, {"M": 0})
    M = cgrid.M if cgrid is not None else 4 * auto_circle_size(f.degree)
    vals = np.abs(ring_values(f, 1.0, M))
    j = int(np.argmax(vals))
    best = float(vals[j])
    if polish and f.degree > 0:
        step = 2 * math.pi / M
        t0 = 2 * math.pi * j / M
        res = optimize.minimize_scalar(
            lambda t: -abs(_point_eval(f, complex(math.cos(t), math.sin(t)))),
            bounds=(t0 - step, t0 + step),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best = max(best, -float(res.fun))
    return NormEstimate(best, f.degree, {"M": M, "boundary": True, "polished": polish})


# -- Bergman and Dirichlet ------------------------------------------------------


def _power_weight(alpha: float) -> Callable[[float], float]:
    return lambda r: (1.0 - r) ** alpha


def _weighted_area(
    h: CoeffSeries,
    p: float,
    alpha: float,
    rgrid: RadialGrid,
    cgrid: CircleGrid | None,
) -> float:
    """``int_D (1-|z|)^alpha |h|^p dA`` including the analytic edge tail."""
    total = 0.0
    for r, w in zip(rgrid.nodes.tolist(), rgrid.weights.tolist()):
        total += w * 2.0 * r * (1.0 - r) ** alpha * ring_power_mean(h, p, r, cgrid)
    # past r_max the polynomial is frozen at its edge values
    edge = 1.0 - rgrid.r_max
    total += 2.0 * ring_power_mean(h, p, rgrid.r_max, cgrid) * edge ** (alpha + 1) / (alpha + 1)
    return total


def bergman_norm(
    f: CoeffSeries,
    p: float,
    alpha: float,
    rgrid: RadialGrid | None = None,
    cgrid: CircleGrid | None = None,
) -> NormEstimate:
    if not p > 0:
        raise ValueError("p must be positive")
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    rgrid = _default_rgrid(f, rgrid)
    integral = (alpha + 1.0) * _weighted_area(f, p, alpha, rgrid, cgrid)
    return NormEstimate(
        integral ** (1.0 / p),
        f.degree,
        {"radial": rgrid.to_dict(), "p": p, "alpha": alpha, "pth_power": integral},
    )


def dirichlet_seminorm(
    f: CoeffSeries,
    p: float,
    alpha: float,
    rgrid: RadialGrid | None = None,
    cgrid: CircleGrid | None = None,
    *,
    power: bool = False,
) -> NormEstimate:
    """``||f'||_{A^p_alpha}``, or its p-th power when ``power`` is set."""
    fp = derivative(f)
    rgrid = _default_rgrid(f, rgrid)
    if len(fp) == 0:
        return NormEstimate(0.0, f.degree, {"radial": rgrid.to_dict()})
    est = bergman_norm(fp, p, alpha, rgrid, cgrid)
    if power:
        est.value = est.grid["pth_power"]
    est.degree = f.degree
    return est


def dirichlet_norm(
    f: CoeffSeries,
    p: float,
    alpha: float,
    rgrid: RadialGrid | None = None,
    cgrid: CircleGrid | None = None,
) -> NormEstimate:
    """``(|f(0)|^p + ||f'||^p_{A^p_alpha})^{1/p}``."""
    a0 = abs(f.coeffs[0]) if len(f) else 0.0
    semi = dirichlet_seminorm(f, p, alpha, rgrid, cgrid, power=True)
    value = (a0**p + semi.value) ** (1.0 / p)
    grid = dict(semi.grid)
    grid["seminorm_pth_power"] = semi.value
    return NormEstimate(value, f.degree, grid)


# -- sup-type seminorms -------------------------------------------------------


def _point_eval(h: CoeffSeries, z: complex) -> complex:
    if z == 0:
        return complex(h.coeffs[0]) if len(h) else 0j
    d = effective_degree(h, min(abs(z), 1.0))
    idx = h.support[h.support <= d]
    return complex(np.sum(h.coeffs[idx] * np.exp(idx * np.log(z))))


def _ring_maxima(
    h: CoeffSeries, per_octave: int, u_extra: float, cgrid: CircleGrid | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Grid maximum of ``|h|`` and its angle on circles uniform in ``u = -log(1-r)``."""
    du = math.log(2.0) / per_octave
    u_max = math.log(h.degree + 2.0) + u_extra
    us = np.arange(0.0, u_max + du, du)
    peaks = np.empty(us.size)
    thetas = np.empty(us.size)
    off = cgrid.offset if cgrid is not None else 0.0
    for i, u in enumerate(us.tolist()):
        r = -math.expm1(-u)
        M = cgrid.M if cgrid is not None else 2 * auto_circle_size(effective_degree(h, r))
        vals = np.abs(ring_values(h, r, M, off))
        j = int(np.argmax(vals))
        peaks[i] = vals[j]
        thetas[i] = 2 * math.pi * (j + off) / M
    return us, peaks, thetas


def _polish(
    h: CoeffSeries,
    weight: Callable[[float], float],
    start: tuple[float, float],
    du: float,
    dtheta: float,
) -> tuple[float, float, float]:
    def neg(x: np.ndarray) -> float:
        r = -math.expm1(-max(float(x[0]), 0.0))
        return -weight(r) * abs(_point_eval(h, r * complex(math.cos(x[1]), math.sin(x[1]))))

    u0, t0 = start
    simplex = np.array([[u0, t0], [u0 + du, t0], [u0, t0 + dtheta]])
    res = optimize.minimize(
        neg,
        np.array([u0, t0]),
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-10, "fatol": 1e-14, "maxiter": 400},
    )
    return float(-res.fun), max(float(res.x[0]), 0.0), float(res.x[1]) % (2 * math.pi)


def weighted_sups(
    h: CoeffSeries,
    weights: Sequence[Callable[[float], float]],
    *,
    per_octave: int = 8,
    u_extra: float = 6.0,
    cgrid: CircleGrid | None = None,
    polish: bool = True,
    starts: int = 3,
) -> list[NormEstimate]:
    """Lower bounds for ``sup_{|z|<1} w(|z|) |h(z)|``, one per radial weight w.

    Radii are uniform in ``u = -log(1-r)`` (``per_octave`` per factor two in
    ``1 - r``) out to ``1 - r ~ e^{-u_extra}/(deg+2)``.  The weights only
    depend on ``|z|``, so one sweep of circle maxima serves all of them.  The
    best ``starts`` well-separated grid maxima are then polished with
    Nelder-Mead in ``(u, theta)``.
    """
    if len(h) == 0 or not np.any(h.coeffs):
        return [NormEstimate(0.0, h.degree, {"radii": 0}) for _ in weights]
    us, peaks, thetas = _ring_maxima(h, per_octave, u_extra, cgrid)
    radii = -np.expm1(-us)
    du = math.log(2.0) / per_octave
    dtheta = 2 * math.pi / (cgrid.M if cgrid is not None else 2 * auto_circle_size(h.degree))
    out = []
    for weight in weights:
        scores = np.array([weight(r) for r in radii.tolist()]) * peaks
        order = np.argsort(-scores, kind="stable")
        i0 = int(order[0])
        value, where = float(scores[i0]), (float(us[i0]), float(thetas[i0]))
        if polish:
            seen: list[float] = []
            for i in order.tolist():
                if len(seen) == starts:
                    break
                if any(abs(us[i] - s) < 2 * du for s in seen):
                    continue
                seen.append(float(us[i]))
                val, u, t = _polish(h, weight, (float(us[i]), float(thetas[i])), du, dtheta)
                if val > value:
                    value, where = val, (u, t)
        out.append(
            NormEstimate(
                value,
                h.degree,
                {
                    "radii": int(us.size),
                    "per_octave": per_octave,
                    "argmax": {"r": -math.expm1(-where[0]), "theta": where[1]},
                    "polished": polish,
                },
            )
        )
    return out


def weighted_sup(
    h: CoeffSeries,
    weight: Callable[[float], float],
    **kwargs,
) -> NormEstimate:
    """Single-weight form of :func:`weighted_sups`."""
    return weighted_sups(h, [weight], **kwargs)[0]


def bloch_weight(r: float) -> float:
    return 1.0 - r * r


def log_bloch_weight(alpha: float) -> Callable[[float], float]:
    """``(1-r^2) (log e/(1-r^2))^alpha``."""

    def weight(r: float) -> float:
        s = 1.0 - r * r
        return s * (1.0 - math.log(s)) ** alpha

    return weight


def bloch_seminorm(f: CoeffSeries, *, polish: bool = True, cgrid: CircleGrid | None = None, per_octave: int = 8) -> NormEstimate:
    """``sup (1-|z|^2) |f'(z)|``."""
    est = weighted_sup(
        derivative(f), bloch_weight, polish=polish, cgrid=cgrid, per_octave=per_octave
    )
    est.degree = f.degree
    return est


def log_bloch_seminorm(
    f: CoeffSeries, alpha: float, *, polish: bool = True, cgrid: CircleGrid | None = None, per_octave: int = 8
) -> NormEstimate:
    """``sup (1-|z|^2) |f'(z)| (log e/(1-|z|^2))^alpha``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    weight = log_bloch_weight(alpha)
    est = weighted_sup(derivative(f), weight, polish=polish, cgrid=cgrid, per_octave=per_octave)
    est.degree = f.degree
    return est


# -- Carleson boxes ------------------------------------------------------------


def bmoa_density(f: CoeffSeries) -> SeriesDensity:
    """``(1-|z|^2) |f'(z)|^2``; Carleson exactly when f is in BMOA."""
    return SeriesDensity(derivative(f), 2.0, lambda r: 1.0 - r * r, "bmoa", edge_exponent=1.0)


def mu_gq_density(g: CoeffSeries, q: float) -> SeriesDensity:
    """``|g'(z)|^q (1-|z|^2)^{q-1}``."""
    if not q > 0:
        raise ValueError("q must be positive")
    return SeriesDensity(
        derivative(g), q, lambda r: (1.0 - r * r) ** (q - 1.0), f"mu_g,{q:g}", edge_exponent=q - 1.0
    )


def log_dirichlet_density(f: CoeffSeries, alpha: float) -> SeriesDensity:
    """``(1-|z|^2) |f'|^2 (log e/(1-|z|))^alpha``."""
    return SeriesDensity(
        derivative(f),
        2.0,
        lambda r: (1.0 - r * r) * (1.0 - math.log1p(-r)) ** alpha,
        f"logD,{alpha:g}",
        edge_exponent=1.0,
    )


def box_ratios(
    density: SeriesDensity,
    maxlevel: int,
    rgrid: RadialGrid | None = None,
    M: int | None = None,
) -> list[np.ndarray]:
    """``mu(S(I)) / (|I|/2pi)`` for every dyadic box, level by level.

    Entry ``l`` of the result holds the ``2^l`` ratios of that level.
    """
    if maxlevel < 0:
        raise ValueError("maxlevel must be >= 0")
    h = density.series
    if rgrid is None:
        # fine cells must reach past maxlevel so no cell straddles a box edge
        rgrid = RadialGrid.for_degree(max(h.degree, 2**maxlevel, 1))
    if rgrid.levels <= maxlevel:
        raise ValueError("radial grid must extend past maxlevel")
    node_level = np.floor(-np.log2(1.0 - rgrid.nodes) + 1e-12)
    if np.any(rgrid.cell < np.minimum(node_level, maxlevel)):
        raise ValueError("a radial cell straddles a box level; refine the grid up to maxlevel")
    if M is None:
        M = max(auto_circle_size(max(h.degree, 1)), 2 ** (maxlevel + 3))
    if M % 2 ** maxlevel:
        raise ValueError("angular size must be a multiple of 2^maxlevel")
    grid = CircleGrid(M, 0.5)
    running = np.zeros(M)
    # edge tail beyond r_max, folded into the outermost accumulator
    beta = density.edge_exponent
    if beta is not None:
        edge = 1.0 - rgrid.r_max
        running += 2.0 * density.ring(rgrid.r_max, M, 0.5) * edge / (beta + 1.0) / M
    out: list[np.ndarray | None] = [None] * (maxlevel + 1)
    nodes, weights, cells = rgrid.nodes, rgrid.weights, rgrid.cell
    i = nodes.size - 1
    for lev in range(rgrid.levels - 1, -1, -1):
        while i >= 0 and cells[i] >= lev:
            r = float(nodes[i])
            running += weights[i] * 2.0 * r / M * density.ring(r, M, grid.offset)
            i -= 1
        if lev <= maxlevel:
            arcs = running.reshape(2**lev, M // 2**lev).sum(axis=1)
            out[lev] = arcs * 2.0**lev
    return [a for a in out if a is not None]


def carleson_constant(
    density: SeriesDensity,
    maxlevel: int,
    rgrid: RadialGrid | None = None,
    M: int | None = None,
) -> NormEstimate:
    return log_carleson_constant(density, 0.0, maxlevel, rgrid, M)


def log_carleson_constant(
    density: SeriesDensity,
    power: float,
    maxlevel: int,
    rgrid: RadialGrid | None = None,
    M: int | None = None,
) -> NormEstimate:
    """``sup_I (log 2/|I|)^power mu(S(I)) / |I|`` over dyadic boxes.

    Arc lengths are normalised by ``2 pi`` so the level-0 box is the disc and
    ``log(2/|I|) = (l + 1) log 2`` stays positive at every level.
    """
    if power < 0:
        raise ValueError("power must be >= 0")
    levels = box_ratios(density, maxlevel, rgrid, M)
    best, at = -1.0, (0, 0)
    per_level = []
    for lev, ratios in enumerate(levels):
        scaled = ratios * ((lev + 1) * math.log(2.0)) ** power
        j = int(np.argmax(scaled))
        per_level.append(float(scaled[j]))
        if scaled[j] > best:
            best, at = float(scaled[j]), (lev, j)
    return NormEstimate(
        best,
        density.series.degree + 1,
        {"maxlevel": maxlevel, "power": power, "argmax_box": list(at), "per_level": per_level},
    )


# -- growth of integral means -------------------------------------------------


def growth_bound_check(
    f: CoeffSeries, q: float, rgrid: RadialGrid | None = None
) -> dict:
    """``sup_r M_q(r,f) / (||f||_B (log 1/(1-r))^{1/2})`` over nodes with r >= 1/2."""
    if not q > 0:
        raise ValueError("q must be positive")
    rgrid = _default_rgrid(f, rgrid)
    bloch = abs(f.coeffs[0]) + bloch_seminorm(f).value if len(f) else 0.0
    if len(f) <= 1 or not np.any(f.coeffs[1:]):
        return {"sup_ratio": 0.0, "bloch_norm": bloch, "trace": [], "passed": True, "trivial": True}
    trace = []
    for r in rgrid.nodes[rgrid.nodes >= 0.5].tolist():
        mq = ring_power_mean(f, q, r) ** (1.0 / q)
        trace.append((r, mq / (bloch * math.sqrt(-math.log1p(-r)))))
    sup_ratio = max(t[1] for t in trace)
    return {
        "sup_ratio": sup_ratio,
        "bloch_norm": bloch,
        "trace": trace,
        "passed": bool(np.isfinite(sup_ratio)),
        "trivial": False,
    }


# -- dispatcher ---------------------------------------------------------------


def space_norm(
    f: CoeffSeries,
    space: SpaceParams,
    *,
    maxlevel: int | None = None,
) -> NormEstimate:
    """Norm of f in the given space (seminorm plus ``|f(0)|`` where relevant)."""
    a0 = abs(f.coeffs[0]) if len(f) else 0.0
    kind = space.kind
    if kind == SpaceKind.HARDY:
        return hardy_norm(f, space.p)
    if kind == SpaceKind.BERGMAN:
        return bergman_norm(f, space.p, space.alpha)
    if kind == SpaceKind.DIRICHLET:
        return dirichlet_norm(f, space.p, space.alpha)
    if kind == SpaceKind.BLOCH:
        est = bloch_seminorm(f)
    elif kind == SpaceKind.LOG_BLOCH:
        est = log_bloch_seminorm(f, space.alpha)
    else:
        lev = maxlevel if maxlevel is not None else default_maxlevel(f.degree)
        power = 2.0 if kind == SpaceKind.BMOA_LOG else 0.0
        est = log_carleson_constant(bmoa_density(f), power, lev)
        est.value = math.sqrt(est.value)
    est.value = a0 + est.value
    return est


def default_maxlevel(degree: int) -> int:
    """Deepest informative box level for a degree-N polynomial: ``log2 N - 2``."""
    return max(0, int(math.floor(math.log2(max(degree, 1)))) - 2)
