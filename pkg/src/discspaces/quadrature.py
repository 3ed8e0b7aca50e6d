"""Circle and radial quadrature on the unit disc.

Angular averages use the normalised measure ``dt/2pi`` so that the mean of
the constant 1 is 1.  Area integrals use ``dA = dx dy / pi``, so the disc has
area 1.

Samples of a series on a circle are computed exactly (up to rounding) for any
number of angles ``M`` by folding coefficients modulo ``M`` and applying one
inverse FFT.  Radial integrals run over a partition that is geometric toward
``r = 1``: dyadic cells ``[1 - 2^-l, 1 - 2^-(l+1))``, each carrying
Gauss-Legendre nodes in the variable ``u = -log(1 - r)``.  In that variable
every monomial ``r^n`` has uniformly bounded derivatives, which is what makes
a fixed number of nodes per cell accurate for all degrees at once.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Protocol, runtime_checkable

import numpy as np
from scipy import fft, integrate

from .series import CoeffSeries

__all__ = [
    "CircleGrid",
    "RadialGrid",
    "RingDensity",
    "SeriesDensity",
    "QuadratureError",
    "ring_values",
    "effective_degree",
    "auto_circle_size",
    "integral_mean",
    "sup_mean",
    "ring_power_mean",
    "area_integral",
    "radial_integral",
    "beta_log_integral",
]

LN2 = math.log(2.0)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach its tolerance."""


@dataclass(frozen=True)
class CircleGrid:
    """``M`` equally spaced angles ``2 pi (j + offset) / M``."""

    M: int
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError("M must be positive")

    def angles(self) -> np.ndarray:
        return 2 * np.pi * (np.arange(self.M) + self.offset) / self.M

    def refine(self, factor: int = 2) -> CircleGrid:
        """Nested refinement: every old angle is kept when offset == 0."""
        if self.offset:
            raise ValueError("nested refinement needs offset 0")
        return CircleGrid(self.M * factor)

    def to_dict(self) -> dict:
        return {"M": self.M, "offset": self.offset}


def auto_circle_size(degree: int, oversample: int = 2) -> int:
    """Smallest power of two with at least ``oversample * degree`` angles (and 16)."""
    need = max(16, oversample * max(degree, 1))
    return 1 << (need - 1).bit_length()


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Nodes in ``[0, r_max)`` with ``dr`` weights.

    ``cell[i]`` is the dyadic level of node i, i.e. the node lies in
    ``[1 - 2^-l, 1 - 2^-(l+1))``.  ``r_max = 1 - 2^-levels``.
    """

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    cell: np.ndarray = field(repr=False)
    levels: int
    scheme: str = "gauss"

    def __post_init__(self) -> None:
        if np.any(np.diff(self.nodes) <= 0) or self.nodes[-1] >= 1.0:
            raise ValueError("radial nodes must increase strictly and stay below 1")
        if np.any(self.weights <= 0):
            raise ValueError("radial weights must be positive")

    @property
    def r_max(self) -> float:
        return 1.0 - 2.0**-self.levels

    def __len__(self) -> int:
        return self.nodes.size

    @classmethod
    def geometric(
        cls,
        levels: int,
        nodes_per_cell: int = 8,
        *,
        scheme: str = "gauss",
        coarse_from: int | None = None,
        coarse_nodes: int = 5,
        coarse_span: int = 1,
    ) -> RadialGrid:
        """Dyadic cells up to ``1 - 2^-levels``.

        From level ``coarse_from`` on, each cell spans ``coarse_span`` dyadic
        levels and gets ``coarse_nodes`` nodes; near the boundary of a
        polynomial's disc the integrand is nearly constant in r.  Nodes are
        tagged with the first level of their cell.
        """
        if levels < 1:
            raise ValueError("need at least one level")
        if scheme not in ("gauss", "midpoint"):
            raise ValueError(f"unknown radial scheme {scheme!r}")
        nodes, weights, cells = [], [], []
        lev = 0
        while lev < levels:
            k, span = nodes_per_cell, 1
            if coarse_from is not None and lev >= coarse_from:
                k, span = coarse_nodes, min(coarse_span, levels - lev)
            if scheme == "gauss":
                x, w = np.polynomial.legendre.leggauss(k)
                u0, u1 = lev * LN2, (lev + span) * LN2
                u = 0.5 * (u1 - u0) * x + 0.5 * (u1 + u0)
                wu = 0.5 * (u1 - u0) * w
                one_minus_r = np.exp(-u)
                nodes.append(-np.expm1(-u))
                weights.append(wu * one_minus_r)
            else:
                a, b = 1.0 - 2.0**-lev, 1.0 - 2.0 ** -(lev + span)
                h = (b - a) / k
                nodes.append(a + h * (np.arange(k) + 0.5))
                weights.append(np.full(k, h))
            cells.append(np.full(k, lev))
            lev += span
        return cls(
            np.concatenate(nodes),
            np.concatenate(weights),
            np.concatenate(cells),
            levels,
            scheme,
        )

    @classmethod
    def for_degree(
        cls,
        degree: int,
        *,
        nodes_per_cell: int = 8,
        extra_levels: int = 16,
        scheme: str = "gauss",
        coarse_span: int = 4,
        coarse_nodes: int = 8,
        margin: int = 2,
    ) -> RadialGrid:
        """Grid resolving a polynomial of the given degree.

        Cells are fine up to ``1 - 2^-(log2(degree) + margin)``; past that
        ``r^degree`` is smooth in ``-log(1-r)`` and coarse cells suffice.
        """
        core = max(1, int(math.ceil(math.log2(degree + 1)))) + margin
        return cls.geometric(
            core + extra_levels,
            nodes_per_cell,
            scheme=scheme,
            coarse_from=core,
            coarse_span=coarse_span,
            coarse_nodes=coarse_nodes,
        )

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "levels": self.levels,
            "nodes": int(self.nodes.size),
            "r_max": self.r_max,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def effective_degree(
    coeffs: CoeffSeries | np.ndarray, r: float, tol: float = 1e-18
) -> int:
    """Largest n whose term ``|a_n| r^n`` is not negligible on the circle."""
    if isinstance(coeffs, CoeffSeries):
        a, idx = coeffs.coeffs, coeffs.support
    else:
        a = np.asarray(coeffs)
        idx = np.flatnonzero(a)
    if a.size == 0:
        return -1
    if r == 0.0:
        return 0
    if r >= 1.0:
        return a.size - 1
    if idx.size == 0:
        return 0
    # log scale: every term may underflow for tiny r and high degree
    logmag = np.log(np.abs(a[idx])) + idx * math.log(r)
    keep = np.flatnonzero(logmag > logmag.max() + math.log(tol))
    return int(idx[keep[-1]])


def _radial_powers(r: float, d: int) -> np.ndarray:
    if r == 0.0:
        out = np.zeros(d + 1)
        out[0] = 1.0
        return out
    return np.exp(np.arange(d + 1) * math.log(r))


def ring_values(
    f: CoeffSeries | np.ndarray, r: float, M: int, offset: float = 0.0
) -> np.ndarray:
    """Exact samples ``f(r e^{i theta_j})``, ``theta_j = 2 pi (j + offset)/M``."""
    a = f.coeffs if isinstance(f, CoeffSeries) else np.asarray(f, dtype=complex)
    if a.size == 0:
        return np.zeros(M, dtype=np.complex128)
    d = effective_degree(f, r)
    if d < M and not offset:
        # no aliasing: place the scaled coefficients directly
        folded = np.zeros(M, dtype=np.complex128)
        folded[: d + 1] = a[: d + 1]
        if r != 1.0:
            folded[: d + 1] *= _radial_powers(r, d)
        return M * fft.ifft(folded)
    idx = np.flatnonzero(a[: d + 1])
    if idx.size == 0:
        return np.zeros(M, dtype=np.complex128)
    b = a[idx]
    if r != 1.0:
        b = b * np.exp(idx * math.log(r)) if r > 0 else b * (idx == 0)
    if offset:
        b = b * np.exp(2j * np.pi * offset * idx / M)
    slot = idx % M
    folded = np.bincount(slot, weights=b.real, minlength=M) + 1j * np.bincount(
        slot, weights=b.imag, minlength=M
    )
    return M * fft.ifft(folded)


def _circle_size(f: CoeffSeries, r: float, grid: CircleGrid | None) -> tuple[int, float]:
    if grid is not None:
        return grid.M, grid.offset
    return auto_circle_size(effective_degree(f, r)), 0.0


def ring_power_mean(
    f: CoeffSeries, p: float, r: float, grid: CircleGrid | None = None
) -> float:
    """``M_p(r, f)^p``: mean of ``|f|^p`` over the circle of radius r (r <= 1)."""
    if len(f) == 0:
        return 0.0
    M, offset = _circle_size(f, r, grid)
    d = effective_degree(f, r)
    if p == 2 and d < M:
        # discrete Parseval is exact here; skip the FFT
        if r == 0.0:
            return float(abs(f.coeffs[0]) ** 2)
        n = np.arange(d + 1)
        return float(np.sum(np.abs(f.coeffs[: d + 1]) ** 2 * np.exp(2 * n * math.log(r))))
    vals = np.abs(ring_values(f, r, M, offset))
    return float(np.mean(vals**p))


def integral_mean(
    f: CoeffSeries, p: float, r: float, grid: CircleGrid | None = None
) -> float:
    """``M_p(r, f)`` with the normalised angular measure."""
    if not p > 0:
        raise ValueError("p must be positive")
    if not 0.0 <= r < 1.0:
        raise ValueError("need 0 <= r < 1")
    return ring_power_mean(f, p, r, grid) ** (1.0 / p)


def sup_mean(f: CoeffSeries, r: float, grid: CircleGrid | None = None) -> float:
    """Grid maximum of ``|f|`` on ``|z| = r``; a lower bound for ``M_inf(r, f)``."""
    if not 0.0 <= r < 1.0:
        raise ValueError("need 0 <= r < 1")
    return _ring_sup(f, r, grid)


def _ring_sup(f: CoeffSeries, r: float, grid: CircleGrid | None = None) -> float:
    if len(f) == 0:
        return 0.0
    M, offset = _circle_size(f, r, grid)
    if grid is None:
        M *= 2
    return float(np.max(np.abs(ring_values(f, r, M, offset))))


@runtime_checkable
class RingDensity(Protocol):
    """A density on the disc that can be sampled a whole circle at a time."""

    def ring(self, r: float, M: int, offset: float = 0.0) -> np.ndarray: ...

    def ring_mean(self, r: float) -> float: ...

    def circle_size(self, r: float) -> int: ...


@dataclass(frozen=True, eq=False)
class SeriesDensity:
    """``weight(|z|) * |h(z)|^power`` for a series h.

    This covers every density the norms need: ``(1-|z|)^alpha |f'|^p``,
    ``(1-|z|^2)|f'|^2`` and friends.
    """

    series: CoeffSeries
    power: float
    weight: Callable[[float], float]
    label: str = ""
    # weight ~ c (1-r)^edge_exponent near r = 1; enables the edge tail
    edge_exponent: float | None = None

    def __call__(self, r: float, theta: np.ndarray) -> np.ndarray:
        from .series import evaluate_many

        z = r * np.exp(1j * np.asarray(theta))
        return self.weight(r) * np.abs(evaluate_many(self.series, z)) ** self.power

    def circle_size(self, r: float) -> int:
        return auto_circle_size(effective_degree(self.series, r))

    def ring(self, r: float, M: int, offset: float = 0.0) -> np.ndarray:
        w = self.weight(r)
        if w == 0.0 or len(self.series) == 0:
            return np.zeros(M)
        return w * np.abs(ring_values(self.series, r, M, offset)) ** self.power

    def ring_mean(self, r: float, grid: CircleGrid | None = None) -> float:
        w = self.weight(r)
        if w == 0.0:
            return 0.0
        return w * ring_power_mean(self.series, self.power, r, grid)

    def scaled(self, c: float) -> SeriesDensity:
        return SeriesDensity(
            self.series,
            self.power,
            lambda r, w=self.weight: c * w(r),
            self.label,
            self.edge_exponent,
        )

    def edge_tail(self, r_max: float, grid: CircleGrid | None = None) -> float:
        """``int_{r_max < |z| < 1}`` of the density, freezing h at radius r_max."""
        if self.edge_exponent is None:
            return 0.0
        return 2.0 * self.ring_mean(r_max, grid) * (1.0 - r_max) / (self.edge_exponent + 1.0)


def radial_integral(fn: Callable[[float], float], rgrid: RadialGrid) -> float:
    """``int_0^{r_max} fn(r) dr`` on the radial grid."""
    vals = np.array([fn(float(r)) for r in rgrid.nodes])
    return float(np.dot(rgrid.weights, vals))


def area_integral(
    density: RingDensity | Callable[[float, np.ndarray], np.ndarray],
    rgrid: RadialGrid,
    cgrid: CircleGrid | None = None,
    *,
    tail: bool = True,
) -> float:
    """``int_D density dA`` with ``dA = dx dy / pi``.

    Computes ``sum_i sum_j w_i (2 r_i / M) density(r_i, theta_j)`` over
    ``|z| < r_max``.  A :class:`SeriesDensity` that declares its edge
    exponent also gets the annulus ``r_max < |z| < 1`` added in closed form
    (unless ``tail`` is off).  Ring densities choose their own angular
    resolution when ``cgrid`` is omitted.
    """
    total = 0.0
    if tail and isinstance(density, SeriesDensity):
        total += density.edge_tail(rgrid.r_max, cgrid)
    for r, w in zip(rgrid.nodes.tolist(), rgrid.weights.tolist()):
        if isinstance(density, SeriesDensity):
            m = density.ring_mean(r, cgrid)
        elif isinstance(density, RingDensity):
            M = cgrid.M if cgrid is not None else density.circle_size(r)
            off = cgrid.offset if cgrid is not None else 0.0
            m = float(np.mean(density.ring(r, M, off)))
        else:
            if cgrid is None:
                raise ValueError("a plain callable density needs a CircleGrid")
            m = float(np.mean(density(r, cgrid.angles())))
        total += w * 2.0 * r * m
    return total


def beta_log_integral(
    n: int, m: int, alpha: float, *, full_output: bool = False
) -> float | tuple[float, dict]:
    """``int_0^1 x^n (1-x)^m (log 1/(1-x))^alpha dx`` by adaptive quadrature.

    With ``x = 1 - e^{-s}`` the integrand becomes
    ``(1 - e^{-s})^n e^{-(m+1)s} s^alpha`` on ``[0, inf)``, smooth and
    exponentially decaying.  The bulk sits near ``s = log(n/(m+1))``; the
    half-line is split there and at a few widths either side.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")

    def log_integrand(s: float) -> float:
        if s <= 0.0:
            return -math.inf
        return n * math.log1p(-math.exp(-s)) - (m + 1) * s + alpha * math.log(s)

    peak = math.log(max(n, 1) / (m + 1)) if n > m + 1 else 1.0
    peak = max(peak, 1e-3)
    # scale the integrand so quad works with O(1) numbers
    shift = max(log_integrand(peak), log_integrand(peak + 1.0))

    def g(s: float) -> float:
        v = log_integrand(s)
        return 0.0 if v == -math.inf else math.exp(v - shift)

    edges = [0.0]
    for k in (-8.0, -3.0, -1.0, 0.0, 1.0, 3.0, 8.0):
        e = peak + k
        if e > edges[-1]:
            edges.append(e)
    edges.append(peak + 40.0 + 40.0 / (m + 1))
    total = 0.0
    err = 0.0
    converged = True
    for a, b in zip(edges, edges[1:]):
        val, est, info = integrate.quad(
            g, a, b, epsabs=0.0, epsrel=1e-13, limit=200, full_output=True
        )[:3]
        total += val
        err += est
        if est > 1e-11 * max(abs(val), 1e-300) and est > 1e-14 * max(total, 1e-300):
            converged = False
    tail = g(edges[-1]) / (m + 1)
    err += tail
    value = total * math.exp(shift)
    abserr = err * math.exp(shift)
    if not converged and not full_output:
        raise QuadratureError(f"beta_log_integral({n}, {m}, {alpha}) did not converge")
    if full_output:
        return value, {"abserr": abserr, "converged": converged, "segments": len(edges) - 1}
    return value
