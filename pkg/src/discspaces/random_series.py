"""Random signs: Rademacher functions, Khinchine ratios, randomized series.

``r_n(t) = r_0(2^n t mod 1)`` with ``r_0 = +1`` on ``(0, 1/2)``, ``-1`` on
``(1/2, 1)`` and ``0`` at ``0, 1/2, 1``.  Evaluation is exact: t is turned
into a fraction p/q and ``2^n t mod 1 = (2^n p mod q)/q``.

For Monte Carlo work there is a second sign source, i.i.d. signs from a
seeded generator.  Draw i of a batch uses seed ``base_seed + i`` so results
do not depend on how draws are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import special

from .quadrature import RadialGrid, effective_degree, ring_values, auto_circle_size
from .refinement import NormEstimate
from .series import CoeffSeries, derivative

__all__ = [
    "SignSequence",
    "KhinchineReport",
    "EXHAUSTIVE_LIMIT",
    "rademacher_at",
    "sample_signs",
    "seeded_signs",
    "randomize",
    "khinchine_ratio",
    "khinchine_extrapolated",
    "duren_weight_integral",
    "coefficient_log_sum",
]

EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True, eq=False)
class SignSequence:
    """Signs with their provenance (``{"t": ...}`` or ``{"seed": ...}``).

    Entries are +-1.  A dyadic t hits the breakpoints of the Rademacher
    system, where the functions vanish; such sequences carry zeros and are
    flagged ``measure_zero``.
    """

    signs: np.ndarray
    provenance: dict = field(default_factory=dict)
    measure_zero: bool = False

    def __post_init__(self) -> None:
        s = np.asarray(self.signs, dtype=np.int8).ravel()
        allowed = (-1, 0, 1) if self.measure_zero else (-1, 1)
        if not np.all(np.isin(s, allowed)):
            raise ValueError("sign entries must be +1 or -1")
        s.setflags(write=False)
        object.__setattr__(self, "signs", s)

    def __len__(self) -> int:
        return self.signs.size


@dataclass(frozen=True)
class KhinchineReport:
    """``E|sum c_k r_k|^p / (sum |c_k|^2)^{p/2}``."""

    p: float
    ratio: float
    trials: int
    method: str

    def to_dict(self) -> dict:
        return {"p": self.p, "ratio": self.ratio, "trials": self.trials, "method": self.method}


def _as_fraction(t: float | Fraction) -> Fraction:
    return t if isinstance(t, Fraction) else Fraction(t)


def rademacher_at(n: int, t: float | Fraction) -> int:
    """Exact ``r_n(t)`` for ``t in [0, 1]``; 0 at the dyadic breakpoints."""
    if n < 0:
        raise ValueError("n must be >= 0")
    t = _as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    x = Fraction((t.numerator << n) % t.denominator, t.denominator)
    if x == 0 or x == Fraction(1, 2):
        return 0
    return 1 if x < Fraction(1, 2) else -1


def sample_signs(
    count: int, *, seed: int | None = None, t: float | Fraction | None = None
) -> SignSequence:
    """Signs ``r_0(t) .. r_{count-1}(t)``, or i.i.d. signs from ``seed``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if (seed is None) == (t is None):
        raise ValueError("give exactly one of seed, t")
    if seed is not None:
        rng = np.random.default_rng(seed)
        signs = rng.choice(np.array([-1, 1], dtype=np.int8), size=count)
        return SignSequence(signs, {"seed": int(seed)})
    signs = np.array([rademacher_at(n, t) for n in range(count)], dtype=np.int8)
    zero = bool(np.any(signs == 0))
    return SignSequence(signs, {"t": str(_as_fraction(t))}, measure_zero=zero)


def seeded_signs(count: int, base_seed: int, draws: int) -> list[SignSequence]:
    """``draws`` independent sequences, draw i seeded with ``base_seed + i``."""
    return [sample_signs(count, seed=base_seed + i) for i in range(draws)]


def randomize(f: CoeffSeries, s: SignSequence) -> CoeffSeries:
    """``sum s_n a_n z^n``."""
    if len(s) < len(f):
        raise ValueError(f"need {len(f)} signs, got {len(s)}")
    return CoeffSeries(f.coeffs * s.signs[: len(f)])


def _all_sums(c: np.ndarray) -> np.ndarray:
    """``sum_k eps_k c_k`` for all ``2^K`` sign patterns."""
    sums = np.zeros(1, dtype=np.complex128)
    for ck in c:
        sums = np.concatenate([sums + ck, sums - ck])
    return sums


def khinchine_ratio(
    c: Sequence[complex],
    p: float,
    trials: int = 10_000,
    *,
    seed: int = 0,
    exhaustive: bool | None = None,
) -> KhinchineReport:
    """Observed Khinchine ratio, exact over all sign patterns when ``len(c) <= 20``."""
    c = np.asarray(c, dtype=np.complex128).ravel()
    if not p > 0:
        raise ValueError("p must be positive")
    energy = float(np.sum(np.abs(c) ** 2))
    if energy == 0.0:
        raise ValueError("coefficient vector must be nonzero")
    if exhaustive is None:
        exhaustive = c.size <= EXHAUSTIVE_LIMIT
    if exhaustive and c.size > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive mode allows at most {EXHAUSTIVE_LIMIT} coefficients")
    if exhaustive:
        sums = _all_sums(c)
        n, method = sums.size, "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        signs = rng.choice(np.array([-1.0, 1.0]), size=(trials, c.size))
        sums = signs @ c
        n, method = trials, "MonteCarlo"
    ratio = float(np.mean(np.abs(sums) ** p)) / energy ** (p / 2)
    return KhinchineReport(float(p), ratio, n, method)


def khinchine_extrapolated(
    c: Sequence[complex], p: float, lengths: Sequence[int] = (12, 14, 16, 18, 20)
) -> tuple[float, float]:
    """Exhaustive ratios of prefixes of c, extrapolated linearly in ``1/K`` to ``len(c)``.

    Returns ``(largest exhaustive prefix ratio, extrapolated ratio)``.
    """
    c = np.asarray(c, dtype=np.complex128).ravel()
    ks = [k for k in lengths if k <= min(c.size, EXHAUSTIVE_LIMIT)]
    if len(ks) < 2:
        raise ValueError("need at least two usable prefix lengths")
    vals = [khinchine_ratio(c[:k], p).ratio for k in ks]
    slope, intercept = np.polyfit(1.0 / np.asarray(ks, dtype=float), vals, 1)
    return vals[-1], float(intercept + slope / c.size)


def _edge_tail(edge: float, power: float) -> float:
    """``int_0^edge x (log 1/x)^power dx``."""
    s0 = -math.log(edge)
    return special.gamma(power + 1) * special.gammaincc(power + 1, 2 * s0) / 2 ** (power + 1)


def duren_weight_integral(
    f: CoeffSeries,
    power: float = 2.0,
    rgrid: RadialGrid | None = None,
    *,
    oversample: int = 4,
) -> NormEstimate:
    """``int_0^1 (1-r) (log 1/(1-r))^power M_inf(r, f')^2 dr``.

    ``M_inf`` is the grid maximum on each circle, so this is a lower bound
    for the integral up to the radial quadrature error.
    """
    if power < 0:
        raise ValueError("power must be >= 0")
    fp = derivative(f)
    if rgrid is None:
        rgrid = RadialGrid.for_degree(max(f.degree, 1))
    if len(fp) == 0 or not np.any(fp.coeffs):
        return NormEstimate(0.0, f.degree, {"radial": rgrid.to_dict()})

    def sup_sq(r: float) -> float:
        M = oversample * auto_circle_size(effective_degree(fp, r))
        return float(np.max(np.abs(ring_values(fp, r, M)))) ** 2

    total = 0.0
    for r, w in zip(rgrid.nodes.tolist(), rgrid.weights.tolist()):
        x = 1.0 - r
        total += w * x * (-math.log(x)) ** power * sup_sq(r)
    total += sup_sq(rgrid.r_max) * _edge_tail(1.0 - rgrid.r_max, power)
    return NormEstimate(total, f.degree, {"radial": rgrid.to_dict(), "power": power})


def coefficient_log_sum(f: CoeffSeries, alpha: float) -> float:
    """``sum_{n >= 2} |a_n|^2 (log n)^alpha`` over the stored coefficients."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if len(f) <= 2:
        return 0.0
    n = np.arange(2, len(f))
    return float(np.sum(np.abs(f.coeffs[2:]) ** 2 * np.log(n) ** alpha))
