"""Refinement studies: is a truncated estimate bounded or diverging?

Every membership statement about an infinite series is observed here
through a trace of estimates at a ladder of truncation degrees.  A single
rule classifies all traces:

Only the last four ladder values are used.

* ``bounded`` -- the values are flat, or they never decrease and each
  increment is at most ``contract`` times the one before, with the
  geometric extrapolation of the remaining growth under ``settle``.
* ``diverging`` -- otherwise, if the trace increases at every step and
  either grows by more than ``grow`` over the last three steps or its
  increments stop contracting (each at least ``stall`` times the one
  before).  The second test is what catches the logarithmic and
  harmonic-sum growth that dominates this subject; a pure ratio test never
  sees it at reachable degrees.
* ``bounded`` also when the value changes by less than a factor ``settle``
  over the last three steps.
* otherwise ``inconclusive``.

Ladders should double the natural scale of the family: the number of gap
terms for lacunary series, ``log2 N`` for kernels with logarithmic growth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "Verdict",
    "NormEstimate",
    "VerdictRule",
    "DEFAULT_RULE",
    "classify",
    "refinement_study",
]


class Verdict:
    BOUNDED = "bounded"
    DIVERGING = "diverging"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class VerdictRule:
    grow: float = 1.5
    settle: float = 1.1
    stall: float = 0.85
    contract: float = 0.85
    # increments below this fraction of the value count as zero
    flat: float = 1e-9

    def classify(self, values: Sequence[float]) -> str:
        v = np.asarray(values, dtype=float)
        if v.size < 4:
            raise ValueError("a verdict needs at least four ladder points")
        if not np.all(np.isfinite(v)):
            return Verdict.DIVERGING if np.isinf(v[-1]) else Verdict.INCONCLUSIVE
        v = v[-4:]
        scale = max(abs(v[-1]), abs(v[0]), 1e-300)
        tiny = self.flat * scale
        d = np.diff(v)
        if np.all(np.abs(d) <= tiny):
            return Verdict.BOUNDED
        growth = v[-1] / v[0] if v[0] > 0 else np.inf
        if np.all(d >= -tiny) and np.all(d[1:] <= self.contract * d[:-1] + tiny):
            # geometric tail of the remaining increments
            rho = d[-1] / d[-2] if d[-2] > tiny else 0.0
            limit = v[-1] + max(d[-1], 0.0) * rho / (1.0 - rho)
            return Verdict.BOUNDED if limit / v[-1] < self.settle else Verdict.INCONCLUSIVE
        if np.all(d > 1e3 * tiny):
            ratios = d[1:] / d[:-1]
            if growth > self.grow or np.all(ratios >= self.stall):
                return Verdict.DIVERGING
        if v[0] > 0 and 1.0 / self.settle < growth < self.settle:
            return Verdict.BOUNDED
        return Verdict.INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "grow": self.grow,
            "settle": self.settle,
            "stall": self.stall,
            "contract": self.contract,
            "flat": self.flat,
        }


DEFAULT_RULE = VerdictRule()


def classify(values: Sequence[float], rule: VerdictRule = DEFAULT_RULE) -> str:
    return rule.classify(values)


@dataclass
class NormEstimate:
    """A norm or seminorm value with the metadata needed to judge it."""

    value: float
    degree: int
    grid: dict = field(default_factory=dict)
    diverging: bool | None = None
    trace: list[tuple[int, float]] = field(default_factory=list)
    verdict: str | None = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.value):
            raise ValueError("NormEstimate value must be finite")
        if self.diverging and not _monotone(self.trace):
            raise ValueError("a divergence flag needs a monotone refinement trace")

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "degree": self.degree,
            "grid": self.grid,
            "flag": self.verdict,
            "refinement_trace": [{"N": n, "value": v} for n, v in self.trace],
        }


def _monotone(trace: Iterable[tuple[int, float]]) -> bool:
    vals = [v for _, v in trace]
    return len(vals) >= 2 and all(b > a for a, b in zip(vals, vals[1:]))


def refinement_study(
    estimate: Callable[[int], float | NormEstimate],
    ladder: Sequence[int],
    rule: VerdictRule = DEFAULT_RULE,
) -> NormEstimate:
    """Evaluate ``estimate(N)`` along ``ladder`` and classify the trace."""
    trace: list[tuple[int, float]] = []
    last: NormEstimate | None = None
    for N in ladder:
        out = estimate(int(N))
        if isinstance(out, NormEstimate):
            last = out
            trace.append((int(N), float(out.value)))
        else:
            trace.append((int(N), float(out)))
    verdict = rule.classify([v for _, v in trace])
    return NormEstimate(
        value=trace[-1][1],
        degree=int(ladder[-1]),
        grid=dict(last.grid) if last is not None else {},
        diverging=verdict == Verdict.DIVERGING,
        trace=trace,
        verdict=verdict,
    )
