"""Truncated power series on the unit disc.

A function analytic in the disc is carried as the dense vector of its
Taylor coefficients ``a_0 .. a_N``.  Everything downstream (integral
means, area integrals, Carleson boxes) consumes :class:`CoeffSeries`.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "CoeffSeries",
    "DiscPoint",
    "LacunarySpec",
    "evaluate",
    "derivative",
    "cauchy_product",
    "mobius_series",
    "log_kernel_series",
    "lacunary_to_dense",
    "gap_series",
]


def _as_coeff_array(values: Iterable[complex]) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """Taylor coefficients ``a_n`` of ``f(z) = sum a_n z^n``, n = 0..degree.

    The zero series is stored as an empty vector and reports degree -1.
    Trailing zeros are kept, so ``degree`` is the truncation degree and not
    the algebraic degree.
    """

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:
        return f"CoeffSeries(degree={self.degree})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffSeries):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def support(self) -> np.ndarray:
        """Indices of the nonzero coefficients."""
        return np.flatnonzero(self.coeffs)

    @property
    def is_sparse(self) -> bool:
        return self.support.size * 8 < max(self.coeffs.size, 1)

    def scale(self, c: complex) -> CoeffSeries:
        return CoeffSeries(self.coeffs * c)

    def __add__(self, other: CoeffSeries) -> CoeffSeries:
        n = max(len(self), len(other))
        out = np.zeros(n, dtype=np.complex128)
        out[: len(self)] += self.coeffs
        out[: len(other)] += other.coeffs
        return CoeffSeries(out)

    def __call__(self, z: complex | DiscPoint) -> complex:
        return evaluate(self, z)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "re": self.coeffs.real.tolist(),
            "im": self.coeffs.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> CoeffSeries:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise ValueError("re/im length mismatch")
        if "degree" in data and int(data["degree"]) != re.size - 1:
            raise ValueError("degree does not match coefficient count")
        return cls(re + 1j * im)

    @classmethod
    def from_json(cls, text: str) -> CoeffSeries:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class DiscPoint:
    """The point ``r e^{i theta}`` of the open disc."""

    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"need 0 <= r < 1, got r={self.r}")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))

    @property
    def z(self) -> complex:
        return cmath.rect(self.r, self.theta)

    @classmethod
    def from_complex(cls, z: complex) -> DiscPoint:
        return cls(abs(z), cmath.phase(z))


def _point(z: complex | DiscPoint) -> complex:
    if isinstance(z, DiscPoint):
        return z.z
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"|z| must be < 1, got {abs(z)}")
    return z


def evaluate(f: CoeffSeries, z: complex | DiscPoint) -> complex:
    """Horner evaluation of ``f`` at a disc point, highest coefficient first."""
    w = _point(z)
    acc = 0j
    for c in f.coeffs[::-1].tolist():
        acc = acc * w + c
    return acc


def evaluate_many(f: CoeffSeries, zs: np.ndarray) -> np.ndarray:
    """Vectorised Horner over an array of points (no |z|<1 check)."""
    zs = np.asarray(zs, dtype=np.complex128)
    acc = np.zeros_like(zs)
    for c in f.coeffs[::-1]:
        acc = acc * zs + c
    return acc


def derivative(f: CoeffSeries) -> CoeffSeries:
    if f.degree < 1:
        return CoeffSeries([])
    n = np.arange(1, f.degree + 1)
    return CoeffSeries(n * f.coeffs[1:])


def cauchy_product(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """Coefficients of ``f g``; degree is ``deg f + deg g``."""
    if len(f) == 0 or len(g) == 0:
        return CoeffSeries([])
    small = min(len(f), len(g))
    if small <= 64 or f.is_sparse or g.is_sparse:
        return CoeffSeries(_sparse_aware_convolve(f, g))
    n = len(f) + len(g) - 1
    size = 1 << (n - 1).bit_length()
    prod = np.fft.ifft(np.fft.fft(f.coeffs, size) * np.fft.fft(g.coeffs, size))[:n]
    return CoeffSeries(prod)


def _sparse_aware_convolve(f: CoeffSeries, g: CoeffSeries) -> np.ndarray:
    if f.support.size > g.support.size:
        f, g = g, f
    out = np.zeros(len(f) + len(g) - 1, dtype=np.complex128)
    for j in f.support:
        out[j : j + len(g)] += f.coeffs[j] * g.coeffs
    return out


def mobius_series(a: complex, N: int) -> CoeffSeries:
    """Taylor coefficients of ``(a - z)/(1 - conj(a) z)`` through degree N."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError("Mobius parameter must satisfy |a| < 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    out = np.empty(N + 1, dtype=np.complex128)
    out[0] = a
    ab = a.conjugate()
    out[1:] = (abs(a) ** 2 - 1.0) * ab ** np.arange(N)
    return CoeffSeries(out)


def log_kernel_series(theta: float, N: int) -> CoeffSeries:
    """``log 1/(1 - z e^{-i theta})`` truncated at degree N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(1, N + 1)
    out = np.zeros(N + 1, dtype=np.complex128)
    out[1:] = np.exp(-1j * n * theta) / n
    return CoeffSeries(out)


@dataclass(frozen=True, eq=False)
class LacunarySpec:
    """Gap series ``sum_k a_k z^{n_k}`` with a certified ratio ``n_{k+1} >= ratio * n_k``."""

    indices: tuple[int, ...]
    coeffs: np.ndarray
    ratio: float

    def __post_init__(self) -> None:
        idx = tuple(int(n) for n in self.indices)
        co = _as_coeff_array(self.coeffs)
        if len(idx) != co.size:
            raise ValueError("indices and coefficients differ in length")
        if not self.ratio > 1.0:
            raise ValueError("gap ratio must exceed 1")
        if any(n <= 0 for n in idx):
            raise ValueError("gap indices must be positive integers")
        for lo, hi in zip(idx, idx[1:]):
            if hi < self.ratio * lo:
                raise ValueError(
                    f"gap condition violated: {hi} < {self.ratio} * {lo}"
                )
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "coeffs", co)
        object.__setattr__(self, "ratio", float(self.ratio))

    def __len__(self) -> int:
        return len(self.indices)

    def truncate(self, N: int) -> LacunarySpec:
        keep = [k for k, n in enumerate(self.indices) if n <= N]
        return LacunarySpec(
            tuple(self.indices[k] for k in keep), self.coeffs[keep], self.ratio
        )

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "re": self.coeffs.real.tolist(),
            "im": self.coeffs.imag.tolist(),
            "lambda": self.ratio,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> LacunarySpec:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
        return cls(tuple(data["indices"]), re + 1j * im, float(data["lambda"]))

    @classmethod
    def from_json(cls, text: str) -> LacunarySpec:
        return cls.from_dict(json.loads(text))


def lacunary_to_dense(s: LacunarySpec, N: int) -> CoeffSeries:
    if N < 0:
        raise ValueError("N must be >= 0")
    out = np.zeros(N + 1, dtype=np.complex128)
    for n, a in zip(s.indices, s.coeffs):
        if n <= N:
            out[n] = a
    return CoeffSeries(out)


def gap_series(
    coeff: Callable[[int], complex] | Sequence[complex],
    N: int,
    *,
    base: int = 2,
    kmin: int = 0,
) -> LacunarySpec:
    """``sum_{k >= kmin} c_k z^{base^k}`` keeping exponents up to N.

    ``coeff`` is either a function of k or a sequence indexed from ``kmin``.
    """
    ks = []
    k = kmin
    while base**k <= N:
        ks.append(k)
        k += 1
    if callable(coeff):
        cs = [coeff(k) for k in ks]
    else:
        cs = list(coeff)[: len(ks)]
        ks = ks[: len(cs)]
    return LacunarySpec(tuple(base**k for k in ks), np.asarray(cs, dtype=complex), base)
