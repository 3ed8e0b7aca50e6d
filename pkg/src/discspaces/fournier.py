"""Bounded analytic functions with prescribed coefficients on a gap set.

Starting from ``phi_0 = u_0 z^{n_0}``, ``h_0 = 1`` the recursion

    phi_k = phi_{k-1} + u_k z^{n_k} h_{k-1}
    h_k   = h_{k-1} - conj(u_k) z^{-n_k} phi_{k-1}

keeps ``|phi_k|^2 + |h_k|^2 = prod_{j<=k} (1 + |u_j|^2)`` on the unit circle,
because ``|a + v b|^2 + |b - conj(v) a|^2 = (1 + |v|^2)(|a|^2 + |b|^2)`` for
``|zeta| = 1``.  So ``phi_K`` is bounded by the square root of that product
while its coefficient at ``n_k`` is exactly ``u_k``.

Frequencies grow geometrically (``n_K`` is typically ``4^K``) but each step
at most doubles the number of terms, so everything is done on sparse
Laurent polynomials and only sampled through a folded FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import fft

from .quadrature import CircleGrid
from .series import CoeffSeries

__all__ = [
    "SparseLaurent",
    "FournierInput",
    "FournierCertificate",
    "fournier_step",
    "fournier_sparse",
    "fournier_construct",
    "verify_identity",
    "block_partial_sum",
    "gap_blocks",
    "certify",
]


# cap on sampling grids; beyond it sup estimates are coarser lower bounds
_MAX_GRID = 2**22


@dataclass(frozen=True)
class SparseLaurent:
    """Finite Laurent polynomial ``sum c_n zeta^n`` keyed by integer frequency."""

    terms: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(n): complex(c) for n, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, c: complex, n: int) -> SparseLaurent:
        return cls({n: c})

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> complex:
        return self.terms.get(n, 0j)

    @property
    def frequencies(self) -> list[int]:
        return sorted(self.terms)

    @property
    def min_freq(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def max_freq(self) -> int:
        return max(self.terms) if self.terms else 0

    def shift(self, m: int) -> SparseLaurent:
        return SparseLaurent({n + m: c for n, c in self.terms.items()})

    def scale(self, a: complex) -> SparseLaurent:
        return SparseLaurent({n: a * c for n, c in self.terms.items()})

    def __add__(self, other: SparseLaurent) -> SparseLaurent:
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out.get(n, 0j) + c
        return SparseLaurent(out)

    def __sub__(self, other: SparseLaurent) -> SparseLaurent:
        return self + other.scale(-1.0)

    def restrict(self, lo: int, hi: int) -> SparseLaurent:
        """Terms with ``lo <= n < hi``."""
        return SparseLaurent({n: c for n, c in self.terms.items() if lo <= n < hi})

    def sample(self, grid: CircleGrid) -> np.ndarray:
        """Values at ``exp(2 pi i (j + offset)/M)``, frequencies folded exactly mod M."""
        M = grid.M
        if not self.terms:
            return np.zeros(M, dtype=np.complex128)
        freqs = self.frequencies
        coeffs = np.array([self.terms[n] for n in freqs], dtype=np.complex128)
        if grid.offset:
            # exact phase: n * offset / M reduced mod 1 before going to floats
            off = Fraction(grid.offset)
            phase = np.array([float((n * off / M) % 1) for n in freqs])
            coeffs = coeffs * np.exp(2j * np.pi * phase)
        slots = np.array([n % M for n in freqs], dtype=np.int64)
        folded = np.bincount(slots, weights=coeffs.real, minlength=M) + 1j * np.bincount(
            slots, weights=coeffs.imag, minlength=M
        )
        return M * fft.ifft(folded)

    def to_series(self, degree: int | None = None) -> CoeffSeries:
        """Dense Taylor vector of an analytic (nonnegative-frequency) polynomial."""
        if self.terms and self.min_freq < 0:
            raise ValueError("negative frequencies have no Taylor coefficients")
        deg = self.max_freq if degree is None else degree
        out = np.zeros(deg + 1, dtype=np.complex128)
        for n, c in self.terms.items():
            if n <= deg:
                out[n] = c
        return CoeffSeries(out)

    def to_dict(self) -> dict:
        freqs = self.frequencies
        return {
            "freq": freqs,
            "re": [self.terms[n].real for n in freqs],
            "im": [self.terms[n].imag for n in freqs],
        }


@dataclass(frozen=True)
class FournierInput:
    """Targets ``u_0..u_K`` and gap indices ``n_0..n_K`` with ``n_{k+1} > 2 n_k``."""

    u: tuple[complex, ...]
    n: tuple[int, ...]

    def __post_init__(self) -> None:
        u = tuple(complex(x) for x in self.u)
        n = tuple(int(x) for x in self.n)
        if len(u) != len(n) or not u:
            raise ValueError("u and n must be nonempty and of equal length")
        if not all(np.isfinite([abs(x) for x in u])):
            raise ValueError("u must be finite")
        if n[0] < 1:
            raise ValueError("gap indices must be positive")
        for a, b in zip(n, n[1:]):
            if not b > 2 * a:
                raise ValueError(f"gap condition n_(k+1) > 2 n_k fails at {a}, {b}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "n", n)

    @property
    def K(self) -> int:
        return len(self.u) - 1

    @property
    def l2_norm(self) -> float:
        return math.sqrt(sum(abs(x) ** 2 for x in self.u))

    def energy(self, k: int | None = None) -> float:
        """``prod_{j<=k} (1 + |u_j|^2)``."""
        k = self.K if k is None else k
        return math.prod(1.0 + abs(x) ** 2 for x in self.u[: k + 1])

    @classmethod
    def from_dict(cls, data: dict) -> FournierInput:
        u = data["u"]
        if "u_im" in data:
            u = [complex(a, b) for a, b in zip(u, data["u_im"])]
        return cls(tuple(u), tuple(data["n"]))

    def to_dict(self) -> dict:
        return {
            "u": [x.real for x in self.u],
            "u_im": [x.imag for x in self.u],
            "n": list(self.n),
        }


@dataclass
class FournierCertificate:
    """Numerical evidence that the truncated construction has its properties."""

    coefficient_error: float
    identity_residual: float
    block_norms: list[float]
    block_bounds: list[float]
    h_sup: list[float]
    support_ok: bool
    stabilization_ok: bool
    sup_estimate: float
    sup_bound: float
    samples: int

    @property
    def blocks_ok(self) -> bool:
        return all(b <= c * (1 + 1e-9) + 1e-12 for b, c in zip(self.block_norms, self.block_bounds))

    @property
    def sup_ok(self) -> bool:
        return self.sup_estimate <= self.sup_bound + 1e-6

    @property
    def constant(self) -> float:
        """Largest ``||h_k||_inf`` seen; the block constant the recursion yields."""
        return max(self.h_sup, default=1.0)

    def passed(self, coeff_tol: float = 1e-12, identity_tol: float = 1e-9) -> bool:
        return (
            self.coefficient_error < coeff_tol
            and self.identity_residual < identity_tol
            and self.blocks_ok
            and self.support_ok
            and self.stabilization_ok
            and self.sup_ok
        )

    def to_dict(self) -> dict:
        return {
            "coefficient_error": self.coefficient_error,
            "identity_residual": self.identity_residual,
            "block_norms": self.block_norms,
            "block_bounds": self.block_bounds,
            "h_sup": self.h_sup,
            "constant": self.constant,
            "support_ok": self.support_ok,
            "stabilization_ok": self.stabilization_ok,
            "blocks_ok": self.blocks_ok,
            "sup_estimate": self.sup_estimate,
            "sup_bound": self.sup_bound,
            "samples": self.samples,
            "passed": self.passed(),
        }


def fournier_step(
    phi: SparseLaurent, h: SparseLaurent, u_k: complex, n_k: int
) -> tuple[SparseLaurent, SparseLaurent]:
    """One step of the recursion."""
    if phi.terms and phi.min_freq < 0:
        raise ValueError("phi must have nonnegative frequencies")
    if h.terms and h.max_freq > 0:
        raise ValueError("h must have nonpositive frequencies")
    if u_k == 0:
        return phi, h
    new_phi = phi + h.shift(n_k).scale(u_k)
    new_h = h - phi.shift(-n_k).scale(complex(u_k).conjugate())
    return new_phi, new_h


def gap_blocks(n: Sequence[int]) -> list[tuple[int, int]]:
    """Closed ranges ``Lambda_0 = {n_0}``, ``Lambda_k = [n_k - n_(k-1), n_k]``."""
    out = [(n[0], n[0])]
    out += [(b - a, b) for a, b in zip(n, n[1:])]
    return out


def _in_blocks(freq: int, blocks: Iterable[tuple[int, int]]) -> bool:
    return any(lo <= freq <= hi for lo, hi in blocks)


def fournier_sparse(
    inp: FournierInput,
) -> tuple[SparseLaurent, SparseLaurent, list[SparseLaurent], list[SparseLaurent]]:
    """Run all K steps; also return every intermediate ``phi_k`` and ``h_k``."""
    phi = SparseLaurent.monomial(inp.u[0], inp.n[0])
    h = SparseLaurent({0: 1.0})
    phis, hs = [phi], [h]
    for uk, nk in zip(inp.u[1:], inp.n[1:]):
        phi, h = fournier_step(phi, h, uk, nk)
        phis.append(phi)
        hs.append(h)
    return phi, h, phis, hs


def verify_identity(
    phi: SparseLaurent,
    h: SparseLaurent,
    u_prefix: Sequence[complex],
    samples: CircleGrid | int = 4096,
) -> float:
    """``max | |phi|^2 + |h|^2 - prod (1 + |u_j|^2) |`` over the sample angles."""
    grid = samples if isinstance(samples, CircleGrid) else CircleGrid(int(samples))
    target = math.prod(1.0 + abs(complex(x)) ** 2 for x in u_prefix)
    lhs = np.abs(phi.sample(grid)) ** 2 + np.abs(h.sample(grid)) ** 2
    return float(np.max(np.abs(lhs - target)))


def block_partial_sum(f: CoeffSeries, lo: int, hi: int) -> CoeffSeries:
    """``S_{lo,hi} f``: keep the coefficients with ``lo <= n < hi``."""
    if not 0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")
    out = np.zeros_like(f.coeffs[: min(hi, len(f))])
    if lo < out.size:
        out[lo:] = f.coeffs[lo : out.size]
    return CoeffSeries(out)


def _sup_on_circle(p: SparseLaurent, oversample: int = 8) -> float:
    """Grid sup of ``|p|`` on the unit circle; resolution set by the frequency spread."""
    if not p.terms:
        return 0.0
    q = p.shift(-p.min_freq)
    width = q.max_freq
    M = min(max(64, 1 << (oversample * (width + 1) - 1).bit_length()), _MAX_GRID)
    return float(np.max(np.abs(q.sample(CircleGrid(M)))))


def fournier_construct(
    inp: FournierInput,
    *,
    samples: int = 4096,
    dense_limit: int = 2**20,
) -> tuple[CoeffSeries, FournierCertificate]:
    """Truncated construction ``Psi = phi_K`` with its certificate.

    Coefficients of ``Psi`` below ``n_j`` are final after step j, so the
    truncation is exact on ``[0, n_K]``.  Raises when ``n_K`` exceeds
    ``dense_limit``; use :func:`fournier_sparse` and :func:`certify` then.
    """
    if inp.n[-1] > dense_limit:
        raise ValueError(f"n_K = {inp.n[-1]} exceeds dense limit {dense_limit}")
    phi, h, phis, hs = fournier_sparse(inp)
    cert = certify(inp, phi, h, phis, hs, samples=samples)
    return phi.to_series(inp.n[-1]), cert


def certify(
    inp: FournierInput,
    phi: SparseLaurent,
    h: SparseLaurent,
    phis: Sequence[SparseLaurent],
    hs: Sequence[SparseLaurent],
    *,
    samples: int = 4096,
) -> FournierCertificate:
    coeff_err = max(abs(phi[nk] - uk) for uk, nk in zip(inp.u, inp.n))
    residual = verify_identity(phi, h, inp.u, samples)

    blocks = gap_blocks(inp.n)
    support_ok = all(_in_blocks(m, blocks) for m in phi.terms) and all(
        m == 0 or _in_blocks(-m, blocks) for m in h.terms
    )
    stabilization_ok = all(
        all(phi[m] == snap[m] for m in set(snap.terms) | set(phi.terms) if m <= nj)
        for snap, nj in zip(phis, inp.n)
    )

    h_sup = [_sup_on_circle(hk) for hk in hs]
    block_norms, block_bounds = [], []
    for k in range(inp.K):
        block = phi.restrict(inp.n[k] + 1, inp.n[k + 1] + 1)
        block_norms.append(_sup_on_circle(block))
        block_bounds.append(abs(inp.u[k + 1]) * math.sqrt(inp.energy(k)))

    fine = min(1 << (4 * (inp.n[-1] + 1) - 1).bit_length(), _MAX_GRID)
    sup_grid = CircleGrid(max(samples, fine))
    sup_est = float(np.max(np.abs(phi.sample(sup_grid))))
    return FournierCertificate(
        coefficient_error=float(coeff_err),
        identity_residual=residual,
        block_norms=block_norms,
        block_bounds=block_bounds,
        h_sup=h_sup,
        support_ok=support_ok,
        stabilization_ok=stabilization_ok,
        sup_estimate=sup_est,
        sup_bound=math.sqrt(inp.energy()),
        samples=samples,
    )
