"""Generalized qudit Pauli operators ``X^r Z^s`` and their fourth-moment data.

``X|j> = |j+1 mod d>`` and ``Z|j> = w^j |j>`` with ``w = exp(2 pi i / d)``.
Powers and traces are tracked exactly as integer exponents of ``w``, so site
classification never depends on a floating-point threshold.
"""
from __future__ import annotations

import cmath
import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, DomainError


class SiteClass(enum.Enum):
    IDENTITY = "Identity"
    O1 = "O1"
    O2 = "O2"
    NULL = "Null"


@dataclass(frozen=True)
class SitePauli:
    d: int
    r: int
    s: int

    def __post_init__(self):
        if self.d < 2:
            raise DomainError(f"local dimension must be >= 2, got {self.d}")
        object.__setattr__(self, "r", self.r % self.d)
        object.__setattr__(self, "s", self.s % self.d)

    @property
    def is_identity(self) -> bool:
        return self.r == 0 and self.s == 0


@dataclass(frozen=True)
class PauliString:
    sites: tuple[SitePauli, ...]

    def __post_init__(self):
        if not self.sites:
            raise DomainError("a Pauli string needs at least one site")
        if len({p.d for p in self.sites}) != 1:
            raise DimensionMismatchError("all sites of a Pauli string must share d")

    @classmethod
    def from_exponents(cls, d: int, exps) -> "PauliString":
        """``exps`` is a sequence of ``(r, s)`` pairs, one per site."""
        return cls(tuple(SitePauli(d, r, s) for r, s in exps))

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def d(self) -> int:
        return self.sites[0].d


@dataclass(frozen=True)
class RootTrace:
    """The exact value ``scale * exp(2 pi i k / d)``."""

    scale: int
    k: int
    d: int

    def __complex__(self) -> complex:
        if self.scale == 0:
            return 0j
        return self.scale * cmath.exp(2j * cmath.pi * (self.k % self.d) / self.d)

    def __mul__(self, other: "RootTrace") -> "RootTrace":
        assert self.d == other.d
        if self.scale == 0 or other.scale == 0:
            return RootTrace(0, 0, self.d)
        return RootTrace(self.scale * other.scale, (self.k + other.k) % self.d, self.d)

    def __abs__(self) -> int:
        return abs(self.scale)

    @property
    def is_real_positive(self) -> bool:
        return self.scale > 0 and self.k % self.d == 0


def pauli_matrix(p: SitePauli) -> np.ndarray:
    d = p.d
    X = np.roll(np.eye(d), 1, axis=0)
    Z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return np.linalg.matrix_power(X, p.r) @ np.linalg.matrix_power(Z, p.s)


def pauli_power_trace_exact(p: SitePauli, m: int) -> RootTrace:
    """``tr[(X^r Z^s)^m]`` using ``(X^r Z^s)^m = w^(rs m(m-1)/2) X^(mr) Z^(ms)``."""
    d = p.d
    if (m * p.r) % d or (m * p.s) % d:
        return RootTrace(0, 0, d)
    return RootTrace(d, (p.r * p.s * (m * (m - 1) // 2)) % d, d)


def pauli_power_trace(p: SitePauli, m: int) -> complex:
    return complex(pauli_power_trace_exact(p, m))


def contraction_vector_exact(p: SitePauli) -> tuple[RootTrace, ...]:
    """Overlaps with the five cycle-type classes of permutation states.

    Order: ``(trO)^4, trO^2 (trO)^2, (trO^2)^2, trO^3 trO, trO^4``.
    """
    t1, t2, t3, t4 = (pauli_power_trace_exact(p, m) for m in (1, 2, 3, 4))
    return (t1 * t1 * t1 * t1, t2 * t1 * t1, t2 * t2, t3 * t1, t4)


def contraction_vector(p: SitePauli) -> np.ndarray:
    return np.array([complex(c) for c in contraction_vector_exact(p)])


def classify_site(p: SitePauli) -> SiteClass:
    """Identity / O1 / O2 / Null from the squared-modulus pattern of the traces.

    O1: ``|trO^2| = d`` (so ``O^2`` and ``O^4`` are multiples of I);
    O2: ``trO^2 = 0`` and ``|trO^4| = d``. Phases are ignored here; the exact
    phase is still available from :func:`contraction_vector_exact`.
    """
    if p.is_identity:
        return SiteClass.IDENTITY
    t2 = pauli_power_trace_exact(p, 2)
    t4 = pauli_power_trace_exact(p, 4)
    if abs(t2) == p.d:
        return SiteClass.O1
    if abs(t4) == p.d:
        return SiteClass.O2
    return SiteClass.NULL


def site_operators(d: int):
    """All ``d*d`` site operators, lexicographic in ``(r, s)``."""
    return [SitePauli(d, r, s) for r in range(d) for s in range(d)]


@lru_cache(maxsize=None)
def site_class_counts(d: int) -> tuple[int, int]:
    if d < 2:
        raise DomainError(f"local dimension must be >= 2, got {d}")
    classes = [classify_site(p) for p in site_operators(d)]
    return classes.count(SiteClass.O1), classes.count(SiteClass.O2)


def iter_pauli_strings(d: int, n: int):
    """Every string on ``n`` sites, lexicographic in ``(r1, s1, ..., rn, sn)``."""
    for exps in itertools.product(itertools.product(range(d), repeat=2), repeat=n):
        yield PauliString.from_exponents(d, exps)


def _as_tensor(state, d: int, n: int) -> np.ndarray:
    psi = np.asarray(state)
    if psi.ndim != 1 or psi.size != d**n:
        raise DimensionMismatchError(
            f"state of length {psi.size} does not match d={d}, n={n} (need {d**n})"
        )
    return psi.reshape((d,) * n)


def apply_pauli_string(state, P: PauliString) -> np.ndarray:
    """``P|psi>`` by per-site phases and index shifts, never forming P."""
    d, n = P.d, P.n
    psi = _as_tensor(state, d, n).astype(complex, copy=True)
    j = np.arange(d)
    for axis, site in enumerate(P.sites):
        if site.s:
            shape = [1] * n
            shape[axis] = d
            psi *= np.exp(2j * np.pi * site.s * j / d).reshape(shape)
        if site.r:
            psi = np.roll(psi, site.r, axis=axis)
    return psi.reshape(-1)


def pauli_string_expectation(state, P: PauliString) -> complex:
    psi = np.asarray(state)
    return complex(np.vdot(psi, apply_pauli_string(psi, P)))


def dense_pauli_string(P: PauliString) -> np.ndarray:
    """Full ``d^n x d^n`` matrix; only for small test oracles."""
    out = np.ones((1, 1), dtype=complex)
    for site in P.sites:
        out = np.kron(out, pauli_matrix(site))
    return out


@lru_cache(maxsize=32)
def _digits(d: int, n: int) -> np.ndarray:
    idx = np.arange(d**n)
    return np.stack([(idx // d ** (n - 1 - k)) % d for k in range(n)], axis=1)


def iter_pauli_expectation_blocks(state, d: int, n: int, chunk: int = 256):
    """Yield ``(r_indices, E)`` with ``E[a, b] = <psi| X^{r_a} Z^{s_b} |psi>``.

    ``r_a`` and ``s_b`` are multi-indices flattened with site 1 most
    significant. For a fixed shift ``r`` the values over all ``s`` are one
    n-dimensional DFT of ``conj(psi[j + r]) * psi[j]``, so a whole row costs
    ``O(n d^n)`` and memory stays ``O(chunk * d^n)``.
    """
    psi = _as_tensor(state, d, n).reshape(-1)
    dim = d**n
    digits = _digits(d, n)
    weights = d ** np.arange(n - 1, -1, -1)
    for start in range(0, dim, chunk):
        rs = np.arange(start, min(start + chunk, dim))
        shifted = ((digits[rs][:, None, :] + digits[None, :, :]) % d) @ weights
        w = np.conj(psi[shifted]) * psi[None, :]
        w = w.reshape((len(rs),) + (d,) * n)
        E = np.fft.ifftn(w, axes=tuple(range(1, n + 1))) * dim
        yield rs, E.reshape(len(rs), dim)


def pauli_expectations(state, d: int, n: int) -> np.ndarray:
    """All ``d^(2n)`` expectations as a ``(d^n, d^n)`` array indexed ``[r, s]``."""
    return np.concatenate([E for _, E in iter_pauli_expectation_blocks(state, d, n)], axis=0)
