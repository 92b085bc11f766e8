"""L1-norm magic, the fourth-moment Pauli sum and the lower bound it implies."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NormalizationError
from .pauli import iter_pauli_expectation_blocks

NORM_TOL = 1e-10


def _infer_n(state, d: int) -> int:
    size = np.asarray(state).size
    n = round(math.log(size, d)) if size > 1 else 0
    if n < 1 or d**n != size:
        raise DomainError(f"state length {size} is not a power of d={d}")
    return n


def _check_normalized(state) -> None:
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > NORM_TOL:
        raise NormalizationError(f"state has norm {norm!r}; magic is defined for unit vectors")


def pauli_moments(state, d: int, powers=(1, 4)) -> dict[int, float]:
    """``sum_P |<psi|P|psi>|^k`` for each ``k`` in ``powers``, one streaming pass.

    Each chunk of X-shifts is reduced with ``math.fsum`` in a fixed order, so
    results are reproducible bit for bit.
    """
    n = _infer_n(state, d)
    partial = {k: [] for k in powers}
    for _, E in iter_pauli_expectation_blocks(state, d, n):
        a = np.abs(E).ravel()
        for k in powers:
            partial[k].append(math.fsum(a**k))
    return {k: math.fsum(v) for k, v in partial.items()}


def magic_l1(state, d: int) -> float:
    """``(1/d^n) sum_P |<psi|P|psi>|`` over all ``d^(2n)`` Pauli strings."""
    _check_normalized(state)
    n = _infer_n(state, d)
    return pauli_moments(state, d, (1,))[1] / d**n


def fourth_moment_sum(state, d: int) -> float:
    _check_normalized(state)
    return pauli_moments(state, d, (4,))[4]


def magic_lower_bound(fourth_moment_sum: float, n: int, d: int) -> float:
    if not fourth_moment_sum > 0:
        raise DomainError(f"fourth-moment sum must be positive, got {fourth_moment_sum!r}")
    return d ** (n / 2) / math.sqrt(fourth_moment_sum)


@dataclass(frozen=True)
class MagicReport:
    n: int
    d: int
    magic_l1: float
    fourth_moment_sum: float
    lower_bound: float

    @property
    def log_d_magic(self) -> float:
        return math.log(self.magic_l1, self.d)

    @property
    def bound_holds(self) -> bool:
        return self.magic_l1 >= self.lower_bound - 1e-10

    @property
    def sre_half(self) -> float:
        """Stabilizer Renyi entropy of order 1/2, ``2 log M`` (natural log)."""
        return 2 * math.log(self.magic_l1)

    @property
    def sre_two(self) -> float:
        """Stabilizer Renyi entropy of order 2, ``-log(sum |<P>|^4 / d^n)``."""
        return -math.log(self.fourth_moment_sum / self.d**self.n)


def magic_report(state, d: int) -> MagicReport:
    _check_normalized(state)
    n = _infer_n(state, d)
    m = pauli_moments(state, d, (1, 4))
    s4 = m[4]
    return MagicReport(n, d, m[1] / d**n, s4, magic_lower_bound(s4, n, d))


def norm_inequality_check(v) -> tuple[float, float, bool]:
    """``(||v||_1, 1/||v||_4^2, holds)`` for a unit vector ``v``."""
    v = np.asarray(v)
    if abs(float(np.linalg.norm(v)) - 1.0) > NORM_TOL:
        raise NormalizationError("vector must have unit 2-norm")
    a = np.abs(v)
    lhs = math.fsum(a)
    rhs = 1.0 / math.sqrt(math.fsum(a**4))
    return lhs, rhs, lhs >= rhs - 1e-12


def pauli_fourth_power_sums(states, d: int, n: int, chunk: int = 64) -> np.ndarray:
    """``sum_P <psi|P|psi>^4`` (complex fourth powers) for a batch of states.

    ``states`` has shape ``(S, d^n)`` and need not be normalized. This is the
    per-sample quantity whose Haar mean the transfer-matrix trace predicts.
    """
    from .pauli import _digits

    psi = np.asarray(states, dtype=complex)
    dim = d**n
    if psi.ndim != 2 or psi.shape[1] != dim:
        raise DomainError(f"expected shape (S, {dim}), got {psi.shape}")
    digits = _digits(d, n)
    weights = d ** np.arange(n - 1, -1, -1)
    out = np.zeros(len(psi), dtype=complex)
    axes = tuple(range(2, n + 2))
    for start in range(0, dim, chunk):
        rs = np.arange(start, min(start + chunk, dim))
        shifted = ((digits[rs][:, None, :] + digits[None, :, :]) % d) @ weights
        w = np.conj(psi[:, shifted]) * psi[:, None, :]
        E = np.fft.ifftn(w.reshape((len(psi), len(rs)) + (d,) * n), axes=axes) * dim
        out += (E**4).reshape(len(psi), -1).sum(axis=1)
    return out
