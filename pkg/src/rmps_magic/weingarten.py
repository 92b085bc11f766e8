"""Gram matrix of S4 permutation states and the fourth-order Weingarten matrix.

Everything here is exact: integers and :class:`fractions.Fraction`. The
Weingarten matrix is *defined* as the inverse of the Gram matrix
``G[s, t] = q ** cycle_count(s^-1 t)``; the printed closed-form table is kept
separately (:func:`weingarten_table`) so the two can be compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .sym4 import PARTITIONS, CycleType, relative_class_indices, relative_cycle_counts


@dataclass(frozen=True)
class GramMatrix:
    q: int
    entries: np.ndarray  # 24x24, dtype=object, Python ints


@dataclass(frozen=True)
class WeingartenMatrix:
    q: int
    entries: np.ndarray  # 24x24, dtype=object, Fractions

    def class_values(self) -> dict[tuple[int, ...], Fraction]:
        """Wg value per cycle type of ``s^-1 t``, read off row 0."""
        cls = relative_class_indices()[0]
        return {PARTITIONS[cls[j]]: self.entries[0, j] for j in range(24)}


def _check_q(q: int) -> None:
    if int(q) != q or q < 4:
        raise DomainError(f"Weingarten calculus for t=4 needs integer q >= 4, got {q!r}")


def gram_matrix(q: int) -> GramMatrix:
    _check_q(q)
    counts = relative_cycle_counts()
    ent = np.empty((24, 24), dtype=object)
    for i in range(24):
        for j in range(24):
            ent[i, j] = q ** counts[i][j]
    return GramMatrix(q, ent)


def exact_inverse(M: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse of a square matrix over the rationals.

    Raises ``ZeroDivisionError`` if ``M`` is singular.
    """
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError(f"matrix is not square (shape = {M.shape})")
    aug = [[Fraction(M[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        prow = aug[col]
        inv_p = 1 / prow[col]
        prow[:] = [x * inv_p for x in prow]
        for r in range(n):
            if r == col:
                continue
            row = aug[r]
            factor = row[col]
            if factor:
                row[:] = [a - factor * b for a, b in zip(row, prow)]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = aug[i][n + j]
    return out


@lru_cache(maxsize=64)
def weingarten_matrix(q: int) -> WeingartenMatrix:
    return WeingartenMatrix(q, exact_inverse(gram_matrix(q).entries))


_TABLE_NUMERATORS = {
    (1, 1, 1, 1): lambda q: q**4 - 8 * q**2 + 6,
    (2, 1, 1): lambda q: -(q**3) + 4 * q,
    (2, 2): lambda q: q**2 + 6,
    (3, 1): lambda q: 2 * q**2 - 3,
    (4,): lambda q: -5 * q,
}


def table_denominator(q: int) -> int:
    """The common denominator as printed alongside the closed-form table."""
    return q**2 * (q**2 - 1) * (q**2 - 2) * (q**2 - 3)


def weingarten_table(s: CycleType | tuple[int, ...], q: int) -> Fraction:
    """Printed closed-form Wg value: table numerator over the printed denominator."""
    _check_q(q)
    part = s.partition if isinstance(s, CycleType) else tuple(s)
    den = table_denominator(q)
    if den == 0:
        raise DomainError(f"printed denominator vanishes at q={q}")
    return Fraction(_TABLE_NUMERATORS[part](q), den)


def table_weingarten_matrix(q: int) -> WeingartenMatrix:
    """24x24 matrix filled from :func:`weingarten_table` (for variant comparisons)."""
    cls = relative_class_indices()
    vals = [weingarten_table(p, q) for p in PARTITIONS]
    ent = np.empty((24, 24), dtype=object)
    for i in range(24):
        for j in range(24):
            ent[i, j] = vals[cls[i][j]]
    return WeingartenMatrix(q, ent)


def table_rescale_factor(q: int) -> Fraction:
    """Ratio table/true shared by every class when only the denominator differs.

    Equals ``(q^2-4)(q^2-9) / ((q^2-2)(q^2-3))``; the probe below checks the
    premise rather than assuming it.
    """
    return Fraction((q * q - 4) * (q * q - 9), (q * q - 2) * (q * q - 3))


@dataclass(frozen=True)
class ProbeRow:
    partition: tuple[int, ...]
    gram_value: Fraction
    table_value: Fraction

    @property
    def agrees(self) -> bool:
        return self.gram_value == self.table_value

    @property
    def ratio(self) -> Fraction:
        return self.table_value / self.gram_value


def consistency_probe(q: int) -> list[ProbeRow]:
    """Compare the printed table against the Gram inverse class by class."""
    got = weingarten_matrix(q).class_values()
    return [ProbeRow(p, got[p], weingarten_table(p, q)) for p in PARTITIONS]


def is_exact_inverse(q: int) -> bool:
    W = weingarten_matrix(q).entries
    G = gram_matrix(q).entries
    prod = W.dot(G)
    return all(prod[i, j] == int(i == j) for i in range(24) for j in range(24))
