"""24x24 interaction blocks and the partition functions built from them.

A block couples neighbouring S4 "spins":

    T[s, p] = sum_t Wg(s^-1 t, dB) * v(t) * B ** cycle_count(t^-1 p)

where ``v`` is the contraction vector of the site operator, which depends on
``t`` only through its cycle type. Since ``T`` is linear in ``v`` we keep five
exact basis matrices per ``(d, B)`` (one per cycle type) and combine them.

The Haar average of ``tr[(P psi psi^dag)^(x)4]`` over unnormalized RMPS is the
trace of the product of the blocks of the sites of ``P``.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import DomainError, NullClassError
from .pauli import SiteClass, contraction_vector_exact, site_class_counts, site_operators
from .sym4 import PARTITIONS, enumerate_s4, relative_cycle_counts
from .weingarten import table_weingarten_matrix, weingarten_matrix

VARIANTS = ("gram", "table")


def _check_dims(d: int, B: int) -> None:
    if d < 2 or B < 2:
        raise DomainError(f"blocks need d >= 2 and B >= 2, got d={d}, B={B}")


def class_vector(d: int, site_class: SiteClass) -> tuple[int, ...]:
    """Contraction vector per cycle-type class, modulus convention."""
    if site_class is SiteClass.IDENTITY:
        return tuple(d ** len(p) for p in PARTITIONS)
    if site_class is SiteClass.O1:
        return (0, 0, d * d, 0, d)
    if site_class is SiteClass.O2:
        return (0, 0, 0, 0, d)
    raise NullClassError("Null sites have a vanishing contraction vector")


# ---- exact helpers ---------------------------------------------------------

def _to_int_form(M: np.ndarray) -> tuple[np.ndarray, int]:
    den = 1
    for x in M.flat:
        den = math.lcm(den, Fraction(x).denominator)
    N = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        f = Fraction(x)
        N[idx] = f.numerator * (den // f.denominator)
    return N, den


def _from_int_form(N: np.ndarray, den: int) -> np.ndarray:
    out = np.empty(N.shape, dtype=object)
    for idx, x in np.ndenumerate(N):
        out[idx] = Fraction(int(x), den)
    return out


def exact_trace_of_product(mats) -> Fraction:
    forms = [_to_int_form(M) for M in mats]
    acc, den = forms[0]
    for N, dn in forms[1:]:
        acc = acc.dot(N)
        den *= dn
    return Fraction(int(sum(acc[i, i] for i in range(acc.shape[0]))), den)


def exact_matrix_power_trace(M: np.ndarray, n: int) -> Fraction:
    N, den = _to_int_form(M)
    result, rden = None, 1
    base, bden = N, den
    k = n
    while k:
        if k & 1:
            result = base if result is None else result.dot(base)
            rden *= bden
        k >>= 1
        if k:
            base = base.dot(base)
            bden *= bden
    return Fraction(int(sum(result[i, i] for i in range(result.shape[0]))), rden)


# ---- block construction ----------------------------------------------------

@lru_cache(maxsize=256)
def basis_blocks(d: int, B: int, variant: str = "gram") -> tuple[np.ndarray, ...]:
    """``K_c[s, p] = sum_{t in class c} Wg(s^-1 t) B^{#cyc(t^-1 p)}``, exact."""
    _check_dims(d, B)
    if variant not in VARIANTS:
        raise ValueError(f"unknown Weingarten variant {variant!r}")
    q = d * B
    W = (weingarten_matrix(q) if variant == "gram" else table_weingarten_matrix(q)).entries
    counts = relative_cycle_counts()
    GB = np.empty((24, 24), dtype=object)
    for i in range(24):
        for j in range(24):
            GB[i, j] = B ** counts[i][j]
    classes = [PARTITIONS.index(_partition(t)) for t in enumerate_s4()]
    W_int, W_den = _to_int_form(W)
    out = []
    for c in range(5):
        mask = np.array([int(cl == c) for cl in classes], dtype=object)
        prod = (W_int * mask[None, :]).dot(GB)
        out.append(_from_int_form(prod, W_den))
    return tuple(out)


def _partition(p) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def block_from_vector(d: int, B: int, v, variant: str = "gram") -> np.ndarray:
    """Exact block for an arbitrary real rational contraction vector ``v``."""
    K = basis_blocks(d, B, variant)
    out = np.zeros((24, 24), dtype=object)
    for c, coef in enumerate(v):
        if coef:
            out = out + K[c] * Fraction(coef)
    return out


@dataclass(frozen=True)
class TransferBlock:
    d: int
    B: int
    site_class: SiteClass
    exact: np.ndarray = field(repr=False)
    variant: str = "gram"

    @property
    def entries(self) -> np.ndarray:
        return _float_view(self)


@lru_cache(maxsize=1024)
def _float_view_cached(d, B, site_class, variant) -> np.ndarray:
    arr = build_block(d, B, site_class, variant).exact.astype(float)
    arr.setflags(write=False)
    return arr


def _float_view(block: TransferBlock) -> np.ndarray:
    return _float_view_cached(block.d, block.B, block.site_class, block.variant)


@lru_cache(maxsize=1024)
def build_block(d: int, B: int, site_class: SiteClass, variant: str = "gram") -> TransferBlock:
    _check_dims(d, B)
    if site_class is SiteClass.NULL:
        raise NullClassError("no interaction block for a Null site")
    exact = block_from_vector(d, B, class_vector(d, site_class), variant)
    return TransferBlock(d, B, site_class, exact, variant)


# ---- partition functions ---------------------------------------------------

def per_string_expectation_exact(d: int, B: int, n: int, classes, variant: str = "gram") -> Fraction:
    classes = list(classes)
    if n < 1 or len(classes) != n:
        raise DomainError(f"need n >= 1 classes, got n={n} and {len(classes)} classes")
    if any(c is SiteClass.NULL for c in classes):
        raise NullClassError("strings with a Null site have expectation 0; filter them first")
    return exact_trace_of_product([build_block(d, B, c, variant).exact for c in classes])


def per_string_expectation(d: int, B: int, n: int, classes, variant: str = "gram") -> float:
    """Haar average of ``tr[(P psi psi^dag)^(x)4]`` for the given site classes."""
    return float(per_string_expectation_exact(d, B, n, classes, variant))


def case_tag(d: int) -> str:
    if d % 2:
        return "odd-d"
    if d % 4:
        return "2k-odd"
    return "4k"


def bound_base_constant(d: int) -> float:
    """Per-site growth constant of the upper bound ``24 * C^n``."""
    tag = case_tag(d)
    if tag == "odd-d":
        return 1.0
    if tag == "2k-odd":
        return 1 + 3 / d**2 if d == 2 else 1 + 6 / d**2
    return 1 + 9 / d**2


@dataclass(frozen=True)
class MomentSumResult:
    d: int
    B: int
    n: int
    value: float
    exact: Fraction
    case_tag: str
    bound_base_C: float

    @property
    def bound(self) -> float:
        return 24 * self.bound_base_C**self.n


def summed_block(d: int, B: int, variant: str = "gram") -> np.ndarray:
    """``G + n1*O1 + n2*O2`` with multiplicities from the site classification."""
    n1, n2 = site_class_counts(d)
    total = build_block(d, B, SiteClass.IDENTITY, variant).exact
    if n1:
        total = total + build_block(d, B, SiteClass.O1, variant).exact * n1
    if n2:
        total = total + build_block(d, B, SiteClass.O2, variant).exact * n2
    return total


def analytic_moment_sum(d: int, B: int, n: int, variant: str = "gram") -> MomentSumResult:
    _check_dims(d, B)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    exact = exact_matrix_power_trace(summed_block(d, B, variant), n)
    return MomentSumResult(d, B, n, float(exact), exact, case_tag(d), bound_base_constant(d))


def haar_contraction_total(d: int) -> np.ndarray:
    """Sum over all ``d^2`` site operators of the complex contraction vectors.

    Unlike :func:`class_vector` this keeps the exact phases of ``trO^4``, so
    it is the per-site factor of ``sum_P E[<psi|P|psi>^4]`` with complex
    fourth powers.
    """
    tot = np.zeros(5, dtype=complex)
    for op in site_operators(d):
        tot += np.array([complex(c) for c in contraction_vector_exact(op)])
    return tot


def haar_moment_sum(d: int, B: int, n: int, variant: str = "gram") -> float:
    """``sum_P E[<psi|P|psi>^4]`` (complex fourth powers) for unnormalized RMPS."""
    tot = haar_contraction_total(d)
    if np.max(np.abs(tot.imag)) > 1e-9 * max(1.0, np.max(np.abs(tot))):
        raise DomainError(f"summed contraction vector is not real for d={d}")
    re = np.rint(tot.real)
    if np.allclose(re, tot.real, atol=1e-9):
        return float(exact_matrix_power_trace(block_from_vector(d, B, [int(x) for x in re], variant), n))
    K = [k.astype(float) for k in basis_blocks(d, B, variant)]
    M = sum(c * k for c, k in zip(tot.real, K))
    return float(np.trace(np.linalg.matrix_power(M, n)))


# ---- external dump ---------------------------------------------------------

_CLASSES = (SiteClass.IDENTITY, SiteClass.O1, SiteClass.O2)


def dump_blocks(path, d: int, B: int, variant: str = "gram") -> Path:
    """Write the three blocks row-major with labels 1-24 (CSV or JSON by suffix)."""
    path = Path(path)
    blocks = {c.value: build_block(d, B, c, variant) for c in _CLASSES}
    if path.suffix.lower() == ".json":
        payload = {
            "d": d, "B": B, "variant": variant, "labels": list(range(1, 25)),
            "blocks": {
                name: {
                    "entries": blk.entries.tolist(),
                    "exact": [[str(x) for x in row] for row in blk.exact],
                }
                for name, blk in blocks.items()
            },
        }
        path.write_text(json.dumps(payload, indent=1) + "\n")
    else:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["class", "row_label", "col_label", "value", "exact"])
            for name, blk in blocks.items():
                for i in range(24):
                    for j in range(24):
                        w.writerow([name, i + 1, j + 1, repr(float(blk.exact[i, j])), str(blk.exact[i, j])])
    return path
