"""Haar-random unitaries and periodic random matrix product states.

Site tensors come from the first ``B`` columns of a ``dB x dB`` unitary (the
columns whose physical input is ``|0>``), with the physical index as the
most-significant factor of the composite index:

    A^i[b', b] = <i, b'| U |0, b>

and amplitudes are ``psi[i1..in] = tr[A_1^{i1} ... A_n^{in}]``.

Random streams: every (sample, site) pair gets its own generator derived from
the root seed by ``SeedSequence(root, spawn_key=(*stream, sample, site))``, so
ensembles do not depend on batching or on how samples are spread over workers.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, DomainError, NormalizationError

ZERO_NORM = 1e-14


def site_rng(root_seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(root_seed, spawn_key=tuple(key)))


def ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)


def haar_from_ginibre(z: np.ndarray) -> np.ndarray:
    """QR with the phases of diag(R) pushed into Q; works on stacks of matrices."""
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    if np.any(np.abs(diag) == 0):
        raise np.linalg.LinAlgError("degenerate Ginibre draw")
    return q * (diag / np.abs(diag))[..., None, :]


def sample_haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim < 1:
        raise DomainError(f"dim must be >= 1, got {dim}")
    while True:
        try:
            return haar_from_ginibre(ginibre(dim, rng))
        except np.linalg.LinAlgError:
            continue


@dataclass(frozen=True)
class SiteUnitary:
    d: int
    B: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.matrix.shape != (self.d * self.B, self.d * self.B):
            raise DimensionMismatchError(
                f"unitary of shape {self.matrix.shape} does not factor as d={self.d} x B={self.B}"
            )


def extract_site_tensor(U: SiteUnitary) -> np.ndarray:
    """The ``d`` matrices ``A^i`` as an array of shape ``(d, B, B)``."""
    return U.matrix[:, : U.B].reshape(U.d, U.B, U.B)


def contract_ring(tensors: np.ndarray) -> np.ndarray:
    """Amplitudes of periodic MPS from site tensors of shape ``(..., n, d, B, B)``.

    Left fold over sites: keep every prefix product ``A_1^{i1}..A_k^{ik}`` as a
    ``(d^k, B, B)`` stack, extend by one site, trace at the end. Leading axes
    are batch axes. Cost ``O(d^n B^3)`` per state.
    """
    *batch, n, d, B, _ = tensors.shape
    acc = tensors[..., 0, :, :, :]
    for k in range(1, n):
        acc = np.einsum("...ixy,...jyz->...ijxz", acc, tensors[..., k, :, :, :])
        acc = acc.reshape(*batch, -1, B, B)
    return np.trace(acc, axis1=-2, axis2=-1)


@dataclass(frozen=True)
class RmpsState:
    n: int
    d: int
    B: int
    site_tensors: np.ndarray = field(repr=False)
    statevector: np.ndarray = field(repr=False)
    normalized: bool
    raw_norm: float


def build_rmps(n: int, d: int, B: int, unitaries, normalize: bool = True) -> RmpsState:
    if n < 2:
        raise DomainError(f"need n >= 2 sites, got {n}")
    unitaries = list(unitaries)
    if len(unitaries) != n:
        raise DimensionMismatchError(f"expected {n} unitaries, got {len(unitaries)}")
    for U in unitaries:
        if (U.d, U.B) != (d, B):
            raise DimensionMismatchError(f"unitary has (d, B)={(U.d, U.B)}, expected {(d, B)}")
    tensors = np.stack([extract_site_tensor(U) for U in unitaries])
    psi = contract_ring(tensors)
    raw = float(np.linalg.norm(psi))
    if normalize:
        if raw < ZERO_NORM:
            raise NormalizationError(f"state norm {raw:.3g} is too small to normalize")
        psi = psi / raw
    return RmpsState(n, d, B, tensors, psi, normalize, raw)


def sample_site_unitaries(n: int, d: int, B: int, root_seed: int, sample: int, stream=()) -> list[SiteUnitary]:
    return [
        SiteUnitary(d, B, sample_haar_unitary(d * B, site_rng(root_seed, *stream, sample, site)))
        for site in range(n)
    ]


def sample_rmps(n: int, d: int, B: int, root_seed: int, sample: int, normalize: bool = True, stream=()) -> RmpsState:
    return build_rmps(n, d, B, sample_site_unitaries(n, d, B, root_seed, sample, stream), normalize)


def sample_tensor_batch(n: int, d: int, B: int, root_seed: int, samples, stream=()) -> np.ndarray:
    """Site tensors for many samples at once, shape ``(len(samples), n, d, B, B)``.

    Each sample's draws are identical to :func:`sample_site_unitaries`.
    """
    dim = d * B
    z = np.stack([
        np.stack([ginibre(dim, site_rng(root_seed, *stream, s, site)) for site in range(n)])
        for s in samples
    ])
    U = haar_from_ginibre(z)
    return U[..., :, :B].reshape(len(z), n, d, B, B)
