"""Seeded Monte-Carlo experiments: magic growth with n, Haar cross-checks, tails.

Work is split into fixed-size chunks of sample indices. Every sample draws from
its own seed stream, and chunk results are merged in chunk order, so outputs
do not depend on how many worker processes run the chunks.
"""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from multiprocessing import get_all_start_methods, get_context
from pathlib import Path

import numpy as np

from .blocks import analytic_moment_sum, build_block, exact_matrix_power_trace, haar_moment_sum
from .errors import DomainError, NormalizationError
from .magic import magic_report, pauli_fourth_power_sums
from .pauli import SiteClass
from .rmps import contract_ring, sample_rmps, sample_tensor_batch

WORKERS_ENV = "RMPS_MAGIC_WORKERS"
MODES = ("fig1", "crossval", "bounds", "weingarten-check", "appendix-polys")
FIG1_CHUNK = 25
CROSSVAL_CHUNK = 2000
DEFAULT_SEED = 7
FAIL_FRACTION = 0.01


class ExperimentError(RuntimeError):
    pass


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        w = int(raw)
    except ValueError:
        raise DomainError(f"{WORKERS_ENV}={raw!r} is not an integer") from None
    return max(w, 1)


@dataclass
class ExperimentConfig:
    d: int = 2
    B_list: tuple[int, ...] = (2, 4, 8)
    n_range: tuple[int, int] = (2, 8)
    samples_per_point: int = 100
    root_seed: int = DEFAULT_SEED
    worker_count: int = field(default_factory=default_workers)
    output_path: str | None = None
    mode: str = "fig1"

    def __post_init__(self):
        self.B_list = tuple(int(b) for b in self.B_list)
        self.n_range = tuple(int(x) for x in self.n_range)
        if self.d < 2:
            raise DomainError(f"d must be >= 2, got {self.d}")
        if not self.B_list or min(self.B_list) < 2:
            raise DomainError(f"every bond dimension must be >= 2, got {self.B_list}")
        lo, hi = self.n_range
        if not 2 <= lo <= hi <= 12:
            raise DomainError(f"n range must lie within [2, 12], got {self.n_range}")
        if self.samples_per_point < 1:
            raise DomainError("samples_per_point must be >= 1")
        if self.worker_count < 1:
            raise DomainError("worker_count must be >= 1")
        if self.mode not in MODES:
            raise DomainError(f"unknown mode {self.mode!r}")

    @property
    def ns(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    d: int
    B: int
    samples: int
    mean_magic: float
    stderr_magic: float
    log_d_mean_magic: float
    log_d_stderr: float
    mean_moment_sum: float
    analytic_moment_sum: float | None
    empirical_tail_fraction: float
    bound_violations: int
    failed_samples: int


CSV_FIELDS = tuple(ExperimentRecord.__dataclass_fields__)


# ---- parallel map with deterministic merge ---------------------------------

def _chunks(total: int, size: int):
    return [(a, min(a + size, total)) for a in range(0, total, size)]


def _pmap(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    method = "fork" if "fork" in get_all_start_methods() else "spawn"
    with ProcessPoolExecutor(max_workers=workers, mp_context=get_context(method)) as ex:
        return list(ex.map(fn, tasks))


# ---- magic growth ----------------------------------------------------------

def _fig1_chunk(task):
    n, d, B, seed, a, b = task
    rows, failed = [], []
    for s in range(a, b):
        try:
            st = sample_rmps(n, d, B, seed, s, normalize=True, stream=(n, B))
        except NormalizationError as exc:
            failed.append((s, str(exc)))
            continue
        rep = magic_report(st.statevector, d)
        rows.append((rep.magic_l1, rep.fourth_moment_sum, rep.lower_bound))
    return rows, failed


def _mean_stderr(x: np.ndarray) -> tuple[float, float]:
    mean = math.fsum(x) / len(x)
    if len(x) < 2:
        return mean, 0.0
    var = math.fsum((x - mean) ** 2) / (len(x) - 1)
    return mean, math.sqrt(var / len(x))


@dataclass
class Fig1Result:
    config: ExperimentConfig
    records: list[ExperimentRecord]
    magic: dict = field(repr=False)          # (B, n) -> per-sample magic values
    lower_bounds: dict = field(repr=False)   # (B, n) -> per-sample d^(n/2)/sqrt(S4) bounds

    def series(self, B: int) -> list[tuple[int, float]]:
        """``(n, log2 mean M)`` points for one bond dimension."""
        return [(r.n, math.log2(r.mean_magic)) for r in self.records if r.B == B]

    def slope(self, B: int):
        return fit_slope(self.series(B))


def run_fig1(config: ExperimentConfig, beta: float = 0.1, analytic: bool = True) -> Fig1Result:
    """Sample normalized RMPS on a grid of ``(B, n)`` and aggregate L1 magic."""
    d, N = config.d, config.samples_per_point
    tasks, index = [], []
    for B in config.B_list:
        for n in config.ns:
            for a, b in _chunks(N, FIG1_CHUNK):
                tasks.append((n, d, B, config.root_seed, a, b))
                index.append((B, n))
    out = _pmap(_fig1_chunk, tasks, config.worker_count)
    grouped: dict = {}
    for key, res in zip(index, out):
        grouped.setdefault(key, []).append(res)
    records, magic, lower = [], {}, {}
    for (B, n), parts in grouped.items():
        rows = [r for p in parts for r in p[0]]
        failed = [f for p in parts for f in p[1]]
        if len(failed) > FAIL_FRACTION * N:
            raise ExperimentError(f"(n={n}, B={B}): {len(failed)} of {N} samples failed: {failed[:5]}")
        arr = np.array(rows)
        M, S4, lb = arr[:, 0], arr[:, 1], arr[:, 2]
        mean, se = _mean_stderr(M)
        ref = analytic_moment_sum(d, B, n).value if analytic else None
        records.append(ExperimentRecord(
            n=n, d=d, B=B, samples=len(M),
            mean_magic=mean, stderr_magic=se,
            log_d_mean_magic=math.log(mean, d),
            log_d_stderr=se / (mean * math.log(d)),
            mean_moment_sum=math.fsum(S4) / len(S4),
            analytic_moment_sum=ref,
            empirical_tail_fraction=_tail_fraction(M, d, n, beta),
            bound_violations=int(np.sum(M < lb - 1e-10)),
            failed_samples=len(failed),
        ))
        magic[(B, n)], lower[(B, n)] = M, lb
    result = Fig1Result(config, records, magic, lower)
    if config.output_path:
        write_records_csv(records, config.output_path)
    return result


def write_records_csv(records, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in records:
            w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v)
                        for v in (getattr(r, f) for f in CSV_FIELDS)])
    return path


def fit_slope(points) -> tuple[float, float, float]:
    """Ordinary least squares ``y = slope * n + intercept``; returns r^2 too."""
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise DomainError(f"need at least 3 points, got {len(pts)}")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.ptp(x) == 0:
        raise DomainError("all n are equal; slope is undefined")
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    slope = float(np.sum((x - xm) * (y - ym))) / sxx
    intercept = ym - slope * xm
    ss_tot = float(np.sum((y - ym) ** 2))
    ss_res = float(np.sum((y - slope * x - intercept) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1 - ss_res / ss_tot
    return slope, float(intercept), r2


# ---- tail fractions --------------------------------------------------------

def _tail_fraction(M: np.ndarray, base: float, n: int, beta: float) -> float:
    # small slack so that M = 1 exactly counts as log M >= 0
    return float(np.mean(np.log(M) / math.log(base) >= beta * n - 1e-12))


@dataclass(frozen=True)
class TailRecord:
    B: int
    n: int
    beta: float
    fraction: float


def run_tail_check(source, beta: float, threshold_base: float | None = None) -> list[TailRecord]:
    """Fraction of samples with ``log_base M >= beta * n`` for every ``(B, n)``.

    ``source`` is a :class:`Fig1Result` or an :class:`ExperimentConfig` (then
    growth sampling is run first). The base defaults to ``d``.
    """
    res = source if isinstance(source, Fig1Result) else run_fig1(source, analytic=False)
    base = threshold_base or res.config.d
    return [TailRecord(B, n, beta, _tail_fraction(M, base, n, beta)) for (B, n), M in res.magic.items()]


def tail_is_monotone(records) -> dict[int, bool]:
    """Per bond dimension: is the tail fraction non-decreasing in n?"""
    out = {}
    for B in sorted({r.B for r in records}):
        f = [r.fraction for r in sorted((r for r in records if r.B == B), key=lambda r: r.n)]
        out[B] = all(a <= b for a, b in zip(f, f[1:]))
    return out


# ---- Haar cross-validation -------------------------------------------------

def _crossval_chunk(task):
    d, B, n, seed, a, b = task
    T = sample_tensor_batch(n, d, B, seed, range(a, b), stream=(d, B, n))
    psi = contract_ring(T)
    s4 = pauli_fourth_power_sums(psi, d, n)
    norm8 = np.sum(np.abs(psi) ** 2, axis=1) ** 4
    return s4, norm8


@dataclass(frozen=True)
class CrossvalRecord:
    d: int
    B: int
    n: int
    samples: int
    quantity: str
    mean: float
    stderr: float
    imag_mean: float
    analytic: float
    analytic_table: float
    z: float

    @property
    def passed(self) -> bool:
        return abs(self.z) <= 3


def sample_moment_quantities(d: int, B: int, n: int, samples: int, seed: int, workers: int = 1):
    """Per-sample ``sum_P <P>^4`` and ``||psi||^8`` for unnormalized RMPS."""
    tasks = [(d, B, n, seed, a, b) for a, b in _chunks(samples, CROSSVAL_CHUNK)]
    out = _pmap(_crossval_chunk, tasks, workers)
    return np.concatenate([o[0] for o in out]), np.concatenate([o[1] for o in out])


def crossval_instance(d: int, B: int, n: int, samples: int = 100_000, seed: int = DEFAULT_SEED,
                      workers: int = 1) -> list[CrossvalRecord]:
    s4, norm8 = sample_moment_quantities(d, B, n, samples, seed, workers)
    recs = []
    m, se = _mean_stderr(s4.real)
    im = math.fsum(s4.imag) / len(s4)
    ref = haar_moment_sum(d, B, n, "gram")
    ref_t = haar_moment_sum(d, B, n, "table")
    recs.append(CrossvalRecord(d, B, n, len(s4), "pauli_fourth_power_sum", m, se, im, ref, ref_t,
                               (m - ref) / se if se else math.inf))
    m, se = _mean_stderr(norm8)
    G = {v: float(exact_matrix_power_trace(build_block(d, B, SiteClass.IDENTITY, v).exact, n))
         for v in ("gram", "table")}
    recs.append(CrossvalRecord(d, B, n, len(norm8), "raw_norm_8", m, se, 0.0, G["gram"], G["table"],
                               (m - G["gram"]) / se if se else math.inf))
    return recs


CROSSVAL_INSTANCES = ((2, 2, 2), (2, 2, 3), (3, 2, 2))


def run_crossval(config: ExperimentConfig, instances=None) -> list[CrossvalRecord]:
    """Monte-Carlo vs transfer-matrix values on small instances.

    With ``instances`` unset, uses ``(config.d, B, n)`` over the configured
    grid. Records are written as CSV when ``output_path`` is set.
    """
    if instances is None:
        instances = [(config.d, B, n) for B in config.B_list for n in config.ns]
    recs = []
    for d, B, n in instances:
        recs += crossval_instance(d, B, n, config.samples_per_point, config.root_seed, config.worker_count)
    if config.output_path:
        write_dataclass_csv(recs, config.output_path, CrossvalRecord)
    return recs


def write_dataclass_csv(rows, path, cls) -> Path:
    fields = tuple(cls.__dataclass_fields__)
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in (getattr(r, f) for f in fields)])
    return path


def records_to_json(rows) -> str:
    return json.dumps([asdict(r) for r in rows], indent=1, default=str) + "\n"
