import csv
import math

import pytest

from rmps_magic.blocks import haar_moment_sum
from rmps_magic.errors import DomainError
from rmps_magic.harness import (
    CSV_FIELDS, ExperimentConfig, TailRecord, WORKERS_ENV, crossval_instance, default_workers,
    fit_slope, records_to_json, run_crossval, run_fig1, run_tail_check, tail_is_monotone,
    write_records_csv,
)


def test_fit_exact_line():
    slope, icpt, r2 = fit_slope([(n, 0.46 * n + 0.1) for n in range(2, 9)])
    assert slope == pytest.approx(0.46) and icpt == pytest.approx(0.1) and r2 == pytest.approx(1)


def test_fit_constant():
    slope, icpt, r2 = fit_slope([(n, 3.0) for n in range(5)])
    assert slope == 0 and icpt == 3 and r2 == 1


def test_fit_errors():
    with pytest.raises(DomainError):
        fit_slope([(1, 1), (2, 2)])
    with pytest.raises(DomainError):
        fit_slope([(3, 1), (3, 2), (3, 5)])


@pytest.mark.parametrize("kw", [
    {"d": 1}, {"B_list": ()}, {"B_list": (1, 2)}, {"n_range": (1, 4)}, {"n_range": (5, 4)},
    {"n_range": (2, 13)}, {"samples_per_point": 0}, {"worker_count": 0}, {"mode": "plot"},
])
def test_config_validation(kw):
    with pytest.raises(DomainError):
        ExperimentConfig(**kw)


def test_workers_env(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert default_workers() == 3 and ExperimentConfig().worker_count == 3
    monkeypatch.setenv(WORKERS_ENV, "zero")
    with pytest.raises(DomainError):
        default_workers()
    monkeypatch.delenv(WORKERS_ENV)
    assert default_workers() == 1


def _small(**kw):
    base = dict(d=2, B_list=(2, 3), n_range=(2, 4), samples_per_point=30, root_seed=5, worker_count=1)
    return ExperimentConfig(**{**base, **kw})


def test_fig1_records(tmp_path):
    res = run_fig1(_small(output_path=str(tmp_path / "f.csv")))
    assert [(r.B, r.n) for r in res.records] == [(B, n) for B in (2, 3) for n in (2, 3, 4)]
    for r in res.records:
        assert r.samples == 30 and r.failed_samples == 0 and r.bound_violations == 0
        assert r.mean_magic >= 1
        assert r.log_d_mean_magic == pytest.approx(math.log2(r.mean_magic))
        assert r.analytic_moment_sum > 0
    rows = list(csv.reader(open(tmp_path / "f.csv")))
    assert tuple(rows[0]) == CSV_FIELDS and len(rows) == 7


def test_fig1_independent_of_workers(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run_fig1(_small(worker_count=1, samples_per_point=60, output_path=str(a)))
    run_fig1(_small(worker_count=3, samples_per_point=60, output_path=str(b)))
    assert a.read_bytes() == b.read_bytes()


def test_fig1_seed_changes_output():
    a = run_fig1(_small(), analytic=False).records[0].mean_magic
    b = run_fig1(_small(root_seed=6), analytic=False).records[0].mean_magic
    assert a != b


def test_tail_extremes():
    res = run_fig1(_small(), analytic=False)
    assert all(t.fraction == 1.0 for t in run_tail_check(res, 0.0))
    assert all(t.fraction == 0.0 for t in run_tail_check(res, 2.0))
    recs = run_tail_check(res, 0.1)
    assert {(t.B, t.n) for t in recs} == {(B, n) for B in (2, 3) for n in (2, 3, 4)}


def test_tail_monotone_flag():
    recs = [TailRecord(2, 2, 0.1, 0.5), TailRecord(2, 3, 0.1, 0.9), TailRecord(4, 2, 0.1, 0.9),
            TailRecord(4, 3, 0.1, 0.7)]
    assert tail_is_monotone(recs) == {2: True, 4: False}


def test_crossval_small():
    recs = crossval_instance(2, 2, 2, samples=4000, seed=3)
    s4, n8 = recs
    assert s4.quantity == "pauli_fourth_power_sum" and n8.quantity == "raw_norm_8"
    assert s4.analytic == pytest.approx(haar_moment_sum(2, 2, 2))
    assert abs(s4.imag_mean) < 1e-12          # qubit expectations are real
    assert abs(s4.z) < 4 and abs(n8.z) < 4


def test_crossval_qutrit_is_complex_but_real_on_average():
    s4, _ = crossval_instance(3, 2, 2, samples=4000, seed=3)
    assert abs(s4.imag_mean) < 5 * s4.stderr + 1e-3


def test_crossval_worker_independence():
    a = crossval_instance(2, 2, 3, samples=2500, seed=1, workers=1)
    b = crossval_instance(2, 2, 3, samples=2500, seed=1, workers=2)
    assert a == b


def test_run_crossval_writes(tmp_path):
    cfg = ExperimentConfig(mode="crossval", samples_per_point=500, worker_count=1,
                           output_path=str(tmp_path / "cv.csv"))
    recs = run_crossval(cfg, [(2, 2, 2)])
    assert len(recs) == 2
    assert len((tmp_path / "cv.csv").read_text().splitlines()) == 3
    assert '"quantity": "raw_norm_8"' in records_to_json(recs)


def test_write_records_roundtrip(tmp_path):
    res = run_fig1(_small(B_list=(2,), n_range=(2, 2), samples_per_point=5))
    p = write_records_csv(res.records, tmp_path / "r.csv")
    row = next(csv.DictReader(open(p)))
    assert float(row["mean_magic"]) == res.records[0].mean_magic


@pytest.mark.slow
@pytest.mark.parametrize("d,B,n", [(2, 2, 2), (2, 2, 3), (3, 2, 2)])
def test_crossval_full(d, B, n):
    for r in crossval_instance(d, B, n, samples=100_000, seed=7, workers=default_workers()):
        assert r.passed, r
