import itertools
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from rmps_magic.blocks import (
    analytic_moment_sum, bound_base_constant, build_block, case_tag, class_vector,
    dump_blocks, exact_matrix_power_trace, haar_contraction_total, haar_moment_sum,
    per_string_expectation, per_string_expectation_exact,
)
from rmps_magic.errors import DomainError, NullClassError
from rmps_magic.pauli import SiteClass, classify_site, iter_pauli_strings, site_class_counts
from rmps_magic.rmps import contract_ring, sample_tensor_batch
from rmps_magic.sym4 import compose, cycle_type, enumerate_s4, inverse
from rmps_magic.weingarten import table_rescale_factor, weingarten_matrix

I, O1, O2 = SiteClass.IDENTITY, SiteClass.O1, SiteClass.O2


def brute_block(d, B, cls):
    """Direct triple sum over S4 with the defining formula."""
    S4 = enumerate_s4()
    W = weingarten_matrix(d * B).entries
    v = class_vector(d, cls)
    out = np.empty((24, 24), dtype=object)
    for i, s in enumerate(S4):
        for j, p in enumerate(S4):
            acc = Fraction(0)
            for k, t in enumerate(S4):
                ct = cycle_type(t)
                acc += W[i, k] * v[ct.index] * B ** cycle_type(compose(inverse(t), p)).cycle_count
            out[i, j] = acc
    return out


@pytest.mark.parametrize("d,B,cls", [(2, 2, I), (2, 3, O1), (4, 2, O2), (3, 2, I)])
def test_block_matches_defining_sum(d, B, cls):
    assert (build_block(d, B, cls).exact == brute_block(d, B, cls)).all()


def test_o2_block_only_sees_four_cycles():
    blk = build_block(4, 2, O2).exact
    v = class_vector(4, O2)
    assert v == (0, 0, 0, 0, 4)
    assert np.count_nonzero(blk.astype(float)) > 0


def test_domain_and_null():
    with pytest.raises(DomainError):
        build_block(1, 2, I)
    with pytest.raises(DomainError):
        build_block(2, 1, I)
    with pytest.raises(NullClassError):
        build_block(3, 2, SiteClass.NULL)
    with pytest.raises(NullClassError):
        per_string_expectation(3, 2, 2, [I, SiteClass.NULL])


def test_identity_radius_gram_vs_table():
    # Gram-inverse blocks: the identity block has spectral radius exactly 1.
    rho = max(abs(np.linalg.eigvals(build_block(2, 2, I).entries)))
    assert abs(rho - 1) < 1e-12
    # The printed table gives 6/13 = rho * f(4).
    rho_t = max(abs(np.linalg.eigvals(build_block(2, 2, I, "table").entries)))
    assert abs(rho_t - 6 / 13) < 1e-12
    assert table_rescale_factor(4) == Fraction(6, 13)


def test_blocks_scale_by_table_factor():
    for d, B in [(2, 2), (3, 4), (5, 2)]:
        f = table_rescale_factor(d * B)
        for c in (I, O1, O2):
            assert (build_block(d, B, c, "table").exact == build_block(d, B, c).exact * f).all()


def test_entries_are_read_only_and_cached():
    blk = build_block(2, 2, O1)
    with pytest.raises(ValueError):
        blk.entries[0, 0] = 1.0
    assert blk.entries is build_block(2, 2, O1).entries


def test_cyclic_rotation_invariance():
    classes = [I, O1, O1, I]
    vals = {per_string_expectation_exact(2, 3, 4, classes[k:] + classes[:k]) for k in range(4)}
    assert len(vals) == 1


def test_odd_d_all_identity_below_24():
    for B in (2, 3):
        for n in range(1, 13):
            assert per_string_expectation(3, B, n, [I] * n) <= 24


@pytest.mark.parametrize("d,B", [(2, 2), (2, 3), (4, 2), (4, 3)])
def test_resummation_identity(d, B):
    n1, n2 = site_class_counts(d)
    weight = {I: 1, O1: n1, O2: n2}
    for n in range(1, 4 if d == 4 else 5):
        total = Fraction(0)
        for seq in itertools.product([c for c in (I, O1, O2) if weight[c]], repeat=n):
            total += math.prod(weight[c] for c in seq) * per_string_expectation_exact(d, B, n, seq)
        assert analytic_moment_sum(d, B, n).exact == total


def test_direct_sum_over_pauli_strings():
    d, B, n = 2, 2, 3
    total = Fraction(0)
    for P in iter_pauli_strings(d, n):
        cls = [classify_site(p) for p in P.sites]
        if SiteClass.NULL in cls:
            continue
        total += per_string_expectation_exact(d, B, n, cls)
    res = analytic_moment_sum(d, B, n)
    assert res.exact == total
    assert res.exact == Fraction(187032, 42875)
    assert res.case_tag == "2k-odd"


def test_case_tags_and_constants():
    assert [case_tag(d) for d in (3, 2, 6, 4, 8)] == ["odd-d", "2k-odd", "2k-odd", "4k", "4k"]
    assert bound_base_constant(3) == 1
    assert bound_base_constant(2) == 1 + 3 / 4
    assert bound_base_constant(6) == 1 + 6 / 36
    assert bound_base_constant(4) == 1 + 9 / 16


def test_odd_d_moment_sum_is_identity_trace():
    for n in range(2, 13):
        res = analytic_moment_sum(3, 2, n)
        assert res.exact == exact_matrix_power_trace(build_block(3, 2, I).exact, n)
        assert 0 <= res.value <= 24


def test_qubit_moment_sum_bound():
    for B in (2, 3):
        for n in range(1, 13):
            res = analytic_moment_sum(2, B, n)
            assert 0 <= res.value <= res.bound == 24 * 1.75**n


def test_normalization_trace_tends_to_one():
    vals = [float(exact_matrix_power_trace(build_block(2, 2, I).exact, n)) for n in (2, 6, 12, 20)]
    assert abs(vals[-1] - 1) < abs(vals[0] - 1)
    assert abs(vals[-1] - 1) < 1e-2


def test_haar_total_counts_every_operator():
    # d=4: 8 O2-type operators carry trO^4 = +4 and 4 carry -4
    assert np.allclose(haar_contraction_total(4), [256, 64, 64, 16, 32])
    assert np.allclose(haar_contraction_total(3), [81, 27, 9, 9, 3])
    # d=2 has trivial phases, so both conventions agree
    for n in (1, 2, 3):
        assert math.isclose(haar_moment_sum(2, 2, n), analytic_moment_sum(2, 2, n).value, rel_tol=1e-14)


def test_dump_roundtrip(tmp_path):
    p = dump_blocks(tmp_path / "b.csv", 2, 2)
    lines = p.read_text().splitlines()
    assert lines[0] == "class,row_label,col_label,value,exact"
    assert len(lines) == 1 + 3 * 576
    j = dump_blocks(tmp_path / "b.json", 2, 2)
    data = json.loads(j.read_text())
    assert data["labels"] == list(range(1, 25))
    assert Fraction(data["blocks"]["O1"]["exact"][3][5]) == build_block(2, 2, O1).exact[3, 5]


@pytest.mark.slow
def test_single_string_haar_oracle():
    """E <I X>^4 over unnormalized RMPS, d=B=2, n=2, against the block trace."""
    T = sample_tensor_batch(2, 2, 2, 2024, range(100_000))
    psi = contract_ring(T).reshape(-1, 2, 2)
    ex = np.einsum("sij,sij->s", psi.conj(), psi[:, :, ::-1])
    x = (ex**4).real
    mean, se = x.mean(), x.std(ddof=1) / math.sqrt(len(x))
    ref = per_string_expectation(2, 2, 2, [I, O1])
    assert abs(mean - ref) <= 3 * se
    bad = per_string_expectation(2, 2, 2, [I, O1], "table")
    assert abs(mean - bad) > 3 * se
