import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rmps_magic.errors import DomainError, NormalizationError
from rmps_magic.magic import (
    fourth_moment_sum, magic_l1, magic_lower_bound, magic_report, norm_inequality_check,
    pauli_fourth_power_sums, pauli_moments,
)
from rmps_magic.pauli import dense_pauli_string, iter_pauli_strings
from rmps_magic.rmps import sample_rmps

T_STATE = np.array([1, np.exp(1j * math.pi / 4)]) / math.sqrt(2)


def _zero(d, n):
    v = np.zeros(d**n, dtype=complex)
    v[0] = 1
    return v


def _plus(n):
    return np.full(2**n, 2 ** (-n / 2), dtype=complex)


def _random_state(dim, rng):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


@pytest.mark.parametrize("n", range(1, 7))
def test_stabilizer_states_have_unit_magic(n):
    assert abs(magic_l1(_zero(2, n), 2) - 1) < 1e-10
    assert abs(magic_l1(_plus(n), 2) - 1) < 1e-10


@pytest.mark.parametrize("d,n", [(3, 2), (5, 1), (4, 2)])
def test_qudit_zero_state(d, n):
    assert abs(magic_l1(_zero(d, n), d) - 1) < 1e-10


def test_bell_pairs():
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    for k in (1, 2, 3):
        psi = bell
        for _ in range(k - 1):
            psi = np.kron(psi, bell)
        assert abs(magic_l1(psi, 2) - 1) < 1e-10


def test_t_state():
    rep = magic_report(T_STATE, 2)
    assert abs(rep.magic_l1 - (1 + math.sqrt(2)) / 2) < 1e-10
    assert rep.fourth_moment_sum == pytest.approx(1.5, abs=1e-12)
    assert rep.lower_bound == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    assert rep.bound_holds


@pytest.mark.parametrize("n", [1, 3, 5])
def test_zero_state_fourth_moment(n):
    assert fourth_moment_sum(_zero(2, n), 2) == pytest.approx(2**n)
    assert magic_lower_bound(2.0**n, n, 2) == pytest.approx(1)


def test_lower_bound_domain():
    for bad in (0.0, -1.0, float("nan")):
        with pytest.raises(DomainError):
            magic_lower_bound(bad, 2, 2)


def test_unnormalized_rejected():
    with pytest.raises(NormalizationError):
        magic_l1(2 * _zero(2, 2), 2)
    with pytest.raises(NormalizationError):
        fourth_moment_sum(np.ones(4), 2)


def test_length_must_be_power_of_d():
    with pytest.raises(DomainError):
        magic_l1(np.ones(6) / math.sqrt(6), 2)


@settings(max_examples=40, deadline=None)
@given(d=st.sampled_from([2, 3]), n=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
def test_sum_bounds_and_eq3(d, n, seed):
    psi = _random_state(d**n, np.random.default_rng(seed))
    rep = magic_report(psi, d)
    m = pauli_moments(psi, d, (2, 4))
    assert m[2] == pytest.approx(d**n)          # completeness of the Pauli basis
    assert rep.fourth_moment_sum <= d**n + 1e-9
    assert 1 - 1e-10 <= rep.magic_l1 <= d ** (n / 2) + 1e-10
    assert rep.bound_holds


def _dense_magic(psi, d, n):
    vals = [np.vdot(psi, dense_pauli_string(P) @ psi) for P in iter_pauli_strings(d, n)]
    a = np.abs(vals)
    return a.sum() / d**n, (a**4).sum()


@pytest.mark.parametrize("d,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_streaming_matches_dense(d, n):
    psi = _random_state(d**n, np.random.default_rng(10 * d + n))
    m, s4 = _dense_magic(psi, d, n)
    assert magic_l1(psi, d) == pytest.approx(m, abs=1e-12)
    assert fourth_moment_sum(psi, d) == pytest.approx(s4, abs=1e-12)


@pytest.mark.parametrize("d,n", [(2, 4), (3, 3)])
def test_invariant_under_qudit_permutation(d, n):
    rng = np.random.default_rng(3)
    psi = _random_state(d**n, rng)
    perm = rng.permutation(n)
    moved = np.transpose(psi.reshape((d,) * n), perm).ravel()
    assert magic_l1(moved, d) == pytest.approx(magic_l1(psi, d), abs=1e-12)
    assert fourth_moment_sum(moved, d) == pytest.approx(fourth_moment_sum(psi, d), abs=1e-12)


def test_single_site_clifford_invariance():
    H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    S = np.diag([1, 1j])
    psi = _random_state(8, np.random.default_rng(4))
    g = np.kron(np.kron(H, S), H @ S)
    assert magic_l1(g @ psi, 2) == pytest.approx(magic_l1(psi, 2), abs=1e-12)


def test_complex_fourth_powers():
    d, n = 3, 2
    rng = np.random.default_rng(8)
    states = np.stack([_random_state(d**n, rng) * (0.5 + k) for k in range(3)])
    got = pauli_fourth_power_sums(states, d, n, chunk=4)
    for psi, g in zip(states, got):
        ref = sum(np.vdot(psi, dense_pauli_string(P) @ psi) ** 4 for P in iter_pauli_strings(d, n))
        assert g == pytest.approx(ref, abs=1e-10)


def test_complex_and_modulus_agree_for_qubits():
    psi = _random_state(8, np.random.default_rng(1))
    z = pauli_fourth_power_sums(psi[None, :], 2, 3)[0]
    assert abs(z.imag) < 1e-12
    assert z.real == pytest.approx(fourth_moment_sum(psi, 2), abs=1e-12)


def test_fourth_power_shape_error():
    with pytest.raises(DomainError):
        pauli_fourth_power_sums(np.ones((2, 5)), 2, 2)


def test_norm_inequality_equality_cases():
    e = np.zeros(7)
    e[3] = 1
    assert norm_inequality_check(e) == (1.0, 1.0, True)
    for m in (2, 9, 64):
        lhs, rhs, ok = norm_inequality_check(np.full(m, 1 / math.sqrt(m)))
        assert ok and lhs == pytest.approx(math.sqrt(m)) and rhs == pytest.approx(math.sqrt(m))


def test_norm_inequality_sweep():
    rng = np.random.default_rng(2024)
    for _ in range(10_000):
        m = int(rng.integers(2, 65))
        v = _random_state(m, rng)
        assert norm_inequality_check(v)[2]


def test_norm_inequality_rejects_non_unit():
    with pytest.raises(NormalizationError):
        norm_inequality_check(np.ones(3))


def test_renyi_entropies():
    rep = magic_report(_zero(2, 3), 2)
    assert rep.sre_half == pytest.approx(0, abs=1e-12)
    assert rep.sre_two == pytest.approx(0, abs=1e-12)
    t = magic_report(T_STATE, 2)
    assert t.sre_two == pytest.approx(-math.log(0.75))
    assert t.sre_half >= t.sre_two          # Renyi entropies decrease with order
    assert t.log_d_magic == pytest.approx(math.log2((1 + math.sqrt(2)) / 2))


def test_rmps_states_satisfy_eq3():
    for s in range(20):
        psi = sample_rmps(6, 2, 2, 5, s).statevector
        assert magic_report(psi, 2).bound_holds
