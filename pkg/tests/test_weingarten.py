from fractions import Fraction

import numpy as np
import pytest

from rmps_magic.errors import DomainError
from rmps_magic.sym4 import PARTITIONS, compose, cycle_type, enumerate_s4, inverse
from rmps_magic.weingarten import (
    consistency_probe, exact_inverse, gram_matrix, is_exact_inverse,
    table_rescale_factor, table_weingarten_matrix, weingarten_matrix, weingarten_table,
)

S4 = enumerate_s4()


def collins_wg(part, q):
    """Independent closed form for fourth-order unitary Weingarten values."""
    num = {
        (1, 1, 1, 1): q**4 - 8 * q**2 + 6,
        (2, 1, 1): -(q**3) + 4 * q,
        (2, 2): q**2 + 6,
        (3, 1): 2 * q**2 - 3,
        (4,): -5 * q,
    }[part]
    return Fraction(num, q**2 * (q**2 - 1) * (q**2 - 4) * (q**2 - 9))


def test_gram_entries():
    G = gram_matrix(4).entries
    assert G[0, 0] == 256
    assert G[0, 1] == 64          # transposition
    assert gram_matrix(5).entries[0, 18] == 5   # 4-cycle
    assert all(G[i, i] == 256 for i in range(24))
    assert (G == G.T).all()


def test_gram_rejects_small_q():
    with pytest.raises(DomainError):
        gram_matrix(3)
    with pytest.raises(DomainError):
        weingarten_matrix(2)


@pytest.mark.parametrize("q", range(4, 17))
def test_exact_inverse_identity(q):
    assert is_exact_inverse(q)


@pytest.mark.parametrize("q", [4, 5, 7, 12])
def test_gram_inverse_matches_independent_formula(q):
    vals = weingarten_matrix(q).class_values()
    for part in PARTITIONS:
        assert vals[part] == collins_wg(part, q)


def test_class_function_and_symmetry():
    W = weingarten_matrix(6).entries
    assert (W == W.T).all()
    by_class = {}
    for i, s in enumerate(S4):
        for j, p in enumerate(S4):
            by_class.setdefault(cycle_type(compose(inverse(s), p)).partition, set()).add(W[i, j])
    assert all(len(v) == 1 for v in by_class.values())


def test_table_values():
    assert weingarten_table((1, 1, 1, 1), 4) == Fraction(134, 43680)
    q = 7
    assert weingarten_table((2, 2), q) == Fraction(q**2 + 6, q**2 * (q**2 - 1) * (q**2 - 2) * (q**2 - 3))
    assert weingarten_table((4,), 5) == Fraction(-25, 25 * 24 * 23 * 22)


@pytest.mark.parametrize("q", range(4, 17))
def test_printed_table_differs_by_one_scalar(q):
    rows = consistency_probe(q)
    assert not any(r.agrees for r in rows)
    assert {r.ratio for r in rows} == {table_rescale_factor(q)}


def test_printed_table_is_not_an_inverse():
    W = table_weingarten_matrix(4).entries
    G = gram_matrix(4).entries
    assert W.dot(G)[0, 0] == Fraction(6, 13)


def test_exact_inverse_generic():
    M = np.array([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]], dtype=object)
    inv = exact_inverse(M)
    assert (inv.dot(M) == np.eye(2, dtype=int)).all()
