import itertools

from hypothesis import given, strategies as st

from rmps_magic.sym4 import (
    PARTITIONS, compose, cycle_type, enumerate_s4, from_cycles, identity, inverse,
)

S4 = enumerate_s4()
perms = st.sampled_from(S4)


def test_enumeration_is_24_distinct_bijections():
    assert len(S4) == 24
    assert len({p.images for p in S4}) == 24
    for i, p in enumerate(S4):
        assert p.label == i + 1
        assert sorted(p.images) == [1, 2, 3, 4]


def test_canonical_landmarks():
    assert S4[0] == identity()
    assert str(S4[7]) == "(12)(34)"
    assert str(S4[18]) == "(1234)"


def test_label_ranges_follow_cycle_types():
    sizes = {}
    for p in S4:
        sizes.setdefault(cycle_type(p).partition, []).append(p.label)
    assert sizes[(1, 1, 1, 1)] == [1]
    assert sizes[(2, 1, 1)] == list(range(2, 8))
    assert sizes[(2, 2)] == [8, 9, 10]
    assert sizes[(3, 1)] == list(range(11, 19))
    assert sizes[(4,)] == list(range(19, 25))
    assert [len(sizes[p]) for p in PARTITIONS] == [1, 6, 3, 8, 6]


def test_compose_examples():
    t = from_cycles((1, 2))
    assert compose(t, t) == identity()
    c = from_cycles((1, 2, 3))
    assert compose(c, c) == from_cycles((1, 3, 2))
    # right operand acts first
    a, b = from_cycles((1, 2)), from_cycles((2, 3))
    assert compose(a, b)(2) == a(b(2)) == 3


def test_inverse_examples():
    assert inverse(identity()) == identity()
    assert inverse(from_cycles((1, 2, 3, 4))) == from_cycles((1, 4, 3, 2))
    dt = from_cycles((1, 2), (3, 4))
    assert inverse(dt) == dt


def test_cycle_type_examples():
    assert cycle_type(identity()).partition == (1, 1, 1, 1)
    assert cycle_type(identity()).cycle_count == 4
    assert cycle_type(from_cycles((1, 2))).cycle_count == 3
    assert cycle_type(from_cycles((1, 2, 3, 4))).cycle_count == 1


def test_associativity_exhaustive():
    for a, b, c in itertools.product(S4, repeat=3):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_identity_and_inverse_are_unique():
    ids = [e for e in S4 if all(compose(e, p) == p == compose(p, e) for p in S4)]
    assert ids == [identity()]
    for p in S4:
        assert [q for q in S4 if compose(p, q) == identity()] == [inverse(p)]


@given(perms, perms)
def test_relative_cycle_type_symmetric(s, p):
    assert cycle_type(compose(inverse(s), p)) == cycle_type(compose(inverse(p), s))


@given(perms)
def test_cycle_type_is_class_function(p):
    for g in S4:
        assert cycle_type(compose(compose(g, p), inverse(g))) == cycle_type(p)
