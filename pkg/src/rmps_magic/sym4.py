"""The symmetric group S4 in a fixed, labelled ordering.

Labels run 1..24 grouped by cycle type: identity, six transpositions, three
double transpositions, eight 3-cycles, six 4-cycles. Composition applies the
right operand first: ``compose(p, q)(x) == p(q(x))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Cycle notation over {1,2,3,4}; (a b c) sends a -> b -> c -> a.
_CANONICAL_CYCLES: tuple[tuple[tuple[int, ...], ...], ...] = (
    (),
    ((1, 2),), ((1, 3),), ((1, 4),), ((2, 3),), ((2, 4),), ((3, 4),),
    ((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)),
    ((1, 2, 3),), ((1, 3, 2),), ((1, 2, 4),), ((1, 4, 2),),
    ((1, 3, 4),), ((1, 4, 3),), ((2, 3, 4),), ((2, 4, 3),),
    ((1, 2, 3, 4),), ((1, 2, 4, 3),), ((1, 3, 2, 4),),
    ((1, 3, 4, 2),), ((1, 4, 2, 3),), ((1, 4, 3, 2),),
)

# Partitions of 4 in the order used for contraction vectors and Wg tables.
PARTITIONS: tuple[tuple[int, ...], ...] = ((1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,))


@dataclass(frozen=True)
class CycleType:
    partition: tuple[int, ...]

    @property
    def cycle_count(self) -> int:
        return len(self.partition)

    @property
    def index(self) -> int:
        """Position of this class in :data:`PARTITIONS`."""
        return PARTITIONS.index(self.partition)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.partition)) + "}"


@dataclass(frozen=True)
class Perm4:
    """A permutation of {1,2,3,4}; ``images[x-1]`` is the image of ``x``."""

    images: tuple[int, int, int, int]
    label: int

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycle decomposition including fixed points, smallest element first."""
        seen = set()
        out = []
        for start in range(1, 5):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return tuple(out)

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + "".join(map(str, c)) + ")" for c in nontrivial)


def _images_from_cycles(cycles) -> tuple[int, int, int, int]:
    img = [1, 2, 3, 4]
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return tuple(img)


@lru_cache(maxsize=None)
def enumerate_s4() -> tuple[Perm4, ...]:
    """All 24 elements, ``result[i].label == i + 1``."""
    return tuple(
        Perm4(_images_from_cycles(cyc), label)
        for label, cyc in enumerate(_CANONICAL_CYCLES, start=1)
    )


@lru_cache(maxsize=None)
def _by_images() -> dict[tuple[int, ...], Perm4]:
    return {p.images: p for p in enumerate_s4()}


def from_images(images) -> Perm4:
    return _by_images()[tuple(images)]


def from_cycles(*cycles: tuple[int, ...]) -> Perm4:
    """``from_cycles((1, 2), (3, 4))`` is the double transposition (12)(34)."""
    return from_images(_images_from_cycles(cycles))


def identity() -> Perm4:
    return enumerate_s4()[0]


def compose(p: Perm4, q: Perm4) -> Perm4:
    return from_images(tuple(p(q(x)) for x in range(1, 5)))


def inverse(p: Perm4) -> Perm4:
    img = [0] * 4
    for x in range(1, 5):
        img[p(x) - 1] = x
    return from_images(img)


def cycle_type(p: Perm4) -> CycleType:
    return CycleType(tuple(sorted((len(c) for c in p.cycles()), reverse=True)))


@lru_cache(maxsize=None)
def relative_cycle_counts() -> tuple[tuple[int, ...], ...]:
    """24x24 table of ``cycle_count(inverse(s) * t)`` indexed by label - 1."""
    els = enumerate_s4()
    return tuple(
        tuple(cycle_type(compose(inverse(s), t)).cycle_count for t in els) for s in els
    )


@lru_cache(maxsize=None)
def relative_class_indices() -> tuple[tuple[int, ...], ...]:
    """24x24 table of the class index of ``inverse(s) * t``."""
    els = enumerate_s4()
    return tuple(tuple(cycle_type(compose(inverse(s), t)).index for t in els) for s in els)
