"""Bitmask helpers for state sets and coalitions.

A state set over a space of ``n`` states is an ``int`` whose bit ``i`` is set
iff the ``i``-th state (in space order) is a member.  Coalitions use the same
encoding over the agent order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence


def bits_of(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


@lru_cache(maxsize=4096)
def set_key(mask: int) -> tuple[int, ...]:
    """Total order on state sets: lexicographic on sorted member indices.

    This is the tie-free order used whenever a construction must pick one
    candidate set among several.
    """
    return bits_of(mask)


def sorted_sets(family: Iterable[int]) -> list[int]:
    return sorted(family, key=set_key)


def union_all(family: Iterable[int]) -> int:
    u = 0
    for m in family:
        u |= m
    return u


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` including 0 and ``mask`` itself (descending)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def all_masks(n: int) -> range:
    return range(1 << n)


def minimal_sets(family: Iterable[int]) -> frozenset[int]:
    """The ⊆-minimal members of ``family``."""
    fam = sorted(set(family), key=lambda m: bin(m).count("1"))
    kept: list[int] = []
    for m in fam:
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return frozenset(kept)


def is_antichain(family: Iterable[int]) -> bool:
    fam = list(family)
    for i, x in enumerate(fam):
        for y in fam[i + 1:]:
            if x & ~y == 0 or y & ~x == 0:
                return False
    return True


def render(mask: int, names: Sequence[str]) -> list[str]:
    return [names[i] for i in bits_of(mask)]
