"""Bitmask tables: sets of group elements as integers, one bit per element.

Bit i stands for the element with index i = a*n2 + b.  Translating a whole
set by a fixed element is a permutation of bits that decomposes into at most
four masked shifts (wrap-around in each coordinate), precomputed per group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import GroupSpec


@dataclass(frozen=True)
class BitTables:
    group: GroupSpec
    size: int
    neg: tuple[int, ...]                                # index of -g
    parts: tuple[tuple[tuple[int, int], ...], ...]      # per g: ((delta, mask), ...)
    full_mask: int


@lru_cache(maxsize=None)
def bit_tables(group: GroupSpec) -> BitTables:
    n1, n2 = group.n1, group.n2
    size = n1 * n2
    neg = tuple(((n1 - i // n2) % n1) * n2 + (n2 - i % n2) % n2 for i in range(size))
    parts = []
    for g in range(size):
        ga, gb = divmod(g, n2)
        by_delta: dict[int, int] = {}
        for i in range(size):
            a, b = divmod(i, n2)
            j = ((a + ga) % n1) * n2 + (b + gb) % n2
            d = j - i
            by_delta[d] = by_delta.get(d, 0) | (1 << i)
        parts.append(tuple(sorted(by_delta.items())))
    return BitTables(group, size, neg, tuple(parts), (1 << size) - 1)


def shift_mask(x: int, parts_g: tuple[tuple[int, int], ...]) -> int:
    """Image of the element set x under translation by g (given g's parts)."""
    y = 0
    for d, mask in parts_g:
        m = x & mask
        if m:
            y |= (m << d) if d >= 0 else (m >> -d)
    return y


@lru_cache(maxsize=None)
def add_table(group: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """add_table(G)[i][j] = index of element_i + element_j."""
    n1, n2 = group.n1, group.n2
    size = n1 * n2
    rows = []
    for i in range(size):
        a, b = divmod(i, n2)
        rows.append(tuple(((a + j // n2) % n1) * n2 + (b + j % n2) % n2 for j in range(size)))
    return tuple(rows)


@lru_cache(maxsize=None)
def shift_permutations(group: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """For each h: the permutation i -> index(element_i + h)."""
    add = add_table(group)
    return tuple(tuple(add[i][h] for i in range(group.order)) for h in range(group.order))


def apply_index_permutation(counts: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    """Multiplicity table of the image multiset under an element permutation."""
    out = [0] * len(counts)
    for i, c in enumerate(counts):
        if c:
            out[perm[i]] = c
    return tuple(out)
