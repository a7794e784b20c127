"""Subsets of a finite carrier packed into Python ints.

Bit ``i`` of a mask is set iff element ``i`` belongs to the subset.  The
canonical order on subsets is by cardinality, then lexicographically on
the ascending tuple of members; every enumeration in the package follows it.
"""

from __future__ import annotations

import random
from typing import Iterator


def bit(i: int) -> int:
    return 1 << i


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (popcount(mask), members(mask))


def canonical_sorted(masks) -> list[int]:
    return sorted(masks, key=canonical_key)


def down_closure(down: tuple[int, ...], mask: int) -> int:
    out = 0
    for i in bits(mask):
        out |= down[i]
    return out


def iter_downsets(down: tuple[int, ...]) -> Iterator[int]:
    """Yield every down-closed subset in canonical order.

    ``down[x]`` is the mask of elements below ``x``.  Generation is level by
    level: a downset of size k+1 is a downset of size k plus one minimal
    element of its complement, so callers may stop early without paying for
    the larger levels.
    """
    n = len(down)
    strict = [down[x] & ~bit(x) for x in range(n)]
    level = [0]
    while level:
        yield from level
        nxt = set()
        for d in level:
            rest = full_mask(n) & ~d
            for x in bits(rest):
                if strict[x] & ~d == 0:
                    nxt.add(d | bit(x))
        level = canonical_sorted(nxt)


def random_downset(down: tuple[int, ...], rng: random.Random) -> int:
    n = len(down)
    return down_closure(down, rng.getrandbits(n) if n else 0)
