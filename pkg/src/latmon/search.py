"""Exhaustive enumeration of structure-preserving maps by backtracking.

Maps are produced in lexicographic order of their value tuples, so "first
found" is reproducible.  Candidate values are pruned with bitmasks: once
``f(y)`` is fixed for some comparable ``y``, only elements of
``up[f(y)]`` (resp. ``down[f(y)]``) remain available for ``x``.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .order import Category, FinitePoset, Hom, lattice_view
from .subsets import bit, bits, full_mask


def enumerate_homs(
    source: FinitePoset,
    target: FinitePoset,
    tag: Category = Category.POSET,
    allowed: Sequence[int] | None = None,
    accept: Callable[[tuple[int, ...]], bool] | None = None,
    limit: int | None = None,
) -> Iterator[Hom]:
    """Yield every map of category ``tag`` from ``source`` to ``target``.

    ``allowed[x]`` restricts the admissible values of ``x``; ``accept`` is a
    final filter on complete maps.  At most ``limit`` maps are yielded.
    """
    n = source.size
    dom = list(allowed) if allowed is not None else [full_mask(target.size)] * n
    checks: list[list[tuple[tuple, int, int, int]]] = [[] for _ in range(n)]

    def add_table(src_table, tgt_table):
        for x in range(n):
            for y in range(x + 1, n):
                z = src_table[x][y]
                checks[max(x, y, z)].append((tgt_table, x, y, z))

    if tag.rank >= 1:
        dom[source.top] &= bit(target.top)
        add_table(source.meet, target.meet)
    if tag.rank >= 2:
        ls, lt = lattice_view(source), lattice_view(target)
        dom[ls.bottom] &= bit(lt.bottom)
        add_table(ls.join, lt.join)

    below = [[y for y in range(x) if source.leq(y, x)] for x in range(n)]
    above = [[y for y in range(x) if source.leq(x, y)] for x in range(n)]
    tdown, tup = target.down, target.up
    f = [0] * n
    count = 0

    def rec(x: int) -> Iterator[Hom]:
        nonlocal count
        if x == n:
            t = tuple(f)
            if accept is None or accept(t):
                count += 1
                yield Hom(source, target, t, tag)
            return
        cand = dom[x]
        for y in below[x]:
            cand &= tup[f[y]]
        for y in above[x]:
            cand &= tdown[f[y]]
        for v in bits(cand):
            f[x] = v
            if all(tbl[f[a]][f[b]] == f[c] for tbl, a, b, c in checks[x]):
                yield from rec(x + 1)
                if limit is not None and count >= limit:
                    return

    yield from rec(0)


def first_hom(source, target, tag=Category.POSET, allowed=None, accept=None) -> Hom | None:
    return next(enumerate_homs(source, target, tag, allowed, accept, limit=1), None)
