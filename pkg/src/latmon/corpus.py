"""Named test objects and all small posets/lattices up to isomorphism."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotALattice
from .order import (
    BoundedLattice,
    FinitePoset,
    MeetSemilattice,
    are_isomorphic,
    is_distributive,
    poset_from_covers,
)
from .subsets import bit, bits

MAX_ENUMERATED = 5
KINDS = ("poset", "mlat", "lattice", "dlat")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    carrier: FinitePoset
    provenance: str  # "named" or "enumerated"

    @property
    def size(self) -> int:
        return self.carrier.size


def chain(n: int) -> BoundedLattice:
    labels = [str(i) for i in range(n)]
    return BoundedLattice(labels, [(1 << (i + 1)) - 1 for i in range(n)])


def boolean(k: int) -> BoundedLattice:
    """The lattice of subsets of a k-element set, labelled by bit strings."""
    n = 1 << k
    labels = [format(i, f"0{k}b") if k else "0" for i in range(n)]
    down = [sum(bit(j) for j in range(n) if j & ~i == 0) for i in range(n)]
    return BoundedLattice(labels, down)


def _lattice(labels, covers) -> BoundedLattice:
    p = poset_from_covers(labels, covers)
    return BoundedLattice(p.labels, p.down)


def m3() -> BoundedLattice:
    return _lattice(["0", "a", "b", "c", "1"],
                    [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


def n5() -> BoundedLattice:
    return _lattice(["0", "a", "b", "c", "1"],
                    [("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")])


def downsets_of_diamond() -> BoundedLattice:
    """𝔇(B₂): the six downsets of the four-element Boolean lattice."""
    from .monads import DOWNSET, apply_object

    t = apply_object(DOWNSET, boolean(2)).total
    return BoundedLattice([s.replace(",", ";") for s in t.labels], t.down)


def named_instances() -> list[CorpusEntry]:
    out = [CorpusEntry(f"C{n}", chain(n), "named") for n in range(1, 7)]
    out += [
        CorpusEntry("B2", boolean(2), "named"),
        CorpusEntry("B3", boolean(3), "named"),
        CorpusEntry("M3", m3(), "named"),
        CorpusEntry("N5", n5(), "named"),
        CorpusEntry("D(B2)", downsets_of_diamond(), "named"),
    ]
    return out


def named(name: str) -> FinitePoset:
    for e in named_instances():
        if e.name == name:
            return e.carrier
    raise KeyError(name)


# ---------------------------------------------------------------- enumeration


def encode(down: list[int] | tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    """The down-masks after relabelling element i as perm[i]."""
    n = len(down)
    out = [0] * n
    for i in range(n):
        m = 0
        for j in bits(down[i]):
            m |= bit(perm[j])
        out[perm[i]] = m
    return tuple(out)


def canonical_form(down) -> tuple[int, ...]:
    """Lexicographically smallest encoding over all relabellings."""
    n = len(down)
    return min(encode(down, p) for p in itertools.permutations(range(n)))


def _is_order(down: list[int]) -> bool:
    for i, d in enumerate(down):
        for j in bits(d):
            if down[j] & ~d:
                return False
            if j != i and down[i] >> j & 1 and down[j] >> i & 1:
                return False
    return True


def _extensions(n: int):
    """All order relations on range(n) that extend the natural order linearly.

    Every finite poset has a linear extension, so restricting to relations
    where i ≤ j implies i ≤ j numerically loses no isomorphism class.
    """
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        down = [bit(i) for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c:
                down[j] |= bit(i)
        if _is_order(down):
            yield down


@lru_cache(maxsize=None)
def _canonical_posets(n: int) -> tuple[tuple[int, ...], ...]:
    seen = set()
    for down in _extensions(n):
        seen.add(canonical_form(down))
    return tuple(sorted(seen))


def enumerate_posets(n: int) -> list[CorpusEntry]:
    """All n-element posets up to isomorphism, in canonical-form order."""
    if n == 0:
        return []
    if not 0 < n <= MAX_ENUMERATED:
        raise ValueError(f"enumeration is limited to n ≤ {MAX_ENUMERATED}")
    out = []
    for k, down in enumerate(_canonical_posets(n)):
        labels = [chr(ord("a") + i) for i in range(n)]
        out.append(CorpusEntry(f"P{n}.{k}", FinitePoset(labels, list(down)), "enumerated"))
    return out


def labeled_poset_count_oracle(n: int) -> int:
    """Iso classes of n-element posets by brute force over all labelled relations.

    Independent of :func:`enumerate_posets`: every antisymmetric transitive
    reflexive relation on n labelled points is generated, and classes are
    merged with :func:`are_isomorphic`.
    """
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    reps: list[FinitePoset] = []
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        down = [bit(i) for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c:
                down[j] |= bit(i)
        if not _is_order(down):
            continue
        p = FinitePoset([str(i) for i in range(n)], down)
        if not any(are_isomorphic(p, r) for r in reps):
            reps.append(p)
    return len(reps)


def with_bounds(p: FinitePoset) -> FinitePoset:
    """1 ⊕ P ⊕ 1: P with a fresh bottom and top adjoined."""
    n = p.size
    full = (1 << (n + 2)) - 1
    down = [1] + [(d << 1) | 1 for d in p.down] + [full]
    return FinitePoset(["0"] + list(p.labels) + ["1"], down)


def enumerate_lattices(n: int) -> list[CorpusEntry]:
    """All n-element lattices up to isomorphism (n ≤ 7, via 1 ⊕ P ⊕ 1)."""
    if n == 0:
        return []
    if n <= 2:
        return [CorpusEntry(f"L{n}.0", chain(n), "enumerated")]
    out = []
    for e in enumerate_posets(n - 2):
        q = with_bounds(e.carrier)
        try:
            lat = BoundedLattice(q.labels, q.down)
        except NotALattice:
            continue
        out.append(CorpusEntry(f"L{n}.{len(out)}", lat, "enumerated"))
    return out


def admits(kind: str, x: FinitePoset) -> FinitePoset | None:
    """``x`` rebuilt with the tables of ``kind``, or None if it does not admit it."""
    if kind == "poset":
        return FinitePoset(x.labels, x.down)
    try:
        if kind == "mlat":
            return MeetSemilattice(x.labels, x.down)
        lat = BoundedLattice(x.labels, x.down)
    except NotALattice:
        return None
    if kind == "lattice":
        return lat
    if kind == "dlat":
        return lat if is_distributive(lat) else None
    raise ValueError(f"unknown kind {kind!r}")


def filter_kind(entries, kind: str) -> list[CorpusEntry]:
    out = []
    for e in entries:
        c = admits(kind, e.carrier)
        if c is not None:
            out.append(CorpusEntry(e.name, c, e.provenance))
    return out


def default_corpus(kind: str, max_size: int | None = None) -> list[CorpusEntry]:
    """Corpus objects admitting ``kind``.

    mlat: every meet-semilattice with top on ≤ 5 elements.  dlat and lattice:
    every lattice on ≤ 6 elements.  Named instances are included when they
    are not isomorphic to an enumerated entry; without ``max_size`` that
    includes the larger named ones (B3).
    """
    if kind in ("lattice", "dlat"):
        limit = 6 if max_size is None else max_size
        pool = [e for n in range(1, limit + 1) for e in enumerate_lattices(n)]
    else:
        limit = MAX_ENUMERATED if max_size is None else min(max_size, MAX_ENUMERATED)
        pool = [e for n in range(1, limit + 1) for e in enumerate_posets(n)]
    out = filter_kind(pool, kind)
    for e in filter_kind(named_instances(), kind):
        if (max_size is None or e.size <= limit) and not any(o.size == e.size and are_isomorphic(o.carrier, e.carrier) for o in out):
            out.append(e)
    return out
