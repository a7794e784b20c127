"""Finite posets, meet-semilattices and lattices, their homomorphisms and adjoints.

Elements of a carrier are the dense indices ``0..size-1``.  Every carrier
keeps, for each element ``x``, the bitmask ``down[x]`` of elements below it
and ``up[x]`` of elements above it; meets and joins are looked up through the
observation that ``x ∧ y`` is the element whose downset is
``down[x] & down[y]`` (and dually for joins).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateLabel,
    NotALattice,
    NotClosed,
    SourceTargetMismatch,
    UnknownLabel,
)
from .subsets import bit, bits, full_mask, iter_downsets


class FinitePoset:
    """An immutable finite partial order."""

    kind = "poset"

    def __init__(self, labels: Sequence[str], down: Sequence[int]):
        self.labels = tuple(str(s) for s in labels)
        self.down = tuple(int(m) for m in down)
        n = len(self.labels)
        if n == 0:
            raise ValueError("a carrier needs at least one element")
        if len(set(self.labels)) != n:
            seen = set()
            dup = next(s for s in self.labels if s in seen or seen.add(s))
            raise DuplicateLabel(dup)
        if len(self.down) != n:
            raise ValueError("one downset mask per label is required")
        for x in range(n):
            if not self.down[x] >> x & 1:
                raise ValueError(f"order not reflexive at {self.labels[x]}")
            for y in bits(self.down[x] & ~bit(x)):
                if self.down[y] >> x & 1:
                    raise CycleDetected(f"{self.labels[x]} and {self.labels[y]}")
                if self.down[y] & ~self.down[x]:
                    raise ValueError(f"order not transitive below {self.labels[x]}")
        self._by_down = {m: x for x, m in enumerate(self.down)}
        self._by_up = {m: x for x, m in enumerate(self.up)}

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def up(self) -> tuple[int, ...]:
        up = [0] * self.size
        for x, m in enumerate(self.down):
            for y in bits(m):
                up[y] |= bit(x)
        return tuple(up)

    @cached_property
    def leq_array(self) -> np.ndarray:
        n = self.size
        arr = np.zeros((n, n), dtype=bool)
        for y, m in enumerate(self.down):
            for x in bits(m):
                arr[x, y] = True
        arr.setflags(write=False)
        return arr

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def related_pairs(self) -> int:
        return sum(m.bit_count() for m in self.down)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(x, y)`` with ``y`` covering ``x``."""
        out = []
        for x in range(self.size):
            above = self.up[x] & ~bit(x)
            for y in bits(above):
                if above & self.down[y] & ~bit(y) == 0:
                    out.append((x, y))
        return out

    def sup(self, mask: int) -> int | None:
        """Least upper bound of a subset, or ``None`` when it does not exist."""
        ubs = full_mask(self.size)
        for x in bits(mask):
            ubs &= self.up[x]
        return self._by_up.get(ubs)

    def inf(self, mask: int) -> int | None:
        lbs = full_mask(self.size)
        for x in bits(mask):
            lbs &= self.down[x]
        return self._by_down.get(lbs)

    def maximal(self, mask: int) -> list[int]:
        return [x for x in bits(mask) if self.up[x] & mask == bit(x)]

    def downsets(self) -> list[int]:
        return list(iter_downsets(self.down))

    def element_label(self, x: int) -> str:
        return self.labels[x]

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and self.down == other.down

    def __hash__(self):
        return hash((self.labels, self.down))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.labels)})"


class MeetSemilattice(FinitePoset):
    """A finite meet-semilattice with a top element.

    Being finite with a top, it is automatically a complete lattice; joins are
    available through :meth:`as_lattice`.
    """

    kind = "mlat"

    def __init__(self, labels, down):
        super().__init__(labels, down)
        n = self.size
        top = self._by_down.get(full_mask(n))
        if top is None:
            raise NotALattice("no top element")
        rows = []
        for x in range(n):
            row = []
            for y in range(n):
                m = self._by_down.get(self.down[x] & self.down[y])
                if m is None:
                    raise NotALattice("no meet", (self.labels[x], self.labels[y]))
                row.append(m)
            rows.append(tuple(row))
        self.meet = tuple(rows)
        self.top = top

    @cached_property
    def meet_array(self) -> np.ndarray:
        arr = np.array(self.meet, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr

    def as_lattice(self) -> BoundedLattice:
        if isinstance(self, BoundedLattice):
            return self
        return _lattice_view(self)


class BoundedLattice(MeetSemilattice):
    kind = "lattice"

    def __init__(self, labels, down):
        super().__init__(labels, down)
        n = self.size
        bottom = self._by_up.get(full_mask(n))
        if bottom is None:
            raise NotALattice("no bottom element")
        rows = []
        for x in range(n):
            row = []
            for y in range(n):
                j = self._by_up.get(self.up[x] & self.up[y])
                if j is None:
                    raise NotALattice("no join", (self.labels[x], self.labels[y]))
                row.append(j)
            rows.append(tuple(row))
        self.join = tuple(rows)
        self.bottom = bottom

    @cached_property
    def join_array(self) -> np.ndarray:
        arr = np.array(self.join, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr

    @cached_property
    def distributive(self) -> bool:
        return distributivity_counterexample(self) is None

    def join_of(self, mask: int) -> int:
        acc = self.bottom
        for x in bits(mask):
            acc = self.join[acc][x]
        return acc


_VIEWS: dict = {}


def _lattice_view(m: MeetSemilattice) -> BoundedLattice:
    key = (m.labels, m.down)
    view = _VIEWS.get(key)
    if view is None:
        view = _VIEWS[key] = BoundedLattice(m.labels, m.down)
    return view


class Category(Enum):
    """Which preservation laws a :class:`Hom` must satisfy."""

    POSET = "Poset"
    MLAT = "MLat"
    DLAT = "DLat"
    FRM = "Frm"

    @property
    def rank(self) -> int:
        return {"Poset": 0, "MLat": 1, "DLat": 2, "Frm": 2}[self.value]


def carrier_tag(x: FinitePoset) -> Category:
    if isinstance(x, BoundedLattice):
        return Category.DLAT
    if isinstance(x, MeetSemilattice):
        return Category.MLAT
    return Category.POSET


class Hom:
    """A map between finite carriers, tagged with the category it lives in.

    Equality compares carriers and the underlying map, never the tag.
    Composition is written ``g @ f`` for g∘f.
    """

    __slots__ = ("source", "target", "map", "tag")

    def __init__(self, source: FinitePoset, target: FinitePoset, map: Iterable[int],
                 tag: Category = Category.POSET):
        self.source = source
        self.target = target
        self.map = tuple(map)
        self.tag = tag

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __matmul__(self, other: Hom) -> Hom:
        if other.target != self.source:
            raise SourceTargetMismatch(
                f"cannot compose {other.source!r}->{other.target!r} with {self.source!r}->{self.target!r}")
        tag = self.tag if self.tag.rank <= other.tag.rank else other.tag
        return Hom(other.source, self.target, (self.map[i] for i in other.map), tag)

    def __eq__(self, other):
        if not isinstance(other, Hom):
            return NotImplemented
        return self.map == other.map and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        pairs = ", ".join(f"{self.source.labels[i]}->{self.target.labels[j]}" for i, j in enumerate(self.map))
        return f"Hom[{self.tag.value}]({pairs})"

    @classmethod
    def identity(cls, x: FinitePoset, tag: Category | None = None) -> Hom:
        return cls(x, x, range(x.size), tag or carrier_tag(x))

    def is_identity(self) -> bool:
        return self.source == self.target and self.map == tuple(range(self.source.size))

    def with_tag(self, tag: Category) -> Hom:
        return Hom(self.source, self.target, self.map, tag)

    def image(self) -> int:
        out = 0
        for y in self.map:
            out |= bit(y)
        return out


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[str, ...]

    def __str__(self):
        return f"{self.law} at ({', '.join(self.witness)})"


# ---------------------------------------------------------------- construction


def poset_from_covers(labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> FinitePoset:
    """Reflexive-transitive closure of the given strict relations."""
    labels = [str(s) for s in labels]
    if len(set(labels)) != len(labels):
        seen = set()
        raise DuplicateLabel(next(s for s in labels if s in seen or seen.add(s)))
    pos = {s: i for i, s in enumerate(labels)}
    n = len(labels)
    below = [bit(i) for i in range(n)]
    for lo, hi in covers:
        if lo not in pos:
            raise UnknownLabel(lo)
        if hi not in pos:
            raise UnknownLabel(hi)
        if lo == hi:
            raise CycleDetected(f"{lo} < {lo}")
        below[pos[hi]] |= bit(pos[lo])
    # Warshall on bitmasks: after processing k, below[i] is closed through k
    for k in range(n):
        for i in range(n):
            if below[i] >> k & 1:
                below[i] |= below[k]
    for i in range(n):
        for j in bits(below[i] & ~bit(i)):
            if below[j] >> i & 1:
                raise CycleDetected(f"{labels[i]} and {labels[j]}")
    return FinitePoset(labels, below)


def semilattice_from_poset(p: FinitePoset) -> MeetSemilattice:
    return MeetSemilattice(p.labels, p.down)


def lattice_from_poset(p: FinitePoset) -> BoundedLattice:
    """Meet and join tables from the order; raises :class:`NotALattice`."""
    return BoundedLattice(p.labels, p.down)


def lattice_view(x: FinitePoset) -> BoundedLattice:
    if isinstance(x, BoundedLattice):
        return x
    if isinstance(x, MeetSemilattice):
        return x.as_lattice()
    raise SourceTargetMismatch(f"{x!r} carries no lattice structure")


# ---------------------------------------------------------------- distributivity


def distributivity_counterexample(lat: BoundedLattice) -> tuple[int, int, int] | None:
    """First triple (a, b, c) in index order violating distributivity or its dual."""
    m, j = lat.meet_array, lat.join_array
    lhs = m[np.arange(lat.size)[:, None, None], j[None, :, :]]
    rhs = j[m[:, :, None], m[:, None, :]]
    dual_lhs = j[np.arange(lat.size)[:, None, None], m[None, :, :]]
    dual_rhs = m[j[:, :, None], j[:, None, :]]
    bad = np.argwhere((lhs != rhs) | (dual_lhs != dual_rhs))
    if len(bad) == 0:
        return None
    a, b, c = (int(v) for v in bad[0])
    return a, b, c


def is_distributive(lat: BoundedLattice) -> bool:
    return distributivity_counterexample(lat) is None


def frame_counterexample(lat: BoundedLattice) -> tuple[int, int] | None:
    """First (a, S) with a ∧ ⋁S ≠ ⋁{a ∧ s | s ∈ S}, S ranging over downsets.

    On a finite carrier every subset has the same join as its down-closure,
    and ``{a ∧ s | s ∈ S}`` has the same join as ``S ∩ ↓a``.
    """
    sups = {}
    for s in iter_downsets(lat.down):
        if s == 0:
            sups[s] = lat.bottom
        else:
            x = lat.maximal(s)[0]
            sups[s] = lat.join[sups[s & ~bit(x)]][x]
        top = sups[s]
        for a in range(lat.size):
            if lat.meet[a][top] != sups[s & lat.down[a]]:
                return a, s
    return None


def is_frame(lat: BoundedLattice) -> bool:
    return frame_counterexample(lat) is None


# ---------------------------------------------------------------- homomorphisms


def _first(mask_array: np.ndarray):
    hits = np.argwhere(mask_array)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def validate_hom(f: Hom) -> list[Violation]:
    """Every preservation law ``f`` violates for its tag; empty means valid."""
    src, tgt = f.source, f.target
    if len(f.map) != src.size or any(not 0 <= y < tgt.size for y in f.map):
        raise SourceTargetMismatch("map does not fit its source and target")
    fa = np.array(f.map, dtype=np.int64)
    out = []
    lab_s = src.labels

    mono = src.leq_array & ~tgt.leq_array[fa[:, None], fa[None, :]]
    hit = _first(mono)
    if hit:
        out.append(Violation("monotonicity", (lab_s[hit[0]], lab_s[hit[1]])))
    if f.tag.rank >= 1:
        if not (isinstance(src, MeetSemilattice) and isinstance(tgt, MeetSemilattice)):
            raise SourceTargetMismatch(f"{f.tag.value} hom needs meet-semilattices")
        hit = _first(fa[src.meet_array] != tgt.meet_array[fa[:, None], fa[None, :]])
        if hit:
            out.append(Violation("meet preservation", (lab_s[hit[0]], lab_s[hit[1]])))
        if f.map[src.top] != tgt.top:
            out.append(Violation("top preservation", (lab_s[src.top],)))
    if f.tag.rank >= 2:
        ls, lt = lattice_view(src), lattice_view(tgt)
        hit = _first(fa[ls.join_array] != lt.join_array[fa[:, None], fa[None, :]])
        if hit:
            out.append(Violation("join preservation", (lab_s[hit[0]], lab_s[hit[1]])))
        if f.map[ls.bottom] != lt.bottom:
            out.append(Violation("bottom preservation", (lab_s[ls.bottom],)))
    return out


def is_valid_hom(f: Hom) -> bool:
    return not validate_hom(f)


# ---------------------------------------------------------------- adjoints


def adjunction_counterexample(f: Hom, g: Hom) -> tuple[int, int] | None:
    """First (x, y) with ``f(x) ≤ y`` not equivalent to ``x ≤ g(y)``."""
    if g.source != f.target or g.target != f.source:
        raise SourceTargetMismatch("adjoint candidates must run in opposite directions")
    p, q = f.source, f.target
    fa = np.array(f.map, dtype=np.int64)
    ga = np.array(g.map, dtype=np.int64)
    lhs = q.leq_array[fa, :]
    rhs = p.leq_array[:, ga]
    return _first(lhs != rhs)


def check_adjoint(f: Hom, g: Hom) -> bool:
    """True iff f ⊣ g, i.e. f(x) ≤ y ⟺ x ≤ g(y) for all x, y."""
    return adjunction_counterexample(f, g) is None


def right_adjoint(f: Hom) -> Hom | None:
    p, q = f.source, f.target
    out = []
    for y in range(q.size):
        pre = 0
        for x in range(p.size):
            if q.down[y] >> f.map[x] & 1:
                pre |= bit(x)
        g = p._by_down.get(pre)
        if g is None:
            return None
        out.append(g)
    g = Hom(q, p, out, Category.POSET)
    return g if check_adjoint(f, g) else None


def left_adjoint(f: Hom) -> Hom | None:
    p, q = f.source, f.target
    out = []
    for y in range(q.size):
        pre = 0
        for x in range(p.size):
            if q.up[y] >> f.map[x] & 1:
                pre |= bit(x)
        g = p._by_up.get(pre)
        if g is None:
            return None
        out.append(g)
    g = Hom(q, p, out, Category.POSET)
    return g if check_adjoint(g, f) else None


@dataclass(frozen=True)
class AdjointPair:
    lower: Hom
    upper: Hom

    def __post_init__(self):
        if not check_adjoint(self.lower, self.upper):
            raise ValueError("lower is not left adjoint to upper")


# ---------------------------------------------------------------- isomorphism


def are_isomorphic(a: FinitePoset, b: FinitePoset) -> Hom | None:
    """First order isomorphism a → b in lexicographic search order, or None.

    Lattice operations are determined by the order, so an order isomorphism
    between (semi)lattices preserves all of their structure.
    """
    n = a.size
    if n != b.size or a.related_pairs() != b.related_pairs():
        return None
    sig_a = [(a.down[x].bit_count(), a.up[x].bit_count()) for x in range(n)]
    sig_b = [(b.down[y].bit_count(), b.up[y].bit_count()) for y in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    img = [-1] * n
    used = 0

    def place(x: int) -> bool:
        nonlocal used
        if x == n:
            return True
        for y in range(n):
            if used >> y & 1 or sig_b[y] != sig_a[x]:
                continue
            ok = True
            for x2 in range(x):
                y2 = img[x2]
                if a.leq(x2, x) != b.leq(y2, y) or a.leq(x, x2) != b.leq(y, y2):
                    ok = False
                    break
            if ok:
                img[x] = y
                used |= bit(y)
                if place(x + 1):
                    return True
                used &= ~bit(y)
        img[x] = -1
        return False

    if not place(0):
        return None
    return Hom(a, b, img, carrier_tag(a))


def inverse(f: Hom) -> Hom | None:
    """Inverse map of a bijection, or None when ``f`` is not bijective."""
    if f.source.size != f.target.size or len(set(f.map)) != len(f.map):
        return None
    inv = [0] * f.target.size
    for x, y in enumerate(f.map):
        inv[y] = x
    return Hom(f.target, f.source, inv, f.tag)


def is_isomorphism(f: Hom) -> bool:
    """Bijective and order-reflecting (the inverse is monotone)."""
    g = inverse(f)
    if g is None:
        return False
    return not validate_hom(f.with_tag(Category.POSET)) and not validate_hom(g.with_tag(Category.POSET))


# ---------------------------------------------------------------- sub-carriers


def _compress(mask: int, positions: dict[int, int]) -> int:
    out = 0
    for i in bits(mask):
        j = positions.get(i)
        if j is not None:
            out |= bit(j)
    return out


def subcarrier(x: FinitePoset, mask: int, tag: Category) -> tuple[FinitePoset, Hom]:
    """The sub-object on ``mask`` with its inclusion, closure checked for ``tag``.

    MLat requires the top and binary meets of members to be members; DLat and
    Frm additionally require the bottom and binary joins.
    """
    elems = list(bits(mask))
    if not elems:
        raise NotClosed("non-emptiness", ())
    if tag.rank >= 1:
        if not mask >> x.top & 1:
            raise NotClosed("top", (x.labels[x.top],))
        for i in elems:
            for j in elems:
                if not mask >> x.meet[i][j] & 1:
                    raise NotClosed("meet", (x.labels[i], x.labels[j]))
    if tag.rank >= 2:
        lat = lattice_view(x)
        if not mask >> lat.bottom & 1:
            raise NotClosed("bottom", (x.labels[lat.bottom],))
        for i in elems:
            for j in elems:
                if not mask >> lat.join[i][j] & 1:
                    raise NotClosed("join", (x.labels[i], x.labels[j]))
    positions = {old: new for new, old in enumerate(elems)}
    labels = [x.labels[i] for i in elems]
    down = [_compress(x.down[i], positions) for i in elems]
    cls = {0: FinitePoset, 1: MeetSemilattice, 2: BoundedLattice}[tag.rank]
    sub = cls(labels, down)
    return sub, Hom(sub, x, elems, tag)
