"""The downset monad on meet-semilattices and the ideal monad on distributive lattices.

For either monad, an element of TX is an admissible subset of X (a downset,
resp. an ideal) stored as a bitmask over X.  TX is ordered by inclusion, the
unit sends ``x`` to ``↓x`` and the multiplication is set union.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import BudgetExceeded, LatmonError, SourceTargetMismatch
from .order import (
    BoundedLattice,
    Category,
    FinitePoset,
    Hom,
    MeetSemilattice,
    adjunction_counterexample,
    is_distributive,
    lattice_view,
    validate_hom,
)
from .subsets import bit, bits, down_closure, iter_downsets, random_downset

DEFAULT_BUDGET = 50_000
DEFAULT_SEED = 0xC0FFEE
DEFAULT_SAMPLES = 512


class LawViolation(LatmonError):
    pass


@dataclass(frozen=True)
class MonadInstance:
    name: str
    object_kind: str

    @property
    def base_tag(self) -> Category:
        return Category.MLAT if self.object_kind == "mlat" else Category.DLAT

    def rejects(self, x: FinitePoset) -> str | None:
        """Reason why ``x`` is not an object of the base category, if any."""
        if self.object_kind == "mlat":
            return None if isinstance(x, MeetSemilattice) else "not a meet-semilattice with top"
        if not isinstance(x, BoundedLattice):
            return "not a bounded lattice"
        return None if is_distributive(x) else "not distributive"

    def admissible(self, x: FinitePoset):
        """Admissible subsets of ``x`` in canonical order."""
        if self.name == "downset":
            yield from iter_downsets(x.down)
            return
        lat = lattice_view(x)
        for s in iter_downsets(x.down):
            if _join_closed(lat, s) and s >> lat.bottom & 1:
                yield s

    def closure(self, x: FinitePoset, mask: int) -> int:
        """Smallest admissible subset containing ``mask``."""
        if self.name == "downset":
            return down_closure(x.down, mask)
        lat = lattice_view(x)
        return x.down[lat.join_of(mask)]

    def random_element(self, x: FinitePoset, rng: random.Random) -> int:
        s = random_downset(x.down, rng)
        return self.closure(x, s) if self.name == "ideal" else s

    def __str__(self):
        return self.name


def _join_closed(lat: BoundedLattice, s: int) -> bool:
    el = list(bits(s))
    return all(s >> lat.join[i][j] & 1 for i in el for j in el if i < j)


DOWNSET = MonadInstance("downset", "mlat")
IDEAL = MonadInstance("ideal", "dlat")
MONADS = {"downset": DOWNSET, "ideal": IDEAL}


def monad_named(name: str) -> MonadInstance:
    try:
        return MONADS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown monad {name!r} (expected downset or ideal)") from None


def subset_label(x: FinitePoset, mask: int) -> str:
    return "{" + ",".join(x.labels[i] for i in bits(mask)) + "}"


@dataclass(frozen=True, eq=False)
class MonadAssembly:
    """TX for a fixed monad and object X, with the unit e_X."""

    monad: MonadInstance
    base: FinitePoset
    total: BoundedLattice
    subsets: tuple[int, ...]
    index: dict = field(repr=False)
    unit: Hom = field(repr=False)
    budget: int = DEFAULT_BUDGET

    @property
    def size(self) -> int:
        return self.total.size

    def element(self, mask: int) -> int:
        try:
            return self.index[mask]
        except KeyError:
            raise LawViolation(
                f"{subset_label(self.base, mask)} is not an element of {self.monad}({self.base!r})") from None

    @cached_property
    def lifted(self) -> MonadAssembly:
        """The assembly of T applied to TX."""
        return apply_object(self.monad, self.total, self.budget)

    @cached_property
    def mult(self) -> Hom:
        """m_X : TTX → TX, the union of a family of admissible subsets."""
        up = self.lifted
        out = []
        for fam in up.subsets:
            acc = 0
            for t in bits(fam):
                acc |= self.subsets[t]
            out.append(self.element(acc))
        m = Hom(up.total, self.total, out, Category.FRM)
        bad = validate_hom(m)
        if bad:
            raise LawViolation(f"m_X is not a frame hom: {bad[0]}")
        return m

    @cached_property
    def unit_pair(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(Te_X(t), e_TX(t)) for every t, both as masks over TX.

        Comparing these masks decides lax idempotency and the Fakir equalizer
        without enumerating TTX.
        """
        tx = self.total
        te = tuple(down_closure(tx.down, _image_mask(self.unit, s)) for s in self.subsets)
        et = tx.down
        return te, et


def _image_mask(f: Hom, mask: int) -> int:
    out = 0
    for x in bits(mask):
        out |= bit(f.map[x])
    return out


def apply_object(monad: MonadInstance, x: FinitePoset, budget: int = DEFAULT_BUDGET) -> MonadAssembly:
    """Enumerate TX in canonical order and build its frame structure.

    Results are memoised per (monad, carrier, carrier class, budget).
    """
    return _apply_object(monad, x, type(x), budget)


@lru_cache(maxsize=None)
def _apply_object(monad, x, _cls, budget):
    reason = monad.rejects(x)
    if reason:
        raise SourceTargetMismatch(f"{monad} monad: {reason}")
    subs = []
    for s in monad.admissible(x):
        subs.append(s)
        if len(subs) > budget:
            raise BudgetExceeded(len(subs), budget)
    index = {s: i for i, s in enumerate(subs)}
    down = []
    for s in subs:
        d = 0
        for j, t in enumerate(subs):
            if t & ~s == 0:
                d |= bit(j)
        down.append(d)
    total = BoundedLattice([subset_label(x, s) for s in subs], down)
    if not is_distributive(total):
        raise LawViolation(f"{monad}({x!r}) is not a frame")
    meet_closed = all(index.get(subs[i] & subs[j]) == total.meet[i][j]
                      for i in range(len(subs)) for j in range(i + 1, len(subs)))
    if not meet_closed:
        raise LawViolation("meets in TX are not intersections")
    unit = Hom(x, total, [index[x.down[e]] for e in range(x.size)], monad.base_tag)
    bad = validate_hom(unit)
    if bad:
        raise LawViolation(f"unit is not a {monad.base_tag.value} hom: {bad[0]}")
    return MonadAssembly(monad, x, total, tuple(subs), index, unit, budget)


def apply_hom(monad: MonadInstance, f: Hom, source: MonadAssembly | None = None,
              target: MonadAssembly | None = None) -> Hom:
    """Tf(S) = ↓f[S], a frame hom TX → TY."""
    src = source or apply_object(monad, f.source)
    tgt = target or apply_object(monad, f.target)
    if src.base != f.source or tgt.base != f.target:
        raise SourceTargetMismatch("assemblies do not match the hom")
    out = []
    for s in src.subsets:
        acc = 0
        for x in bits(s):
            acc |= f.target.down[f.map[x]]
        out.append(tgt.element(acc))
    tf = Hom(src.total, tgt.total, out, Category.FRM)
    bad = validate_hom(tf)
    if bad:
        raise LawViolation(f"T(f) is not a frame hom: {bad[0]}")
    return tf


def unit(monad: MonadInstance, x: FinitePoset) -> Hom:
    return apply_object(monad, x).unit


def mult(monad: MonadInstance, x: FinitePoset) -> Hom:
    return apply_object(monad, x).mult


def t_unit(asm: MonadAssembly) -> Hom:
    """Te_X : TX → TTX."""
    return apply_hom(asm.monad, asm.unit, asm, asm.lifted)


# ---------------------------------------------------------------- law checks


@dataclass
class MonadLawReport:
    monad: str
    sizes: dict
    unit_violations: list = field(default_factory=list)
    assoc_violations: list = field(default_factory=list)
    enumerated: int = 0
    sampled: int = 0
    complete: bool = True

    @property
    def ok(self) -> bool:
        return not self.unit_violations and not self.assoc_violations


def check_monad_laws(monad: MonadInstance, x: FinitePoset, budget: int = DEFAULT_BUDGET,
                     samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> MonadLawReport:
    """Unit laws on all of TX; associativity pointwise on TTTX.

    TTTX is enumerated lazily in canonical order up to ``budget`` elements;
    beyond that ``samples`` pseudorandom elements are drawn with ``seed``.
    """
    asm = apply_object(monad, x, budget)
    up = asm.lifted
    m = asm.mult
    report = MonadLawReport(monad.name, {"X": x.size, "TX": asm.size, "TTX": up.size, "TTTX": None})

    ident = tuple(range(asm.size))
    for name, comp in (("m·eT = 1", m @ up.unit), ("m·Te = 1", m @ t_unit(asm))):
        for t, v in zip(ident, comp.map):
            if v != t:
                report.unit_violations.append((name, asm.total.labels[t]))
                break

    mm = m.map
    tx_down = asm.total.down

    def check(fam: int) -> None:
        flat = 0
        image = 0
        for s in bits(fam):
            flat |= up.subsets[s]
            image |= tx_down[mm[s]]
        lhs = mm[up.element(flat)]
        rhs = mm[up.element(image)]
        if lhs != rhs:
            report.assoc_violations.append(subset_label(up.total, fam))

    count = 0
    for fam in monad.admissible(up.total):
        if count >= budget:
            report.complete = False
            break
        check(fam)
        count += 1
    report.enumerated = count
    if report.complete:
        report.sizes["TTTX"] = count
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            check(monad.random_element(up.total, rng))
        report.sampled = samples
    return report


def lax_counterexample(monad: MonadInstance, x: FinitePoset) -> int | None:
    """First t in TX with Te_X(t) ⊄ e_TX(t)."""
    te, et = apply_object(monad, x).unit_pair
    for t, (a, b) in enumerate(zip(te, et)):
        if a & ~b:
            return t
    return None


def check_lax_idempotent(monad: MonadInstance, x: FinitePoset) -> bool:
    return lax_counterexample(monad, x) is None


def lax_is_equality(monad: MonadInstance, x: FinitePoset) -> bool:
    te, et = apply_object(monad, x).unit_pair
    return te == et


@dataclass
class AdjointChainReport:
    lax: bool
    te_left_of_m: bool
    m_left_of_et: bool
    sections: list
    sections_adjoint: bool
    sections_algebras: bool
    note: str = ""

    @property
    def agree(self) -> bool:
        return self.lax == self.te_left_of_m == self.m_left_of_et

    @property
    def ok(self) -> bool:
        return self.agree and self.sections_adjoint and self.sections_algebras


def check_lemma_adjoint_chain(monad: MonadInstance, x: FinitePoset, limit: int = 64) -> AdjointChainReport:
    """Te ≤ eT, Te ⊣ m and m ⊣ eT, plus the claim about sections of the unit.

    Every base-category hom a: TX → X with a·e_X = 1 is searched exhaustively
    (up to ``limit``); each must be left adjoint to e_X and an algebra.
    """
    from .search import enumerate_homs

    asm = apply_object(monad, x)
    up = asm.lifted
    m = asm.mult
    te = t_unit(asm)
    lax = check_lax_idempotent(monad, x)
    te_m = adjunction_counterexample(te, m) is None
    m_et = adjunction_counterexample(m, up.unit) is None

    e = asm.unit
    allowed = [(1 << x.size) - 1] * asm.size
    for el, t in enumerate(e.map):
        allowed[t] = bit(el)
    sections = list(enumerate_homs(asm.total, x, monad.base_tag, allowed=allowed, limit=limit))
    adj = all(adjunction_counterexample(a, e) is None for a in sections)
    alg = True
    for a in sections:
        ta = apply_hom(monad, a, up, asm)
        if (a @ ta) != (a @ m):
            alg = False
    note = "" if sections else "no section found"
    return AdjointChainReport(lax, te_m, m_et, sections, adj, alg, note)
