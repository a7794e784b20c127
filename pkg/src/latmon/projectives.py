"""Projective algebras: coalgebra structures, retracts of free algebras, lifting."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice

from .diagrams import LawCheck, equal, is_identity
from .errors import BudgetExceeded, NoStructure
from .monads import DEFAULT_BUDGET, MonadInstance, apply_hom, apply_object
from .order import Hom, validate_hom
from .search import enumerate_homs
from .subsets import bit
from .tower import FORCED_CHECK_MAX, AlgebraWitness, _coalgebra_diagram, build_algebra, build_coalgebra


def algebra_morphism_check(f: Hom, source: AlgebraWitness, target: AlgebraWitness) -> LawCheck:
    """f·a = a'·Tf; a map that is not a base hom fails the check."""
    bad = validate_hom(f.with_tag(source.monad.base_tag))
    if bad:
        return LawCheck("f·a = a'·Tf", False, f"not a base hom: {bad[0].law}")
    tf = apply_hom(source.monad, f, source.assembly, target.assembly)
    return equal("f·a = a'·Tf", lambda: f @ source.structure, lambda: target.structure @ tf)


def _free(w: AlgebraWitness) -> AlgebraWitness:
    """(TX, m_X) for the carrier X of ``w``."""
    asm = w.assembly
    return AlgebraWitness(w.monad, asm.lifted, asm.mult.with_tag(w.monad.base_tag))


def _fibres(f: Hom) -> list[int]:
    """``out[y]`` is the mask of points sent to y."""
    out = [0] * f.target.size
    for t, y in enumerate(f.map):
        out[y] |= bit(t)
    return out


@dataclass
class CoalgebraVerdict:
    holds: bool
    costructure: Hom | None = None
    reason: str | None = None
    exhaustive: bool = False

    def __bool__(self):
        return self.holds


def coalgebra_sections(w: AlgebraWitness, limit: int | None = None):
    """Every base hom c: X → TX with a·c = 1 satisfying the coalgebra identities."""
    fib = _fibres(w.structure)
    for c in enumerate_homs(w.carrier, w.assembly.total, w.monad.base_tag, allowed=fib, limit=None):
        if _coalgebra_diagram(w, c).holds():
            yield c
            if limit is not None:
                limit -= 1
                if limit <= 0:
                    return


def has_coalgebra_structure(w: AlgebraWitness) -> CoalgebraVerdict:
    """Whether (X, a) carries a coalgebra structure for the induced comonad.

    The canonical candidate is tried first.  When it fails on a carrier of at
    most five elements, every section of ``a`` is searched as well.
    """
    try:
        cw = build_coalgebra(w)
        return CoalgebraVerdict(True, cw.costructure)
    except NoStructure as exc:
        reason = str(exc)
    if w.carrier.size > FORCED_CHECK_MAX:
        return CoalgebraVerdict(False, None, reason)
    alt = next(coalgebra_sections(w, limit=1), None)
    return CoalgebraVerdict(alt is not None, alt, reason, exhaustive=True)


@dataclass(frozen=True, eq=False)
class RetractionWitness:
    algebra: AlgebraWitness
    free: AlgebraWitness
    section: Hom
    retraction: Hom

    def checks(self) -> list[LawCheck]:
        s, p = self.section, self.retraction
        return [
            is_identity("p·s = 1", lambda: p @ s),
            algebra_morphism_check(s, self.algebra, self.free),
            algebra_morphism_check(p, self.free, self.algebra),
        ]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks())


def find_retraction(w: AlgebraWitness, budget: int = DEFAULT_BUDGET) -> RetractionWitness | None:
    """(X, a) as a retract of the free algebra (TX, m_X), p = a.

    A retract of any free algebra is a retract of (TX, m_X): compose the
    section with T of the retraction and the unit.  So only sections s of a
    need to be searched.
    """
    free = _free(w)
    a = w.structure
    try:
        cw = build_coalgebra(w)
    except NoStructure:
        cw = None
    if cw is not None:
        r = RetractionWitness(w, free, cw.costructure, a)
        if r.ok:
            return r
    for s in enumerate_homs(w.carrier, w.assembly.total, w.monad.base_tag, allowed=_fibres(a), limit=budget):
        r = RetractionWitness(w, free, s, a)
        if r.ok:
            return r
    return None


@dataclass
class LiftingReport:
    family: list
    morphisms: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def algebra_morphisms(w: AlgebraWitness, target: AlgebraWitness):
    for g in enumerate_homs(w.carrier, target.carrier, w.monad.base_tag):
        if algebra_morphism_check(g, w, target).holds:
            yield g


def find_lift(w: AlgebraWitness, target: AlgebraWitness, g: Hom) -> Hom | None:
    """An algebra morphism h: (X, a) → (TA, m_A) with α·h = g."""
    free = _free(target)
    fib = _fibres(target.structure)
    allowed = [fib[g.map[x]] for x in range(w.carrier.size)]
    for h in enumerate_homs(w.carrier, target.assembly.total, w.monad.base_tag, allowed=allowed):
        if algebra_morphism_check(h, w, free).holds:
            return h
    return None


def default_family(monad: MonadInstance, max_size: int = 5) -> list[tuple[str, AlgebraWitness]]:
    """Every algebra on at most ``max_size`` elements, from the corpus."""
    from .corpus import default_corpus

    out = []
    for e in default_corpus("dlat", max_size):
        try:
            out.append((e.name, build_algebra(monad, e.carrier)))
        except NoStructure:
            pass
    return out


def lifting_property(w: AlgebraWitness, family=None) -> LiftingReport:
    """Lift every algebra morphism (X, a) → (A, α) along α: (TA, m_A) → (A, α)."""
    if family is None:
        family = default_family(w.monad)
    rep = LiftingReport([name for name, _ in family])
    for name, target in family:
        for g in algebra_morphisms(w, target):
            rep.morphisms += 1
            if find_lift(w, target, g) is None:
                rep.failures.append((name, g))
    return rep


@dataclass
class ProjectiveReport:
    monad: str
    coalgebra: CoalgebraVerdict
    retraction: RetractionWitness | None
    lifting: LiftingReport

    @property
    def verdicts(self) -> tuple[bool, bool, bool]:
        return bool(self.coalgebra), self.retraction is not None, self.lifting.ok

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1


def projective_report(w: AlgebraWitness, family=None) -> ProjectiveReport:
    return ProjectiveReport(w.monad.name, has_coalgebra_structure(w), find_retraction(w), lifting_property(w, family))


FREE_BUDGET = 2_000


def free_witness(monad: MonadInstance, x, budget: int = FREE_BUDGET) -> AlgebraWitness:
    """(TX, m_X) as an algebra, provided T applied three times to X stays within ``budget``.

    Checking coalgebra identities on the free algebra needs full operation
    tables of TTTX, which is quadratic in its size.
    """
    asm = apply_object(monad, x)
    up = asm.lifted
    count = sum(1 for _ in islice(monad.admissible(up.total), budget + 1))
    if count > budget:
        raise BudgetExceeded(count, budget)
    return AlgebraWitness(monad, up, asm.mult.with_tag(monad.base_tag))
