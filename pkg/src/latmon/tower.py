"""Algebras, coalgebras and T₁-algebras of the two monads, and the equivalence pipeline.

For a lax idempotent monad each structure map is an adjoint of the previous
one: the algebra ``a`` is left adjoint to the unit, the coalgebra ``c`` left
adjoint to ``a`` and the T₁-structure ``b`` left adjoint to ``c``.  Each
builder computes that canonical candidate and then checks every law
required of it; failures raise :class:`NoStructure` naming the first failing
law and witness in canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagrams import LawCheck, SplitDiagram, equal, is_identity
from .errors import NoStructure, NotFactorable
from .monads import (
    DOWNSET,
    MonadAssembly,
    MonadInstance,
    apply_hom,
    apply_object,
    t_unit,
)
from .order import (
    Category,
    FinitePoset,
    Hom,
    are_isomorphic,
    check_adjoint,
    inverse,
    lattice_view,
    left_adjoint,
    subcarrier,
    validate_hom,
)
from .search import enumerate_homs
from .subsets import bit, bits, full_mask

FORCED_CHECK_MAX = 5


# ---------------------------------------------------------------- below relations


def way_below(lat) -> tuple[int, ...]:
    """``rel[x]`` is the mask of y with y ≪ x.

    Every subset of a finite lattice is finite, so a cover of ``x`` is its own
    finite subcover and ≪ coincides with ≤.
    """
    return tuple(lat.down)


def totally_below(lat) -> tuple[int, ...]:
    """``rel[x]`` is the mask of y with y ⋘ x.

    y ⋘ x iff every downset D with x ≤ ⋁D contains y.  The downsets avoiding y
    are exactly the subsets of L∖↑y, and ⋁ is monotone, so it suffices to test
    the largest one: y ⋘ x iff x ≰ ⋁(L∖↑y).
    """
    lat = lattice_view(lat)
    n = lat.size
    rel = [0] * n
    for y in range(n):
        cap = lat.join_of(full_mask(n) & ~lat.up[y])
        for x in range(n):
            if not lat.leq(x, cap):
                rel[x] |= bit(y)
    return tuple(rel)


def relation_pairs(rel: tuple[int, ...]) -> list[tuple[int, int]]:
    """All (y, x) with y related to x, ordered by x then y."""
    return [(y, x) for x, m in enumerate(rel) for y in bits(m)]


def below_relation(monad: MonadInstance, lat) -> tuple[int, ...]:
    return totally_below(lat) if monad is DOWNSET or monad.name == "downset" else way_below(lat)


def self_related(rel: tuple[int, ...]) -> int:
    return sum(bit(x) for x, m in enumerate(rel) if m >> x & 1)


# ---------------------------------------------------------------- witnesses


@dataclass(frozen=True, eq=False)
class AlgebraWitness:
    monad: MonadInstance
    assembly: MonadAssembly
    structure: Hom
    evidence: tuple[LawCheck, ...] = ()

    @property
    def carrier(self) -> FinitePoset:
        return self.assembly.base

    def algebra_laws(self) -> list[LawCheck]:
        asm, a = self.assembly, self.structure
        ta = apply_hom(self.monad, a, asm.lifted, asm)
        return [
            is_identity("a·e = 1", lambda: a @ asm.unit),
            equal("a·Ta = a·m", lambda: a @ ta, lambda: a @ asm.mult),
        ]

    def verify(self) -> None:
        bad = validate_hom(self.structure.with_tag(self.monad.base_tag))
        if bad:
            raise NoStructure("algebra", bad[0].law, bad[0].witness)
        for c in self.algebra_laws():
            if not c.holds:
                raise NoStructure("algebra", c.name, c.witness)


@dataclass(frozen=True, eq=False)
class CoalgebraWitness:
    algebra: AlgebraWitness
    costructure: Hom
    evidence: tuple[LawCheck, ...] = ()
    forced: bool | None = None

    @property
    def monad(self):
        return self.algebra.monad

    @property
    def assembly(self):
        return self.algebra.assembly

    @property
    def carrier(self):
        return self.algebra.carrier


@dataclass(frozen=True, eq=False)
class T1AlgebraWitness:
    coalgebra: CoalgebraWitness
    structure: Hom
    evidence: tuple[LawCheck, ...] = ()
    closed_formula_agrees: bool = True

    @property
    def monad(self):
        return self.coalgebra.monad

    @property
    def assembly(self):
        return self.coalgebra.assembly

    @property
    def carrier(self):
        return self.coalgebra.carrier

    @property
    def a(self) -> Hom:
        return self.coalgebra.algebra.structure

    @property
    def c(self) -> Hom:
        return self.coalgebra.costructure

    @property
    def b(self) -> Hom:
        return self.structure


# ---------------------------------------------------------------- builders


def join_map(asm: MonadAssembly) -> Hom:
    """⋁ : TX → X, the join of the denoted subset."""
    lat = lattice_view(asm.base)
    return Hom(asm.total, asm.base, [lat.join_of(s) for s in asm.subsets], asm.monad.base_tag)


def build_algebra(monad: MonadInstance, x: FinitePoset) -> AlgebraWitness:
    """The algebra (X, ⋁) when ⋁ is a base-category hom satisfying both laws."""
    asm = apply_object(monad, x)
    a = join_map(asm)
    w = AlgebraWitness(monad, asm, a)
    w.verify()
    return AlgebraWitness(monad, asm, a, tuple(w.algebra_laws()))


def _coalgebra_diagram(w: AlgebraWitness, c: Hom) -> SplitDiagram:
    asm = w.assembly
    tc = apply_hom(w.monad, c, asm, asm.lifted)
    return SplitDiagram("equalizer", f=t_unit(asm), g=tc, t=asm.mult, q=c, s=w.structure,
                        names=("Te", "Tc", "m_X", "c", "a"))


def coalgebra_candidates(w: AlgebraWitness) -> list[Hom]:
    """Every monotone c with a·c = 1 and c·a ≤ 1 (these identities force c)."""
    asm, a = w.assembly, w.structure
    x = w.carrier
    allowed = [0] * x.size
    for t, v in enumerate(a.map):
        allowed[v] |= bit(t)
    tx = asm.total

    def accept(cm):
        return all(tx.leq(cm[a.map[t]], t) for t in range(tx.size))

    return list(enumerate_homs(x, tx, Category.POSET, allowed=allowed, accept=accept))


def build_coalgebra(w: AlgebraWitness) -> CoalgebraWitness:
    """c(x) = {y | y ⋘ x} (downset) or {y | y ≪ x} (ideal), checked in full."""
    monad, asm = w.monad, w.assembly
    x = w.carrier
    rel = below_relation(monad, x)
    out = []
    for el in range(x.size):
        t = asm.index.get(rel[el])
        if t is None:
            raise NoStructure("coalgebra", "candidate is not an element of TX", x.labels[el])
        out.append(t)
    c = Hom(x, asm.total, out, monad.base_tag)
    bad = validate_hom(c)
    if bad:
        raise NoStructure("coalgebra", bad[0].law, bad[0].witness)
    checks = _coalgebra_diagram(w, c).identities()
    checks.append(LawCheck("c ⊣ a", check_adjoint(c, w.structure)))
    for chk in checks:
        if not chk.holds:
            raise NoStructure("coalgebra", chk.name, chk.witness)
    forced = None
    if x.size <= FORCED_CHECK_MAX:
        forced = coalgebra_candidates(w) == [c]
    return CoalgebraWitness(w, c, tuple(checks), forced)


def _t1_diagram(w: CoalgebraWitness, b: Hom) -> SplitDiagram:
    asm = w.assembly
    up = asm.lifted
    ta = apply_hom(w.monad, w.algebra.structure, up, asm)
    tb = apply_hom(w.monad, b, up, asm)
    return SplitDiagram("coequalizer", f=ta, g=tb, t=t_unit(asm), q=b, s=w.costructure,
                        names=("Ta", "Tb", "Te", "b", "c"))


def closed_formula_t1(w: CoalgebraWitness) -> Hom:
    """J ↦ ⋁{y ∈ J | y related to itself} for the monad's below relation."""
    x = w.carrier
    lat = lattice_view(x)
    gens = self_related(below_relation(w.monad, x))
    return Hom(w.assembly.total, x, [lat.join_of(s & gens) for s in w.assembly.subsets], w.monad.base_tag)


def build_t1_algebra(w: CoalgebraWitness) -> T1AlgebraWitness:
    """b = the left adjoint of c, checked as a K-coalgebra morphism with b·c = 1."""
    monad, asm = w.monad, w.assembly
    b = left_adjoint(w.costructure)
    if b is None:
        raise NoStructure("t1", "c has no left adjoint")
    b = b.with_tag(monad.base_tag)
    bad = validate_hom(b)
    if bad:
        raise NoStructure("t1", bad[0].law, bad[0].witness)
    a = w.algebra.structure
    tb = apply_hom(monad, b, asm.lifted, asm)
    checks = _t1_diagram(w, b).identities()
    checks.append(equal("b·m = a·Tb", lambda: b @ asm.mult, lambda: a @ tb))
    checks.append(LawCheck("b ⊣ c", check_adjoint(b, w.costructure)))
    for chk in checks:
        if not chk.holds:
            raise NoStructure("t1", chk.name, chk.witness)
    agrees = closed_formula_t1(w) == b
    return T1AlgebraWitness(w, b, tuple(checks), agrees)


# ---------------------------------------------------------------- presentations


def algebra_diagram(w: AlgebraWitness) -> SplitDiagram:
    """TTX ⇉(m_X, Ta) TX →a X with eT and e as splittings."""
    asm = w.assembly
    ta = apply_hom(w.monad, w.structure, asm.lifted, asm)
    return SplitDiagram("coequalizer", f=asm.mult, g=ta, t=asm.lifted.unit, q=w.structure, s=asm.unit,
                        names=("m_X", "Ta", "eT", "a", "e"))


def present_algebra(w: AlgebraWitness) -> SplitDiagram:
    d = algebra_diagram(w)
    d.verify()
    return d


def present_coalgebra(w: CoalgebraWitness) -> SplitDiagram:
    d = _coalgebra_diagram(w.algebra, w.costructure)
    d.verify()
    return d


def present_t1(w: T1AlgebraWitness) -> SplitDiagram:
    d = _t1_diagram(w.coalgebra, w.structure)
    d.verify()
    return d


def run_tower(monad: MonadInstance, x: FinitePoset) -> T1AlgebraWitness:
    """build_algebra → build_coalgebra → build_t1_algebra; raises at the first gap."""
    return build_t1_algebra(build_coalgebra(build_algebra(monad, x)))


# ---------------------------------------------------------------- factorization


def unit_is_equalizer(asm: MonadAssembly) -> bool:
    """e_X is injective and its image is {t | Te(t) = eT(t)}."""
    te, et = asm.unit_pair
    agree = sum(bit(t) for t in range(asm.size) if te[t] == et[t])
    return len(set(asm.unit.map)) == asm.base.size and agree == asm.unit.image()


def factor_through_unit(monad: MonadInstance, x: FinitePoset, b: Hom) -> Hom:
    """The unique r: TX → X with e_X·r = b·e_TX, given b: TTX → TX."""
    asm = apply_object(monad, x)
    if not unit_is_equalizer(asm):
        raise ValueError("e_X is not the equalizer of (e_TX, Te_X)")
    back = {t: el for el, t in enumerate(asm.unit.map)}
    bet = b @ asm.lifted.unit
    out = []
    for t, v in enumerate(bet.map):
        if v not in back:
            raise NotFactorable("b·eT does not land in the image of e_X", asm.total.labels[t])
        out.append(back[v])
    r = Hom(asm.total, x, out, monad.base_tag)
    if not (r @ asm.unit).is_identity():
        raise NotFactorable("r·e ≠ 1")
    return r


# ---------------------------------------------------------------- equivalence


@dataclass
class EquivalenceReport:
    witness: T1AlgebraWitness
    xc: FinitePoset
    kappa: Hom
    r: Hom
    a_c: Hom | None = None
    psi: Hom | None = None
    checks: list[LawCheck] = field(default_factory=list)
    isomorphic: bool = False

    @property
    def ok(self) -> bool:
        return self.isomorphic and all(c.holds for c in self.checks)

    def failures(self) -> list[LawCheck]:
        return [c for c in self.checks if not c.holds]


def main_equivalence_pipeline(w: T1AlgebraWitness) -> EquivalenceReport:
    """Recover X ≅ T(X_c) from a T₁-algebra (X, a, c, b).

    X_c is the equalizer of (c, e), κ its inclusion and r the factorization of
    b·e through κ.  The combined split coequalizer/equalizer is verified, the
    algebra structure on X_c is transported as a_c = r·a·Tκ and
    ψ = Tr·c : X → T(X_c) is checked to be an isomorphism of T₁-algebras
    with ψ·b = Tr.
    """
    monad, asm = w.monad, w.assembly
    x = w.carrier
    a, c, b, e = w.a, w.c, w.b, asm.unit
    tag = monad.base_tag

    xc_mask = sum(bit(el) for el in range(x.size) if c.map[el] == e.map[el])
    xc, kappa = subcarrier(x, xc_mask, tag)
    pos = {old: new for new, old in enumerate(kappa.map)}
    be = b @ e
    r_map = []
    for el, v in enumerate(be.map):
        if v not in pos:
            raise NotFactorable("b·e does not factor through κ", x.labels[el])
        r_map.append(pos[v])
    r = Hom(x, xc, r_map, tag)
    rep = EquivalenceReport(w, xc, kappa, r)

    coeq = SplitDiagram("coequalizer", f=a, g=b, t=e, q=r, s=kappa, names=("a", "b", "e", "r", "κ"))
    eq = SplitDiagram("equalizer", f=c, g=e, t=b, q=kappa, s=r, names=("c", "e", "b", "κ", "r"))
    rep.checks += coeq.identities() + eq.identities()
    rep.checks.append(LawCheck("r is a base hom", not validate_hom(r)))

    asm_c = apply_object(monad, xc)
    tr = apply_hom(monad, r, asm, asm_c)
    tkappa = apply_hom(monad, kappa, asm_c, asm)
    a_c = (r @ a @ tkappa).with_tag(tag)
    rep.a_c = a_c
    alg_c = AlgebraWitness(monad, asm_c, a_c)
    rep.checks += [LawCheck(f"(X_c, a_c): {chk.name}", chk.holds, chk.witness) for chk in alg_c.algebra_laws()]
    rep.checks.append(LawCheck("a_c is a base hom", not validate_hom(a_c)))

    psi = tr @ c
    rep.psi = psi
    psi_inv = a @ tkappa
    rep.checks.append(is_identity("ψ⁻¹·ψ = 1", lambda: psi_inv @ psi))
    rep.checks.append(is_identity("ψ·ψ⁻¹ = 1", lambda: psi @ psi_inv))
    inv = inverse(psi)
    rep.checks.append(LawCheck("ψ is an order isomorphism",
                               inv is not None and not validate_hom(psi.with_tag(Category.POSET))
                               and not validate_hom(inv.with_tag(Category.POSET))))

    up_c = asm_c.lifted
    tpsi = apply_hom(monad, psi, asm, up_c)
    gamma = apply_hom(monad, a_c, up_c, asm_c)
    te_c = t_unit(asm_c)
    ttr = apply_hom(monad, tr, asm.lifted, up_c)
    ta = apply_hom(monad, a, asm.lifted, asm)
    rep.checks += [
        equal("ψ·a = m·Tψ", lambda: psi @ a, lambda: asm_c.mult @ tpsi),
        equal("Tψ·c = Te·ψ", lambda: tpsi @ c, lambda: te_c @ psi),
        equal("ψ·b = γ·Tψ", lambda: psi @ b, lambda: gamma @ tpsi),
        equal("ψ·b = Tr", lambda: psi @ b, tr),
        equal("Tr·Ta = γ·TTr", lambda: tr @ ta, lambda: gamma @ ttr),
    ]
    rep.isomorphic = are_isomorphic(asm_c.total, x) is not None
    return rep


def t1_morphism_checks(f: Hom, w1: T1AlgebraWitness, w2: T1AlgebraWitness) -> list[LawCheck]:
    monad = w1.monad
    tf = apply_hom(monad, f, w1.assembly, w2.assembly)
    return [
        LawCheck("f is a base hom", not validate_hom(f.with_tag(monad.base_tag))),
        equal("f·a = a'·Tf", lambda: f @ w1.a, lambda: w2.a @ tf),
        equal("Tf·c = c'·f", lambda: tf @ w1.c, lambda: w2.c @ f),
        equal("f·b = b'·Tf", lambda: f @ w1.b, lambda: w2.b @ tf),
    ]


def morphism_transport(f: Hom, source: EquivalenceReport, target: EquivalenceReport) -> Hom:
    """The unique f_c with f_c·r = r'·f and f·κ = κ'·f_c."""
    bad = [c for c in t1_morphism_checks(f, source.witness, target.witness) if not c.holds]
    if bad:
        raise NotFactorable(f"not a T1-algebra morphism: {bad[0].name}", bad[0].witness)
    pos = {old: new for new, old in enumerate(target.kappa.map)}
    out = []
    for el in range(source.xc.size):
        v = f.map[source.kappa.map[el]]
        if v not in pos:
            raise NotFactorable("f·κ does not factor through κ'", source.xc.labels[el])
        out.append(pos[v])
    fc = Hom(source.xc, target.xc, out, source.witness.monad.base_tag)
    if (fc @ source.r) != (target.r @ f):
        raise NotFactorable("f_c·r ≠ r'·f")
    return fc


def transport_checks(fc: Hom, f: Hom, source: EquivalenceReport, target: EquivalenceReport) -> list[LawCheck]:
    monad = source.witness.monad
    tfc = apply_hom(monad, fc)
    return [
        equal("f_c·r = r'·f", lambda: fc @ source.r, lambda: target.r @ f),
        equal("f·κ = κ'·f_c", lambda: f @ source.kappa, lambda: target.kappa @ fc),
        equal("f_c·a_c = a_c'·Tf_c", lambda: fc @ source.a_c, lambda: target.a_c @ tfc),
    ]
