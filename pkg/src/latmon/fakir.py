"""The first idempotent approximation T^φ of a monad, and Stone-type round-trips.

T^φX is the equalizer of Te_X and e_TX inside TX.  For both monads here it
consists of the principal subsets (all of TX for ideals of a finite
lattice), so T^φ is isomorphic to the identity monad.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .diagrams import LawCheck, SplitDiagram, equal, is_identity
from .errors import NotClosed, NotFree
from .monads import MonadAssembly, MonadInstance, apply_hom, apply_object, t_unit
from .order import FinitePoset, Hom, are_isomorphic, inverse, is_isomorphism, subcarrier, validate_hom
from .subsets import bit, bits
from .tower import AlgebraWitness, below_relation, self_related


@dataclass(frozen=True, eq=False)
class FakirAssembly:
    monad: MonadInstance
    assembly: MonadAssembly
    carrier: FinitePoset
    phi: Hom
    unit: Hom

    @property
    def base(self) -> FinitePoset:
        return self.assembly.base

    @property
    def members(self) -> int:
        return self.phi.image()

    def restrict(self, t: int) -> int:
        """Position in T^φX of the TX element ``t`` (which must be a member)."""
        return self._position[t]

    @cached_property
    def _position(self) -> dict:
        return {t: i for i, t in enumerate(self.phi.map)}

    @cached_property
    def lifted(self) -> FakirAssembly:
        """T^φ applied to T^φX."""
        return fakir_object(self.monad, self.carrier, self.assembly.budget)

    @cached_property
    def horizontal(self) -> Hom:
        """φ∘φ : T^φT^φX → TTX, computed as T(φ_X)·φ_{T^φX}."""
        up = self.lifted
        tphi = apply_hom(self.monad, self.phi, up.assembly, self.assembly.lifted)
        return tphi @ up.phi

    @cached_property
    def horizontal_other(self) -> Hom:
        """φ∘φ computed the other way, as φ_TX·T^φ(φ_X)."""
        big = fakir_object(self.monad, self.assembly.total, self.assembly.budget)
        return big.phi @ phi_functor(self.monad, self.phi, self.lifted, big)

    @cached_property
    def mult(self) -> Hom:
        """m^φ, the unique map with φ·m^φ = m·(φ∘φ)."""
        flat = self.assembly.mult @ self.horizontal
        out = []
        for i, t in enumerate(flat.map):
            if t not in self._position:
                raise NotClosed("m·(φ∘φ) lands outside T^φX", self.lifted.carrier.labels[i])
            out.append(self._position[t])
        return Hom(self.lifted.carrier, self.carrier, out, self.monad.base_tag)

    def defining_equations(self) -> list[LawCheck]:
        return [
            equal("φ·e^φ = e", lambda: self.phi @ self.unit, self.assembly.unit),
            equal("φ·m^φ = m·(φ∘φ)", lambda: self.phi @ self.mult,
                  lambda: self.assembly.mult @ self.horizontal),
            equal("T(φ)·φ = φ·T^φ(φ)", self.horizontal, lambda: self.horizontal_other),
        ]


def fakir_object(monad: MonadInstance, x: FinitePoset, budget: int | None = None) -> FakirAssembly:
    """T^φX = {t ∈ TX | Te_X(t) = e_TX(t)} as a validated sub-carrier of TX."""
    asm = apply_object(monad, x) if budget is None else apply_object(monad, x, budget)
    te, et = asm.unit_pair
    mask = sum(bit(t) for t in range(asm.size) if te[t] == et[t])
    sub, phi = subcarrier(asm.total, mask, monad.base_tag)
    pos = {t: i for i, t in enumerate(phi.map)}
    out = []
    for el, t in enumerate(asm.unit.map):
        if t not in pos:
            raise NotClosed("e_X lands outside T^φX", x.labels[el])
        out.append(pos[t])
    unit = Hom(x, sub, out, monad.base_tag)
    bad = validate_hom(unit)
    if bad:
        raise NotClosed(bad[0].law, bad[0].witness)
    return FakirAssembly(monad, asm, sub, phi, unit)


def phi_functor(monad: MonadInstance, f: Hom, source: FakirAssembly | None = None,
                target: FakirAssembly | None = None) -> Hom:
    """T^φf, the restriction of Tf to the Fakir sub-carriers."""
    src = source or fakir_object(monad, f.source)
    tgt = target or fakir_object(monad, f.target)
    tf = apply_hom(monad, f, src.assembly, tgt.assembly)
    out = []
    for i, t in enumerate(src.phi.map):
        v = tf.map[t]
        if v not in tgt._position:
            raise NotClosed("Tf leaves the Fakir sub-carrier", src.carrier.labels[i])
        out.append(tgt._position[v])
    return Hom(src.carrier, tgt.carrier, out, monad.base_tag)


@dataclass
class FakirReport:
    monad: str
    sizes: dict
    checks: list[LawCheck] = field(default_factory=list)
    unit_iso: bool = False
    t_unit_iso: bool = False

    @property
    def ok(self) -> bool:
        return self.unit_iso and self.t_unit_iso and all(c.holds for c in self.checks)


def fakir_laws(fa: FakirAssembly) -> list[LawCheck]:
    """Unit and associativity laws of (T^φ, m^φ, e^φ) at one object, exhaustively."""
    monad = fa.monad
    up = fa.lifted
    upup = up.lifted
    m, m_up = fa.mult, up.mult
    t_e = phi_functor(monad, fa.unit, fa, up)
    t_m = phi_functor(monad, m, upup, up)
    return [
        is_identity("m^φ·e^φT^φ = 1", lambda: m @ up.unit),
        is_identity("m^φ·T^φe^φ = 1", lambda: m @ t_e),
        equal("m^φ·T^φm^φ = m^φ·m^φT^φ", lambda: m @ t_m, lambda: m @ m_up),
    ]


def check_unit_iso(monad: MonadInstance, x: FinitePoset) -> Hom | None:
    """Inverse of e^φ_X when it is an isomorphism, else None."""
    e = fakir_object(monad, x).unit
    return inverse(e) if is_isomorphism(e) else None


def check_Tunit_iso(monad: MonadInstance, x: FinitePoset) -> Hom | None:
    """Inverse of T(e^φ_X) when it is an isomorphism, else None."""
    te = apply_hom(monad, fakir_object(monad, x).unit)
    return inverse(te) if is_isomorphism(te) else None


def fakir_report(monad: MonadInstance, x: FinitePoset) -> FakirReport:
    fa = fakir_object(monad, x)
    rep = FakirReport(monad.name, {"X": x.size, "TX": fa.assembly.size, "TphiX": fa.carrier.size})
    rep.checks += fa.defining_equations() + fakir_laws(fa)
    rep.unit_iso = check_unit_iso(monad, x) is not None
    rep.t_unit_iso = check_Tunit_iso(monad, x) is not None
    return rep


def fixes_algebras(w: AlgebraWitness) -> list[LawCheck]:
    """The split equalizer X →e TX ⇉(Te, eT) TTX split by a and Ta; e^φ_X iso."""
    monad, asm = w.monad, w.assembly
    ta = apply_hom(monad, w.structure, asm.lifted, asm)
    d = SplitDiagram("equalizer", f=t_unit(asm), g=asm.lifted.unit, t=ta, q=asm.unit, s=w.structure,
                     names=("Te", "eT", "Ta", "e", "a"))
    checks = d.verify()
    fa = fakir_object(monad, w.carrier)
    return checks + [LawCheck("e^φ is an isomorphism", is_isomorphism(fa.unit))]


# ---------------------------------------------------------------- Stone round-trip


def generators(monad: MonadInstance, lat: FinitePoset) -> int:
    """Mask of the compact (ideal) or supercompact (downset) elements."""
    return self_related(below_relation(monad, lat))


@dataclass
class StoneReport:
    monad: str
    generators: list
    checks: list[LawCheck] = field(default_factory=list)
    comparison: Hom | None = None

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)


def stone_comparison(monad: MonadInstance, x: FinitePoset) -> tuple[FinitePoset, Hom]:
    """G(TX) with the corestricted unit u_X : X → G(TX)."""
    asm = apply_object(monad, x)
    g_mask = generators(monad, asm.total)
    g, incl = subcarrier(asm.total, g_mask, monad.base_tag)
    pos = {t: i for i, t in enumerate(incl.map)}
    out = [pos.get(t, -1) for t in asm.unit.map]
    if -1 in out or len(set(out)) != g.size:
        raise NotFree("unit does not map onto the generators")
    return g, Hom(x, g, out, monad.base_tag)


def stone_roundtrip(monad: MonadInstance, x: FinitePoset) -> StoneReport:
    asm = apply_object(monad, x)
    rep = StoneReport(monad.name, [])
    try:
        g, u = stone_comparison(monad, x)
    except (NotClosed, NotFree) as exc:
        rep.checks.append(LawCheck("G(TX) is the image of the unit", False, str(exc)))
        return rep
    rep.generators = list(g.labels)
    rep.comparison = u
    rep.checks.append(LawCheck("u: X → G(TX) is an isomorphism", is_isomorphism(u)))
    rep.checks.append(LawCheck("u is a base hom", not validate_hom(u)))
    tg = apply_object(monad, g).total
    rep.checks.append(LawCheck("T(G(TX)) ≅ TX", are_isomorphic(tg, asm.total) is not None))
    return rep


def naturality(monad: MonadInstance, f: Hom) -> LawCheck:
    """G(Tf)·u_X = u_Y·f, with G(Tf) the restriction of Tf to generators."""
    gx, ux = stone_comparison(monad, f.source)
    gy, uy = stone_comparison(monad, f.target)
    src, tgt = apply_object(monad, f.source), apply_object(monad, f.target)
    tf = apply_hom(monad, f, src, tgt)
    gpos = {t: i for i, t in enumerate(sorted(bits(generators(monad, tgt.total))))}
    gsrc = sorted(bits(generators(monad, src.total)))
    out = []
    for t in gsrc:
        v = tf.map[t]
        if v not in gpos:
            return LawCheck("G(Tf) preserves generators", False, src.total.labels[t])
        out.append(gpos[v])
    gtf = Hom(gx, gy, out, monad.base_tag)
    return equal("G(Tf)·u = u·f", lambda: gtf @ ux, lambda: uy @ f)


def supercoherent_generators(monad: MonadInstance, lat: FinitePoset) -> tuple[FinitePoset, Hom]:
    """Present a frame as T(G) for its generators G, or raise NotFree."""
    gmask = generators(monad, lat)
    try:
        g, incl = subcarrier(lat, gmask, monad.base_tag)
    except NotClosed as exc:
        raise NotFree(f"not supercoherent as presented ({exc})") from None
    iso = are_isomorphic(apply_object(monad, g).total, lat)
    if iso is None:
        raise NotFree("not supercoherent as presented (T(G) differs)")
    return g, incl
