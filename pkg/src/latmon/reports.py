"""JSON-ready reports for each command.

Every report is a plain dict with ``"schema": 1`` and a ``verdict`` of
``pass``, ``negative`` (a correct negative answer, such as a non-frame
having no algebra structure) or ``violation`` (an identity that should
hold failed).  Nothing in a report depends on wall-clock time unless the
caller adds timings.
"""

from __future__ import annotations

from .diagrams import LawCheck
from .errors import IdentityViolated, NoStructure, NotClosed, NotFactorable, NotFree
from .fakir import fakir_report, fixes_algebras, stone_roundtrip, supercoherent_generators
from .latfile import strongest_kind
from .monads import (
    DEFAULT_BUDGET,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MonadInstance,
    apply_object,
    check_lax_idempotent,
    check_lemma_adjoint_chain,
    check_monad_laws,
    lax_counterexample,
    lax_is_equality,
)
from .order import FinitePoset, Hom, distributivity_counterexample, frame_counterexample, lattice_view
from .projectives import projective_report
from .tower import algebra_diagram, build_algebra, build_coalgebra, build_t1_algebra, main_equivalence_pipeline

SCHEMA = 1


def base(command: str, name: str, monad: MonadInstance | None = None) -> dict:
    out = {"schema": SCHEMA, "command": command, "object": name}
    if monad is not None:
        out["monad"] = monad.name
    return out


def checks_json(checks) -> list[dict]:
    return [c.as_dict() for c in checks]


def verdict_of(checks) -> str:
    return "pass" if all(c.holds for c in checks) else "violation"


def hom_json(f: Hom) -> dict:
    return {f.source.labels[i]: f.target.labels[j] for i, j in enumerate(f.map)}


def carrier_json(x: FinitePoset) -> dict:
    return {"elements": list(x.labels), "covers": [[x.labels[a], x.labels[b]] for a, b in x.covers()]}


def validate_report(name: str, x: FinitePoset, declared: str) -> dict:
    out = base("validate", name)
    out.update(verdict="pass", kind=declared, strongest_kind=strongest_kind(x), sizes={"X": x.size})
    if declared in ("lattice", "dlat", "mlat"):
        lat = lattice_view(x)
        d = distributivity_counterexample(lat)
        f = frame_counterexample(lat)
        out["distributive"] = d is None
        out["frame"] = f is None
        if d is not None:
            out["witnesses"] = {"distributivity": [lat.labels[i] for i in d]}
    return out


def apply_report(monad: MonadInstance, name: str, x: FinitePoset, iterate: int = 1,
                 budget: int = DEFAULT_BUDGET) -> dict:
    out = base("apply", name, monad)
    levels = []
    cur = x
    for k in range(1, iterate + 1):
        asm = apply_object(monad, cur, budget)
        cur = asm.total
        levels.append({"k": k, "size": cur.size, **carrier_json(cur)})
    out.update(verdict="pass", sizes={"X": x.size, **{f"T^{lv['k']}X": lv["size"] for lv in levels}},
               levels=levels)
    return out


def laws_report(monad: MonadInstance, name: str, x: FinitePoset, budget: int = DEFAULT_BUDGET,
                samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> dict:
    r = check_monad_laws(monad, x, budget, samples, seed)
    out = base("laws", name, monad)
    out.update(
        verdict="pass" if r.ok else "violation",
        sizes=r.sizes,
        enumerated=r.enumerated,
        sampled=r.sampled,
        complete=r.complete,
        seed=seed if r.sampled else None,
        witnesses={"unit": [list(v) for v in r.unit_violations], "associativity": r.assoc_violations[:10]},
    )
    return out


def lax_report(monad: MonadInstance, name: str, x: FinitePoset) -> dict:
    asm = apply_object(monad, x)
    lem = check_lemma_adjoint_chain(monad, x)
    t = lax_counterexample(monad, x)
    checks = [
        LawCheck("Te ≤ eT", t is None, None if t is None else asm.total.labels[t]),
        LawCheck("Te ⊣ m agrees", lem.te_left_of_m == lem.lax),
        LawCheck("m ⊣ eT agrees", lem.m_left_of_et == lem.lax),
        LawCheck("every section of e is left adjoint to e", lem.sections_adjoint),
        LawCheck("every section of e is an algebra", lem.sections_algebras),
    ]
    out = base("lax", name, monad)
    out.update(verdict=verdict_of(checks), sizes={"X": x.size, "TX": asm.size},
               lax_idempotent=check_lax_idempotent(monad, x), equality=lax_is_equality(monad, x),
               sections=len(lem.sections), note=lem.note, checks=checks_json(checks))
    return out


def tower_report(monad: MonadInstance, name: str, x: FinitePoset) -> dict:
    out = base("tower", name, monad)
    asm = apply_object(monad, x)
    out["sizes"] = {"X": x.size, "TX": asm.size}
    try:
        alg = build_algebra(monad, x)
    except NoStructure as exc:
        out.update(verdict="negative", stage="algebra", note="not a frame; tower stops",
                   law=exc.law, witness=_w(exc.witness))
        return out
    checks = list(alg.evidence) + algebra_diagram(alg).identities()
    try:
        co = build_coalgebra(alg)
    except NoStructure as exc:
        out.update(verdict="negative" if all(c.holds for c in checks) else "violation",
                   stage="coalgebra", note="no coalgebra structure; tower stops",
                   law=exc.law, witness=_w(exc.witness), checks=checks_json(checks))
        return out
    checks += list(co.evidence)
    try:
        t1 = build_t1_algebra(co)
    except NoStructure as exc:
        out.update(verdict="violation", stage="t1", law=exc.law, witness=_w(exc.witness),
                   checks=checks_json(checks))
        return out
    checks += list(t1.evidence)
    try:
        rep = main_equivalence_pipeline(t1)
    except (NotFactorable, NotClosed) as exc:
        out.update(verdict="violation", stage="equivalence", law=str(exc), checks=checks_json(checks))
        return out
    checks += rep.checks
    checks.append(LawCheck("T(X_c) ≅ X", rep.isomorphic))
    out.update(
        verdict=verdict_of(checks),
        stage="complete",
        a=hom_json(alg.structure),
        c=hom_json(co.costructure),
        b=hom_json(t1.structure),
        coalgebra_forced=co.forced,
        t1_closed_formula_agrees=t1.closed_formula_agrees,
        X_c=carrier_json(rep.xc),
        psi=hom_json(rep.psi),
        checks=checks_json(checks),
    )
    out["sizes"]["X_c"] = rep.xc.size
    return out


def fakir_json(monad: MonadInstance, name: str, x: FinitePoset) -> dict:
    r = fakir_report(monad, x)
    checks = list(r.checks)
    checks.append(LawCheck("e^φ is an isomorphism", r.unit_iso))
    checks.append(LawCheck("T(e^φ) is an isomorphism", r.t_unit_iso))
    out = base("fakir", name, monad)
    try:
        alg = build_algebra(monad, x)
    except NoStructure:
        alg = None
    if alg is not None:
        try:
            checks += fixes_algebras(alg)
        except IdentityViolated as exc:
            checks.append(LawCheck(exc.which, False, _w(exc.witness)))
    out.update(verdict=verdict_of(checks), sizes=r.sizes, algebra=alg is not None,
               idempotency="idempotent, essentially identity" if r.unit_iso and r.t_unit_iso else "not idempotent",
               checks=checks_json(checks))
    return out


def stone_json(monad: MonadInstance, name: str, x: FinitePoset) -> dict:
    r = stone_roundtrip(monad, x)
    out = base("stone", name, monad)
    out.update(verdict=verdict_of(r.checks), generators=r.generators, checks=checks_json(r.checks))
    try:
        build_algebra(monad, x)
        is_frame = True
    except NoStructure:
        is_frame = False
    if is_frame:
        try:
            g, _ = supercoherent_generators(monad, x)
            out["presentation"] = {"free": True, "generators": list(g.labels)}
        except NotFree as exc:
            out["presentation"] = {"free": False, "note": str(exc)}
    return out


def projective_json(monad: MonadInstance, name: str, x: FinitePoset, family=None) -> dict:
    out = base("projective", name, monad)
    try:
        alg = build_algebra(monad, x)
    except NoStructure as exc:
        out.update(verdict="negative", note="not an algebra", law=exc.law, witness=_w(exc.witness))
        return out
    r = projective_report(alg, family)
    co, ret, lift = r.verdicts
    out.update(
        verdict="pass" if r.agree else "violation",
        projective=co and ret and lift,
        coalgebra=co,
        coalgebra_exhaustive=r.coalgebra.exhaustive,
        retraction=ret,
        lifting=lift,
        family=r.lifting.family,
        morphisms=r.lifting.morphisms,
        scope="projective relative to family",
    )
    return out


def _w(witness):
    if witness is None or isinstance(witness, str):
        return witness
    return list(witness)
