"""The full verification suite over the corpus, one entry per acceptance criterion.

Each ``criterion_*`` function returns a dict with ``passed`` (the criterion
as stated), ``violations`` (identities that should hold but failed) and a
``summary`` of counts.  ``run_suite`` collects all of them into one
deterministic report.
"""

from __future__ import annotations

import itertools

from .corpus import chain, default_corpus, enumerate_posets, m3, n5
from .errors import BudgetExceeded, IdentityViolated, NoStructure
from .fakir import fakir_report, fixes_algebras, naturality, stone_roundtrip
from .monads import DOWNSET, IDEAL, MonadInstance, check_lemma_adjoint_chain, check_monad_laws, lax_counterexample
from .order import Category, FinitePoset, Hom, check_adjoint, right_adjoint
from .projectives import default_family, free_witness, projective_report
from .reports import SCHEMA, tower_report
from .search import enumerate_homs
from .subsets import bits, iter_downsets
from .tower import build_algebra, totally_below, way_below

NATURALITY_HOMS = 100


def corpus_for(monad: MonadInstance):
    return default_corpus("mlat" if monad is DOWNSET else "dlat")


def _result(n: int, title: str, violations: list, summary: dict, passed: bool | None = None) -> dict:
    return {
        "criterion": n,
        "title": title,
        "passed": (not violations) if passed is None else passed,
        "violations": violations,
        "summary": summary,
    }


def criterion_1() -> dict:
    viol, summary = [], {}
    for monad in (DOWNSET, IDEAL):
        objs = tttx = 0
        for e in corpus_for(monad):
            r = check_monad_laws(monad, e.carrier)
            objs += 1
            tttx += r.enumerated
            if not r.ok:
                viol.append({"monad": monad.name, "object": e.name,
                             "unit": r.unit_violations[:3], "associativity": r.assoc_violations[:3]})
        summary[monad.name] = {"objects": objs, "tttx_elements_checked": tttx}
    return _result(1, "monad laws", viol, summary)


def criterion_2() -> dict:
    viol, summary = [], {}
    for monad in (DOWNSET, IDEAL):
        objs = sections = 0
        for e in corpus_for(monad):
            objs += 1
            t = lax_counterexample(monad, e.carrier)
            lem = check_lemma_adjoint_chain(monad, e.carrier)
            sections += len(lem.sections)
            if t is not None or not lem.ok:
                viol.append({"monad": monad.name, "object": e.name, "lax": t is None,
                             "te_left_of_m": lem.te_left_of_m, "m_left_of_et": lem.m_left_of_et})
        summary[monad.name] = {"objects": objs, "sections_checked": sections}
    return _result(2, "lax idempotency", viol, summary)


def join_oracle(x: FinitePoset, subsets) -> list[int]:
    """Left adjoint of the unit by direct search: least x with S ⊆ ↓x."""
    out = []
    for s in subsets:
        ub = [v for v in range(x.size) if s & ~x.down[v] == 0]
        least = [v for v in ub if all(x.leq(v, w) for w in ub)]
        out.append(least[0])
    return out


def criterion_3() -> dict:
    viol, rejected, accepted = [], {}, 0
    entries = default_corpus("lattice")
    for e in entries:
        x = e.carrier
        try:
            w = build_algebra(DOWNSET, x)
        except NoStructure as exc:
            rejected[e.name] = {"law": exc.law, "witness": list(exc.witness) if exc.witness else None}
            if x.distributive:
                viol.append({"object": e.name, "error": "distributive lattice rejected"})
            continue
        accepted += 1
        if not x.distributive:
            viol.append({"object": e.name, "error": "non-distributive lattice accepted"})
        if list(w.structure.map) != join_oracle(x, w.assembly.subsets):
            viol.append({"object": e.name, "error": "a differs from the adjoint oracle"})
    for name, x in (("M3", m3()), ("N5", n5())):
        try:
            build_algebra(DOWNSET, x)
            viol.append({"object": name, "error": "accepted"})
        except NoStructure as exc:
            rejected[name] = {"law": exc.law, "witness": list(exc.witness)}
    return _result(3, "algebra characterization", viol,
                   {"objects": len(entries), "accepted": accepted, "rejected": rejected})


def criterion_4() -> dict:
    viol, summary = [], {}
    literal = True
    for monad in (IDEAL, DOWNSET):
        passed, stopped = [], {}
        for e in default_corpus("dlat", 6):
            r = tower_report(monad, e.name, e.carrier)
            if r["verdict"] == "pass":
                passed.append(e.name)
            elif r["verdict"] == "negative":
                stopped[e.name] = {"stage": r["stage"], "law": r["law"]}
                literal = False
            else:
                viol.append({"monad": monad.name, "object": e.name,
                             "failed": [c["name"] for c in r.get("checks", []) if not c["holds"]][:5]})
                literal = False
        summary[monad.name] = {"complete": passed, "stopped": stopped}
    fixture = tower_report(DOWNSET, "C3", chain(3))
    xc_ok = fixture.get("sizes", {}).get("X_c") == 2 and len(fixture["X_c"]["covers"]) == 1
    if not xc_ok:
        viol.append({"monad": "downset", "object": "C3", "error": "X_c is not the 2-chain"})
    summary["fixture_C3_X_c"] = fixture.get("X_c")
    return _result(4, "tower pipeline", viol, summary, passed=literal and not viol)


def criterion_5() -> dict:
    viol, summary = [], {}
    for monad in (DOWNSET, IDEAL):
        objs = algebras = 0
        for e in corpus_for(monad):
            objs += 1
            r = fakir_report(monad, e.carrier)
            failed = [c.name for c in r.checks if not c.holds]
            if not r.unit_iso:
                failed.append("e^φ iso")
            if not r.t_unit_iso:
                failed.append("Te^φ iso")
            try:
                w = build_algebra(monad, e.carrier)
            except NoStructure:
                w = None
            if w is not None:
                algebras += 1
                try:
                    failed += [c.name for c in fixes_algebras(w) if not c.holds]
                except IdentityViolated as exc:
                    failed.append(exc.which)
            if failed:
                viol.append({"monad": monad.name, "object": e.name, "failed": failed})
        summary[monad.name] = {"objects": objs, "algebras": algebras}
    return _result(5, "Fakir approximation", viol, summary)


def corpus_homs(monad: MonadInstance, limit: int) -> list[Hom]:
    """Base-category homs between corpus objects, smallest carriers first."""
    objs = [e.carrier for e in corpus_for(monad) if e.size <= 5]
    objs.sort(key=lambda x: x.size)
    out = []
    for x, y in itertools.product(objs, repeat=2):
        for f in enumerate_homs(x, y, monad.base_tag):
            out.append(f)
            if len(out) >= limit:
                return out
    return out


def criterion_6(hom_count: int = 2 * NATURALITY_HOMS) -> dict:
    viol, summary = [], {}
    for monad in (DOWNSET, IDEAL):
        objs = 0
        for e in corpus_for(monad):
            objs += 1
            r = stone_roundtrip(monad, e.carrier)
            if not r.ok:
                viol.append({"monad": monad.name, "object": e.name,
                             "failed": [c.name for c in r.checks if not c.holds]})
        homs = corpus_homs(monad, hom_count)
        bad = 0
        for f in homs:
            if not naturality(monad, f).holds:
                bad += 1
        if bad:
            viol.append({"monad": monad.name, "naturality_failures": bad})
        if len(homs) < NATURALITY_HOMS:
            viol.append({"monad": monad.name, "error": f"only {len(homs)} corpus homs"})
        summary[monad.name] = {"objects": objs, "naturality_squares": len(homs)}
    return _result(6, "Stone round-trip", viol, summary)


def criterion_7() -> dict:
    viol, summary = [], {}
    for monad in (DOWNSET, IDEAL):
        fam = default_family(monad)
        verdicts, frees, skipped = {}, 0, []
        for e in corpus_for(monad):
            try:
                w = build_algebra(monad, e.carrier)
            except NoStructure:
                continue
            r = projective_report(w, fam)
            verdicts[e.name] = list(r.verdicts)
            if not r.agree:
                viol.append({"monad": monad.name, "object": e.name, "verdicts": list(r.verdicts)})
            try:
                fw = free_witness(monad, e.carrier)
            except BudgetExceeded:
                skipped.append(e.name)
                continue
            frees += 1
            fr = projective_report(fw, fam)
            if fr.verdicts != (True, True, True):
                viol.append({"monad": monad.name, "object": f"T({e.name})", "verdicts": list(fr.verdicts)})
        summary[monad.name] = {"algebras": verdicts, "free_algebras_checked": frees,
                               "free_algebras_over_budget": skipped}
    return _result(7, "projectives", viol, summary)


def totally_below_oracle(lat) -> tuple[int, ...]:
    """y ⋘ x iff y lies in every downset whose join is above x."""
    rel = [(1 << lat.size) - 1] * lat.size
    for d in iter_downsets(lat.down):
        j = lat.join_of(d)
        for x in bits(lat.down[j]):
            rel[x] &= d
    return tuple(rel)


def way_below_oracle(lat) -> tuple[int, ...]:
    """y ≪ x iff every directed D with x ≤ ⋁D has some d ≥ y."""
    n = lat.size
    rel = [(1 << n) - 1] * n
    for s in range(1, 1 << n):
        el = list(bits(s))
        if not all(any(lat.leq(a, c) and lat.leq(b, c) for c in el) for a in el for b in el):
            continue
        above = 0
        for d in el:
            above |= lat.down[d]
        for x in bits(lat.down[lat.join_of(s)]):
            rel[x] &= above
    return tuple(rel)


def adjoint_oracle(f: Hom) -> Hom | None:
    for g in enumerate_homs(f.target, f.source, Category.POSET):
        if check_adjoint(f, g):
            return g
    return None


def criterion_8() -> dict:
    viol = []
    lattices = default_corpus("lattice", 6)
    for e in lattices:
        lat = e.carrier
        if totally_below(lat) != totally_below_oracle(lat):
            viol.append({"object": e.name, "relation": "totally-below"})
        if way_below(lat) != way_below_oracle(lat):
            viol.append({"object": e.name, "relation": "way-below"})
    small = [e.carrier for n in range(1, 4) for e in enumerate_posets(n)]
    small += [e.carrier for e in default_corpus("lattice", 4) if e.size == 4]
    maps = 0
    for p, q in itertools.product(small, repeat=2):
        for f in enumerate_homs(p, q, Category.POSET):
            maps += 1
            if right_adjoint(f) != adjoint_oracle(f):
                viol.append({"source": list(p.labels), "target": list(q.labels), "map": list(f.map)})
    return _result(8, "oracle equivalences", viol, {"lattices": len(lattices), "maps_checked": maps})


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8)


def run_suite() -> dict:
    results = [c() for c in CRITERIA]
    return {
        "schema": SCHEMA,
        "command": "suite",
        "criteria": results,
        "verdict": "violation" if any(r["violations"] for r in results) else "pass",
    }
