import pytest

from latmon.corpus import chain, default_corpus, m3
from latmon.diagrams import apply_functor
from latmon.errors import IdentityViolated, NoStructure, NotFactorable
from latmon.monads import DOWNSET, IDEAL, apply_object
from latmon.order import Hom, are_isomorphic
from latmon.tower import (
    algebra_diagram,
    build_algebra,
    build_coalgebra,
    closed_formula_t1,
    factor_through_unit,
    main_equivalence_pipeline,
    morphism_transport,
    present_algebra,
    present_coalgebra,
    present_t1,
    run_tower,
    t1_morphism_checks,
    totally_below,
    transport_checks,
    way_below,
)

DLATS = [e.carrier for e in default_corpus("dlat", 6)]


def totally_below_by_definition(lat):
    """y ⋘ x iff every downset D with x ≤ ⋁D contains y (all downsets enumerated)."""
    asm = apply_object(DOWNSET, lat)
    rel = [0] * lat.size
    for x in range(lat.size):
        for y in range(lat.size):
            covering = [d for d in asm.subsets if lat.leq(x, lat.join_of(d))]
            if all(d >> y & 1 for d in covering):
                rel[x] |= 1 << y
    return tuple(rel)


def test_totally_below_small(c3, b2):
    assert totally_below(c3) == (0b000, 0b011, 0b111)
    assert totally_below(b2) == (0, 0b0011, 0b0101, 0b0111)


@pytest.mark.parametrize("lat", DLATS + [m3()], ids=lambda x: f"n{x.size}")
def test_totally_below_matches_definition(lat):
    assert totally_below(lat) == totally_below_by_definition(lat)


def test_way_below_is_order(b2):
    assert way_below(b2) == tuple(b2.down)


def test_c3_tower_values(c3):
    w = run_tower(DOWNSET, c3)
    assert [w.assembly.subsets[t] for t in w.c.map] == [0, 0b011, 0b111]
    assert w.b.map == (0, 1, 1, 2)
    assert w.coalgebra.forced is True
    assert not w.closed_formula_agrees
    assert closed_formula_t1(w.coalgebra).map[1] == 0


def test_non_frame_rejected(diamond_m3):
    with pytest.raises(NoStructure) as exc:
        build_algebra(DOWNSET, diamond_m3)
    assert exc.value.stage == "algebra"
    assert "meet preservation" in str(exc.value)


def test_downset_coalgebra_missing_on_b2(b2):
    w = build_algebra(DOWNSET, b2)
    with pytest.raises(NoStructure) as exc:
        build_coalgebra(w)
    assert exc.value.stage == "coalgebra"


@pytest.mark.parametrize("d", DLATS, ids=lambda x: f"n{x.size}")
def test_ideal_tower_everywhere(d):
    w = run_tower(IDEAL, d)
    assert w.closed_formula_agrees
    assert main_equivalence_pipeline(w).ok


def test_presentations_verify(c3):
    w = run_tower(DOWNSET, c3)
    for d in (present_algebra(w.coalgebra.algebra), present_coalgebra(w.coalgebra), present_t1(w)):
        assert len(d.identities()) == 4 and d.holds()


def test_swapped_diagram_rejected(c3):
    d = algebra_diagram(build_algebra(DOWNSET, c3))
    assert d.holds()
    with pytest.raises(IdentityViolated):
        d.swapped().verify()


def test_split_diagrams_are_absolute(c3):
    d = algebra_diagram(build_algebra(DOWNSET, c3))
    assert apply_functor(DOWNSET, d).holds()


def test_factor_through_unit(c3, b2):
    asm = apply_object(IDEAL, b2)
    assert factor_through_unit(IDEAL, b2, asm.mult).map == (0, 1, 2, 3)
    with pytest.raises(NotFactorable):
        factor_through_unit(DOWNSET, c3, apply_object(DOWNSET, c3).mult)


def test_pipeline_on_c3(c3):
    rep = main_equivalence_pipeline(run_tower(DOWNSET, c3))
    assert rep.ok, rep.failures()
    assert rep.xc.labels == ("1", "2")
    assert rep.kappa.map == (1, 2) and rep.r.map == (0, 0, 1)


def test_identity_transport(c3):
    w = run_tower(DOWNSET, c3)
    rep = main_equivalence_pipeline(w)
    f = Hom.identity(c3, DOWNSET.base_tag)
    assert all(c.holds for c in t1_morphism_checks(f, w, w))
    fc = morphism_transport(f, rep, rep)
    assert fc.is_identity()
    assert all(c.holds for c in transport_checks(fc, f, rep, rep))


def test_transport_between_chains():
    ws = {n: run_tower(IDEAL, chain(n)) for n in (2, 3)}
    reps = {n: main_equivalence_pipeline(w) for n, w in ws.items()}
    f = Hom(chain(2), chain(3), [0, 2], IDEAL.base_tag)
    fc = morphism_transport(f, reps[2], reps[3])
    assert all(c.holds for c in transport_checks(fc, f, reps[2], reps[3]))


def test_non_morphism_not_transported():
    w = run_tower(DOWNSET, chain(3))
    rep = main_equivalence_pipeline(w)
    f = Hom(chain(3), chain(3), [0, 2, 2], DOWNSET.base_tag)
    with pytest.raises(NotFactorable):
        morphism_transport(f, rep, rep)


def test_downset_on_chain_two():
    w = run_tower(DOWNSET, chain(2))
    assert main_equivalence_pipeline(w).ok


def test_downset_tower_completes_exactly_on_free_frames():
    frees = [apply_object(DOWNSET, e.carrier).total for e in default_corpus("mlat", 5)]
    for d in DLATS:
        free = any(f.size == d.size and are_isomorphic(f, d) is not None for f in frees)
        try:
            run_tower(DOWNSET, d)
            completed = True
        except NoStructure:
            completed = False
        assert completed == free, d.labels
