import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latmon.corpus import chain, default_corpus, enumerate_posets
from latmon.errors import CycleDetected, DuplicateLabel, NotALattice, SourceTargetMismatch, UnknownLabel
from latmon.order import (
    BoundedLattice,
    Category,
    FinitePoset,
    Hom,
    are_isomorphic,
    check_adjoint,
    distributivity_counterexample,
    inverse,
    is_distributive,
    is_frame,
    lattice_from_poset,
    left_adjoint,
    poset_from_covers,
    right_adjoint,
    subcarrier,
    validate_hom,
)
from latmon.errors import NotClosed
from latmon.search import enumerate_homs

LATTICES = [e.carrier for e in default_corpus("lattice")]
SMALL_POSETS = [e.carrier for n in range(1, 5) for e in enumerate_posets(n)]


def reachability_pairs(labels, covers):
    """Related pairs by repeated relaxation, independent of the bitmask closure."""
    rel = {(a, a) for a in labels} | set(covers)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def test_singleton():
    p = poset_from_covers(["x"], [])
    assert p.size == 1 and p.leq(0, 0)


def test_diamond_closure_matches_reachability():
    covers = [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    p = poset_from_covers(["0", "a", "b", "1"], covers)
    oracle = reachability_pairs(["0", "a", "b", "1"], covers)
    assert p.related_pairs() == len(oracle) == 9
    for a, b in oracle:
        assert p.leq(p.index(a), p.index(b))


def test_cycle_and_label_errors():
    with pytest.raises(CycleDetected):
        poset_from_covers(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(CycleDetected):
        poset_from_covers(["x"], [("x", "x")])
    with pytest.raises(DuplicateLabel):
        poset_from_covers(["x", "x"], [])
    with pytest.raises(UnknownLabel):
        poset_from_covers(["x"], [("x", "z")])


def test_lattice_from_poset():
    c = lattice_from_poset(poset_from_covers(["0", "m", "1"], [("0", "m"), ("m", "1")]))
    for x, y in itertools.product(range(3), repeat=2):
        assert c.meet[x][y] == min(x, y) and c.join[x][y] == max(x, y)
    with pytest.raises(NotALattice):
        lattice_from_poset(poset_from_covers(["a", "b"], []))


def test_m3_n5_not_distributive(diamond_m3, pentagon):
    d = distributivity_counterexample(diamond_m3)
    assert [diamond_m3.labels[i] for i in d] == ["a", "b", "c"]
    assert not is_distributive(pentagon)
    assert not is_frame(diamond_m3) and not is_frame(pentagon)


@pytest.mark.parametrize("lat", LATTICES, ids=lambda x: f"n{x.size}")
def test_lattice_table_identities(lat):
    for x, y in itertools.product(range(lat.size), repeat=2):
        assert lat.leq(x, y) == (lat.meet[x][y] == x) == (lat.join[x][y] == y)
        assert lat.meet[x][lat.join[x][y]] == x and lat.join[x][lat.meet[x][y]] == x


@pytest.mark.parametrize("lat", LATTICES, ids=lambda x: f"n{x.size}")
def test_frame_iff_distributive(lat):
    assert is_frame(lat) == is_distributive(lat)


def test_validate_hom(b2):
    assert validate_hom(Hom.identity(b2, Category.DLAT)) == []
    to_top = Hom(b2, b2, [3, 3, 3, 3], Category.DLAT)
    assert "bottom preservation" in {v.law for v in validate_hom(to_top)}
    skip = Hom(chain(2), chain(3), [0, 2], Category.DLAT)
    assert validate_hom(skip) == []
    with pytest.raises(SourceTargetMismatch):
        skip @ skip


def test_adjoints_identity(c3):
    i = Hom.identity(c3)
    assert right_adjoint(i) == i and left_adjoint(i) == i and check_adjoint(i, i)


def exhaustive_adjoints(f):
    return [g for g in enumerate_homs(f.target, f.source) if check_adjoint(f, g)]


@pytest.mark.parametrize("p,q", [(p, q) for p in SMALL_POSETS[:8] for q in SMALL_POSETS[:8]])
def test_right_adjoint_matches_exhaustive_search(p, q):
    for f in enumerate_homs(p, q):
        found = exhaustive_adjoints(f)
        assert len(found) <= 1
        assert right_adjoint(f) == (found[0] if found else None)


def test_isomorphism(diamond_m3, pentagon):
    assert are_isomorphic(diamond_m3, diamond_m3).is_identity()
    assert are_isomorphic(diamond_m3, pentagon) is None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(LATTICES), st.randoms(use_true_random=False))
def test_isomorphism_invariant_under_relabelling(lat, rnd):
    perm = list(range(lat.size))
    rnd.shuffle(perm)
    inv = [perm.index(i) for i in range(lat.size)]
    down = []
    for new in range(lat.size):
        old = inv[new]
        down.append(sum(1 << perm[j] for j in range(lat.size) if lat.down[old] >> j & 1))
    other = BoundedLattice([lat.labels[inv[i]] for i in range(lat.size)], down)
    iso = are_isomorphic(lat, other)
    assert iso is not None
    back = are_isomorphic(other, lat)
    assert back is not None and inverse(iso) is not None


def test_subcarrier_closure(b2):
    with pytest.raises(NotClosed):
        subcarrier(b2, 0b0110, Category.MLAT)
    sub, incl = subcarrier(b2, 0b1011, Category.MLAT)
    assert sub.size == 3 and validate_hom(incl) == []


def test_finite_poset_rejects_bad_relations():
    with pytest.raises(ValueError):
        FinitePoset(["a", "b"], [0b01, 0b01])
