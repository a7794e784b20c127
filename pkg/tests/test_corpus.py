import math
from itertools import permutations

import pytest

from latmon.corpus import (
    admits,
    boolean,
    canonical_form,
    chain,
    default_corpus,
    downsets_of_diamond,
    enumerate_lattices,
    enumerate_posets,
    filter_kind,
    labeled_poset_count_oracle,
    m3,
    n5,
    named,
    named_instances,
)
from latmon.monads import DOWNSET, apply_object
from latmon.order import are_isomorphic, is_distributive

# labelled posets on n points (OEIS A001035), an independent count
LABELLED = {1: 1, 2: 3, 3: 19, 4: 219}


def automorphisms(p):
    n = p.size
    count = 0
    for perm in permutations(range(n)):
        if all((p.down[perm[i]] >> perm[j] & 1) == (p.down[i] >> j & 1) for i in range(n) for j in range(n)):
            count += 1
    return count


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 5), (4, 16)])
def test_poset_counts(n, expected):
    entries = enumerate_posets(n)
    assert len(entries) == expected == labeled_poset_count_oracle(n)
    # orbit-stabiliser: the classes must add up to every labelled poset
    assert sum(math.factorial(n) // automorphisms(e.carrier) for e in entries) == LABELLED[n]


def test_no_duplicates():
    for n in range(1, 5):
        es = enumerate_posets(n)
        for i, a in enumerate(es):
            assert not any(are_isomorphic(a.carrier, b.carrier) for b in es[i + 1:])


def test_canonical_form_idempotent():
    for e in enumerate_posets(4):
        d = tuple(e.carrier.down)
        assert canonical_form(d) == d and canonical_form(canonical_form(d)) == d


@pytest.mark.parametrize("n,lat,dist", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (4, 2, 2), (5, 5, 3), (6, 15, 5)])
def test_lattice_counts(n, lat, dist):
    es = enumerate_lattices(n)
    assert len(es) == lat
    assert sum(is_distributive(e.carrier) for e in es) == dist


def test_seven_element_lattices():
    assert len(enumerate_lattices(7)) == 53


def test_filter_kind():
    posets = [e for n in range(1, 4) for e in enumerate_posets(n)]
    # with a top, a finite meet-semilattice is a lattice: only chains up to 3
    assert len(filter_kind(posets, "mlat")) == 3
    assert admits("dlat", m3()) is None and admits("dlat", n5()) is None
    assert admits("lattice", m3()) is not None
    with pytest.raises(ValueError):
        admits("group", chain(2))


def test_named_instances():
    names = [e.name for e in named_instances()]
    assert names == ["C1", "C2", "C3", "C4", "C5", "C6", "B2", "B3", "M3", "N5", "D(B2)"]
    assert are_isomorphic(named("D(B2)"), apply_object(DOWNSET, boolean(2)).total) is not None
    assert downsets_of_diamond().size == 6
    assert boolean(3).size == 8


def test_default_corpus_sizes():
    assert len(default_corpus("mlat")) == 13
    assert len(default_corpus("dlat")) == 14
    assert len(default_corpus("lattice")) == 26
    assert max(e.size for e in default_corpus("dlat", 6)) == 6
