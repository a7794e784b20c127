import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from latmon.corpus import boolean, chain, default_corpus, m3
from latmon.errors import BudgetExceeded, SourceTargetMismatch
from latmon.monads import (
    DOWNSET,
    IDEAL,
    apply_hom,
    apply_object,
    check_lax_idempotent,
    check_lemma_adjoint_chain,
    check_monad_laws,
    lax_is_equality,
    monad_named,
    t_unit,
)
from latmon.order import Category, Hom, are_isomorphic, is_frame, validate_hom
from latmon.search import enumerate_homs

MLATS = [e.carrier for e in default_corpus("mlat", 5)]
DLATS = [e.carrier for e in default_corpus("dlat", 6)]


def brute_downsets(x):
    """Down-closed subsets by filtering all 2^n subsets."""
    n = x.size
    out = []
    for s in range(1 << n):
        if all(not (s >> i & 1) or x.down[i] & ~s == 0 for i in range(n)):
            out.append(s)
    return out


def test_downset_of_singleton_is_two_chain():
    asm = apply_object(DOWNSET, chain(1))
    assert asm.subsets == (0, 1)
    assert are_isomorphic(asm.total, chain(2)) is not None
    assert asm.unit.map == (1,)


@pytest.mark.parametrize("x", MLATS, ids=lambda x: f"n{x.size}")
def test_downsets_match_subset_filter(x):
    asm = apply_object(DOWNSET, x)
    assert sorted(asm.subsets) == brute_downsets(x)
    assert is_frame(asm.total)


def test_downsets_of_diamond(b2):
    assert apply_object(DOWNSET, b2).size == 6


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_downsets(n):
    assert apply_object(DOWNSET, chain(n)).size == n + 1


@pytest.mark.parametrize("d", DLATS, ids=lambda x: f"n{x.size}")
def test_ideals_collapse_to_principal(d):
    asm = apply_object(IDEAL, d)
    assert asm.size == d.size
    assert sorted(asm.unit.map) == list(range(d.size))
    assert (asm.mult @ t_unit(asm)).is_identity()


def test_canonical_order_of_subsets():
    asm = apply_object(DOWNSET, boolean(2))
    keys = [(bin(s).count("1"), [i for i in range(4) if s >> i & 1]) for s in asm.subsets]
    assert keys == sorted(keys)


def test_ideal_rejects_non_distributive():
    with pytest.raises(SourceTargetMismatch):
        apply_object(IDEAL, m3())


def test_budget():
    with pytest.raises(BudgetExceeded):
        apply_object(DOWNSET, boolean(2), budget=3)


def test_apply_hom_skip_middle():
    f = Hom(chain(2), chain(3), [0, 2], Category.MLAT)
    tf = apply_hom(DOWNSET, f)
    src = apply_object(DOWNSET, chain(2))
    tgt = apply_object(DOWNSET, chain(3))
    s01 = src.index[0b11]
    assert tgt.subsets[tf.map[s01]] == 0b111


def test_multiplication_on_two_chain():
    asm = apply_object(DOWNSET, chain(2))
    up = asm.lifted
    fam = (1 << asm.index[0]) | (1 << asm.index[0b01])
    assert asm.subsets[asm.mult.map[up.index[fam]]] == 0b01


def corpus_homs(kind, tag, limit):
    objs = [e.carrier for e in default_corpus(kind, 4)]
    out = []
    for x in objs:
        for y in objs:
            out += list(enumerate_homs(x, y, tag, limit=limit))
    return out


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_functoriality_on_random_pairs(data):
    monad = data.draw(st.sampled_from([DOWNSET, IDEAL]))
    kind = "mlat" if monad is DOWNSET else "dlat"
    objs = [e.carrier for e in default_corpus(kind, 4)]
    x, y, z = (data.draw(st.sampled_from(objs)) for _ in range(3))
    fs = list(enumerate_homs(x, y, monad.base_tag))
    gs = list(enumerate_homs(y, z, monad.base_tag))
    assume(fs and gs)
    f, g = data.draw(st.sampled_from(fs)), data.draw(st.sampled_from(gs))
    assert apply_hom(monad, g @ f) == apply_hom(monad, g) @ apply_hom(monad, f)
    assert apply_hom(monad, Hom.identity(x, monad.base_tag)).is_identity()


@pytest.mark.parametrize("monad", [DOWNSET, IDEAL], ids=str)
def test_naturality_of_unit_and_mult(monad):
    kind = "mlat" if monad is DOWNSET else "dlat"
    for f in corpus_homs(kind, monad.base_tag, 6):
        src, tgt = apply_object(monad, f.source), apply_object(monad, f.target)
        tf = apply_hom(monad, f, src, tgt)
        assert tf @ src.unit == tgt.unit @ f
        ttf = apply_hom(monad, tf, src.lifted, tgt.lifted)
        assert tgt.mult @ ttf == tf @ src.mult


@pytest.mark.parametrize("x", MLATS, ids=lambda x: f"n{x.size}")
def test_mult_is_frame_hom(x):
    assert validate_hom(apply_object(DOWNSET, x).mult) == []


def test_laws_sizes_on_two_chain():
    r = check_monad_laws(DOWNSET, chain(2))
    assert r.ok and r.complete
    assert r.sizes == {"X": 2, "TX": 3, "TTX": 4, "TTTX": 5}


def test_laws_sample_beyond_budget():
    r = check_monad_laws(DOWNSET, chain(3), budget=5, samples=50)
    assert r.ok and not r.complete and r.sampled == 50


@pytest.mark.parametrize("monad", [DOWNSET, IDEAL], ids=str)
def test_laws_on_singleton(monad):
    assert check_monad_laws(monad, chain(1)).ok


def test_lax_idempotent_and_equality():
    assert check_lax_idempotent(DOWNSET, chain(3))
    assert not lax_is_equality(DOWNSET, chain(3))
    for d in DLATS:
        assert check_lax_idempotent(IDEAL, d) and lax_is_equality(IDEAL, d)


def test_adjoint_chain():
    r = check_lemma_adjoint_chain(DOWNSET, chain(3))
    assert r.lax and r.te_left_of_m and r.m_left_of_et and r.ok
    r = check_lemma_adjoint_chain(DOWNSET, m3())
    assert r.sections == [] and r.note == "no section found"


def test_monad_named():
    assert monad_named("Downset") is DOWNSET
    with pytest.raises(ValueError):
        monad_named("powerset")


def test_random_elements_are_admissible():
    rng = random.Random(7)
    for d in DLATS:
        asm = apply_object(IDEAL, d)
        for _ in range(5):
            assert IDEAL.random_element(d, rng) in asm.index
