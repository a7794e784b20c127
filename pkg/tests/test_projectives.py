import pytest

from latmon.corpus import boolean, chain, default_corpus
from latmon.errors import BudgetExceeded
from latmon.monads import DOWNSET, IDEAL
from latmon.order import Hom
from latmon.projectives import (
    RetractionWitness,
    default_family,
    find_lift,
    find_retraction,
    free_witness,
    has_coalgebra_structure,
    lifting_property,
    projective_report,
)
from latmon.tower import build_algebra, build_coalgebra


def test_c3_retraction(c3):
    w = build_algebra(DOWNSET, c3)
    r = find_retraction(w)
    assert r is not None and r.ok
    assert r.section == build_coalgebra(w).costructure
    assert r.retraction.map == (0, 0, 1, 2)


def test_tampered_retraction_rejected(c3):
    r = find_retraction(build_algebra(DOWNSET, c3))
    bad = Hom(r.section.source, r.section.target, [r.section.map[0]] * 3, r.section.tag)
    assert not RetractionWitness(r.algebra, r.free, bad, r.retraction).ok


@pytest.mark.parametrize("monad,x,expected", [
    (DOWNSET, chain(3), (True, True, True)),
    (DOWNSET, chain(2), (True, True, True)),
    (DOWNSET, boolean(2), (False, False, False)),
    (DOWNSET, chain(1), (False, False, False)),
    (IDEAL, boolean(2), (True, True, True)),
    (IDEAL, chain(1), (True, True, True)),
], ids=str)
def test_three_way_agreement(monad, x, expected):
    rep = projective_report(build_algebra(monad, x))
    assert rep.verdicts == expected and rep.agree


def test_negative_coalgebra_verdict_is_exhaustive(b2):
    v = has_coalgebra_structure(build_algebra(DOWNSET, b2))
    assert not v and v.exhaustive and v.reason


def test_lifting_counts(c3, b2):
    rep = lifting_property(build_algebra(DOWNSET, c3))
    assert rep.ok and rep.morphisms == 29 and len(rep.family) == 8
    rep = lifting_property(build_algebra(DOWNSET, b2))
    assert rep.morphisms == 17 and len(rep.failures) == 2


def test_identity_lifts(c3):
    w = build_algebra(DOWNSET, c3)
    h = find_lift(w, w, Hom.identity(c3, DOWNSET.base_tag))
    assert h == build_coalgebra(w).costructure


@pytest.mark.parametrize("x", [chain(1), chain(2), boolean(2)], ids=lambda x: f"n{x.size}")
def test_free_algebras_are_projective(x):
    rep = projective_report(free_witness(DOWNSET, x))
    assert rep.verdicts == (True, True, True)


def test_free_budget():
    with pytest.raises(BudgetExceeded):
        free_witness(DOWNSET, boolean(3))


def test_default_family_is_algebras():
    names = [n for n, _ in default_family(IDEAL)]
    assert len(names) == len(default_corpus("dlat", 5))
