import pytest
from hypothesis import given, settings, strategies as st

from symext import (Automorphism, Check, Eq, Ext, FiniteSymmetricSystem, FinitePoset, Mem,
                    SubsetOfCheck, eval_name, forces, forcing_theorem_check, generic_filters,
                    normalize_name, restriction_decides_check, symmetry_lemma_check)
from symext.corpus import ATOMS, restriction_cases, small_posets
from symext.forcing import act_statement, forcing_theorem_report, forces_not, oracle_forces
from symext.group import automorphisms
from symext.names import X, hf
from symext.poset import TOP


def chain2():
    return FinitePoset.from_relation(["1", "p"], [("p", "1")], "1")


def antichain():
    return FinitePoset.from_relation(["1", "a", "b"], [], "1")


def test_reflexive_equality_is_forced():
    for P in small_posets(3):
        for p in P.elements:
            assert forces(P, p, Eq(Check(0), Check(0)))


def test_chain_example():
    P = chain2()
    x = Ext([("p", Check(0))])
    assert forces(P, "p", Mem(Check(0), x))
    assert forces(P, "1", Mem(Check(0), x))


def test_antichain_example():
    P = antichain()
    x = Ext([("a", Check(0))])
    phi = Mem(Check(0), x)
    assert [forces(P, p, phi) for p in ("1", "a", "b")] == [False, True, False]
    assert forces_not(P, "b", phi)
    assert not forces_not(P, "1", phi)


def test_generic_filters():
    one = FinitePoset(["1"], [("1", "1")], "1")
    assert generic_filters(one) == [frozenset({"1"})]
    assert generic_filters(chain2()) == [frozenset({"1", "p"})]
    assert sorted(map(sorted, generic_filters(antichain()))) == [["1", "a"], ["1", "b"]]


def test_eval_name():
    P = antichain()
    Ga, Gb = sorted(generic_filters(P), key=sorted)
    assert eval_name(Check(3), Ga) == hf(3)
    assert eval_name(Ext([(TOP, Check(0))]), Ga) == frozenset({hf(0)})
    assert eval_name(Ext([("a", Check(0))]), Gb) == frozenset()
    with pytest.raises(TypeError):
        eval_name(X(0, 0, 0), Ga)


def test_forcing_theorem_small():
    for P in small_posets(3):
        for x in (Ext([(c, y) for c in P.elements for y in ATOMS][:3]), Ext([]), Check(1)):
            assert forcing_theorem_check(P, x, Check(0)).ok


def test_forcing_theorem_report_table():
    P = antichain()
    rep = forcing_theorem_report(P, [Mem(Check(0), Ext([("a", Check(0))]))])
    assert rep.ok and not rep.disagreements
    assert len(rep.rows) == 3


def _posets_and_names():
    P = antichain()
    names = [Ext([("a", Check(0))]), Ext([("b", Check(1)), ("1", Check(0))]),
             Ext([("a", Ext([("b", Check(0))]))]), Check(1)]
    return P, names


@given(st.integers(0, 3), st.integers(0, 3), st.sampled_from(["1", "a", "b"]))
@settings(max_examples=80)
def test_forces_matches_oracle(i, j, p):
    P, names = _posets_and_names()
    x, y = names[i], names[j]
    for phi in (Mem(x, y), Eq(x, y), SubsetOfCheck(x, frozenset({0})), SubsetOfCheck(x, frozenset())):
        assert forces(P, p, phi) == oracle_forces(P, p, phi)


def test_symmetry_lemma_example():
    P = antichain()
    G = tuple(automorphisms(P))
    S = FiniteSymmetricSystem(P, G)
    swap = next(g for g in G if not g.is_identity())
    phi = Mem(Check(0), Ext([("a", Check(0))]))
    assert symmetry_lemma_check(S, "a", swap, phi)
    assert forces(P, "b", act_statement(swap, phi))
    assert symmetry_lemma_check(S, "1", Automorphism({}), phi)


def test_restriction_identity_map_passes():
    case = restriction_cases(0)[0]
    S, x, H, a = case.system, case.x, case.H, case.a
    ident = {e: e for e in S.poset.elements}
    rep = restriction_decides_check(S, x, H, ident, a)
    assert rep.verdict == "PASS" and not rep.violations


def test_restriction_corpus_verdicts():
    for case in restriction_cases(0):
        rep = restriction_decides_check(case.system, case.x, case.H, case.restrict, case.a)
        if case.homogeneous:
            assert rep.verdict == "PASS", case.label
            xs = normalize_name(case.x, case.restrict, case.system, case.a)
            top = case.system.poset.top
            assert forces(case.system.poset, top, Eq(case.x, xs))
        else:
            assert rep.verdict == "HYPOTHESIS-FAIL", case.label
            assert rep.hypothesis_failures


def test_normalize_empty_and_top():
    case = restriction_cases(0)[0]
    S, a = case.system, case.a
    assert normalize_name(Ext([]), case.restrict, S, a) == Ext([])
    x = Ext([(TOP, Check(0)), (S.poset.top, Check(0))])
    assert normalize_name(x, case.restrict, S, a) == Ext([(S.poset.top, Check(0))])


def test_broken_group_is_flagged():
    case = next(c for c in restriction_cases(0) if c.homogeneous and len(c.H) > 1)
    S = case.system
    x = Ext([(S.poset.elements[1], Check(0))])
    moving = frozenset(g for g in S.group)
    rep = restriction_decides_check(S, x, moving, case.restrict, case.a)
    assert rep.verdict == "HYPOTHESIS-FAIL"
