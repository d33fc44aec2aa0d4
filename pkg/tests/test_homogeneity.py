import random

import pytest
from hypothesis import given, settings, strategies as st

from symext import (CohenCondition, InconsistentSigma, LemmaInstance, NoSuitableLevel, QCondition,
                    SupportSpec, WreathPerm, X, act_name, brute_force_lemma_perm,
                    build_lemma_perm, cohen_compatible, enumeration_refutation, in_fix,
                    separate_condition, verify_lemma_perm, wreath_act_condition)
from symext.corpus import lemma_instances, random_cohen, sample_lemma_instances
from symext.homogeneity import default_width, lemma_validate
from symext.names import A
from symext.perm import FinPerm

BASE1 = QCondition({}, {(): 0})


def inst(q, qp, n=1, base=BASE1):
    return LemmaInstance(base, n, QCondition.tight(q), QCondition.tight(qp))


def test_equal_conditions_give_identity():
    L = inst({(0, 0): (0, 1, 2)}, {(0, 0): (0, 1, 2)})
    pi = build_lemma_perm(L)
    assert pi.is_identity()
    assert verify_lemma_perm(pi, L).ok
    assert brute_force_lemma_perm(L).is_identity()


def test_single_index_move():
    L = inst({(0, 0): (0, 3)}, {(0, 0): (0, 5)})
    pi = build_lemma_perm(L)
    assert pi.outer_at(1)(5) == 3
    assert pi.outer_at(0).is_identity()
    assert verify_lemma_perm(pi, L).ok


def test_two_coordinates_swap():
    L = inst({(0, 0): (0, 1), (0, 1): (0, 2)}, {(0, 0): (0, 2), (0, 1): (0, 1)})
    pi = build_lemma_perm(L)
    assert pi.outer_at(1).mapping() == {1: 2, 2: 1}
    found = brute_force_lemma_perm(L)
    assert found.outer_at(1)(2) == 1 and found.outer_at(1)(1) == 2


def test_inconsistent_sigma():
    # the same q' index must go to two different q indices
    L = inst({(0, 0): (0, 1), (0, 1): (0, 2)}, {(0, 0): (0, 3), (0, 1): (0, 3)})
    assert not lemma_validate(L)
    with pytest.raises(InconsistentSigma):
        build_lemma_perm(L)
    assert brute_force_lemma_perm(L) is None


def test_report_flags():
    L = inst({(0, 0): (0, 3)}, {(0, 0): (0, 5)})
    rep = verify_lemma_perm(WreathPerm(), L)
    assert not rep.mapsQPrimeToQ and rep.inFix
    moving = WreathPerm({0: FinPerm.cycle(0, 1), 1: FinPerm.cycle(3, 5)})
    rep = verify_lemma_perm(moving, L)
    assert not rep.inFix and "inFix" in rep.failed()


def test_captured_disagreement_has_no_witness():
    L = inst({(0, 0): (0, 1)}, {(0, 0): (1, 1)})
    assert lemma_validate(L)
    assert brute_force_lemma_perm(L) is None
    with pytest.raises(ValueError):
        build_lemma_perm(L)


def test_default_width_covers_values_and_support():
    L = inst({(0, 0): (0, 1), (0, 1): (0, 0), (0, 2): (0, 2)}, {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2)})
    assert default_width(L) == 3


def test_small_corpus_agreement():
    for L in lemma_instances(2, 3, 2, 3):
        try:
            pi = build_lemma_perm(L)
        except InconsistentSigma:
            assert brute_force_lemma_perm(L) is None
            continue
        assert verify_lemma_perm(pi, L).ok
        assert brute_force_lemma_perm(L) is not None


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_sampled_deep_instances(seed):
    (L,) = sample_lemma_instances(random.Random(seed), 1, 3, 4, 1, 4)
    try:
        pi = build_lemma_perm(L)
    except InconsistentSigma:
        assert brute_force_lemma_perm(L) is None
        return
    assert verify_lemma_perm(pi, L).ok
    assert brute_force_lemma_perm(L) is not None


def test_separation_examples():
    L = inst({(0, 0): (0, 3)}, {(0, 0): (0, 5)})
    pi = build_lemma_perm(L)
    assert separate_condition(pi, CohenCondition()) == pi
    p = CohenCondition({(1, 5, 0, 0): 1, (1, 5, 1, 1): 0})
    pi2 = separate_condition(pi, p)
    assert pi2.inner_at(1, 5) == FinPerm.swap(0, 2)
    assert cohen_compatible(wreath_act_condition(pi2, p), p)
    assert verify_lemma_perm(pi2, L) == verify_lemma_perm(pi, L)


def test_refutation_examples():
    p = CohenCondition({(0, 0, 0, 0): 1})
    pi = enumeration_refutation(p, SupportSpec([(1, 0, 0)]), {(0, 0): 0})
    assert act_name(pi, A(0, 0)) == A(0, 1)
    assert in_fix(pi, [(1, 0, 0)])
    assert cohen_compatible(wreath_act_condition(pi, p), p)
    with pytest.raises(NoSuitableLevel):
        enumeration_refutation(p, SupportSpec([(0, 0, 0)]), {(0, 0): 0})


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100)
def test_refutation_properties(seed):
    rng = random.Random(seed)
    p = random_cohen(rng, 3, 3, 5, 4)
    n = rng.randrange(3)
    E = SupportSpec((lv, rng.randrange(3), rng.randrange(4)) for lv in range(3) if lv != n)
    k = rng.randrange(3)
    pi = enumeration_refutation(p, E, {(n, 0): k})
    assert in_fix(pi, E)
    assert cohen_compatible(wreath_act_condition(pi, p), p)
    assert act_name(pi, A(n, k)) != A(n, k)
    assert act_name(pi, X(n, k, 0)).params[1] != k
