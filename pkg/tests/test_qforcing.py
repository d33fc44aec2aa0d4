import random

import pytest
from hypothesis import given, settings, strategies as st

from symext import (QCondition, captures, compatible_on, h_act, m_injective, q_compatible, q_leq,
                    q_meet, q_restrict, q_validate)
from symext.corpus import random_qcondition
from symext.names import Bounds, act_name, expand_symbolic
from symext.perm import FinPerm
from symext.poset import Incompatible
from symext.qforcing import HPerm, b_name, choice_tree_elements, least_disjointing, subsets

seeds = st.integers(0, 2**32 - 1)
E0 = QCondition.empty()


def rq(seed):
    return random_qcondition(random.Random(seed))


def test_m_injective_examples():
    assert m_injective([(0, 0, 0)], 0)
    assert m_injective([(0, 0, 0), (0, 0, 0)], 2)
    assert not m_injective([(0, 0, 0), (0, 0, 0)], 1)
    assert m_injective([(0, 1), (0, 2)], 0)


def test_validate_examples():
    assert q_validate(E0) == []
    a, b = (0, 0), (0, 1)
    same = {a: (0, 0, 0), b: (0, 0, 0)}
    good = QCondition(same, {(): 0, (a,): 0, (b,): 0, (a, b): 3})
    assert q_validate(good) == []
    bad = QCondition(same, {(): 0, (a,): 0, (b,): 0, (a, b): 1})
    msgs = q_validate(bad)
    assert msgs and "injectivity" in msgs[0] and "(0 0) (0 1)" in msgs[0]
    mono = QCondition({a: (0,)}, {(): 2, (a,): 1})
    assert any("monotonicity" in m for m in q_validate(mono))


def test_order_examples():
    q = QCondition.tight({(0, 0): (1, 2), (1, 0): (0,)})
    assert q_leq(q, E0)
    loose = QCondition(q.t, {a: v + 1 for a, v in q.f.items()})
    assert q_leq(q, loose) and not q_leq(loose, q)
    shorter = QCondition.tight({(0, 0): (1,), (1, 0): (0,)})
    assert q_leq(q, shorter) and not q_leq(shorter, q)


def test_meet_examples():
    t = {(0, 0): (1, 2), (0, 1): (1, 3)}
    f = {a: least_disjointing(t, a) for a in subsets(t)}
    g = {a: v + 2 for a, v in f.items()}
    m = q_meet(QCondition(t, f), QCondition(t, g))
    assert m.f == {a: min(f[a], g[a]) for a in f}
    left = QCondition.tight({(0, 0): (0, 1)})
    right = QCondition.tight({(0, 1): (0, 2)})
    merged = q_meet(left, right)
    assert merged.t == {(0, 0): (0, 1), (0, 1): (0, 2)} and q_validate(merged) == []
    with pytest.raises(Incompatible):
        q_meet(QCondition.tight({(0, 0): (0,)}), QCondition.tight({(0, 0): (1,)}))


def test_restrict_examples():
    q = QCondition.tight({(0, 0): (1, 2), (1, 0): (0,)})
    assert q_restrict(q, q.supp() | {(5, 5)}) == q
    assert q_restrict(q, []) == E0


@given(seeds, seeds)
@settings(max_examples=150)
def test_restriction_laws(a, b):
    q = rq(a)
    rng = random.Random(b)
    supp = sorted(q.supp())
    E = {c for c in supp if rng.random() < 0.5}
    F = {c for c in supp if rng.random() < 0.5}
    assert q_leq(q, q_restrict(q, E))
    assert q_restrict(q_restrict(q, E), F) == q_restrict(q, E & F)


@given(seeds)
@settings(max_examples=150)
def test_meet_with_self_and_top(a):
    q = rq(a)
    assert q_meet(q, q) == q
    assert q_compatible(q, E0)
    assert q_leq(q_meet(q, E0), q)


@given(seeds, seeds)
@settings(max_examples=150)
def test_meet_is_a_lower_bound(a, b):
    q, r = rq(a), rq(b)
    try:
        m = q_meet(q, r)
    except Incompatible:
        return
    assert q_leq(m, q) and q_leq(m, r)


def test_h_act_examples():
    q = QCondition.tight({(0, 0): (1, 2)})
    assert h_act(HPerm(), q) == q
    moved = h_act(HPerm({0: FinPerm.cycle(0, 1)}), q)
    assert moved.t == {(0, 1): (1, 2)}
    assert moved.fval([(0, 1)]) == q.fval([(0, 0)])


@given(seeds, seeds, seeds)
@settings(max_examples=100)
def test_h_act_is_an_order_preserving_action(a, b, c):
    rng = random.Random(c)
    q, r = rq(a), rq(b)
    pi = HPerm({al: FinPerm.from_mapping(dict(enumerate(rng.sample(range(4), 4)))) for al in range(3)})
    rho = HPerm({al: FinPerm.from_mapping(dict(enumerate(rng.sample(range(4), 4)))) for al in range(3)})
    assert h_act(pi, h_act(rho, q)) == h_act(pi.compose(rho), q)
    assert h_act(pi.inverse(), h_act(pi, q)) == q
    assert q_leq(h_act(pi, q), h_act(pi, r)) == q_leq(q, r)


def test_b_names_move_with_coordinates():
    h = HPerm({0: FinPerm.cycle(0, 1)})
    assert act_name(h, b_name(0, 0)) == b_name(0, 1)
    bd = Bounds(1, 2, 2, 1)
    assert act_name(h, expand_symbolic(b_name(0, 0), bd)) == expand_symbolic(b_name(0, 1), bd)
    for c, _y in expand_symbolic(b_name(0, 0), bd).pairs:
        assert c.supp() == {(0, 0)}


def test_captures_examples():
    assert captures({0}, E0)
    q = QCondition.tight({(0, 0): (1, 2, 3)})
    assert captures({0, 1, 2}, q)
    assert not captures({0, 1, 2}, QCondition({(0, 0): (1,)}, {(): 5, ((0, 0),): 5}))


def test_compatible_on_examples():
    a = QCondition.tight({(0, 0): (1, 2, 3)})
    assert compatible_on({0, 1}, a, QCondition.tight({(1, 0): (0,)}))
    assert compatible_on({0, 1, 2}, a, QCondition.tight({(0, 0): (1, 2, 9)}))
    assert not compatible_on({1}, a, QCondition.tight({(0, 0): (0,)}))


def test_choice_tree():
    assert choice_tree_elements(1, 2) == [(), (0,), (1,)]
    assert len(choice_tree_elements(3, 2)) == 15


@given(st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=2, max_size=4), st.integers(0, 3))
def test_m_injective_antitone(branches, m):
    if m_injective(branches, m):
        assert m_injective(branches, m + 1)
