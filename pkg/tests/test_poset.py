from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symext import (CohenCondition, FinitePoset, Incompatible, cohen_compatible, cohen_leq,
                    cohen_meet, dense_below, is_dense, poset_validate)
from symext.corpus import small_posets

keys = st.tuples(*[st.integers(0, 2)] * 4)
conds = st.dictionaries(keys, st.integers(0, 1), max_size=4).map(CohenCondition)


def chain2():
    return FinitePoset(["1", "p"], [("1", "1"), ("p", "p"), ("p", "1")], "1")


def test_leq_examples():
    p = CohenCondition({(0, 0, 0, 0): 1})
    assert cohen_leq(CohenCondition({(0, 0, 0, 0): 1, (1, 2, 3, 4): 0}), p)
    assert not cohen_leq(CohenCondition({(0, 0, 0, 0): 0}), p)
    assert cohen_leq(p, CohenCondition())


def test_meet_examples():
    p = CohenCondition({(0, 0, 0, 0): 1})
    q = CohenCondition({(0, 1, 0, 0): 0})
    assert cohen_meet(p, q) == CohenCondition({(0, 0, 0, 0): 1, (0, 1, 0, 0): 0})
    assert cohen_meet(p, p) == p
    with pytest.raises(Incompatible):
        cohen_meet(p, CohenCondition({(0, 0, 0, 0): 0}))


def test_condition_rejects_bad_entries():
    with pytest.raises(ValueError):
        CohenCondition({(0, 0, 0, 0): 2})
    with pytest.raises(ValueError):
        CohenCondition({(0, 0, -1, 0): 1})


@given(conds, conds)
def test_meet_is_greatest_lower_bound(p, q):
    if cohen_compatible(p, q):
        r = cohen_meet(p, q)
        assert cohen_leq(r, p) and cohen_leq(r, q)
        assert set(r.items()) == set(p.items()) | set(q.items())
    else:
        assert any(p.get(k) not in (None, v) for k, v in q.items())


@given(conds, conds, conds)
def test_leq_is_preorder(p, q, r):
    assert cohen_leq(p, p)
    if cohen_leq(p, q) and cohen_leq(q, r):
        assert cohen_leq(p, r)


def test_validate_examples():
    assert poset_validate(chain2()) == []
    bad = FinitePoset(["1", "x"], [("1", "1"), ("x", "1")], "1")
    assert any("reflex" in msg and "x" in msg for msg in poset_validate(bad))
    els = ["1", "a", "b", "c"]
    rel = [(e, e) for e in els] + [(e, "1") for e in els] + [("a", "b"), ("b", "c")]
    assert any("transitiv" in msg for msg in poset_validate(FinitePoset(els, rel, "1")))


def test_dense_examples():
    P = chain2()
    assert is_dense(P, P.elements)
    assert not is_dense(P, ["1"])
    for Q in small_posets(4):
        assert is_dense(Q, Q.minimal_elements())


def _brute_dense_below(P, D, p):
    D = set(D)
    return all(any(P.le(s, r) and s in D for s in P.elements) for r in P.elements if P.le(r, p))


def test_dense_below_matches_definition():
    for P in small_posets(3):
        els = P.elements
        for bits in product([0, 1], repeat=len(els)):
            D = [e for e, b in zip(els, bits) if b]
            for p in els:
                assert dense_below(P, D, p) == _brute_dense_below(P, D, p)


def test_small_poset_corpus_counts():
    # orbit sizes of the representatives must add up to the labelled count,
    # so no class is missing and none is listed twice
    from itertools import permutations

    def labelled(n):
        free = [(i, j) for i in range(n) for j in range(n) if i != j and j != 0]
        out = []
        for bits in range(1 << len(free)):
            m = np.eye(n, dtype=bool)
            m[:, 0] = True
            for t, (i, j) in enumerate(free):
                if bits >> t & 1:
                    m[i, j] = True
            if (((m.astype(int) @ m.astype(int)) > 0) <= m).all():
                out.append(m)
        return out

    corpus = small_posets(4)
    for n in range(1, 5):
        ours = [P for P in corpus if len(P.elements) == n]
        total = 0
        for P in ours:
            m = P.matrix
            images = set()
            for rest in permutations(range(1, n)):
                idx = (0,) + rest
                images.add(m[np.ix_(idx, idx)].tobytes())
            total += len(images)
        assert total == len(labelled(n))
    assert len(corpus) == 22


def test_matrix_and_compat():
    P = FinitePoset.from_relation(["1", "a", "b"], [], "1")
    assert P.matrix.dtype == np.bool_
    assert not P.compatible("a", "b")
    assert P.compatible("a", "1")
    assert sorted(P.minimal_elements()) == ["a", "b"]
