import random
from collections import Counter
from itertools import product

from symext.corpus import (lemma_instances, lemma_slice_sizes, restriction_cases,
                           sample_lemma_instances, small_names, small_posets)
from symext.homogeneity import LemmaInstance, lemma_validate
from symext.qforcing import QCondition
from symext.suites import SuiteResult, check_lemma_instance


def test_slice_sizes_match_enumeration():
    args = (2, 3, 2, 3)
    sizes = lemma_slice_sizes(*args)
    got = Counter()
    for L in lemma_instances(*args):
        k = len(L.q.supp())
        top = max(len(s) for c in (L.q, L.qp) for s in c.t.values())
        got[(k, L.n, top)] += 1
    assert dict(got) == {key: v for key, v in sizes.items() if v}


def test_large_slice_counts():
    sizes = lemma_slice_sizes(3, 4, 3, 4)
    assert sizes[(3, 1, 4)] > 1_000_000
    assert sum(v for key, v in sizes.items() if key != (3, 1, 4)) == 585_090


def test_sampler_stays_in_slice():
    only = lambda k, n, lengths: k == 2 and n == 1  # noqa: E731
    for L in sample_lemma_instances(random.Random(1), 200, 3, 3, 2, 3, only=only):
        assert len(L.q.supp()) == 2 and L.n == 1
        assert not lemma_validate(L)


def test_canonical_instances_are_valid():
    for L in lemma_instances(2, 3, 2, 3):
        assert not lemma_validate(L), L


def _raw_instances(width=3, max_len=2):
    """Every valid instance on one or two coordinates of level 0, no quotient."""
    coords = [(0, 0), (0, 1)]
    seqs = [s for ln in range(1, max_len + 1) for s in product(range(width), repeat=ln)]
    base = QCondition({}, {(): 0})
    for k in (1, 2):
        cs = coords[:k]
        for qs in product(seqs, repeat=k):
            q = QCondition.tight(dict(zip(cs, qs)))
            for ps in product(seqs, repeat=k):
                if any(a[0] != b[0] for a, b in zip(qs, ps)):
                    continue
                L = LemmaInstance(base, 1, q, QCondition.tight(dict(zip(cs, ps))))
                if not lemma_validate(L):
                    yield L


def test_raw_instances_agree_without_quotient():
    res = SuiteResult("raw")
    for L in _raw_instances():
        check_lemma_instance(L, res)
    assert res.checked > 1000
    assert res.ok, res.failures[:3]


def test_small_names_depths():
    P = small_posets(2)[1]
    shallow, deep = small_names(P)
    assert len(set(shallow)) == len(shallow)
    assert not set(shallow) & set(deep)


def test_restriction_corpus_shape():
    cases = restriction_cases(0)
    assert sum(c.homogeneous for c in cases) >= 20
    assert sum(not c.homogeneous for c in cases) >= 5
    assert max(len(c.system.poset.elements) for c in cases) <= 24
    assert len({c.label for c in cases}) == len(cases)
