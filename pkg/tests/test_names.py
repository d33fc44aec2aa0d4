import random

import pytest
from hypothesis import given, settings, strategies as st

from symext import (AN, AVEC, A, Automorphism, Bounds, Check, Ext, FiniteSymmetricSystem,
                    FinitePoset, SupportSpec, WreathPerm, X, act_name, bullet, expand_symbolic,
                    in_fix, is_hs, support_check)
from symext.corpus import random_wreath
from symext.group import automorphisms
from symext.names import BoundsError, Sym, TS, appears_in, hf, sym_group
from symext.perm import FinPerm
from symext.poset import TOP, CohenCondition

seeds = st.integers(0, 2**32 - 1)


def test_check_names_are_fixed():
    pi = WreathPerm({0: FinPerm.cycle(0, 1)})
    assert act_name(pi, Check(7)) == Check(7)


def test_symbolic_action_examples():
    pi = WreathPerm({0: FinPerm.cycle(0, 1)}, {(0, 0): FinPerm.cycle(5, 6)})
    assert act_name(pi, X(0, 0, 5)) == X(0, 1, 6)
    assert act_name(pi, A(0, 0)) == A(0, 1)
    assert act_name(pi, AN(0)) == AN(0)
    assert act_name(pi, AVEC) == AVEC


def test_check_bullet_expansion():
    assert Check(frozenset()) == bullet([])
    assert Check(frozenset({frozenset()})) == bullet([bullet([])])
    assert Check(2) == bullet([Check(0), Check(1)])


def test_hf_encodings():
    assert hf(0) == frozenset()
    assert hf(2) == frozenset({frozenset(), frozenset({frozenset()})})
    e = frozenset()
    # the one-term sequence is the set holding the pair (0, 0) = {{0}}
    assert hf((0,)) == frozenset({frozenset({frozenset({e})})})


def test_appears_in():
    y, z = Check(1), Check(2)
    assert appears_in(y, Ext([(TOP, y)]))
    assert not appears_in(y, bullet([z]))
    p = CohenCondition({(0, 0, 0, 0): 1})
    assert appears_in(p, Ext([(p, Check(0))]))


def test_expansions():
    p = CohenCondition({(0, 0, 0, 0): 1})
    assert expand_symbolic(X(0, 0, 0), Bounds(1, 1, 1, 1)) == Ext([(p, Check(0))])
    bd = Bounds(1, 1, 2, 1)
    assert expand_symbolic(A(0, 0), bd) == expand_symbolic(bullet([X(0, 0, 0), X(0, 0, 1)]), bd)
    with pytest.raises(BoundsError):
        expand_symbolic(X(5, 0, 0), Bounds(1, 1, 1, 1))


@given(seeds)
@settings(max_examples=80)
def test_action_commutes_with_expansion(seed):
    rng = random.Random(seed)
    bd = Bounds(3, 3, 3, 2)
    pi = _bounded_wreath(rng, bd)
    for x in (X(rng.randrange(3), rng.randrange(3), rng.randrange(3)), A(rng.randrange(3), rng.randrange(3)),
              AN(rng.randrange(3)), AVEC):
        assert expand_symbolic(act_name(pi, x), bd) == act_name(pi, expand_symbolic(x, bd))


def _bounded_wreath(rng, bd):
    outer = {n: FinPerm.from_mapping(dict(enumerate(rng.sample(range(bd.M), bd.M)))) for n in range(bd.N)}
    inner = {(n, m): FinPerm.from_mapping(dict(enumerate(rng.sample(range(bd.K), bd.K))))
             for n in range(bd.N) for m in range(bd.M)}
    return WreathPerm(outer, inner)


@given(seeds, seeds)
@settings(max_examples=80)
def test_action_is_a_group_action(a, b):
    pi, rho = random_wreath(random.Random(a), 3, 3, 4), random_wreath(random.Random(b), 3, 3, 4)
    p = CohenCondition({(0, 1, 2, 0): 1})
    x = Ext([(p, X(0, 1, 2)), (TOP, bullet([A(1, 0), Check(3)]))])
    assert act_name(pi, act_name(rho, x)) == act_name(pi.compose(rho), x)
    assert act_name(pi.inverse(), act_name(pi, x)) == x


def test_support_examples():
    assert support_check(X(1, 2, 3), SupportSpec([(1, 2, 3)])).holds
    assert support_check(AVEC, SupportSpec()).holds
    v = support_check(X(0, 0, 0), SupportSpec())
    assert not v.holds
    assert act_name(v.witness, X(0, 0, 0)) != X(0, 0, 0)
    assert in_fix(v.witness, SupportSpec())


@given(seeds)
@settings(max_examples=50)
def test_support_of_compound_name(seed):
    rng = random.Random(seed)
    x = Ext([(CohenCondition({(0, 0, 1, 0): 1}), X(1, 1, 1)), (TOP, A(2, 0))])
    E = SupportSpec([(0, 0, 1), (1, 1, 1), (2, 0, 0)])
    assert support_check(x, E, samples=16, seed=rng.randrange(2**32)).holds
    smaller = SupportSpec([(0, 0, 1), (1, 1, 1)])
    v = support_check(x, smaller, samples=16, seed=rng.randrange(2**32))
    assert not v.holds and in_fix(v.witness, smaller)


def _antichain_system(base=None):
    P = FinitePoset.from_relation(["1", "a", "b"], [], "1")
    G = tuple(automorphisms(P))
    return FiniteSymmetricSystem(P, G, base if base is not None else ())


def test_symmetry_groups():
    S = _antichain_system()
    assert sym_group(Check(0), S) == frozenset(S.group)
    assert is_hs(Check(0), S)
    x = Ext([("a", Check(0))])
    assert sym_group(x, S) == frozenset(g for g in S.group if g("a") == "a")
    trivial = _antichain_system((frozenset({Automorphism({})}),))
    assert is_hs(x, trivial)


def test_sym_rejects_unknown_tag():
    with pytest.raises((ValueError, TypeError)):
        Sym("Q", 1)


def test_ts_names_move_levelwise():
    pi = WreathPerm({0: FinPerm.cycle(0, 1), 1: FinPerm.cycle(2, 3)})
    assert act_name(pi, TS((0, 2))) == TS((1, 3))
