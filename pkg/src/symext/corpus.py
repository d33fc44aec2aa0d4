"""Generators for the exhaustive and seeded suites.

Everything here is deterministic: enumerations come in a fixed order and
random families are drawn from :class:`random.Random` seeded by the caller.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator

import numpy as np

from .forcing import Eq, Mem, SubsetOfCheck
from .group import (Automorphism, FiniteSymmetricSystem, SupportSpec, WreathPerm,
                    automorphisms)
from .homogeneity import LemmaInstance
from .names import Check, Ext, Name, act_name
from .perm import Cycle, FinPerm, Swap
from .poset import CohenCondition, FinitePoset
from .qforcing import QCondition, least_disjointing, subsets

# ---------------------------------------------------------------------------
# small preorders, names and statements

_LABELS = ("1", "a", "b", "c")


def _canonical_matrix(m: np.ndarray) -> bytes:
    n = m.shape[0]
    best = None
    for rest in permutations(range(1, n)):
        idx = (0,) + rest
        key = m[np.ix_(idx, idx)].tobytes()
        if best is None or key < best:
            best = key
    return best


def small_posets(max_size: int = 4) -> list[FinitePoset]:
    """Preorders with top on at most ``max_size`` points, one per isomorphism type.

    Index 0 is the top "1".  Points equivalent to the top are allowed.
    """
    out = []
    for n in range(1, max_size + 1):
        free = [(i, j) for i in range(n) for j in range(n) if i != j and j != 0]
        seen = set()
        for bits in range(1 << len(free)):
            m = np.eye(n, dtype=np.bool_)
            m[:, 0] = True
            for t, (i, j) in enumerate(free):
                if bits >> t & 1:
                    m[i, j] = True
            if not (((m.astype(np.int64) @ m.astype(np.int64)) > 0) <= m).all():
                continue
            key = _canonical_matrix(m)
            if key in seen:
                continue
            seen.add(key)
            els = _LABELS[:n]
            leq = [(els[i], els[j]) for i in range(n) for j in range(n) if m[i, j]]
            out.append(FinitePoset(els, leq, "1"))
    return out


ATOMS = (Check(0), Check(1))


def small_names(P: FinitePoset) -> tuple[list[Name], list[Name]]:
    """Names over the atoms 0 and 1: (depth <= 1, depth 2).

    Depth-1 names have at most two pairs.  Depth-2 names have at most two
    pairs whose children are atoms or one-pair depth-1 names.
    """
    conds = list(P.elements)
    atom_pairs = [(c, y) for c in conds for y in ATOMS]
    depth1 = [Ext(s) for r in range(3) for s in combinations(atom_pairs, r)]
    singles = [Ext([pr]) for pr in atom_pairs]
    kids = list(ATOMS) + singles
    kid_pairs = [(c, y) for c in conds for y in kids]
    # the empty name is check 0, so dedupe while keeping the order
    shallow = list(dict.fromkeys(list(ATOMS) + depth1))
    depth2 = []
    seen = set(shallow)
    for r in (1, 2):
        for s in combinations(kid_pairs, r):
            x = Ext(s)
            if x not in seen:
                seen.add(x)
                depth2.append(x)
    return shallow, depth2


def small_statements(P: FinitePoset):
    """Atomic statements over :func:`small_names`."""
    shallow, deep = small_names(P)
    every = shallow + deep
    for x in every:
        for c in ATOMS:
            yield Mem(c, x)
    for x in shallow:
        for y in shallow:
            yield Eq(x, y)
    for x in every:
        for a in (frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})):
            yield SubsetOfCheck(x, a)


def small_systems(max_size: int = 4) -> Iterator[FiniteSymmetricSystem]:
    for P in small_posets(max_size):
        yield FiniteSymmetricSystem(P, tuple(automorphisms(P)))


# ---------------------------------------------------------------------------
# restriction systems: partial functions from coordinates to values


@dataclass(frozen=True)
class RestrictionCase:
    """One restriction-decides instance with its intended verdict."""

    label: str
    system: FiniteSymmetricSystem
    x: Name
    H: frozenset
    restrict: dict
    a: frozenset
    homogeneous: bool

    def __hash__(self):
        return hash(self.label)


def _pf_label(f: tuple) -> str:
    return "f" + "".join("x" if v is None else str(v) for v in f)


def partial_function_poset(coords: int, values: int) -> FinitePoset:
    funcs = list(product([None, *range(values)], repeat=coords))
    els = [_pf_label(f) for f in funcs]
    leq = []
    for f, g in product(funcs, repeat=2):
        if all(b is None or a == b for a, b in zip(f, g)):
            leq.append((_pf_label(f), _pf_label(g)))
    top = _pf_label((None,) * coords)
    return FinitePoset(els, leq, top)


def _value_perm_group(coords: int, values: int, movable: set[int]) -> list[Automorphism]:
    funcs = list(product([None, *range(values)], repeat=coords))
    perms = list(permutations(range(values)))
    out = []
    for choice in product(*[perms if i in movable else [tuple(range(values))] for i in range(coords)]):
        mp = {}
        for f in funcs:
            g = tuple(None if v is None else choice[i][v] for i, v in enumerate(f))
            mp[_pf_label(f)] = _pf_label(g)
        out.append(Automorphism(mp))
    return out


def _coord_swap_group(coords: int, values: int) -> list[Automorphism]:
    funcs = list(product([None, *range(values)], repeat=coords))
    out = []
    for sigma in permutations(range(coords)):
        mp = {_pf_label(f): _pf_label(tuple(f[sigma[i]] for i in range(coords))) for f in funcs}
        out.append(Automorphism(mp))
    return out


def _restrict_map(coords: int, values: int, E: set[int]) -> dict:
    return {_pf_label(f): _pf_label(tuple(v if i in E else None for i, v in enumerate(f)))
            for f in product([None, *range(values)], repeat=coords)}


def _symmetrize(x0: Ext, H) -> Ext:
    pairs = set()
    for h in H:
        pairs |= act_name(h, x0).pairs
    return Ext(pairs)


def _random_seed_name(P: FinitePoset, rng: random.Random, a: frozenset) -> Ext:
    k = rng.randint(1, 3)
    return Ext((rng.choice(P.elements), Check(rng.choice(sorted(a)))) for _ in range(k))


def restriction_cases(seed: int = 0) -> list[RestrictionCase]:
    """Homogeneous systems first, then systems violating the hypothesis."""
    rng = random.Random(seed)
    a = frozenset({0, 1})
    good = []
    shapes = [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (4, 1)]
    for coords, values in shapes:
        P = partial_function_poset(coords, values)
        G = _value_perm_group(coords, values, set(range(coords)))
        for r in range(coords + 1):
            for E in combinations(range(coords), r):
                E = set(E)
                H = frozenset(_value_perm_group(coords, values, set(range(coords)) - E))
                S = FiniteSymmetricSystem(P, tuple(G), (H,))
                restrict = _restrict_map(coords, values, E)
                x = _symmetrize(_random_seed_name(P, rng, a), H)
                label = f"pf{coords}x{values}-E{''.join(map(str, sorted(E))) or 'none'}"
                good.append(RestrictionCase(label, S, x, H, restrict, a, True))
    bad = []
    for coords, values in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)]:
        P = partial_function_poset(coords, values)
        restrict = _restrict_map(coords, values, set())
        ident = frozenset({Automorphism({})})
        x = _symmetrize(_random_seed_name(P, rng, a), ident)
        S = FiniteSymmetricSystem(P, tuple(ident), (ident,))
        bad.append(RestrictionCase(f"pf{coords}x{values}-trivial", S, x, ident, restrict, a, False))
    for coords, values in [(2, 2), (2, 3)]:
        P = partial_function_poset(coords, values)
        restrict = _restrict_map(coords, values, set())
        H = frozenset(_coord_swap_group(coords, values))
        x = _symmetrize(_random_seed_name(P, rng, a), H)
        S = FiniteSymmetricSystem(P, tuple(H), (H,))
        bad.append(RestrictionCase(f"pf{coords}x{values}-swap", S, x, H, restrict, a, False))
    return good + bad


def broken_normality_system() -> FiniteSymmetricSystem:
    """Three-point antichain under S3 whose base is a non-normal subgroup."""
    P = FinitePoset.from_relation(["1", "a", "b", "c"], [], "1")
    G = automorphisms(P)
    swap_ab = Automorphism({"a": "b", "b": "a"})
    return FiniteSymmetricSystem(P, tuple(G), (frozenset({Automorphism({}), swap_ab}),))


def shipped_systems() -> list[FiniteSymmetricSystem]:
    """Systems whose filter bases are meant to be normal."""
    out = [FiniteSymmetricSystem(P, tuple(automorphisms(P))) for P in small_posets(4)]
    for case in restriction_cases():
        if case.homogeneous:
            out.append(case.system)
    P = FinitePoset.from_relation(["1", "a", "b", "c"], [], "1")
    G = automorphisms(P)
    out.append(FiniteSymmetricSystem(P, tuple(G), (frozenset({Automorphism({})}),)))
    return out


# ---------------------------------------------------------------------------
# random wreath permutations and conditions


def random_finperm(rng: random.Random, width: int) -> FinPerm:
    """Random permutation of ``range(width)`` written as a few primitive moves."""
    moves = []
    for _ in range(rng.randint(0, 3)):
        if width >= 2 and rng.random() < 0.7:
            k = rng.randint(2, min(width, 4))
            moves.append(Cycle(tuple(rng.sample(range(width), k))))
        elif width >= 2:
            ln = rng.randint(1, width // 2)
            moves.append(Swap(rng.randint(0, width - 2 * ln), ln))
    return FinPerm(moves)


def random_wreath(rng: random.Random, N: int = 8, M: int = 8, K: int = 8) -> WreathPerm:
    outer = {n: random_finperm(rng, M) for n in rng.sample(range(N), rng.randint(0, N))}
    cols = [(n, m) for n in range(N) for m in range(M)]
    inner = {c: random_finperm(rng, K) for c in rng.sample(cols, rng.randint(0, 6))}
    return WreathPerm(outer, inner)


def random_cohen(rng: random.Random, N: int = 8, M: int = 8, K: int = 8, B: int = 8,
                 size: int | None = None) -> CohenCondition:
    size = rng.randint(0, 6) if size is None else size
    entries = {}
    for _ in range(size):
        entries[(rng.randrange(N), rng.randrange(M), rng.randrange(K), rng.randrange(B))] = rng.randint(0, 1)
    return CohenCondition(entries)


def random_support(rng: random.Random, N: int = 8, M: int = 8, K: int = 8,
                   avoid_level: int | None = None) -> SupportSpec:
    levels = [n for n in range(N) if n != avoid_level]
    return SupportSpec((rng.choice(levels), rng.randrange(M), rng.randrange(K))
                       for _ in range(rng.randint(0, 4)))


def random_qcondition(rng: random.Random, alphas: int = 3, ns: int = 3, length: int = 4,
                      width: int = 4, slack: int = 2) -> QCondition:
    """Random valid condition: random branches, f at least the tight bound.

    ``slack`` adds a random monotone bump, so f is not always least.
    """
    coords = rng.sample([(a, n) for a in range(alphas) for n in range(ns)], rng.randint(0, 3))
    t = {c: tuple(rng.randrange(width) for _ in range(rng.randint(1, length))) for c in coords}
    bump = {c: rng.randint(0, slack) for c in coords}
    f = {}
    for s in subsets(t):
        f[s] = least_disjointing(t, s) + max((bump[c] for c in s), default=0)
    return QCondition(t, f)


# ---------------------------------------------------------------------------
# lemma instances


def _restricted_growth(k: int, width: int) -> list[tuple[int, ...]]:
    """Sequences where each value is at most one more than the running max."""
    out = []

    def go(prefix, top):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for v in range(min(top + 2, width)):
            go(prefix + [v], max(top, v))

    go([], -1)
    return out


LEMMA_COORDS = ((0, 0), (0, 1), (0, 2))


def lemma_instances(max_support: int = 3, max_length: int = 4, max_n: int = 3,
                    width: int = 4, f_variants: bool = True, skip=None) -> Iterator[LemmaInstance]:
    """Lemma instances up to relabelling indices level by level.

    Renaming the indices at one uncaptured level by the same permutation in
    q and q' gives an equivalent instance, so values at each such level run
    over restricted-growth sequences.  Captured levels are shared by q and
    q' and never constrain the permutation; they hold index 0.  The base is
    the empty condition, and f is the least admissible function on each
    side, plus (when ``f_variants``) the versions where one side drops its
    pairwise constraints.  ``skip(k, n, lengths)`` drops whole length
    patterns.
    """
    for k, n, lengths in _patterns(max_support, max_length, max_n):
        if skip is not None and skip(k, n, lengths):
            continue
        for vals in product(*_level_choices(k, n, lengths, width)):
            yield from _instances_for(LEMMA_COORDS[:k], n, lengths, vals, f_variants)


def sample_lemma_instances(rng: random.Random, count: int, max_support: int = 3, max_length: int = 4,
                           max_n: int = 3, width: int = 4, f_variants: bool = True,
                           only=None) -> Iterator[LemmaInstance]:
    """Uniform sample (with replacement) from :func:`lemma_instances` restricted by ``only``."""
    pats, weights = [], []
    for k, n, lengths in _patterns(max_support, max_length, max_n):
        if only is not None and not only(k, n, lengths):
            continue
        size = 1
        for ch in _level_choices(k, n, lengths, width):
            size *= len(ch)
        pats.append((k, n, lengths))
        weights.append(size)
    for _ in range(count):
        k, n, lengths = rng.choices(pats, weights)[0]
        vals = [rng.choice(ch) for ch in _level_choices(k, n, lengths, width)]
        insts = list(_instances_for(LEMMA_COORDS[:k], n, lengths, vals, f_variants))
        yield rng.choice(insts)


def lemma_slice(k: int, n: int, lengths) -> tuple[int, int, int]:
    """(support size, captured prefix, longest branch) of a length pattern."""
    return k, n, max(max(a, b) for a, b in lengths)


def lemma_slice_sizes(max_support: int = 3, max_length: int = 4, max_n: int = 3,
                      width: int = 4, f_variants: bool = True) -> dict:
    """Number of instances :func:`lemma_instances` yields in each slice."""
    out: dict = {}
    for k, n, lengths in _patterns(max_support, max_length, max_n):
        size = 3 if f_variants and k >= 2 else 1
        for ch in _level_choices(k, n, lengths, width):
            size *= len(ch)
        key = lemma_slice(k, n, lengths)
        out[key] = out.get(key, 0) + size
    return out


def _patterns(max_support, max_length, max_n):
    for k in range(1, max_support + 1):
        for n in range(1, max_n + 1):
            for lengths in _length_patterns(k, n, max_length):
                yield k, n, lengths


def _length_patterns(k: int, n: int, max_length: int):
    # each coordinate: (len in q, len in qp); below n the two coincide
    per = [(a, a) for a in range(1, n)]
    per += [(a, b) for a in range(n, max_length + 1) for b in range(n, max_length + 1)]
    # coordinates are interchangeable: take nondecreasing patterns only
    for combo in product(range(len(per)), repeat=k):
        if list(combo) == sorted(combo):
            yield tuple(per[i] for i in combo)


def _slots(k, n, lengths):
    top = max(max(a, b) for a, b in lengths)
    return [[(side, i) for side in (0, 1) for i in range(k) if lv < lengths[i][side]]
            for lv in range(n, top)]


def _level_choices(k, n, lengths, width):
    return [_rg_cached(len(sl), width) for sl in _slots(k, n, lengths)]


_RG: dict = {}


def _rg_cached(k: int, width: int):
    key = (k, width)
    if key not in _RG:
        _RG[key] = _restricted_growth(k, width)
    return _RG[key]


def _instances_for(coords, n, lengths, vals, f_variants):
    k = len(coords)
    base = QCondition({}, {(): n - 1})
    tq = {c: [0] * lengths[i][0] for i, c in enumerate(coords)}
    tp = {c: [0] * lengths[i][1] for i, c in enumerate(coords)}
    for lv_off, (sl, vs) in enumerate(zip(_slots(k, n, lengths), vals)):
        lv = n + lv_off
        for (side, i), v in zip(sl, vs):
            (tq if side == 0 else tp)[coords[i]][lv] = v
    q = QCondition.tight({c: tuple(s) for c, s in tq.items()})
    qp = QCondition.tight({c: tuple(s) for c, s in tp.items()})
    yield LemmaInstance(base, n, q, qp)
    if f_variants and k >= 2:
        yield LemmaInstance(base, n, _loosen(q), qp)
        yield LemmaInstance(base, n, q, _loosen(qp))


def _loosen(q: QCondition) -> QCondition:
    """Same branches, f raised to the top level on every subset with two or more points."""
    cap = max((len(s) for s in q.t.values()), default=1)
    return QCondition(q.t, {a: (q.f[a] if len(a) < 2 else max(q.f[a], cap)) for a in q.f})
