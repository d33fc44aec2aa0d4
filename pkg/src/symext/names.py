"""Forcing names and the automorphism action on them.

Three concrete representations share one structural equality:

* :class:`Ext` -- a finite set of ``(condition, name)`` pairs;
* :class:`Check` -- the check-name of a hereditarily finite value, equal to
  the bullet-name of the checks of its members;
* :class:`Sym` -- a canonical family too large to materialise, acted on by
  exact rewrite rules and expanded to :class:`Ext` only under explicit bounds.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Iterable

from .group import (Automorphism, FiniteSymmetricSystem, SupportSpec, WreathPerm,
                    in_fix, wreath_act_condition)
from .perm import FinPerm
from .poset import TOP, CohenCondition


class SortError(TypeError):
    """A permutation was applied to a name of the wrong sort."""


class BoundsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# hereditarily finite values


@lru_cache(maxsize=None)
def _von_neumann(n: int) -> frozenset:
    return frozenset(_von_neumann(i) for i in range(n))


def kpair(a, b) -> frozenset:
    return frozenset({frozenset({a}), frozenset({a, b})})


def hf(v) -> frozenset:
    """Normalise a value to a hereditarily finite frozenset.

    Naturals are von Neumann ordinals, tuples are finite sequences (sets of
    Kuratowski pairs ``(i, v_i)``), sets are sets.
    """
    if isinstance(v, bool):
        raise TypeError("booleans are not hereditarily finite values here")
    if isinstance(v, int):
        if v < 0:
            raise ValueError("negative natural")
        return _von_neumann(v)
    if isinstance(v, tuple):
        return frozenset(kpair(_von_neumann(i), hf(x)) for i, x in enumerate(v))
    if isinstance(v, (set, frozenset)):
        return frozenset(hf(x) for x in v)
    raise TypeError(f"not a hereditarily finite value: {v!r}")


# ---------------------------------------------------------------------------
# names


class Name:
    __slots__ = ("_key", "_hash")

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, Name):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            self._hash = hash(self.key())
            return self._hash


class Ext(Name):
    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[Any, Name]] = ()):
        pairs = frozenset(pairs)
        for c, y in pairs:
            if not isinstance(y, Name):
                raise TypeError(f"pair child is not a name: {y!r}")
        self.pairs = pairs

    def key(self):
        try:
            return self._key
        except AttributeError:
            self._key = ("E", frozenset((c, y.key()) for c, y in self.pairs))
            return self._key

    def __repr__(self):
        from .dsl import format_name

        return format_name(self)


@lru_cache(maxsize=None)
def _check_key(v: frozenset):
    return ("E", frozenset((TOP, _check_key(y)) for y in v))


class Check(Name):
    __slots__ = ("value", "hf")

    def __init__(self, value):
        self.value = value
        self.hf = hf(value)

    def key(self):
        return _check_key(self.hf)

    def members(self) -> list["Check"]:
        return [Check(y) for y in self.hf]

    def __repr__(self):
        from .dsl import format_name

        return format_name(self)


# symbolic family tags and the group sort acting on them
SYMBOL_SORTS = {
    "X": "G", "A": "G", "AN": "G", "AVEC": "G", "TS": "G",
    "B": "H", "CALB": "GH", "CALSEQ": "GH",
}
SYMBOL_ARITY = {"X": 3, "A": 2, "AN": 1, "AVEC": 0, "TS": 2, "B": 2, "CALB": 1, "CALSEQ": 0}


class Sym(Name):
    """Canonical family member.  TS carries ``(s, at)`` with ``at`` None or a coordinate."""

    __slots__ = ("tag", "params")

    def __init__(self, tag: str, *params):
        if tag not in SYMBOL_ARITY:
            raise ValueError(f"unknown symbolic tag {tag}")
        if len(params) != SYMBOL_ARITY[tag]:
            if tag == "TS" and len(params) == 1:
                params = (params[0], None)
            else:
                raise ValueError(f"{tag} takes {SYMBOL_ARITY[tag]} parameters")
        if tag == "TS":
            s, at = params
            s = tuple(int(x) for x in s)
            if any(x < 0 for x in s):
                raise ValueError("TS sequence entries must be naturals")
            params = (s, None if at is None else (int(at[0]), int(at[1])))
        else:
            params = tuple(int(p) for p in params)
            if any(p < 0 for p in params):
                raise ValueError(f"{tag} parameters must be naturals")
        self.tag = tag
        self.params = params

    def key(self):
        return ("S", self.tag, self.params)

    def __repr__(self):
        from .dsl import format_name

        return format_name(self)


def X(n, m, a):
    return Sym("X", n, m, a)


def A(n, m):
    return Sym("A", n, m)


def AN(n):
    return Sym("AN", n)


AVEC = Sym("AVEC")
CALSEQ = Sym("CALSEQ")


def TS(s, at=None):
    return Sym("TS", tuple(s), at)


def B(alpha, n):
    return Sym("B", alpha, n)


def CALB(alpha):
    return Sym("CALB", alpha)


def bullet(members: Iterable[Name]) -> Ext:
    return Ext((TOP, y) for y in members)


def bullet_pair(u: Name, v: Name) -> Ext:
    return bullet([bullet([u]), bullet([u, v])])


def bullet_seq(items: Iterable[Name]) -> Ext:
    return bullet(bullet_pair(Check(i), y) for i, y in enumerate(items))


def check_of(x) -> Ext:
    """Recursive check-name as explicit bullet-names."""
    return bullet(check_of(y) for y in hf(x))


def as_ext(x: Name) -> Ext:
    if isinstance(x, Ext):
        return x
    if isinstance(x, Check):
        return bullet(x.members())
    raise TypeError("symbolic names must be expanded first")


def subnames(x: Name) -> Iterable[Name]:
    """Names appearing in x (direct children)."""
    return [y for _, y in as_ext(x).pairs]


def appears_in(y, x: Name) -> bool:
    if isinstance(x, Sym):
        raise TypeError("symbolic names must be expanded first")
    pairs = as_ext(x).pairs
    if isinstance(y, Name):
        return any(z == y for _, z in pairs)
    return any(c == y for c, _ in pairs)


def conditions_in(x: Name) -> set:
    """All conditions occurring anywhere in an extensional name."""
    out: set = set()
    seen: set[int] = set()

    def walk(z):
        if isinstance(z, Check) or id(z) in seen:
            return
        if isinstance(z, Sym):
            raise TypeError("symbolic names must be expanded first")
        seen.add(id(z))
        for c, y in z.pairs:
            out.add(c)
            walk(y)

    walk(x)
    return out


# ---------------------------------------------------------------------------
# action


def _sort_of(pi) -> str:
    if isinstance(pi, WreathPerm):
        return "G"
    if isinstance(pi, Automorphism):
        return "auto"
    from .qforcing import HPerm

    if isinstance(pi, HPerm):
        return "H"
    raise TypeError(f"not a permutation: {pi!r}")


def act_condition(pi, c):
    if c is TOP:
        return TOP
    sort = _sort_of(pi)
    if sort == "G":
        if isinstance(c, CohenCondition):
            return wreath_act_condition(pi, c)
    elif sort == "H":
        from .qforcing import QCondition, h_act

        if isinstance(c, QCondition):
            return h_act(pi, c)
    elif not isinstance(c, (CohenCondition,)) and _is_label(c):
        return pi(c)
    raise SortError(f"cannot apply {type(pi).__name__} to condition {c!r}")


def _is_label(c) -> bool:
    return isinstance(c, (str, int))


def _act_symbolic(pi, x: Sym, sort: str) -> Sym:
    if sort not in SYMBOL_SORTS[x.tag]:
        raise SortError(f"{type(pi).__name__} does not act on {x.tag}-names")
    t, p = x.tag, x.params
    if t == "X":
        n, m, a = p
        return Sym("X", n, pi.outer_at(n)(m), pi.inner_at(n, m)(a))
    if t == "A":
        n, m = p
        return Sym("A", n, pi.outer_at(n)(m))
    if t == "TS":
        s, at = p
        return Sym("TS", tuple(pi.outer_at(i)(v) for i, v in enumerate(s)), at)
    if t == "B":
        a, n = p
        return Sym("B", a, pi.at(a)(n))
    return x


def act_name(pi, x: Name, _memo: dict | None = None) -> Name:
    """Image of a name under a wreath permutation, H-permutation or poset automorphism."""
    if isinstance(x, Check):
        return x
    sort = _sort_of(pi)
    if isinstance(x, Sym):
        if sort == "auto":
            raise SortError("poset automorphisms do not act on symbolic families")
        return _act_symbolic(pi, x, sort)
    memo = {} if _memo is None else _memo
    hit = memo.get(id(x))
    if hit is not None:
        return hit[1]
    out = Ext((act_condition(pi, c), act_name(pi, y, memo)) for c, y in x.pairs)
    memo[id(x)] = (x, out)
    return out


# ---------------------------------------------------------------------------
# expansion


@dataclass(frozen=True)
class Bounds:
    """Truncation bounds: levels N, columns M, ordinal indices K, bit positions B."""

    N: int = 2
    M: int = 2
    K: int = 2
    B: int = 2


def expand_symbolic(x: Name, bounds: Bounds | tuple = Bounds()) -> Name:
    """Materialise a symbolic family below the bounds.

    X(n,m,a) keeps only the single-entry conditions ``{(n,m,a,b) -> 1}``; the
    other extensions add nothing to the name's meaning.  B(a,n) ranges over
    branches of length <= N with values < M and disjointing values < B.
    """
    if not isinstance(bounds, Bounds):
        bounds = Bounds(*bounds)
    if isinstance(x, Check):
        return x
    if isinstance(x, Ext):
        return Ext((c, expand_symbolic(y, bounds)) for c, y in x.pairs)
    return _expand(x.tag, x.params, bounds)


@lru_cache(maxsize=4096)
def _expand(tag, params, bd: Bounds) -> Ext:
    N, M, K, Bb = bd.N, bd.M, bd.K, bd.B

    def need(ok, what):
        if not ok:
            raise BoundsError(f"{tag}{params}: {what} outside bounds {bd}")

    if tag == "X":
        n, m, a = params
        need(n < N and m < M and a < K, "index")
        return Ext((CohenCondition({(n, m, a, b): 1}), Check(b)) for b in range(Bb))
    if tag == "A":
        n, m = params
        need(n < N and m < M, "index")
        return bullet(_expand("X", (n, m, a), bd) for a in range(K))
    if tag == "AN":
        (n,) = params
        need(n < N, "level")
        return bullet(_expand("A", (n, m), bd) for m in range(M))
    if tag == "AVEC":
        return bullet_seq(_expand("AN", (n,), bd) for n in range(N))
    if tag == "TS":
        s, at = params
        need(len(s) <= N and all(v < M for v in s), "sequence")
        seq = bullet_seq(_expand("A", (i, v), bd) for i, v in enumerate(s))
        return seq if at is None else bullet_pair(Check(at), seq)
    if tag == "B":
        from .qforcing import QCondition

        a, n = params
        need(a < K and n < M, "coordinate")
        pairs = []
        for length in range(1, N + 1):
            for branch in product(range(M), repeat=length):
                for f0 in range(Bb):
                    for f1 in range(f0, Bb):
                        q = QCondition({(a, n): branch}, {(): f0, ((a, n),): f1})
                        for lv, v in enumerate(branch):
                            pairs.append((q, Check((lv, v))))
        return Ext(pairs)
    raise BoundsError(f"{tag} is symbolic only and is never expanded")


# ---------------------------------------------------------------------------
# supports and symmetry


@dataclass(frozen=True)
class SupportVerdict:
    holds: bool
    witness: Any = None
    method: str = "rule"

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness present iff the support fails")


def _other(v: int, avoid: set[int] = frozenset()) -> int:
    w = 0
    while w == v or w in avoid:
        w += 1
    return w


def _symbolic_support(x: Sym, E) -> SupportVerdict:
    t, p = x.tag, x.params
    if t in ("AN", "AVEC", "CALB", "CALSEQ"):
        return SupportVerdict(True)
    if t == "B":
        from .qforcing import HPerm

        pairs = {tuple(e) for e in E}
        if p in pairs:
            return SupportVerdict(True)
        a, n = p
        n2 = _other(n, {i for (b, i) in pairs if b == a})
        return SupportVerdict(False, HPerm({a: FinPerm.cycle(n, n2)}))
    if not isinstance(E, SupportSpec):
        E = SupportSpec(E)
    levels = E.levels()
    if t == "X":
        n, m, a = p
        if (n, m, a) in E.triples:
            return SupportVerdict(True)
        if n not in levels:
            return SupportVerdict(False, WreathPerm({n: FinPerm.cycle(m, _other(m))}))
        a2 = _other(a, {c for (nn, mm, c) in E.triples if (nn, mm) == (n, m)})
        return SupportVerdict(False, WreathPerm({}, {(n, m): FinPerm.cycle(a, a2)}))
    if t == "A":
        n, m = p
        if n in levels:
            return SupportVerdict(True)
        return SupportVerdict(False, WreathPerm({n: FinPerm.cycle(m, _other(m))}))
    if t == "TS":
        s, _at = p
        for i, v in enumerate(s):
            if i not in levels:
                return SupportVerdict(False, WreathPerm({i: FinPerm.cycle(v, _other(v))}))
        return SupportVerdict(True)
    raise AssertionError(t)


def _mentioned(x: Name):
    """Coordinates touched by a wreath-sorted name: levels, columns, indices."""
    cols: dict[tuple[int, int], set[int]] = {}
    levels: dict[int, set[int]] = {}
    seen: set[int] = set()

    def note(n, m, a=None):
        levels.setdefault(n, set()).add(m)
        col = cols.setdefault((n, m), set())
        if a is not None:
            col.add(a)

    def walk(z):
        if isinstance(z, Check) or id(z) in seen:
            return
        seen.add(id(z))
        if isinstance(z, Sym):
            if z.tag == "X":
                note(*z.params)
            elif z.tag == "A":
                note(*z.params)
            elif z.tag == "TS":
                for i, v in enumerate(z.params[0]):
                    note(i, v)
            return
        for c, y in z.pairs:
            if isinstance(c, CohenCondition):
                for (n, m, a, _b), _v in c.items():
                    note(n, m, a)
            walk(y)

    walk(x)
    return levels, cols


def random_fix_element(E: SupportSpec, x: Name, rng: random.Random) -> WreathPerm:
    """Random element of fix(E) moving the coordinates x mentions."""
    levels, cols = _mentioned(x)
    fixed_levels = E.levels()
    outer, inner = {}, {}
    for n, ms in levels.items():
        if n in fixed_levels:
            continue
        pts = sorted(ms | {max(ms) + 1})
        img = pts[:]
        rng.shuffle(img)
        outer[n] = FinPerm.from_mapping(dict(zip(pts, img)))
    for (n, m), As in cols.items():
        pinned = {a for (nn, mm, a) in E.triples if (nn, mm) == (n, m)}
        free = sorted((As | {max(As, default=-1) + 1}) - pinned)
        img = free[:]
        rng.shuffle(img)
        inner[(n, m)] = FinPerm.from_mapping(dict(zip(free, img)))
    pi = WreathPerm(outer, inner)
    assert in_fix(pi, E)
    return pi


def support_check(x: Name, E, S: FiniteSymmetricSystem | None = None,
                  samples: int = 64, seed: int = 0) -> SupportVerdict:
    """Is fix(E) contained in sym(x)?

    Finite systems are checked exhaustively, symbolic families by their action
    rules; extensional wreath names by ``samples`` random elements of fix(E),
    in which case a positive verdict only means no counterexample was found.
    """
    if S is not None:
        for g in S.fix(E):
            if act_name(g, x) != x:
                return SupportVerdict(False, g, "exhaustive")
        return SupportVerdict(True, None, "exhaustive")
    if isinstance(x, Sym):
        return _symbolic_support(x, E)
    if isinstance(x, Check):
        return SupportVerdict(True)
    if not isinstance(E, SupportSpec):
        E = SupportSpec(E)
    rng = random.Random(seed)
    for _ in range(samples):
        pi = random_fix_element(E, x, rng)
        if act_name(pi, x) != x:
            return SupportVerdict(False, pi, "sampled")
    return SupportVerdict(True, None, "sampled")


def sym_group(x: Name, S: FiniteSymmetricSystem) -> frozenset[Automorphism]:
    labels = set(S.poset.elements)
    for c in conditions_in(x):
        if c is not TOP and c not in labels:
            raise ValueError(f"name mentions condition {c!r} outside the system")
    return frozenset(g for g in S.group if act_name(g, x) == x)


def is_hs(x: Name, S: FiniteSymmetricSystem) -> bool:
    """Hereditary symmetry: every node's stabiliser contains a base subgroup."""
    seen: dict[Name, bool] = {}

    def walk(z: Name) -> bool:
        if isinstance(z, Check):
            return True
        if z in seen:
            return seen[z]
        ok = S.in_filter(sym_group(z, S)) and all(walk(y) for _, y in z.pairs)
        seen[z] = ok
        return ok

    return walk(x)
