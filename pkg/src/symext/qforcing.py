"""Conditions of the choice-tree forcing with disjointing functions.

A :class:`QCondition` assigns finite branches of the choice tree to
coordinates ``(alpha, n)``; a branch is stored as its index sequence ``s``
(level ``i`` picks the ``s[i]``-th member of level ``i``).  The disjointing
function ``f`` sends each subset of the support to the level above which
the sub-tuple of branches is pairwise disjoint.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import chain, combinations, product
from typing import Iterable, Mapping, Sequence

from .group import WreathPerm
from .names import Check, Name, Sym, TS, bullet
from .perm import FinPerm
from .poset import Incompatible

Coord = tuple[int, int]
_ID = FinPerm()


class InvalidCondition(ValueError):
    pass


def subsets(coords: Iterable[Coord]) -> tuple[frozenset, ...]:
    return _subsets(frozenset(coords))


@lru_cache(maxsize=4096)
def _subsets(coords: frozenset) -> tuple[frozenset, ...]:
    cs = sorted(coords)
    return tuple(frozenset(a) for a in chain.from_iterable(combinations(cs, r) for r in range(len(cs) + 1)))


class QCondition:
    """Pair ``<t, f>``; stored as given, checked by :func:`q_validate`."""

    __slots__ = ("t", "f", "_key", "_valid")

    def __init__(self, t: Mapping[Coord, Sequence[int]], f: Mapping[Iterable[Coord], int]):
        self.t: dict[Coord, tuple[int, ...]] = {}
        for c, s in t.items():
            c = (int(c[0]), int(c[1]))
            s = tuple(int(v) for v in s)
            if any(v < 0 for v in s) or min(c) < 0:
                raise ValueError(f"negative entry at {c}")
            if s:
                self.t[c] = s
        self.f: dict[frozenset, int] = {}
        for a, v in f.items():
            a = frozenset((int(x), int(y)) for x, y in a)
            if int(v) < 0:
                raise ValueError("disjointing values are naturals")
            self.f[a] = int(v)
        self._finish()

    def _finish(self):
        self._key = (tuple(sorted(self.t.items())),
                     tuple(sorted((tuple(sorted(a)), v) for a, v in self.f.items())))
        self._valid = None

    @classmethod
    def _raw(cls, t: dict, f: dict) -> "QCondition":
        # already normalised: nonempty int tuples, frozenset keys
        q = cls.__new__(cls)
        q.t, q.f = t, f
        q._finish()
        return q

    @classmethod
    def tight(cls, t: Mapping[Coord, Sequence[int]]) -> "QCondition":
        """The condition on t with the least admissible disjointing function."""
        t = {c: tuple(s) for c, s in t.items() if len(s)}
        f = {a: least_disjointing(t, a) for a in subsets(t)}
        return cls(t, f)

    @classmethod
    def empty(cls) -> "QCondition":
        return cls({}, {(): 0})

    def supp(self) -> frozenset:
        return frozenset(self.t)

    def fval(self, a: Iterable[Coord]) -> int:
        return self.f[frozenset(a)]

    def is_valid(self) -> bool:
        if self._valid is None:
            self._valid = not q_validate(self)
        return self._valid

    def __eq__(self, other):
        return isinstance(other, QCondition) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        from .dsl import format_qcond

        return format_qcond(self)


def least_disjointing(t: Mapping[Coord, Sequence[int]], a: Iterable[Coord]) -> int:
    """Least m with ``t`` restricted to ``a`` m-injective."""
    a = sorted(a)
    worst = 0
    for c, d in combinations(a, 2):
        s, u = t[c], t[d]
        for lv in range(min(len(s), len(u))):
            if s[lv] == u[lv]:
                worst = max(worst, lv)
    return worst


def m_injective(branches: Sequence[Sequence[int]], m: int) -> bool:
    """Pairwise distinct at every level above m lying in both domains."""
    for s, u in combinations(branches, 2):
        for lv in range(m + 1, min(len(s), len(u))):
            if s[lv] == u[lv]:
                return False
    return True


def q_validate(q: QCondition) -> list[str]:
    out = []
    supp = q.supp()
    subs = subsets(supp)
    for a in q.f:
        if not a <= supp:
            out.append(f"f defined on {_fmt(a)} outside the support")
    for a in subs:
        if a not in q.f:
            out.append(f"f undefined on {_fmt(a)}")
    for a in subs:
        if a not in q.f:
            continue
        for c in supp - a:
            b = a | {c}
            if b in q.f and q.f[a] > q.f[b]:
                out.append(f"monotonicity: f{_fmt(a)}={q.f[a]} > f{_fmt(b)}={q.f[b]}")
        if not m_injective([q.t[c] for c in sorted(a)], q.f[a]):
            out.append(f"injectivity: branches on {_fmt(a)} collide above {q.f[a]}")
    return out


def _fmt(a) -> str:
    return "{" + " ".join(f"({x} {y})" for x, y in sorted(a)) + "}"


def _require_valid(*qs: QCondition):
    for q in qs:
        if not q.is_valid():
            raise InvalidCondition(f"invalid condition: {q_validate(q)[0]}")


def q_leq(q1: QCondition, q2: QCondition) -> bool:
    """``q1 <= q2``: branches extend on supp(q2) and f is pointwise below."""
    _require_valid(q1, q2)
    for c, s in q2.t.items():
        t = q1.t.get(c)
        if t is None or t[: len(s)] != s:
            return False
    return all(q1.f[a] <= q2.f[a] for a in subsets(q2.supp()))


def q_meet(q1: QCondition, q2: QCondition) -> QCondition:
    """Greatest common extension, or :class:`Incompatible`.

    Branches are united coordinatewise.  On subsets of one support f takes
    the least of the available bounds; subsets lying in neither support get a
    value above every level, which is the largest admissible choice.  Since
    every other common extension has longer branches and smaller f, this
    candidate failing means no common extension exists.
    """
    _require_valid(q1, q2)
    t = dict(q1.t)
    for c, s in q2.t.items():
        u = t.get(c)
        if u is None or s[: len(u)] == u:
            t[c] = s
        elif u[: len(s)] != s:
            raise Incompatible(f"branches at {c} diverge")
    s1, s2 = q1.supp(), q2.supp()
    cap = max([len(s) for s in t.values()] + list(q1.f.values()) + list(q2.f.values()) + [0])
    f = {}
    for a in subsets(t):
        vals = []
        if a <= s1:
            vals.append(q1.f[a])
        if a <= s2:
            vals.append(q2.f[a])
        f[a] = min(vals) if vals else cap
    r = QCondition._raw(t, f)
    problems = q_validate(r)
    if problems:
        raise Incompatible(problems[0])
    r._valid = True
    return r


def q_compatible(q1: QCondition, q2: QCondition) -> bool:
    try:
        q_meet(q1, q2)
    except Incompatible:
        return False
    return True


def q_restrict(q: QCondition, E: Iterable[Coord]) -> QCondition:
    E = {tuple(e) for e in E}
    keep = q.supp() & E
    return QCondition({c: q.t[c] for c in keep}, {a: q.f[a] for a in subsets(keep)})


class HPerm:
    """Permutation of coordinates ``(alpha, n) -> (alpha, pi_alpha(n))``."""

    __slots__ = ("per_alpha",)

    def __init__(self, per_alpha: Mapping[int, FinPerm] | None = None):
        self.per_alpha = {int(a): p for a, p in (per_alpha or {}).items() if not p.is_identity()}

    def at(self, alpha: int) -> FinPerm:
        return self.per_alpha.get(alpha, _ID)

    def __call__(self, c: Coord) -> Coord:
        return (c[0], self.at(c[0])(c[1]))

    def compose(self, other: "HPerm") -> "HPerm":
        keys = set(self.per_alpha) | set(other.per_alpha)
        return HPerm({a: self.at(a).compose(other.at(a)) for a in keys})

    def inverse(self) -> "HPerm":
        return HPerm({a: p.inverse() for a, p in self.per_alpha.items()})

    def _canon(self):
        return frozenset((a, frozenset(p.mapping().items())) for a, p in self.per_alpha.items())

    def __eq__(self, other):
        return isinstance(other, HPerm) and self._canon() == other._canon()

    def __hash__(self):
        return hash(self._canon())

    def __repr__(self):
        from .dsl import format_hperm

        return format_hperm(self)


def h_act(pi: HPerm, q: QCondition) -> QCondition:
    return QCondition({pi(c): s for c, s in q.t.items()},
                      {frozenset(pi(c) for c in a): v for a, v in q.f.items()})


def g_act_q(pi: WreathPerm, q: QCondition) -> QCondition:
    """Wreath permutation acting on a condition through its canonical name.

    Level i of a branch names a member of level i, so it moves by the outer
    permutation of level i; the disjointing function is ground data.
    """
    t = {c: tuple(pi.outer_at(i)(v) for i, v in enumerate(s)) for c, s in q.t.items()}
    r = QCondition._raw(t, dict(q.f))
    # outer parts are bijections at each level, so collisions are preserved
    r._valid = q._valid
    return r


def f_encoding(q: QCondition) -> frozenset:
    return frozenset((frozenset(a), v) for a, v in q.f.items())


def canonical_qname(q: QCondition) -> Name:
    """Bullet of the located branch names together with the check of f."""
    return bullet([TS(s, c) for c, s in sorted(q.t.items())] + [Check(f_encoding(q))])


def captures(E: Iterable[int], q: QCondition) -> bool:
    E = set(E)
    return (all(set(range(len(s))) <= E for s in q.t.values())
            and set(q.f.values()) <= E)


def compatible_on(E: Iterable[int], q: QCondition, q2: QCondition) -> bool:
    """Shared branches have equal restrictions to every n in E.

    A restriction past a branch's length is the branch itself.
    """
    E = sorted(set(E))
    for c in q.supp() & q2.supp():
        s, t = q.t[c], q2.t[c]
        for n in E:
            if s[:n] != t[:n]:
                return False
    return True


def choice_tree_elements(length: int, width: int) -> list[tuple[int, ...]]:
    """Index sequences of length <= ``length`` with entries < ``width``."""
    out = []
    for n in range(length + 1):
        out.extend(product(range(width), repeat=n))
    return out


def b_name(alpha: int, n: int) -> Sym:
    return Sym("B", alpha, n)
