"""The wreath-product group acting on Cohen conditions, and finite symmetric systems.

A :class:`WreathPerm` acts on triples ``(n, m, alpha)``: the level ``n`` is
kept, ``m`` is moved by the outer permutation of level ``n`` and ``alpha``
by the inner permutation indexed by the *source* column ``(n, m)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .perm import FinPerm
from .poset import CohenCondition, FinitePoset, cohen_compatible, poset_validate

Triple = tuple[int, int, int]
_ID = FinPerm()


class WreathPerm:
    """Finitely supported element of the wreath product."""

    __slots__ = ("outer", "inner", "_canon")

    def __init__(self, outer: Mapping[int, FinPerm] | None = None,
                 inner: Mapping[tuple[int, int], FinPerm] | None = None):
        self.outer: dict[int, FinPerm] = {
            int(n): p for n, p in (outer or {}).items() if not p.is_identity()}
        self.inner: dict[tuple[int, int], FinPerm] = {
            (int(n), int(m)): p for (n, m), p in (inner or {}).items() if not p.is_identity()}
        self._canon = None

    @classmethod
    def identity(cls) -> "WreathPerm":
        return cls()

    def outer_at(self, n: int) -> FinPerm:
        return self.outer.get(n, _ID)

    def inner_at(self, n: int, m: int) -> FinPerm:
        return self.inner.get((n, m), _ID)

    def __call__(self, i: Triple) -> Triple:
        n, m, a = i
        return (n, self.outer_at(n)(m), self.inner_at(n, m)(a))

    def levels(self) -> set[int]:
        return set(self.outer) | {n for n, _ in self.inner}

    def compose(self, other: "WreathPerm") -> "WreathPerm":
        """``self o other`` (apply ``other`` first)."""
        outer = {n: self.outer_at(n).compose(other.outer_at(n))
                 for n in set(self.outer) | set(other.outer)}
        cols = set(other.inner)
        for (n, m) in self.inner:
            # columns that other sends onto (n, m)
            cols.add((n, other.outer_at(n).inverse()(m)))
        inner = {}
        for (n, m) in cols:
            mid = other.outer_at(n)(m)
            inner[(n, m)] = self.inner_at(n, mid).compose(other.inner_at(n, m))
        return WreathPerm(outer, inner)

    def inverse(self) -> "WreathPerm":
        outer = {n: p.inverse() for n, p in self.outer.items()}
        inner = {(n, self.outer_at(n)(m)): p.inverse() for (n, m), p in self.inner.items()}
        return WreathPerm(outer, inner)

    def canonical(self):
        if self._canon is None:
            self._canon = (
                frozenset((n, frozenset(p.mapping().items())) for n, p in self.outer.items()),
                frozenset((c, frozenset(p.mapping().items())) for c, p in self.inner.items()),
            )
        return self._canon

    def is_identity(self) -> bool:
        return not self.outer and not self.inner

    def __eq__(self, other):
        return isinstance(other, WreathPerm) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        from .dsl import format_wreath

        return format_wreath(self)


def wreath_apply_index(pi: WreathPerm, i: Triple) -> Triple:
    return pi(i)


def wreath_act_condition(pi: WreathPerm, p: CohenCondition) -> CohenCondition:
    return CohenCondition({pi((n, m, a)) + (b,): v for (n, m, a, b), v in p.items()})


def wreath_compose(pi: WreathPerm, rho: WreathPerm) -> WreathPerm:
    return pi.compose(rho)


def wreath_inverse(pi: WreathPerm) -> WreathPerm:
    return pi.inverse()


@dataclass(frozen=True)
class SupportSpec:
    triples: frozenset[Triple] = frozenset()

    def __init__(self, triples: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "triples", frozenset(tuple(int(x) for x in t) for t in triples))

    def levels(self) -> set[int]:
        return {n for n, _, _ in self.triples}

    def __iter__(self):
        return iter(sorted(self.triples))

    def __len__(self):
        return len(self.triples)


def in_fix(pi: WreathPerm, E: SupportSpec | Iterable[Triple]) -> bool:
    """Membership in fix(E): outer identity on E's levels and E fixed pointwise."""
    triples = E.triples if isinstance(E, SupportSpec) else {tuple(t) for t in E}
    for t in triples:
        if not pi.outer_at(t[0]).is_identity():
            return False
        if pi(t) != t:
            return False
    return True


def conjugate_support(pi: WreathPerm, E: SupportSpec) -> SupportSpec:
    """E' with fix(E') = pi fix(E) pi^-1.

    Levels are preserved by pi, so the image of E mentions the same levels.
    """
    return SupportSpec(pi(t) for t in E.triples)


def block_swap(n: int, k: int, k2: int, p: CohenCondition) -> WreathPerm:
    """Swap columns k and k2 of level n, pushing both above p's domain.

    The shared inner permutation exchanges ``[0, a)`` and ``[a, 2a)`` where
    ``a`` is the least positive ordinal above every index p uses in those
    two columns, so the image of p is compatible with p.
    """
    if k == k2:
        raise ValueError("block_swap needs two distinct columns")
    used = [a for (nn, m, a, _b) in p.entries if nn == n and m in (k, k2)]
    alpha = max(used, default=-1) + 1
    alpha = max(alpha, 1)
    inner = FinPerm.swap(0, alpha)
    return WreathPerm({n: FinPerm.cycle(k, k2)}, {(n, k): inner, (n, k2): inner})


# ---------------------------------------------------------------------------
# finite symmetric systems


class Automorphism:
    """Permutation of a finite poset's labels."""

    __slots__ = ("mapping", "_key")

    def __init__(self, mapping: Mapping[Hashable, Hashable]):
        self.mapping = {a: b for a, b in mapping.items() if a != b}
        if set(self.mapping) != set(self.mapping.values()):
            raise ValueError("automorphism mapping is not a bijection of its support")
        self._key = frozenset(self.mapping.items())

    def __call__(self, label):
        return self.mapping.get(label, label)

    def compose(self, other: "Automorphism") -> "Automorphism":
        keys = set(self.mapping) | set(other.mapping)
        return Automorphism({x: self(other(x)) for x in keys})

    def inverse(self) -> "Automorphism":
        return Automorphism({b: a for a, b in self.mapping.items()})

    def is_identity(self) -> bool:
        return not self.mapping

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        from .dsl import format_auto

        return format_auto(self)


@dataclass(frozen=True)
class FiniteSymmetricSystem:
    poset: FinitePoset
    group: tuple[Automorphism, ...]
    base: tuple[frozenset[Automorphism], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "group", tuple(self.group))
        base = tuple(frozenset(H) for H in self.base) or (frozenset(self.group),)
        object.__setattr__(self, "base", base)

    def group_table(self, members: Iterable[Automorphism] | None = None) -> np.ndarray:
        members = self.group if members is None else list(members)
        P = self.poset
        tab = np.zeros((len(members), len(P.elements)), dtype=np.int64)
        for g, a in enumerate(members):
            for i, e in enumerate(P.elements):
                tab[g, i] = P.index[a(e)]
        return tab

    def fix(self, labels: Iterable) -> frozenset[Automorphism]:
        labels = list(labels)
        return frozenset(g for g in self.group if all(g(x) == x for x in labels))

    def in_filter(self, H: Iterable[Automorphism]) -> bool:
        H = frozenset(H)
        return any(B <= H for B in self.base)


def automorphisms(P: FinitePoset) -> list[Automorphism]:
    """All order automorphisms of P, by brute force over label permutations."""
    from itertools import permutations

    els = P.elements
    m = P.matrix
    n = len(els)
    out = []
    for img in permutations(range(n)):
        idx = np.array(img)
        if np.array_equal(m[np.ix_(idx, idx)], m):
            out.append(Automorphism({els[i]: els[img[i]] for i in range(n)}))
    return out


def system_validate(S: FiniteSymmetricSystem) -> list[str]:
    """Diagnostics: poset, automorphism property, group closure, subgroup closure."""
    out = poset_validate(S.poset)
    P = S.poset
    G = set(S.group)
    for g in S.group:
        for a, b in product(P.elements, repeat=2):
            if P.le(a, b) != P.le(g(a), g(b)):
                out.append(f"automorphism {g!r} breaks order at {a}, {b}")
                break
        if g.inverse() not in G:
            out.append(f"group not closed under inverse at {g!r}")
    for g, h in product(S.group, repeat=2):
        if g.compose(h) not in G:
            out.append(f"group not closed under composition: {g!r} {h!r}")
            break
    for i, H in enumerate(S.base):
        if not H <= G:
            out.append(f"base subgroup {i} has elements outside the group")
        if any(g.compose(h) not in H for g in H for h in H):
            out.append(f"base subgroup {i} not closed under composition")
        if H and Automorphism({}) not in H:
            out.append(f"base subgroup {i} lacks the identity")
    return out


def _homogeneous_below(S: FiniteSymmetricSystem, members, cone_mask) -> bool:
    if not members:
        return not cone_mask.any()
    tab = S.group_table(members)
    wit = _kernels.homogeneity_witness(tab, S.poset.compat, cone_mask, cone_mask)
    return not (wit == -1).any()


def is_homogeneous(S: FiniteSymmetricSystem) -> bool:
    """For all p, q some group element moves p compatible with q."""
    n = len(S.poset.elements)
    return _homogeneous_below(S, S.group, np.ones(n, dtype=np.bool_))


def is_strongly_homogeneous(S: FiniteSymmetricSystem) -> bool:
    """Each base subgroup fixes some condition and is homogeneous on its cone."""
    P = S.poset
    for H in S.base:
        ok = False
        for p in P.elements:
            if any(g(p) != p for g in H):
                continue
            cone = P.matrix[:, P.index[p]].copy()
            if _homogeneous_below(S, list(H), cone):
                ok = True
                break
        if not ok:
            return False
    return True


def normality_check(S: FiniteSymmetricSystem) -> list[tuple[Automorphism, int]]:
    """Pairs (pi, i) where pi H_i pi^-1 contains no base subgroup."""
    bad = []
    for g in S.group:
        gi = g.inverse()
        for i, H in enumerate(S.base):
            conj = frozenset(g.compose(h).compose(gi) for h in H)
            if not any(B <= conj for B in S.base):
                bad.append((g, i))
    return bad
