"""Forcing conditions and finite preorders.

Two condition sorts live here: :class:`CohenCondition`, a finite partial
function ``(n, m, alpha, beta) -> {0, 1}`` ordered by reverse inclusion, and
the labels of an explicit :class:`FinitePoset` used by the exhaustive
oracles.
"""
from __future__ import annotations

from functools import cached_property
from typing import Hashable, Iterable, Mapping

import numpy as np

from . import _kernels

Key = tuple[int, int, int, int]


class _Top:
    """The maximum condition of whatever forcing is in use."""

    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "top"

    def __reduce__(self):
        return (_Top, ())

    def __lt__(self, other):
        return not isinstance(other, _Top)


TOP = _Top()


class Incompatible(Exception):
    """Two conditions have no common extension."""


class UnknownLabel(KeyError):
    pass


class CohenCondition:
    """Finite partial function from ``(n, m, alpha, beta)`` to a bit."""

    __slots__ = ("_items", "_dict", "_hash")

    def __init__(self, entries: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        if isinstance(entries, Mapping):
            items = entries.items()
        else:
            items = entries
        d: dict[Key, int] = {}
        for key, bit in items:
            key = tuple(int(k) for k in key)
            if len(key) != 4 or min(key) < 0:
                raise ValueError(f"condition key must be four naturals: {key}")
            if bit not in (0, 1):
                raise ValueError(f"condition value must be a bit: {bit}")
            if d.get(key, bit) != bit:
                raise ValueError(f"key {key} given two values")
            d[key] = int(bit)
        self._dict = d
        self._items = tuple(sorted(d.items()))
        self._hash = hash(self._items)

    @property
    def entries(self) -> dict[Key, int]:
        return dict(self._dict)

    def items(self):
        return self._items

    def get(self, key, default=None):
        return self._dict.get(key, default)

    def __contains__(self, key):
        return key in self._dict

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        return isinstance(other, CohenCondition) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{' '.join(map(str, k))} -> {v}" for k, v in self._items)
        return f"cond {{{body}}}"


def cohen_leq(q: CohenCondition, p: CohenCondition) -> bool:
    """``q <= p``: q extends p."""
    return all(q.get(k) == v for k, v in p.items())


def cohen_meet(p: CohenCondition, q: CohenCondition) -> CohenCondition:
    for k, v in q.items():
        w = p.get(k)
        if w is not None and w != v:
            raise Incompatible(f"conditions disagree at {k}")
    if len(q) == 0:
        return p
    return CohenCondition(p.items() + q.items())


def cohen_compatible(p: CohenCondition, q: CohenCondition) -> bool:
    return all(p.get(k, v) == v for k, v in q.items())


class FinitePoset:
    """Explicit finite preorder with a designated top.

    ``leq`` holds pairs ``(a, b)`` meaning ``a <= b``.  The relation is
    stored as given; :func:`poset_validate` reports whether it is a preorder
    with maximum.  Use :meth:`from_relation` to take the reflexive-transitive
    closure of a generating set of pairs.
    """

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple], top: Hashable):
        self.elements: tuple = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate poset labels")
        self.index = {e: i for i, e in enumerate(self.elements)}
        if top not in self.index:
            raise UnknownLabel(top)
        self.top = top
        pairs = set()
        for a, b in leq:
            if a not in self.index:
                raise UnknownLabel(a)
            if b not in self.index:
                raise UnknownLabel(b)
            pairs.add((a, b))
        self.leq: frozenset = frozenset(pairs)

    @classmethod
    def from_relation(cls, elements, pairs, top) -> "FinitePoset":
        """Reflexive-transitive closure of ``pairs``, with everything below top."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        m = np.eye(n, dtype=bool)
        for a, b in pairs:
            m[idx[a], idx[b]] = True
        m[:, idx[top]] = True
        for k in range(n):
            m |= m[:, [k]] & m[[k], :]
        leq = [(elements[i], elements[j]) for i in range(n) for j in range(n) if m[i, j]]
        return cls(elements, leq, top)

    @cached_property
    def matrix(self) -> np.ndarray:
        n = len(self.elements)
        m = np.zeros((n, n), dtype=np.bool_)
        for a, b in self.leq:
            m[self.index[a], self.index[b]] = True
        return m

    @cached_property
    def compat(self) -> np.ndarray:
        return _kernels.compat_matrix(self.matrix)

    @cached_property
    def below_masks(self) -> tuple[int, ...]:
        """Bitmask of ``{q : q <= p}`` for each element index p."""
        m = self.matrix
        n = len(self.elements)
        return tuple(sum(1 << i for i in range(n) if m[i, j]) for j in range(n))

    def resolve(self, label):
        if label is TOP:
            return self.top
        if label not in self.index:
            raise UnknownLabel(label)
        return label

    def le(self, a, b) -> bool:
        return (self.resolve(a), self.resolve(b)) in self.leq

    def below(self, p) -> list:
        p = self.resolve(p)
        return [q for q in self.elements if (q, p) in self.leq]

    def compatible(self, a, b) -> bool:
        return bool(self.compat[self.index[self.resolve(a)], self.index[self.resolve(b)]])

    def minimal_elements(self) -> list:
        """Elements m such that every q <= m is also >= m."""
        m = self.matrix
        out = []
        for j, e in enumerate(self.elements):
            if all(m[j, i] for i in range(len(self.elements)) if m[i, j]):
                out.append(e)
        return out

    def _key(self):
        return (self.elements, self.leq, self.top)

    def __eq__(self, other):
        return isinstance(other, FinitePoset) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FinitePoset({list(self.elements)}, top={self.top!r})"


def poset_validate(P: FinitePoset) -> list[str]:
    """Diagnostics for reflexivity, transitivity and maximality of top."""
    out = []
    refl_bad, trans_mid = _kernels.preorder_violations(P.matrix)
    els = P.elements
    for i in np.flatnonzero(refl_bad):
        out.append(f"reflexivity: {els[i]} <= {els[i]} missing")
    for a, c in zip(*np.nonzero(trans_mid >= 0)):
        b = trans_mid[a, c]
        out.append(f"transitivity: {els[a]} <= {els[b]} <= {els[c]} but not {els[a]} <= {els[c]}")
    t = P.index[P.top]
    for i, e in enumerate(els):
        if not P.matrix[i, t]:
            out.append(f"maximality: {e} <= {P.top} missing")
    return out


def is_dense(P: FinitePoset, D: Iterable) -> bool:
    D = set(D)
    for d in D:
        if d not in P.index:
            raise UnknownLabel(d)
    return all(any(q in D for q in P.below(p)) for p in P.elements)


def dense_below(P: FinitePoset, D: Iterable, p) -> bool:
    D = set(D)
    return all(any(r in D for r in P.below(q)) for q in P.below(p))
