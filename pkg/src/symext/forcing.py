"""Forcing over finite preorders for atomic statements.

Forcing is computed as sets of conditions (bitmasks over the poset's
element order) by the recursion

* ``p ||- c in x``  iff the set of ``r`` lying below some ``s`` with
  ``<s, y> in x`` and ``r ||- c = y`` is dense below ``p``;
* ``p ||- x = y``  iff for every ``<s, z>`` in x (resp. y) and every
  ``q <= p, s``: ``q ||- z in y`` (resp. ``z in x``);
* ``p ||- x subset a``  iff for every ``<s, z>`` in x and every
  ``q <= p, s``: ``q ||- z in a``.

These clauses are checked against truth in every generic extension by
:func:`forcing_theorem_check`; the oracle, not the recursion, is the
reference.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .group import Automorphism, FiniteSymmetricSystem
from .names import Check, Ext, Name, Sym, act_name, as_ext
from .poset import TOP, FinitePoset, UnknownLabel


@dataclass(frozen=True)
class Mem:
    c: Name
    x: Name


@dataclass(frozen=True)
class Eq:
    x: Name
    y: Name


@dataclass(frozen=True)
class SubsetOfCheck:
    x: Name
    a: Check

    def __init__(self, x: Name, a):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "a", a if isinstance(a, Check) else Check(a))


Statement = Mem | Eq | SubsetOfCheck


def act_statement(pi, phi: Statement) -> Statement:
    if isinstance(phi, Mem):
        return Mem(act_name(pi, phi.c), act_name(pi, phi.x))
    if isinstance(phi, Eq):
        return Eq(act_name(pi, phi.x), act_name(pi, phi.y))
    return SubsetOfCheck(act_name(pi, phi.x), phi.a)


class Forcer:
    """Memoised forcing relation over one finite poset (a pure cache)."""

    def __init__(self, P: FinitePoset):
        self.P = P
        self.n = len(P.elements)
        self.full = (1 << self.n) - 1
        self.below = P.below_masks
        self._memo: dict = {}
        self._pairs: dict = {}

    def _index(self, c) -> int:
        if c is TOP:
            return self.P.index[self.P.top]
        try:
            return self.P.index[c]
        except KeyError:
            raise UnknownLabel(c) from None

    def pairs(self, x: Name) -> list[tuple[int, Name]]:
        got = self._pairs.get(x)
        if got is None:
            if isinstance(x, Sym):
                raise TypeError("symbolic names must be expanded before forcing")
            got = [(self._index(c), y) for c, y in as_ext(x).pairs]
            self._pairs[x] = got
        return got

    def dense_below(self, D: int) -> int:
        """Mask of p such that D is dense below p."""
        good = 0
        for q in range(self.n):
            if self.below[q] & D:
                good |= 1 << q
        out = 0
        for p in range(self.n):
            if self.below[p] & ~good == 0:
                out |= 1 << p
        return out

    def _all_below_avoid(self, bad: int) -> int:
        out = 0
        for p in range(self.n):
            if self.below[p] & bad == 0:
                out |= 1 << p
        return out

    def mem(self, c: Name, x: Name) -> int:
        key = ("m", c, x)
        got = self._memo.get(key)
        if got is None:
            D = 0
            for s, y in self.pairs(x):
                D |= self.below[s] & self.eq(c, y)
            got = self.dense_below(D)
            self._memo[key] = got
        return got

    def eq(self, x: Name, y: Name) -> int:
        if x == y:
            return self.full
        key = ("e", x, y)
        got = self._memo.get(key)
        if got is None:
            bad = 0
            for s, z in self.pairs(x):
                bad |= self.below[s] & ~self.mem(z, y)
            for s, z in self.pairs(y):
                bad |= self.below[s] & ~self.mem(z, x)
            got = self._all_below_avoid(bad & self.full)
            self._memo[key] = got
        return got

    def subset(self, x: Name, a: Check) -> int:
        key = ("s", x, a)
        got = self._memo.get(key)
        if got is None:
            bad = 0
            for s, z in self.pairs(x):
                bad |= self.below[s] & ~self.mem(z, a)
            got = self._all_below_avoid(bad & self.full)
            self._memo[key] = got
        return got

    def mask(self, phi: Statement) -> int:
        if isinstance(phi, Mem):
            return self.mem(phi.c, phi.x)
        if isinstance(phi, Eq):
            return self.eq(phi.x, phi.y)
        if isinstance(phi, SubsetOfCheck):
            return self.subset(phi.x, phi.a)
        raise TypeError(f"not an atomic statement: {phi!r}")

    def forces(self, p, phi: Statement) -> bool:
        return bool(self.mask(phi) >> self._index(p) & 1)

    def forces_not(self, p, phi: Statement) -> bool:
        """No extension of p forces phi."""
        return self.below[self._index(p)] & self.mask(phi) == 0


@lru_cache(maxsize=256)
def forcer(P: FinitePoset) -> Forcer:
    return Forcer(P)


def forces(P: FinitePoset, p, phi: Statement) -> bool:
    return forcer(P).forces(p, phi)


def forces_not(P: FinitePoset, p, phi: Statement) -> bool:
    return forcer(P).forces_not(p, phi)


# ---------------------------------------------------------------------------
# generic filters and evaluation


def generic_filters(P: FinitePoset) -> list[frozenset]:
    """Up-closures of minimal elements, one per equivalence class."""
    out = []
    for m in P.minimal_elements():
        G = frozenset(q for q in P.elements if P.le(m, q))
        if G not in out:
            assert P.top in G
            assert any(all(P.le(g, x) for x in G) for g in G), "filter must contain a least element"
            out.append(G)
    return out


def meets_every_dense(P: FinitePoset, G: frozenset) -> bool:
    """Brute-force genericity: G meets every dense subset of P."""
    from .poset import is_dense

    els = P.elements
    for bits in range(1, 1 << len(els)):
        D = [els[i] for i in range(len(els)) if bits >> i & 1]
        if not (G & set(D)) and is_dense(P, D):
            return False
    return True


def eval_name(x: Name, G: Iterable, _memo: dict | None = None) -> frozenset:
    """Interpretation of x by the filter G (TOP is always in G)."""
    if isinstance(x, Check):
        return x.hf
    if isinstance(x, Sym):
        raise TypeError("symbolic names must be expanded before evaluation")
    G = G if isinstance(G, frozenset) else frozenset(G)
    memo = {} if _memo is None else _memo
    got = memo.get(x)
    if got is None:
        got = frozenset(eval_name(y, G, memo) for c, y in x.pairs if c is TOP or c in G)
        memo[x] = got
    return got


def holds_in(phi: Statement, G: frozenset, memo: dict | None = None) -> bool:
    memo = {} if memo is None else memo
    if isinstance(phi, Mem):
        return eval_name(phi.c, G, memo) in eval_name(phi.x, G, memo)
    if isinstance(phi, Eq):
        return eval_name(phi.x, G, memo) == eval_name(phi.y, G, memo)
    return eval_name(phi.x, G, memo) <= phi.a.hf


def oracle_forces(P: FinitePoset, p, phi: Statement, generics: list | None = None) -> bool:
    """phi holds in every generic extension by a filter containing p."""
    p = P.resolve(p)
    generics = generic_filters(P) if generics is None else generics
    return all(holds_in(phi, G) for G in generics if p in G)


@dataclass
class TheoremReport:
    rows: list = field(default_factory=list)        # (p, statement, forced, oracle)
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def forcing_theorem_report(P: FinitePoset, statements: Iterable[Statement]) -> TheoremReport:
    """Compare the forcing recursion with truth in all generic extensions."""
    f = forcer(P)
    generics = generic_filters(P)
    rep = TheoremReport()
    for phi in statements:
        truth = [holds_in(phi, G) for G in generics]
        mask = f.mask(phi)
        for p in P.elements:
            oracle = all(t for G, t in zip(generics, truth) if p in G)
            forced = bool(mask >> P.index[p] & 1)
            rep.rows.append((p, phi, forced, oracle))
            if forced != oracle:
                rep.disagreements.append((p, phi, forced, oracle))
    return rep


def forcing_theorem_check(P: FinitePoset, x: Name, c: Name) -> TheoremReport:
    return forcing_theorem_report(P, [Mem(c, x)])


def symmetry_lemma_check(S: FiniteSymmetricSystem, p, pi: Automorphism, phi: Statement,
                         image: Statement | None = None) -> bool:
    """``p ||- phi`` iff ``pi(p) ||- pi(phi)``; ``image`` may pass a precomputed ``pi(phi)``."""
    P = S.poset
    lhs = forces(P, p, phi)
    image = act_statement(pi, phi) if image is None else image
    rhs = forces(P, pi(P.resolve(p)), image)
    return lhs == rhs


# ---------------------------------------------------------------------------
# restriction decides, and ground-model normal forms


@dataclass
class RestrictionReport:
    hypothesis_failures: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.hypothesis_failures:
            return "HYPOTHESIS-FAIL"
        return "FAIL" if self.violations else "PASS"


def _restriction_hypotheses(S: FiniteSymmetricSystem, x: Name, H: Iterable[Automorphism],
                            restrict: Mapping, a) -> list[str]:
    P = S.poset
    out = []
    a = a if isinstance(a, Check) else Check(a)
    if not forces(P, P.top, SubsetOfCheck(x, a)):
        out.append(f"top does not force x subset {a!r}")
    H = list(H)
    for h in H:
        if act_name(h, x) != x:
            out.append(f"{h!r} does not fix x")
    for q in P.elements:
        r = restrict.get(q)
        if r is None:
            out.append(f"restriction undefined at {q}")
            continue
        if not P.le(q, r):
            out.append(f"restriction of {q} is {r}, not weaker")
            continue
        for q2 in P.below(r):
            if not any(P.compatible(h(q2), q) for h in H):
                out.append(f"no element of H makes {q2} compatible with {q}")
    return out


def restriction_decides_check(S: FiniteSymmetricSystem, x: Name, H: Iterable[Automorphism],
                              restrict: Mapping, a) -> RestrictionReport:
    """Whenever q decides ``b in x`` for b in a, so does its restriction.

    Hypotheses (x forced inside a, H fixing x, restriction weakening, and every
    extension of a restriction movable by H to meet the original) are reported
    separately; the conclusion is not evaluated when they fail.
    """
    rep = RestrictionReport()
    rep.hypothesis_failures = _restriction_hypotheses(S, x, H, restrict, a)
    if rep.hypothesis_failures:
        return rep
    P = S.poset
    f = forcer(P)
    a = a if isinstance(a, Check) else Check(a)
    for b in sorted(a.hf, key=_hf_sort):
        phi = Mem(Check(b), x)
        for q in P.elements:
            r = restrict[q]
            if f.forces(q, phi) and not f.forces(r, phi):
                rep.violations.append(f"{q} forces {_show(b)} in x but {r} does not")
            if f.forces_not(q, phi) and not f.forces_not(r, phi):
                rep.violations.append(f"{q} forces {_show(b)} not in x but {r} does not")
    return rep


def normalize_name(x: Name, restrict: Mapping, S: FiniteSymmetricSystem, a) -> Ext:
    """``{<restrict(q), b> | q ||- b in x}`` over the members b of a."""
    P = S.poset
    f = forcer(P)
    a = a if isinstance(a, Check) else Check(a)
    pairs = set()
    for b in a.hf:
        phi = Mem(Check(b), x)
        for q in P.elements:
            if f.forces(q, phi):
                pairs.add((restrict[q], Check(b)))
    return Ext(pairs)


def _hf_sort(v) -> tuple:
    return (len(v), repr(sorted(map(_hf_sort, v))))


def _show(v: frozenset) -> str:
    from .dsl import format_hf

    return format_hf(v)
