"""Permutation builders for the homogeneity arguments, each with a brute-force twin.

:func:`build_lemma_perm` constructs, level by level, an outer permutation
sending the branches of ``q'`` onto those of ``q`` while fixing the captured
levels; :func:`brute_force_lemma_perm` searches all outer permutations of a
bounded width for the same thing.  The two are meant to agree on every
instance, which is what the exhaustive suite checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .group import SupportSpec, WreathPerm, block_swap, in_fix, wreath_act_condition
from .names import A, TS, act_name
from .perm import FinPerm
from .poset import CohenCondition, cohen_compatible
from .qforcing import (QCondition, canonical_qname, captures, compatible_on, g_act_q,
                       q_compatible, q_leq, q_validate)


class InconsistentSigma(ValueError):
    """The level map from q' indices to q indices cannot be a usable injection."""


class NoSuitableLevel(ValueError):
    pass


@dataclass(frozen=True)
class LemmaInstance:
    base: QCondition
    n: int
    q: QCondition
    qp: QCondition

    def levels(self) -> int:
        return max([len(s) for c in (self.base, self.q, self.qp) for s in c.t.values()] + [0])


def lemma_validate(L: LemmaInstance) -> list[str]:
    """Diagnostics for the instance hypotheses (empty when it is valid)."""
    out = []
    for tag, c in (("base", L.base), ("q", L.q), ("qp", L.qp)):
        if not c.is_valid():
            out += [f"{tag}: {d}" for d in q_validate(c)]
    if out:
        return out
    if not captures(range(L.n), L.base):
        out.append(f"{L.n} does not capture the base")
    if not q_leq(L.q, L.base):
        out.append("q is not below the base")
    if not q_leq(L.qp, L.base):
        out.append("qp is not below the base")
    if L.q.supp() != L.qp.supp():
        out.append("q and qp have different supports")
    if not compatible_on(range(L.n + 1), L.q, L.qp):
        out.append(f"q and qp disagree below level {L.n}")
    return out


@dataclass(frozen=True)
class PermWitnessReport:
    inFix: bool
    fixesBaseName: bool
    mapsQPrimeToQ: bool
    compatibleAfter: bool

    @property
    def ok(self) -> bool:
        return self.inFix and self.fixesBaseName and self.mapsQPrimeToQ and self.compatibleAfter

    def failed(self) -> list[str]:
        return [k for k in ("inFix", "fixesBaseName", "mapsQPrimeToQ", "compatibleAfter")
                if not getattr(self, k)]


def _level_map(L: LemmaInstance, lv: int) -> dict[int, int]:
    """Partial injection q' index -> q index at one level, plus fresh targets."""
    q, qp = L.q.t, L.qp.t
    sigma: dict[int, int] = {}
    for c in sorted(q.keys() & qp.keys()):
        s, t = q[c], qp[c]
        if lv < len(s) and lv < len(t):
            src, dst = t[lv], s[lv]
            if sigma.setdefault(src, dst) != dst:
                raise InconsistentSigma(f"level {lv}: index {src} must go to both {sigma[src]} and {dst}")
    if len(set(sigma.values())) != len(sigma):
        raise InconsistentSigma(f"level {lv}: two indices must go to the same place")
    taken = {s[lv] for s in q.values() if lv < len(s)} | set(sigma.values())
    for c in sorted(qp):
        t = qp[c]
        if lv < len(t) and t[lv] not in sigma:
            w = 0
            while w in taken:
                w += 1
            sigma[t[lv]] = w
            taken.add(w)
    return sigma


def build_lemma_perm(L: LemmaInstance) -> WreathPerm:
    """Outer permutation sending q' onto q above the captured levels.

    Raises :class:`InconsistentSigma` when the index map is ill-defined, or
    when even the best choice of fresh targets leaves the images clashing
    with q (then no permutation works).
    """
    problems = lemma_validate(L)
    if problems:
        raise ValueError("invalid lemma instance: " + "; ".join(problems))
    outer = {}
    for lv in range(L.n, L.levels()):
        sigma = _level_map(L, lv)
        outer[lv] = FinPerm.from_partial_injection(sigma)
    pi = WreathPerm(outer)
    if not q_compatible(L.q, g_act_q(pi, L.qp)):
        raise InconsistentSigma("images collide with q above the disjointing bound")
    return pi


def _common_ts(q: QCondition, qp: QCondition, c):
    k = min(len(q.t[c]), len(qp.t[c]))
    return TS(qp.t[c][:k], c), TS(q.t[c][:k], c)


def verify_lemma_perm(pi: WreathPerm, L: LemmaInstance) -> PermWitnessReport:
    """The four checks; q' is compared with q on their common branch parts."""
    E = SupportSpec((i, 0, 0) for i in range(L.n))
    base_name = canonical_qname(L.base)
    maps = True
    for c in sorted(L.q.supp() & L.qp.supp()):
        src, dst = _common_ts(L.q, L.qp, c)
        if act_name(pi, src) != dst:
            maps = False
            break
    maps = maps and L.q.supp() == L.qp.supp()
    moved = g_act_q(pi, L.qp)
    try:
        compat = q_compatible(L.q, moved)
    except ValueError:
        compat = False
    return PermWitnessReport(
        inFix=in_fix(pi, E),
        fixesBaseName=act_name(pi, base_name) == base_name,
        mapsQPrimeToQ=maps,
        compatibleAfter=compat,
    )


def _encode(L: LemmaInstance):
    coords = sorted(L.q.supp() | L.qp.supp())
    levels = L.levels()
    k = len(coords)

    def rows(cond):
        arr = np.full((k, levels), -1, dtype=np.int64)
        for i, c in enumerate(coords):
            s = cond.t.get(c, ())
            arr[i, : len(s)] = s
        return arr

    fmin = np.full((k, k), -1, dtype=np.int64)
    for i in range(k):
        for j in range(i + 1, k):
            pair = frozenset((coords[i], coords[j]))
            fmin[i, j] = fmin[j, i] = min(L.q.f.get(pair, 0), L.qp.f.get(pair, 0))
    return rows(L.q), rows(L.qp), rows(L.base), fmin


@lru_cache(maxsize=8)
def perm_table(width: int) -> np.ndarray:
    """All permutations of ``range(width)`` in lexicographic one-line order."""
    return np.array(list(permutations(range(width))), dtype=np.int64).reshape(-1, width)


def default_width(L: LemmaInstance) -> int:
    """A width at which searching ``S_width`` per level is exhaustive.

    Only indices occurring in the instance matter, and the images of q'
    need at most one slot per coordinate, so this many points suffice.
    """
    vals = [v for c in (L.base, L.q, L.qp) for s in c.t.values() for v in s]
    return max(max(vals, default=-1) + 1, len(L.q.supp() | L.qp.supp()), 1)


def brute_force_lemma_perm(L: LemmaInstance, width: int | None = None) -> WreathPerm | None:
    """First passing outer permutation in lexicographic order, or None.

    Each level ranges over all permutations of ``range(width)``; the level
    tests are independent, so the first witness is the levelwise first.
    """
    if L.q.supp() != L.qp.supp():
        return None
    width = default_width(L) if width is None else width
    levels = L.levels()
    if levels == 0:
        pi = WreathPerm()
        return pi if verify_lemma_perm(pi, L).ok else None
    q, qp, base, fmin = _encode(L)
    perms = perm_table(width)
    ok = _kernels.lemma_level_table(perms, q, qp, base, fmin, L.n)
    choice = _kernels.first_product(ok)
    if choice is None:
        return None
    outer = {lv: FinPerm.from_mapping(dict(enumerate(perms[j].tolist())))
             for lv, j in enumerate(choice)}
    pi = WreathPerm(outer)
    report = verify_lemma_perm(pi, L)
    if not report.ok:
        raise AssertionError(f"kernel witness fails {report.failed()}")
    return pi


def separate_condition(pi: WreathPerm, p: CohenCondition) -> WreathPerm:
    """Keep pi's outer part; push every moved column of p above p's indices at its level."""
    top: dict[int, int] = {}
    cols = set()
    for (n, m, a, _b), _v in p.items():
        top[n] = max(top.get(n, 0), a + 1)
        cols.add((n, m))
    inner = {}
    for n, m in cols:
        if pi.outer_at(n)(m) != m:
            inner[(n, m)] = FinPerm.swap(0, top[n])
    return WreathPerm(pi.outer, inner)


def enumeration_refutation(p: CohenCondition, E: SupportSpec | Iterable,
                           table: Mapping[tuple[int, int], int], k_prime: int | None = None) -> WreathPerm:
    """Permutation in fix(E) keeping p compatible while moving A(n,k) to A(n,k').

    The level n is the first table level E does not mention and k is the
    table value there.
    """
    E = E if isinstance(E, SupportSpec) else SupportSpec(E)
    used = E.levels()
    free = [key for key in sorted(table) if key[0] not in used]
    if not free:
        raise NoSuitableLevel("every table level is mentioned by the support")
    n, _m = free[0]
    k = table[free[0]]
    if k_prime is None:
        k_prime = 0 if k != 0 else 1
    if k_prime == k:
        raise ValueError("k and k' must differ")
    pi = separate_condition(block_swap(n, k, k_prime, p), p)
    if act_name(pi, A(n, k)) != A(n, k_prime):
        raise AssertionError("block swap does not move the column name")
    if not cohen_compatible(wreath_act_condition(pi, p), p):
        raise AssertionError("image of p is incompatible with p")
    if not in_fix(pi, E):
        raise AssertionError("refutation permutation leaves fix(E)")
    return pi
