"""Finitely supported permutations of the naturals.

A :class:`FinPerm` is stored as a sequence of primitive moves (cycles and
interval swaps) so that the block constructions used in symmetry arguments
stay readable at any scale.  Equality is pointwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class Cycle:
    points: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"cycle repeats a point: {self.points}")
        if any(p < 0 for p in self.points):
            raise ValueError(f"negative point in cycle: {self.points}")

    def __call__(self, x: int) -> int:
        pts = self.points
        if x in pts:
            return pts[(pts.index(x) + 1) % len(pts)]
        return x

    def inverse(self) -> "Cycle":
        return Cycle(tuple(reversed(self.points)))

    def support(self) -> set[int]:
        return set(self.points) if len(self.points) > 1 else set()


@dataclass(frozen=True)
class Swap:
    """Exchange the blocks ``[lo, lo+length)`` and ``[lo+length, lo+2*length)``."""

    lo: int
    length: int

    def __post_init__(self):
        if self.lo < 0 or self.length < 0:
            raise ValueError(f"bad interval swap: lo={self.lo} length={self.length}")

    def __call__(self, x: int) -> int:
        lo, ln = self.lo, self.length
        if lo <= x < lo + ln:
            return x + ln
        if lo + ln <= x < lo + 2 * ln:
            return x - ln
        return x

    def inverse(self) -> "Swap":
        return self

    def support(self) -> set[int]:
        return set(range(self.lo, self.lo + 2 * self.length))


Move = Cycle | Swap


class FinPerm:
    """Bijection of the naturals that is the identity off a finite set.

    Moves are applied in list order: ``FinPerm([a, b])(x) == b(a(x))``.
    """

    __slots__ = ("moves", "_map")

    def __init__(self, moves: Iterable[Move] = ()):
        self.moves: tuple[Move, ...] = tuple(moves)
        self._map: dict[int, int] | None = None

    @classmethod
    def identity(cls) -> "FinPerm":
        return cls()

    @classmethod
    def cycle(cls, *points: int) -> "FinPerm":
        return cls([Cycle(tuple(points))])

    @classmethod
    def swap(cls, lo: int, length: int) -> "FinPerm":
        return cls([Swap(lo, length)])

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "FinPerm":
        """Build from an explicit finite bijection, stored as disjoint cycles."""
        mapping = {a: b for a, b in mapping.items() if a != b}
        if sorted(mapping) != sorted(mapping.values()):
            raise ValueError("mapping is not a permutation of its support")
        seen: set[int] = set()
        cycles = []
        for start in sorted(mapping):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = mapping[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = mapping[x]
            cycles.append(Cycle(tuple(cyc)))
        return cls(cycles)

    @classmethod
    def from_partial_injection(cls, partial: Mapping[int, int]) -> "FinPerm":
        """Extend a finite partial injection to a permutation.

        Points of the range that are not yet in the domain are sent, in
        increasing order, to the points of the domain not yet hit.
        """
        if len(set(partial.values())) != len(partial):
            raise ValueError("partial map is not injective")
        full = dict(partial)
        dom, rng = set(partial), set(partial.values())
        for a, b in zip(sorted(rng - dom), sorted(dom - rng)):
            full[a] = b
        return cls.from_mapping(full)

    def __call__(self, x: int) -> int:
        if self._map is not None:
            return self._map.get(x, x)
        for mv in self.moves:
            x = mv(x)
        return x

    def support(self) -> set[int]:
        return set(self.mapping())

    def raw_support(self) -> set[int]:
        """Union of the move supports (a superset of the moved points)."""
        out: set[int] = set()
        for mv in self.moves:
            out |= mv.support()
        return out

    def mapping(self) -> dict[int, int]:
        if self._map is None:
            m = {}
            for x in self.raw_support():
                y = x
                for mv in self.moves:
                    y = mv(y)
                if y != x:
                    m[x] = y
            self._map = m
        return self._map

    def is_identity(self) -> bool:
        return not self.mapping()

    def inverse(self) -> "FinPerm":
        return FinPerm(mv.inverse() for mv in reversed(self.moves))

    def compose(self, other: "FinPerm") -> "FinPerm":
        """``self o other``: apply ``other`` first."""
        return FinPerm(other.moves + self.moves)

    def __eq__(self, other):
        if not isinstance(other, FinPerm):
            return NotImplemented
        return self.mapping() == other.mapping()

    def __hash__(self):
        return hash(frozenset(self.mapping().items()))

    def __repr__(self):
        return f"FinPerm({format_moves(self.moves) or 'id'})"


def format_moves(moves: Iterable[Move]) -> str:
    parts = []
    for mv in moves:
        if isinstance(mv, Cycle):
            parts.append("(" + " ".join(map(str, mv.points)) + ")")
        else:
            parts.append(f"swap {mv.lo} {mv.length}")
    return " ".join(parts)
