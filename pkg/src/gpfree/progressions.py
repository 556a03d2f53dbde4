"""Enumeration of 3-term geometric progressions inside finite integer sets.

A triple is (a, b, c) with a < b < c and a*c = b*b.  The common ratio b/a is
rational in general; RatioKind.INTEGER keeps only triples where a divides b.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple


class RatioKind(enum.Enum):
    RATIONAL = "rational"
    INTEGER = "integer"


@dataclass(frozen=True, order=True)
class Triple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not (0 < self.a < self.b < self.c):
            raise ValueError("triple must satisfy 0 < a < b < c")
        if self.a * self.c != self.b * self.b:
            raise ValueError("triple must satisfy a*c = b^2")

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True)
class TripleSystem:
    ground: Tuple[int, ...]
    triples: FrozenSet[Triple]

    def __post_init__(self):
        gs = set(self.ground)
        for t in self.triples:
            if not {t.a, t.b, t.c} <= gs:
                raise ValueError(f"triple {t} not contained in ground set")


def enumerate_triples(values: Iterable[int], kind: RatioKind) -> TripleSystem:
    """All geometric triples (a, b, c) with a < b < c inside `values`.

    Quadratic scan: for each pair a < c with a*c a perfect square, test
    whether b = sqrt(a*c) is present.
    """
    vals = sorted(set(values))
    if not vals:
        raise ValueError("values must be nonempty")
    if vals[0] < 1:
        raise ValueError("values must be positive")
    present = set(vals)
    triples = set()
    for i, a in enumerate(vals):
        for c in vals[i + 1 :]:
            b = math.isqrt(a * c)
            if b * b != a * c:
                continue
            if b not in present or b == a or b == c:
                continue
            if kind is RatioKind.INTEGER and b % a != 0:
                continue
            triples.add(Triple(a, b, c))
    return TripleSystem(tuple(vals), frozenset(triples))


def is_gp_free(values: Iterable[int], kind: RatioKind) -> bool:
    return not enumerate_triples(values, kind).triples
