"""Largest progression-free subsets of the residues mod n.

A progression here is (a, a*b, a*b^2) mod n with the three values pairwise
distinct; that existential form (rather than the equation x*z = y^2 alone)
is what the divisor-class partition argument needs, since zero divisors make
the two notions differ mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, FrozenSet, List, Set, Tuple

from .hitting import min_hitting_set_masks

BRUTE_FORCE_MAX = 24


@dataclass(frozen=True)
class ModTripleSystem:
    modulus: int
    triples: FrozenSet[FrozenSet[int]]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        for t in self.triples:
            if len(t) != 3 or not all(0 <= x < self.modulus for x in t):
                raise ValueError(f"bad triple {set(t)} mod {self.modulus}")


def modn_triples(n: int) -> ModTripleSystem:
    """All unordered {a, ab, ab^2 mod n} with pairwise-distinct entries."""
    if n < 1:
        raise ValueError("n must be >= 1")
    triples: Set[FrozenSet[int]] = set()
    for a in range(n):
        for b in range(n):
            x, y, z = a % n, (a * b) % n, (a * b * b) % n
            if x != y and y != z and x != z:
                triples.add(frozenset((x, y, z)))
    return ModTripleSystem(n, frozenset(triples))


def exact_E(n: int, node_budget: int = None, threads: int = 1) -> Tuple[int, List[int]]:
    """(size, witness) for the largest progression-free subset mod n.

    Solved as n minus a minimum hitting set of the triple system.  May raise
    BudgetExceeded on oversized instances.
    """
    system = modn_triples(n)
    ground = list(range(n))
    index = {v: i for i, v in enumerate(ground)}
    masks = []
    for t in system.triples:
        m = 0
        for v in t:
            m |= 1 << index[v]
        masks.append(m)
    kwargs = {"threads": threads}
    if node_budget is not None:
        kwargs["node_budget"] = node_budget
    result = min_hitting_set_masks(ground, masks, **kwargs)
    witness = [v for v in ground if v not in result.witness]
    return n - result.size, witness


def brute_force_E(n: int) -> int:
    """Independent oracle: maximum over all 2^n subsets.  n <= 24 only."""
    if not (1 <= n <= BRUTE_FORCE_MAX):
        raise ValueError(f"brute force limited to 1 <= n <= {BRUTE_FORCE_MAX}")
    bad = []
    for t in modn_triples(n).triples:
        m = 0
        for v in t:
            m |= 1 << v
        bad.append(m)
    best = 0
    for subset in range(1 << n):
        pc = subset.bit_count()
        if pc <= best:
            continue
        if all(subset & m != m for m in bad):
            best = pc
    return best


def residue_classes(n: int) -> Dict[int, List[int]]:
    """Partition of {0..n-1} into classes R_d = {m : gcd(m, n) = d}.

    gcd(0, n) = n, so 0 lands in R_n.
    """
    classes: Dict[int, List[int]] = {}
    for m in range(n):
        classes.setdefault(gcd(m, n), []).append(m)
    return classes


def class_projection(n: int, d: int) -> Dict[int, int]:
    """Bijection R_d -> units-multiple structure mod n/d, m -> m/d.

    Each m with gcd(m, n) = d is d times a residue coprime-compatible mod
    n/d; the map is injective with image {k mod n/d : gcd(k, n/d) = 1}
    repeated per lift, and it carries (a, ab, ab^2) progressions inside R_d
    to progressions mod n/d.
    """
    if n % d:
        raise ValueError("d must divide n")
    return {m: (m // d) % (n // d) for m in residue_classes(n)[d]}
