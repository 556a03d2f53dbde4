"""Exact minimum 3-hitting-set solver and progression-free subset search.

Branch and bound on an uncovered triple: include one of its elements, or
exclude it and move on.  Exclusions shrink triples, shrunk singletons are
propagated as forced inclusions, and a greedy disjoint-triple matching gives
the lower bound.  All tie-breaking is by smallest ground value, so results
are deterministic; with threads > 1 the root branches are explored
concurrently but combined in the same preference order, so the answer is
identical to the sequential one.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .progressions import RatioKind, TripleSystem, enumerate_triples


class BudgetExceeded(Exception):
    """Raised when the node budget runs out before the search is decided.

    Never a wrong answer: callers receive either a proven result or this.
    """

    def __init__(self, message: str, verified_index: Optional[int] = None):
        super().__init__(message)
        self.verified_index = verified_index


@dataclass(frozen=True)
class HittingResult:
    size: int
    witness: FrozenSet[int]
    certificate: Optional[Dict[str, int]] = None


DEFAULT_NODE_BUDGET = 50_000_000


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int):
        self.remaining = limit


def _matching_lower_bound(residues: Sequence[int]) -> int:
    """Greedy pairwise-disjoint triple count; a valid hitting-set lower bound."""
    used = 0
    count = 0
    for r in residues:
        if not r & used:
            used |= r
            count += 1
    return count


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _search(residues: List[int], budget: int, budget_counter: _Budget) -> Optional[int]:
    """Find a hitting set (as a bitmask) of size <= budget, or None.

    `residues` holds the uncovered triples with excluded elements already
    stripped.  Deterministic: branch triple is the max-degree-sum residue,
    branch elements in decreasing degree (ties: lowest bit index first).
    """
    budget_counter.remaining -= 1
    if budget_counter.remaining < 0:
        raise BudgetExceeded("node budget exhausted")

    chosen = 0
    # unit propagation
    while True:
        units = 0
        for r in residues:
            if r and r & (r - 1) == 0:
                units |= r
        if not units:
            break
        nbits = units.bit_count()
        budget -= nbits
        if budget < 0:
            return None
        chosen |= units
        residues = [r for r in residues if not r & units]
    if not residues:
        return chosen
    if budget <= 0:
        return None
    if _matching_lower_bound(residues) > budget:
        return None

    degree: Dict[int, int] = {}
    for r in residues:
        for i in _bits(r):
            degree[i] = degree.get(i, 0) + 1
    best_r = max(residues, key=lambda r: (sum(degree[i] for i in _bits(r)), -r))
    order = sorted(_bits(best_r), key=lambda i: (-degree[i], i))

    cur = residues
    for i in order:
        bit = 1 << i
        sub = [r for r in cur if not r & bit]
        found = _search(sub, budget - 1, budget_counter)
        if found is not None:
            return chosen | bit | found
        nxt = []
        for r in cur:
            r &= ~bit
            if not r:
                return None  # triple fully excluded on this path
            nxt.append(r)
        cur = nxt
    return None


def _search_root(
    residues: List[int], budget: int, node_budget: int, threads: int
) -> Optional[int]:
    """Top-level decision search; optionally fans the root branches out to a
    thread pool.  Each root branch gets its own full node budget so the
    outcome does not depend on scheduling."""
    if threads <= 1:
        return _search(residues, budget, _Budget(node_budget))

    # Replicate the deterministic root expansion of _search, then solve the
    # include-branches concurrently and keep the first success in branch order.
    counter = _Budget(node_budget)
    chosen = 0
    while True:
        units = 0
        for r in residues:
            if r and r & (r - 1) == 0:
                units |= r
        if not units:
            break
        budget -= units.bit_count()
        if budget < 0:
            return None
        chosen |= units
        residues = [r for r in residues if not r & units]
    if not residues:
        return chosen
    if budget <= 0:
        return None
    if _matching_lower_bound(residues) > budget:
        return None
    degree: Dict[int, int] = {}
    for r in residues:
        for i in _bits(r):
            degree[i] = degree.get(i, 0) + 1
    best_r = max(residues, key=lambda r: (sum(degree[i] for i in _bits(r)), -r))
    order = sorted(_bits(best_r), key=lambda i: (-degree[i], i))

    tasks = []
    cur = residues
    feasible = True
    for i in order:
        bit = 1 << i
        sub = [r for r in cur if not r & bit]
        tasks.append((bit, sub))
        nxt = []
        for r in cur:
            r &= ~bit
            if not r:
                feasible = False
                break
            nxt.append(r)
        if not feasible:
            break
        cur = nxt

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_search, sub, budget - 1, _Budget(node_budget))
            for _, sub in tasks
        ]
        results = [f.result() for f in futures]
    for (bit, _), found in zip(tasks, results):
        if found is not None:
            return chosen | bit | found
    return None


class _Instance:
    """Index-compressed view of a TripleSystem for the bitmask solver."""

    def __init__(self, system: TripleSystem):
        self.ground = tuple(sorted(set(system.ground)))
        index = {v: i for i, v in enumerate(self.ground)}
        self.masks = sorted(
            (1 << index[t.a]) | (1 << index[t.b]) | (1 << index[t.c])
            for t in system.triples
        )
        self.index = index

    def to_values(self, mask: int) -> FrozenSet[int]:
        return frozenset(self.ground[i] for i in _bits(mask))


def _greedy_hitting(masks: Sequence[int]) -> int:
    """Deterministic greedy hitting set (max degree, then lowest index)."""
    chosen = 0
    active = list(masks)
    while active:
        degree: Dict[int, int] = {}
        for r in active:
            for i in _bits(r):
                degree[i] = degree.get(i, 0) + 1
        i = min(degree, key=lambda j: (-degree[j], j))
        chosen |= 1 << i
        active = [r for r in active if not r >> i & 1]
    return chosen


def min_hitting_set_masks(
    ground: Sequence[int],
    masks: Sequence[int],
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> HittingResult:
    """Minimum hitting set of arbitrary bitmask triples over `ground`.

    Bit i of each mask refers to ground[i].  This is the raw entry point;
    use min_hitting_set for geometric triple systems.
    """
    masks = sorted(masks)
    if not masks:
        return HittingResult(0, frozenset(), {"nodes": 0})
    best = _greedy_hitting(masks)
    nodes_used = 0
    while True:
        budget = best.bit_count() - 1
        counter = _Budget(node_budget)
        try:
            if threads > 1:
                found = _search_root(list(masks), budget, node_budget, threads)
            else:
                found = _search(list(masks), budget, counter)
                nodes_used += node_budget - counter.remaining
        except BudgetExceeded:
            raise BudgetExceeded(
                f"node budget {node_budget} exhausted proving size "
                f"{best.bit_count()} optimal"
            )
        if found is None:
            break
        best = found
    witness = frozenset(ground[i] for i in _bits(best))
    return HittingResult(best.bit_count(), witness, {"nodes": nodes_used})


def min_hitting_set(
    system: TripleSystem,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> HittingResult:
    """Minimum-cardinality set of ground elements meeting every triple."""
    inst = _Instance(system)
    return min_hitting_set_masks(
        inst.ground, inst.masks, node_budget=node_budget, threads=threads
    )


def max_gp_free_subset(
    values: Iterable[int],
    kind: RatioKind,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> FrozenSet[int]:
    """Largest subset of `values` with no geometric triple of the given kind."""
    system = enumerate_triples(values, kind)
    result = min_hitting_set(system, node_budget=node_budget, threads=threads)
    return frozenset(system.ground) - result.witness


def exclusion_profile(
    seq,
    kind: RatioKind,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> List[int]:
    """m_j for each prefix of the smooth sequence: the size of the largest
    GP-free subset of the first j entries.

    Incremental: the previous witness is reused when it already hits every
    new triple; otherwise a decision search re-proves minimality.  On budget
    exhaustion, raises BudgetExceeded carrying the last fully verified index.
    """
    values = list(seq.values)
    system = enumerate_triples(values, kind)
    index = {v: i for i, v in enumerate(values)}
    # triples grouped by the index of their largest element
    by_entry: List[List[int]] = [[] for _ in values]
    for t in system.triples:
        mask = (1 << index[t.a]) | (1 << index[t.b]) | (1 << index[t.c])
        by_entry[index[t.c]].append(mask)
    for lst in by_entry:
        lst.sort()

    profile: List[int] = []
    active: List[int] = []
    witness = 0  # bitmask of excluded (hitting-set) elements
    size = 0
    for j in range(len(values)):
        active.extend(by_entry[j])
        new_hit = all(m & witness for m in by_entry[j])
        if not new_hit:
            try:
                found = _search_root(list(active), size, node_budget, threads)
            except BudgetExceeded:
                raise BudgetExceeded(
                    f"node budget exhausted at entry {values[j]}",
                    verified_index=j - 1,
                )
            if found is not None:
                witness = found
            else:
                size += 1
                witness |= 1 << j  # new largest element hits every new triple
        profile.append(j + 1 - size)
    return profile
