"""Exclusion tables: positions among smooth numbers where the minimum number
of removals needed to stay GP-free grows by one.

Tables come in three flavors: DIRECT (certified by the solver), LIFTED
(multiplying a smaller prime set's positions by powers of a new prime), and
MERGED (pointwise minimum of valid tables).  A lifted position dominates the
true requirement, and merging preserves validity index by index, so both
stay sound without re-running the solver.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .hitting import DEFAULT_NODE_BUDGET, BudgetExceeded, exclusion_profile
from .progressions import RatioKind
from .smooth import PrimeSet, factor_over, generate_smooth

CACHE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ExclusionTable:
    prime_set: PrimeSet
    kind: RatioKind
    positions: Tuple[int, ...]
    provenance: str  # DIRECT | LIFTED | MERGED
    verified_limit: int

    def __post_init__(self):
        if self.provenance not in ("DIRECT", "LIFTED", "MERGED"):
            raise ValueError(f"bad provenance {self.provenance!r}")
        prev = 0
        for p in self.positions:
            if p <= prev:
                raise ValueError("positions must be strictly increasing")
            prev = p
            if factor_over(p, self.prime_set) is None:
                raise ValueError(f"position {p} is not smooth over {self.prime_set.primes}")

    def __len__(self):
        return len(self.positions)


def direct_table(
    prime_set: PrimeSet,
    kind: RatioKind,
    limit: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> ExclusionTable:
    """Certified table up to `limit`: run the incremental solver over the
    smooth sequence and record every value where an extra exclusion became
    necessary.

    If the node budget runs out, the verified prefix is returned with its
    verified limit (the last smooth value whose profile entry was proven).
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    seq = generate_smooth(prime_set, limit)
    values = seq.values
    try:
        profile = exclusion_profile(seq, kind, node_budget=node_budget, threads=threads)
        verified_limit = limit
    except BudgetExceeded as exc:
        if exc.verified_index is None or exc.verified_index < 0:
            raise
        head = generate_smooth(prime_set, values[exc.verified_index])
        profile = exclusion_profile(head, kind, node_budget=node_budget, threads=threads)
        values = head.values
        verified_limit = values[-1]
    positions = tuple(
        values[j] for j in range(1, len(profile)) if profile[j] == profile[j - 1]
    )
    return ExclusionTable(prime_set, kind, positions, "DIRECT", verified_limit)


def lift_table(table: ExclusionTable, q: int, limit: int) -> ExclusionTable:
    """Lift a table to the prime set extended by q: every position times every
    power of q, sorted.  The i-th smallest lifted value is a valid position
    for i exclusions over the larger prime set."""
    if q in table.prime_set:
        raise ValueError(f"{q} already in prime set")
    lifted_primes = PrimeSet(tuple(sorted(table.prime_set.primes + (q,))))
    out: List[int] = []
    for n in table.positions:
        m = n
        while m <= limit:
            out.append(m)
            m *= q
    out.sort()
    return ExclusionTable(lifted_primes, table.kind, tuple(out), "LIFTED", limit)


def merge_tables(tables: Sequence[ExclusionTable]) -> ExclusionTable:
    """Pointwise minimum of valid tables over the same prime set and kind.

    Validity holds per index: each input certifies that i exclusions are
    needed by its i-th position, so the minimum does too.
    """
    if not tables:
        raise ValueError("need at least one table")
    first = tables[0]
    for t in tables[1:]:
        if t.prime_set != first.prime_set or t.kind != first.kind:
            raise ValueError("tables must share prime set and ratio kind")
    length = max(len(t) for t in tables)
    positions = []
    for i in range(length):
        candidates = [t.positions[i] for t in tables if i < len(t)]
        positions.append(min(candidates))
    if len(tables) == 1:
        return first
    verified_limit = max(t.verified_limit for t in tables)
    return ExclusionTable(
        first.prime_set, first.kind, tuple(positions), "MERGED", verified_limit
    )


# ---------------------------------------------------------------------------
# cache file format: one JSON object per table

def table_to_record(table: ExclusionTable) -> dict:
    return {
        "format_version": CACHE_FORMAT_VERSION,
        "primes": list(table.prime_set.primes),
        "kind": table.kind.value,
        "verified_limit": table.verified_limit,
        "positions": list(table.positions),
        "provenance": table.provenance,
    }


def table_from_record(record: dict) -> ExclusionTable:
    if record.get("format_version") != CACHE_FORMAT_VERSION:
        raise ValueError("unsupported cache format version")
    return ExclusionTable(
        PrimeSet(tuple(record["primes"])),
        RatioKind(record["kind"]),
        tuple(record["positions"]),
        record["provenance"],
        record["verified_limit"],
    )


def cache_key(prime_set: PrimeSet, kind: RatioKind, limit: int) -> str:
    primes = "_".join(str(p) for p in prime_set.primes)
    return f"table-v{CACHE_FORMAT_VERSION}-p{primes}-{kind.value}-l{limit}.json"


def save_table(table: ExclusionTable, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(
        cache_dir, cache_key(table.prime_set, table.kind, table.verified_limit)
    )
    with open(path, "w") as fh:
        json.dump(table_to_record(table), fh, sort_keys=True)
        fh.write("\n")
    return path


def load_table(
    prime_set: PrimeSet, kind: RatioKind, limit: int, cache_dir: str
) -> Optional[ExclusionTable]:
    path = os.path.join(cache_dir, cache_key(prime_set, kind, limit))
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        return table_from_record(json.load(fh))


def cached_direct_table(
    prime_set: PrimeSet,
    kind: RatioKind,
    limit: int,
    cache_dir: str,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> ExclusionTable:
    """direct_table with a read-through file cache."""
    table = load_table(prime_set, kind, limit, cache_dir)
    if table is not None:
        return table
    table = direct_table(prime_set, kind, limit, node_budget=node_budget, threads=threads)
    save_table(table, cache_dir)
    return table
