"""Rigorous enclosures for the density constants.

Covers Rankin's density (zeta-quotient and Euler-product forms, cross
checked), the alpha_s upper/lower bounds driven by exclusion tables, smooth
reciprocal tails, the single-prime series, graded densities, and the
exponent-vector search that trades Rankin's 2*3*5 layer for denser ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .enclosure import Enclosure
from .exclusions import ExclusionTable
from .hitting import DEFAULT_NODE_BUDGET, exclusion_profile
from .progressions import RatioKind
from .smooth import PrimeSet, generate_smooth, is_prime

# ---------------------------------------------------------------------------
# primes and the greedy AP-free exponent set


def primes_below(n: int) -> List[int]:
    if n <= 2:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(n) if sieve[i]]


def next_prime(n: int) -> int:
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


@dataclass(frozen=True)
class APFreeSet:
    elements: Tuple[int, ...]


def astar(limit: int) -> APFreeSet:
    """Nonnegative integers <= limit with no ternary digit 2 (the greedy
    AP-free set)."""
    out = []
    for n in range(limit + 1):
        m = n
        while m:
            if m % 3 == 2:
                break
            m //= 3
        else:
            out.append(n)
    return APFreeSet(tuple(out))


def _astar_members(bound: int) -> List[int]:
    return list(astar(bound).elements)


# ---------------------------------------------------------------------------
# zeta and Rankin's density


def zeta_enclosure(s: int, target_width: Fraction) -> Enclosure:
    """Bracket zeta(s) by a partial sum plus integral tail bounds."""
    if s < 2:
        raise ValueError("s must be >= 2")
    target_width = Fraction(target_width)
    k = 4
    while True:
        # integral bounds: int_{k+1}^inf < tail < int_k^inf of x^-s
        upper_tail = Fraction(1, (s - 1) * k ** (s - 1))
        lower_tail = Fraction(1, (s - 1) * (k + 1) ** (s - 1))
        if upper_tail - lower_tail <= target_width:
            break
        k *= 2
    partial = sum(Fraction(1, n**s) for n in range(1, k + 1))
    return Enclosure(partial + lower_tail, partial + upper_tail)


def rankin_factor(p: int, target_width: Fraction) -> Enclosure:
    """Bracket (1 - p^-2) * prod_{i>=1} (1 + p^(-3^i)).

    The product is truncated at depth I; the omitted factors multiply the
    value by at most 1/(1 - t) with t = sum_{e >= 3^(I+1)} p^-e.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target_width = Fraction(target_width)
    depth = 1
    while True:
        t = Fraction(p, (p - 1) * p ** (3 ** (depth + 1)))
        if t < 1 and t / (1 - t) <= target_width:
            break
        depth += 1
    partial = Fraction(p * p - 1, p * p)
    for i in range(1, depth + 1):
        partial *= 1 + Fraction(1, p ** (3**i))
    return Enclosure(partial, partial / (1 - t))


def _rankin_zeta_form(target_width: Fraction) -> Enclosure:
    # (1/zeta(2)) * prod_{i>=1} zeta(3^i)/zeta(2*3^i); factors beyond depth I
    # lie in [1 - t, 1/(1 - t)] with t = sum_{i>I} 2^(1 - 3^i) <= 2^(2 - 3^(I+1)).
    target_width = Fraction(target_width)
    depth = 3
    t = Fraction(4, 2 ** (3 ** (depth + 1)))
    w = target_width / 8
    result = Enclosure.exact(1) / zeta_enclosure(2, w)
    for i in range(1, depth + 1):
        result = result * zeta_enclosure(3**i, w) / zeta_enclosure(2 * 3**i, w)
        result = result.rounded(256)
    return Enclosure(result.lo * (1 - t), result.hi / (1 - t))


def _rankin_product_form(prime_bound: int = 20_000) -> Enclosure:
    # prod_{p <= P} factor(p), tail in [P/(P+1), 1/(1 - P^-2)]:
    # lower from prod_{n>P}(1 - n^-2) = P/(P+1); upper from
    # factor(p) <= 1 + 2 p^-3 and sum_{n>P} n^-3 < 1/(2 P^2).
    head = Enclosure.exact(1)
    for p in primes_below(prime_bound + 1):
        head = (head * rankin_factor(p, Fraction(1, 2**80))).rounded(192)
    tail = Enclosure(
        Fraction(prime_bound, prime_bound + 1),
        1 / (1 - Fraction(1, prime_bound**2)),
    )
    return head * tail


def rankin_density(target_width: Fraction, cross_check: bool = True) -> Enclosure:
    """Density of Rankin's GP-free set, enclosed two independent ways.

    The zeta-quotient form reaches the requested width; the Euler-product
    form is wider but must intersect it, and the intersection is returned.
    """
    zform = _rankin_zeta_form(Fraction(target_width))
    if not cross_check:
        return zform
    pform = _rankin_product_form()
    return zform.intersect(pform)


def euler_tail(prime_floor: int, target_width: Fraction) -> Enclosure:
    """Bracket prod_{p >= prime_floor} rankin_factor(p), via Rankin's density
    divided by the finite head product."""
    if not is_prime(prime_floor):
        raise ValueError(f"{prime_floor} is not prime")
    target_width = Fraction(target_width)
    total = rankin_density(target_width / 4, cross_check=False)
    head = Enclosure.exact(1)
    for p in primes_below(prime_floor):
        head = (head * rankin_factor(p, Fraction(1, 2**80))).rounded(192)
    result = total / head
    if result.width > target_width:
        # head is nearly exact; tighten the total and retry once
        total = rankin_density(target_width / 16, cross_check=False)
        result = total / head
    return result


# ---------------------------------------------------------------------------
# alpha bounds from exclusion tables


def _coprime_factor(prime_set: PrimeSet) -> Fraction:
    out = Fraction(1)
    for p in prime_set:
        out *= Fraction(p - 1, p)
    return out


def alpha_upper_bound(table: ExclusionTable) -> Fraction:
    """1 - prod_{p}((p-1)/p) * sum_{positions} 1/n, an exact rational upper
    bound for the density of sets avoiding smooth-ratio progressions."""
    s = sum(Fraction(1, n) for n in table.positions)
    return 1 - _coprime_factor(table.prime_set) * s


def tail_sum(prime_set: PrimeSet, limit: int) -> Enclosure:
    """prod((p-1)/p) * sum over smooth n > limit of 1/n, computed exactly:
    the full smooth reciprocal sum is prod p/(p-1), so the tail is
    1 - prod((p-1)/p) * sum_{smooth n <= limit} 1/n."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    seq = generate_smooth(prime_set, limit)
    head = sum(Fraction(1, n) for n in seq.values)
    return Enclosure.exact(1 - _coprime_factor(prime_set) * head)


def alpha_lower_bound(table: ExclusionTable, limit: int) -> Fraction:
    """Density of the constructive set built from a complete DIRECT table:
    the upper bound minus the unaccounted smooth reciprocal tail."""
    if table.provenance != "DIRECT":
        raise ValueError("lower bound requires a DIRECT table")
    if table.verified_limit < limit:
        raise ValueError("table not verified up to the requested limit")
    return alpha_upper_bound(table) - tail_sum(table.prime_set, limit).hi


def alpha_global_lower(
    target_width: Fraction, table: ExclusionTable
) -> Enclosure:
    """Lower bound construction for rational-ratio GP-free sets: the 3-smooth
    constructive density times the Euler tail over primes >= 5."""
    lower = alpha_lower_bound(table, table.verified_limit)
    return Enclosure.exact(lower) * euler_tail(5, Fraction(target_width))


def alpha2_series(
    exponent_limit: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> Enclosure:
    """Bracket the single-prime constant: 1 - (1/2) sum of 1/2^e over the
    exponents e where the maximum AP-free subset of {0..e} stops growing.

    The profile is computed exactly by the solver on powers of two; at most
    one new position can occur per exponent beyond the cutoff, giving the
    geometric tail bound 2^-(exponent_limit + 1).
    """
    if exponent_limit < 2:
        raise ValueError("exponent_limit must be >= 2")
    seq = generate_smooth(PrimeSet((2,)), 2**exponent_limit)
    profile = exclusion_profile(seq, RatioKind.RATIONAL, node_budget=node_budget)
    positions = [
        seq.values[j] for j in range(1, len(profile)) if profile[j] == profile[j - 1]
    ]
    hi = 1 - Fraction(1, 2) * sum(Fraction(1, n) for n in positions)
    tail = Fraction(1, 2 ** (exponent_limit + 1))
    return Enclosure(hi - tail, hi)


def graded_density(p: int, target_width: Fraction) -> Enclosure:
    """Bracket ((p-1)/p) * sum_{i in A*_3} p^-i (the graded greedy set)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target_width = Fraction(target_width)
    bound = 4
    while Fraction(1, p ** (bound + 1)) > target_width:
        bound += 4
    bound += 64  # work well past the requested width; the series is cheap
    partial = Fraction(p - 1, p) * sum(
        Fraction(1, p**i) for i in _astar_members(bound)
    )
    # omitted indices i > bound contribute at most ((p-1)/p) sum_{i>bound} p^-i
    tail = Fraction(1, p ** (bound + 1))
    return Enclosure(partial, partial + tail)


# ---------------------------------------------------------------------------
# exponent-vector sets (the beta lower-bound search)

Vector = Tuple[int, ...]


def _ap_violation(vectors: FrozenSet[Vector]) -> Optional[Tuple[Vector, Vector, Vector]]:
    """Cubic scan for u, u+d, u+2d with d componentwise nonnegative, nonzero."""
    vs = sorted(vectors)
    vset = set(vs)
    for i, u in enumerate(vs):
        for v in vs:
            if v == u:
                continue
            d = tuple(b - a for a, b in zip(u, v))
            if any(x < 0 for x in d):
                continue
            w = tuple(b + x for b, x in zip(v, d))
            if w in vset:
                return (u, v, w)
    return None


@dataclass(frozen=True)
class ExponentVectorSet:
    prime_set: PrimeSet
    vectors: FrozenSet[Vector]
    exponent_bound: int

    def __post_init__(self):
        k = len(self.prime_set)
        for v in self.vectors:
            if len(v) != k:
                raise ValueError("vector arity must match prime set")
            if any(x < 0 or x > self.exponent_bound for x in v):
                raise ValueError("coordinates must lie in [0, exponent_bound]")
        bad = _ap_violation(self.vectors)
        if bad is not None:
            raise ValueError(f"vectors contain the progression {bad}")


def astar_product_set(
    prime_set: PrimeSet, exponent_bound: int = 13
) -> ExponentVectorSet:
    """The Rankin baseline: all vectors with every coordinate in A*_3."""
    members = [i for i in _astar_members(exponent_bound)]
    vectors = [()]
    for _ in prime_set:
        vectors = [v + (i,) for v in vectors for i in members]
    return ExponentVectorSet(prime_set, frozenset(vectors), exponent_bound)


def _vector_weight(prime_set: PrimeSet, v: Vector) -> Fraction:
    w = Fraction(1)
    for p, e in zip(prime_set.primes, v):
        w /= p**e
    return w


def _layer_density(prime_set: PrimeSet, vectors: Iterable[Vector]) -> Fraction:
    """Density of integers whose exponents on prime_set realize one of the
    vectors exactly: sum over v of prod (p-1) p^-(v_p+1)."""
    total = Fraction(0)
    unit = Fraction(1)
    for p in prime_set:
        unit *= Fraction(p - 1, p)
    for v in vectors:
        total += unit * _vector_weight(prime_set, v)
    return total


def evaluate_exponent_set(
    B: ExponentVectorSet, target_width: Fraction
) -> Enclosure:
    """Density of the set whose exponents on B's primes lie jointly in B and
    whose other prime exponents follow A*_3."""
    base = _layer_density(B.prime_set, B.vectors)
    tail = euler_tail(next_prime(max(B.prime_set.primes)), Fraction(target_width))
    return Enclosure.exact(base) * tail


def _conflicts(vset: set, v: Vector) -> bool:
    """Would adding v create a progression x, x+d, x+2d (d >= 0, d != 0)?"""
    for u in vset:
        if u == v:
            continue
        diff = tuple(b - a for a, b in zip(u, v))  # v - u
        if all(x <= 0 for x in diff):  # u above v: progression v, u, 2u - v
            w = tuple(2 * a - b for a, b in zip(u, v))
            if w in vset:
                return True
        if all(x >= 0 for x in diff):  # u below v
            # v as midpoint: u, v, v + (v - u)
            w = tuple(2 * b - a for a, b in zip(u, v))
            if w in vset:
                return True
            # v as top end: u, (u + v)/2, v
            if all(x % 2 == 0 for x in diff):
                mid = tuple((a + b) // 2 for a, b in zip(u, v))
                if mid in vset:
                    return True
    return False


def _greedy_complete(
    prime_set: PrimeSet,
    exponent_bound: int,
    banned: FrozenSet[Vector],
    seed: Sequence[Vector] = (),
) -> FrozenSet[Vector]:
    """Greedy AP-free completion over all vectors with coordinates up to the
    bound, visited in decreasing density weight, ties lexicographic."""
    candidates: List[Vector] = [()]
    for _ in prime_set:
        candidates = [v + (i,) for v in candidates for i in range(exponent_bound + 1)]
    candidates.sort(key=lambda v: (-_vector_weight(prime_set, v), v))
    chosen: set = set()
    for v in seed:
        if v not in banned and not _conflicts(chosen, v):
            chosen.add(v)
    for v in candidates:
        if v in banned or v in chosen:
            continue
        if not _conflicts(chosen, v):
            chosen.add(v)
    return frozenset(chosen)


def improve_exponent_set(
    start: ExponentVectorSet, budget: int = 64
) -> ExponentVectorSet:
    """Deterministic local search: ban one vector at a time and rebuild
    greedily; keep the densest valid set found.

    Banning a vector v lets the greedy refill admit the vectors just above v
    (the trade the construction exploits: dropping the 2*3*5 layer admits
    seven denser replacements), with all knock-on exclusions handled by the
    greedy order.  The returned set never evaluates below the start.
    """
    prime_set = start.prime_set
    bound = start.exponent_bound
    best_vectors = _greedy_complete(prime_set, bound, frozenset(), sorted(start.vectors))
    best_value = _layer_density(prime_set, best_vectors)
    if _layer_density(prime_set, start.vectors) > best_value:
        best_vectors, best_value = start.vectors, _layer_density(prime_set, start.vectors)
    best_bans: FrozenSet[Vector] = frozenset()

    evaluations = 0
    improved = True
    while improved and evaluations < budget:
        improved = False
        ranked = sorted(
            best_vectors, key=lambda v: (-_vector_weight(prime_set, v), v)
        )
        for v in ranked:
            if evaluations >= budget:
                break
            bans = best_bans | {v}
            vectors = _greedy_complete(prime_set, bound, bans)
            evaluations += 1
            value = _layer_density(prime_set, vectors)
            if value > best_value:
                best_vectors, best_value, best_bans = vectors, value, bans
                improved = True
                break
    return ExponentVectorSet(prime_set, frozenset(best_vectors), bound)
