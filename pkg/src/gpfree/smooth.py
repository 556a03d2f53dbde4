"""Smooth numbers over a fixed finite set of primes.

Everything here is exact integer arithmetic; sequences are generated by a
priority-queue merge (Hamming-number style) so deep limits stay cheap.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, Optional, Tuple


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeSet:
    """A strictly increasing tuple of primes."""

    primes: Tuple[int, ...]

    def __post_init__(self):
        if not self.primes:
            raise ValueError("prime set must be nonempty")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be strictly increasing without duplicates")
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


@dataclass(frozen=True)
class SmoothNumber:
    value: int
    exponents: Tuple[Tuple[int, int], ...]  # (prime, exponent), primes ascending

    def exponent_of(self, p: int) -> int:
        for q, e in self.exponents:
            if q == p:
                return e
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.exponents)


@dataclass(frozen=True)
class SmoothSequence:
    prime_set: PrimeSet
    limit: int
    entries: Tuple[SmoothNumber, ...]

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(e.value for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def generate_smooth(prime_set: PrimeSet, limit: int) -> SmoothSequence:
    """All prime_set-smooth integers in [1, limit], ascending, with exponents.

    Priority-merge generation: pop the smallest pending value, push its
    multiples by primes whose index is >= the last prime already used.
    Restricting extensions to nondecreasing prime index makes the path to
    each exponent vector unique, so no duplicates are ever enqueued.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    primes = prime_set.primes
    k = len(primes)
    # heap of (value, exponent vector); a vector (e1..ek) is reached uniquely
    # by incrementing exponents left to right: from (e1..ej,0..0) only primes
    # with index >= j may be appended, where j is the last positive index.
    heap = [(1, (0,) * k)]
    out = []
    while heap:
        value, vec = heapq.heappop(heap)
        out.append(
            SmoothNumber(
                value,
                tuple((p, e) for p, e in zip(primes, vec) if e > 0),
            )
        )
        last = 0
        for i in range(k - 1, -1, -1):
            if vec[i] > 0:
                last = i
                break
        for i in range(last, k):
            nv = value * primes[i]
            if nv <= limit:
                nvec = vec[:i] + (vec[i] + 1,) + vec[i + 1 :]
                heapq.heappush(heap, (nv, nvec))
    return SmoothSequence(prime_set, limit, tuple(out))


NOT_SMOOTH = None


def factor_over(n: int, prime_set: PrimeSet) -> Optional[Dict[int, int]]:
    """Exponent map of n over prime_set, or NOT_SMOOTH (None) if a cofactor
    survives."""
    if n < 1:
        raise ValueError("n must be >= 1")
    exps = {}
    for p in prime_set:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            exps[p] = e
    if n != 1:
        return NOT_SMOOTH
    return exps


def valuation(n: int, p: int) -> int:
    """p-adic valuation of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e
