"""Explicit high-upper-density constructions, verified exactly.

The interval union is scale-relative: each interval (a, b] is a pair of
rationals with 0 < a < b <= 1, interpreted as (aN, bN] for a scale N.  All
verification is exact rational interval intersection, so it is independent
of N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

from .density import astar
from .smooth import is_prime

_FACTOR_BOUND = 10**12
_TRIAL_PRIMES_TO = 10**6


@dataclass(frozen=True)
class IntervalSet:
    intervals: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        prev_hi = Fraction(0)
        for a, b in self.intervals:
            if not (0 < a < b <= 1):
                raise ValueError(f"interval ({a}, {b}] out of range")
            if a < prev_hi:
                raise ValueError("intervals must be disjoint and increasing")
            prev_hi = b

    @property
    def total_length(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))


def six_interval_set() -> IntervalSet:
    """The six-interval union with total length 3523/4320."""
    pairs = [(48, 45), (40, 36), (32, 27), (24, 12), (9, 8), (4, 1)]
    return IntervalSet(
        tuple((Fraction(1, lo), Fraction(1, hi)) for lo, hi in pairs)
    )


@dataclass(frozen=True)
class RatioCertificate:
    """Per-ratio record: either no (I, J, K) interval combination admits
    x, rx, r^2 x simultaneously, or a witness combination."""

    ratio: int
    ok: bool
    witness: Optional[Tuple[int, int, int]] = None  # interval indices


def verify_intervals_gp_free(s: IntervalSet) -> Tuple[bool, List[RatioCertificate]]:
    """Check that no x and integer ratio r >= 2 have x, rx, r^2 x all inside
    the union.  Ratios with r^2 > 1/min(a) are vacuous: r^2 x exceeds 1.
    """
    a_min = min(a for a, _ in s.intervals)
    r_max = isqrt(int(1 / a_min))
    if Fraction(r_max * r_max) * a_min > 1:
        r_max -= 1
    certs = []
    all_ok = True
    ivs = s.intervals
    for r in range(2, r_max + 1):
        witness = None
        for i, (a1, b1) in enumerate(ivs):
            for j, (a2, b2) in enumerate(ivs):
                # x in (a1,b1], rx in (a2,b2] -> x in (a2/r, b2/r]
                lo2 = max(a1, a2 / r)
                hi2 = min(b1, b2 / r)
                if lo2 >= hi2:
                    continue
                for k, (a3, b3) in enumerate(ivs):
                    lo3 = max(lo2, a3 / (r * r))
                    hi3 = min(hi2, b3 / (r * r))
                    if lo3 < hi3:
                        witness = (i, j, k)
                        break
                if witness:
                    break
            if witness:
                break
        certs.append(RatioCertificate(r, witness is None, witness))
        if witness is not None:
            all_ok = False
    return all_ok, certs


def discretize(s: IntervalSet, scale: int) -> List[int]:
    """All integers in the scaled union: n with a*scale < n <= b*scale."""
    out = []
    for a, b in s.intervals:
        lo_frac = a * scale
        hi_frac = b * scale
        lo = lo_frac.numerator // lo_frac.denominator  # floor; left end open
        hi = hi_frac.numerator // hi_frac.denominator
        out.extend(range(lo + 1, hi + 1))
    return out


@dataclass(frozen=True)
class StitchStep:
    value: int
    separation_strict: bool  # 48*N_{i-1} < N_i/48 (strict)
    separation_equal: bool  # boundary case: the two sides coincide


def stitch_schedule(n1: int, count: int) -> List[StitchStep]:
    """N_1, ..., N_count with N_i = 48^2 * N_{i-1}^2 / N_1, plus the exact
    outcome of the cross-block separation comparison at each step.

    At i = 2 the comparison 48*N_1 vs N_2/48 lands exactly on equality; the
    step records that rather than silently passing or failing it.
    """
    if n1 < 1 or count < 1:
        raise ValueError("n1 and count must be >= 1")
    steps = [StitchStep(n1, True, False)]
    prev = n1
    for _ in range(2, count + 1):
        num = 48 * 48 * prev * prev
        if num % n1:
            raise ValueError("recurrence left the integers; n1 must divide 48^2*N^2")
        cur = num // n1
        lhs = 48 * prev
        rhs = Fraction(cur, 48)
        steps.append(StitchStep(cur, Fraction(lhs) < rhs, Fraction(lhs) == rhs))
        prev = cur
    return steps


def _trial_primes():
    global _PRIMES_CACHE
    try:
        return _PRIMES_CACHE
    except NameError:
        sieve = bytearray([1]) * _TRIAL_PRIMES_TO
        sieve[0] = sieve[1] = 0
        for p in range(2, isqrt(_TRIAL_PRIMES_TO) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _PRIMES_CACHE = [i for i in range(_TRIAL_PRIMES_TO) if sieve[i]]
        return _PRIMES_CACHE


def rankin_membership(n: int) -> bool:
    """True iff every prime exponent of n avoids ternary digit 2.

    Factorization is trial division below 10^6; n is capped at 10^12 so the
    surviving cofactor is prime (exponent 1, always admissible).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > _FACTOR_BOUND:
        raise ValueError(f"n exceeds factorization bound {_FACTOR_BOUND}")
    admissible = set(astar(64).elements)
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e not in admissible:
                return False
    if n > 1 and not is_prime(n):
        raise ValueError("cofactor not prime; raise the trial division bound")
    return True


def rankin_members_upto(limit: int) -> List[int]:
    """Sieve-style enumeration of Rankin's set up to `limit`."""
    admissible = set(astar(64).elements)
    ok = bytearray([1]) * (limit + 1)
    ok[0] = 0
    for p in _trial_primes():
        if p > limit:
            break
        pe = p
        e = 1
        # mark exponent classes: numbers with v_p = e for inadmissible e
        while pe <= limit:
            if e not in admissible:
                for m in range(pe, limit + 1, pe):
                    if (m // pe) % p != 0:
                        ok[m] = 0
            pe *= p
            e += 1
    return [n for n in range(1, limit + 1) if ok[n]]
