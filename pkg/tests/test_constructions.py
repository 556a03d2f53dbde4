from fractions import Fraction
from math import isqrt

import pytest

from gpfree.constructions import (
    IntervalSet,
    discretize,
    six_interval_set,
    rankin_members_upto,
    rankin_membership,
    stitch_schedule,
    verify_intervals_gp_free,
)
from gpfree.density import rankin_density
from gpfree.progressions import RatioKind, is_gp_free


def fast_integer_gp_check(values):
    """Membership-based oracle: any a, r >= 2 with a, ar, ar^2 all present?"""
    present = set(values)
    top = max(present)
    for a in present:
        r = 2
        while a * r * r <= top:
            if a * r in present and a * r * r in present:
                return False
            r += 1
    return True


def test_interval_set_validation():
    with pytest.raises(ValueError):
        IntervalSet(((Fraction(1, 2), Fraction(1, 3)),))
    with pytest.raises(ValueError):
        IntervalSet(((Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 3), Fraction(2, 3))))
    with pytest.raises(ValueError):
        IntervalSet(((Fraction(1, 2), Fraction(3, 2)),))


def test_six_interval_set_length():
    s = six_interval_set()
    assert len(s.intervals) == 6
    assert s.total_length == Fraction(3523, 4320)
    assert s.total_length > Fraction(815509, 10**6)


def test_verify_certifies_six_interval_set():
    ok, certs = verify_intervals_gp_free(six_interval_set())
    assert ok
    assert [c.ratio for c in certs] == [2, 3, 4, 5, 6]
    assert all(c.ok and c.witness is None for c in certs)


def test_verify_single_interval():
    ok, certs = verify_intervals_gp_free(
        IntervalSet(((Fraction(1, 4), Fraction(1)),))
    )
    assert ok and [c.ratio for c in certs] == [2]


def test_verify_finds_counterexample():
    bad = IntervalSet(
        ((Fraction(1, 9), Fraction(1, 8)), (Fraction(1, 8), Fraction(1)))
    )
    ok, certs = verify_intervals_gp_free(bad)
    assert not ok
    c2 = next(c for c in certs if c.ratio == 2)
    assert not c2.ok and c2.witness == (0, 1, 1)


def test_discretize_counts_and_gp_freedom():
    s = six_interval_set()
    d = discretize(s, 4320)
    assert len(d) == 3523
    assert is_gp_free(d, RatioKind.INTEGER)
    assert fast_integer_gp_check(d)
    # discrete/continuous agreement at several scales
    for k in (2, 3, 7):
        dk = discretize(s, 4320 * k)
        assert fast_integer_gp_check(dk)
        # the two oracles agree on a mid-size instance
        if k == 2:
            assert is_gp_free(dk, RatioKind.INTEGER)


def test_stitch_schedule():
    steps = stitch_schedule(4320, 3)
    n2 = 48**2 * 4320
    n3 = 48**2 * n2**2 // 4320
    assert [s.value for s in steps] == [4320, n2, n3]
    assert steps[1].value == 9953280
    # at i=2 the separation comparison lands exactly on equality
    assert steps[1].separation_equal and not steps[1].separation_strict
    assert steps[2].separation_strict and not steps[2].separation_equal
    with pytest.raises(ValueError):
        stitch_schedule(0, 2)


def test_rankin_membership_examples():
    assert not rankin_membership(4)  # exponent 2 has ternary digit 2
    assert rankin_membership(1)
    assert rankin_membership(6)
    assert rankin_membership(8)  # 2^3, exponent 3 admissible
    assert not rankin_membership(3**8)  # 8 = 22 in ternary
    with pytest.raises(ValueError):
        rankin_membership(0)
    with pytest.raises(ValueError):
        rankin_membership(10**12 + 1)


def test_rankin_membership_multiplicative():
    members = rankin_members_upto(300)
    mset = set(members)
    from math import gcd

    for m in members[:40]:
        for n in members[:40]:
            if gcd(m, n) == 1 and m * n <= 300:
                assert m * n in mset


def test_rankin_sieve_agrees_with_membership():
    members = rankin_members_upto(5000)
    mset = set(members)
    for n in range(1, 5001):
        assert (n in mset) == rankin_membership(n)


def test_rankin_density_cross_check():
    count = len(rankin_members_upto(10**6))
    enc = rankin_density(Fraction(1, 10**5))
    ratio = Fraction(count, 10**6)
    assert enc.lo - Fraction(1, 10**3) <= ratio <= enc.hi + Fraction(1, 10**3)


def test_rankin_members_rational_gp_free():
    members = rankin_members_upto(10**4)
    assert is_gp_free(members, RatioKind.RATIONAL)


def test_rankin_members_rational_gp_free_large():
    """Same invariant at 10^5 via parametrized triple enumeration: every
    rational triple is (m^2 k, m n k, n^2 k) with m < n, so scanning those
    forms covers all of them without the quadratic pair scan."""
    limit = 10**5
    members = set(rankin_members_upto(limit))
    for n in range(2, isqrt(limit) + 1):
        for m in range(1, n):
            base = n * n
            for k in range(1, limit // base + 1):
                a, b, c = m * m * k, m * n * k, n * n * k
                if a in members and b in members and c in members:
                    raise AssertionError(f"progression {a},{b},{c}")
