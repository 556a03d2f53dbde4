from math import gcd

import pytest

from gpfree.modn import (
    ModTripleSystem,
    brute_force_E,
    class_projection,
    exact_E,
    modn_triples,
    residue_classes,
)


def test_system_validation():
    with pytest.raises(ValueError):
        ModTripleSystem(0, frozenset())
    with pytest.raises(ValueError):
        ModTripleSystem(4, frozenset({frozenset({0, 1})}))
    with pytest.raises(ValueError):
        ModTripleSystem(4, frozenset({frozenset({0, 1, 7})}))


def test_modn_triples_small():
    assert modn_triples(2).triples == frozenset()
    assert modn_triples(1).triples == frozenset()
    got = {tuple(sorted(t)) for t in modn_triples(4).triples}
    assert got == {(0, 1, 2), (0, 2, 3)}


def test_modn_triples_prime_has_unit_progressions():
    for p in (5, 7, 11, 13):
        triples = {tuple(sorted(t)) for t in modn_triples(p).triples}
        # a generator's (1, g, g^2) must appear
        found = False
        for g in range(2, p):
            seen = set()
            x = 1
            for _ in range(p - 1):
                x = x * g % p
                seen.add(x)
            if len(seen) == p - 1:  # g generates
                tri = tuple(sorted({1, g, g * g % p}))
                if len(tri) == 3:
                    assert tri in triples
                    found = True
        assert found


def test_exact_E_small():
    assert exact_E(2)[0] == 2
    assert exact_E(4)[0] == 3
    size, witness = exact_E(16)
    assert size == brute_force_E(16)
    assert len(witness) == size
    # witness is progression-free: hits no triple entirely
    wset = set(witness)
    for t in modn_triples(16).triples:
        assert not t <= wset


def test_brute_force_bounds():
    assert brute_force_E(1) == 1
    assert brute_force_E(4) == 3
    with pytest.raises(ValueError):
        brute_force_E(25)
    with pytest.raises(ValueError):
        brute_force_E(0)


def test_exact_equals_brute_force_up_to_20():
    for n in range(1, 21):
        size, witness = exact_E(n)
        assert size == brute_force_E(n), f"mismatch at n={n}"
        assert size <= n
        # sanity floor: residues in no triple are always keepable
        in_triple = set()
        for t in modn_triples(n).triples:
            in_triple |= set(t)
        assert size >= n - len(in_triple)


def test_residue_classes_partition():
    for n in (12, 30, 100):
        classes = residue_classes(n)
        all_residues = sorted(x for cls in classes.values() for x in cls)
        assert all_residues == list(range(n))
        for d, cls in classes.items():
            assert n % d == 0
            assert all(gcd(m, n) == d for m in cls)


def test_class_projection_bijective_onto_units():
    for n in range(2, 101):
        for d in sorted({gcd(m, n) for m in range(n)}):
            proj = class_projection(n, d)
            q = n // d
            units = {k for k in range(q) if gcd(k, q) == 1} if q > 1 else {0}
            assert set(proj.values()) == units
            assert len(set(proj.values())) == len(proj)  # injective


def test_class_triples_project_to_unit_progressions():
    """Triples lying inside one divisor class map to triples mod n/d."""
    for n in (12, 16, 20, 36):
        triples = modn_triples(n).triples
        for d in sorted({gcd(m, n) for m in range(n)}):
            q = n // d
            if q < 3:
                continue
            cls = set(residue_classes(n)[d])
            sub = {t for t in triples if t <= cls}
            target = modn_triples(q).triples
            for t in sub:
                image = frozenset((x // d) % q for x in t)
                assert len(image) == 3
                assert image in target
