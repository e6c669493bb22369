from math import comb, factorial

import numpy as np
import pytest

import _oracle
from permcount.enumeration import (
    ClassSpec,
    LevelSetSpec,
    class_array,
    class_size,
    enumerate_class,
    enumerate_level_set,
    level_set_array,
    level_set_chunks,
    level_set_types,
    narayana,
    partitions,
    stirling_first_kind,
)
from permcount.perm import CycleType, Permutation, PermutationError


def test_level_set_examples():
    assert [p.is_identity() for p in enumerate_level_set(LevelSetSpec(4, 0))] == [True]
    assert sum(1 for _ in enumerate_level_set(LevelSetSpec(4, 2))) == 11
    assert sum(1 for _ in enumerate_level_set(LevelSetSpec(4, 3))) == 6


def test_level_set_matches_filter():
    # filter over all of S_4 / S_5 in the pure-Python reference
    for n in (4, 5):
        for i in range(n):
            want = {tuple(v + 1 for v in p) for p in _oracle.sym(n) if _oracle.length(p) == i}
            got = {p.images for p in enumerate_level_set(LevelSetSpec(n, i))}
            assert got == want


def test_class_examples():
    assert class_size(CycleType((2, 2))) == 3
    assert class_size(CycleType((3, 1))) == 8
    for n in range(1, 8):
        assert sum(1 for _ in enumerate_class(ClassSpec(CycleType((n,))))) == factorial(n - 1)


def test_class_order_is_lexicographic_canonical_form():
    for parts in [(2, 2), (3, 1), (2, 2, 1), (3, 2, 1)]:
        perms = list(enumerate_class(CycleType(parts)))
        keys = [p.cycles() for p in perms]
        assert keys == sorted(keys)
        assert len(set(perms)) == len(perms)
        assert all(p.cycle_type().parts == parts for p in perms)


@pytest.mark.parametrize("n", range(1, 9))
def test_level_sets_partition_sn(n):
    total = 0
    for i in range(n):
        X = level_set_array(n, i)
        assert X.shape[0] == stirling_first_kind(n, n - i)
        assert len(set(map(bytes, X))) == X.shape[0]
        total += X.shape[0]
    assert total == factorial(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_class_sizes(n):
    for parts in partitions(n):
        ct = CycleType(parts)
        assert class_array(ct).shape[0] == class_size(ct)


def test_stirling():
    assert stirling_first_kind(4, 2) == 11
    for n in range(1, 10):
        assert stirling_first_kind(n, n) == 1
        assert stirling_first_kind(n, 1) == factorial(n - 1)
        assert sum(stirling_first_kind(n, k) for k in range(n + 1)) == factorial(n)
    assert stirling_first_kind(8, 4) == 6769


def test_narayana():
    assert narayana(3, 2) == 3
    for n in range(1, 10):
        assert narayana(n, 1) == narayana(n, n) == 1
        assert sum(narayana(n, k) for k in range(1, n + 1)) == comb(2 * n, n) // (n + 1)


def test_narayana_brute_s3():
    c = (1, 2, 0)
    hits = sum(1 for s in _oracle.sym(3)
               if _oracle.length(s) == 1 and _oracle.length(_oracle.mul(_oracle.inv(s), c)) == 1)
    assert hits == narayana(3, 2)


@pytest.mark.parametrize("n", range(2, 9))
def test_defect_zero_factorizations_of_long_cycle(n):
    c = Permutation(list(range(2, n + 1)) + [1])
    for i in range(n):
        count = sum(1 for s in enumerate_level_set(LevelSetSpec(n, i))
                    if (s.inverse() * c).reflection_length() == n - 1 - i)
        assert count == narayana(n, n - i)


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(5, 2)) == [(4, 1), (3, 2)]
    assert [ct.parts for ct in level_set_types(4, 2)] == [(3, 1), (2, 2)]


def test_chunks_split_at_types():
    chunks = level_set_chunks(6, 3)
    assert [c.shape[0] for c in chunks] == [class_size(ct) for ct in level_set_types(6, 3)]
    assert np.array_equal(np.concatenate(chunks), level_set_array(6, 3))


def test_invalid_specs():
    with pytest.raises(PermutationError):
        LevelSetSpec(4, 4)
    with pytest.raises(ValueError):
        stirling_first_kind(3, 4)
    with pytest.raises(ValueError):
        narayana(3, 0)
