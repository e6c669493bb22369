"""Level sets and conjugacy classes of S_n, plus closed-form counting oracles.

Level sets are produced cycle type by cycle type, so nothing here ever
walks all of S_n.  Within a class, elements come out in lexicographic
order of their canonical cycle form (cycles start at their minimum and
are listed by first point).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator

import numpy as np

from .perm import CycleType, Permutation, PermutationError


@dataclass(frozen=True)
class LevelSetSpec:
    degree: int
    length: int

    def __post_init__(self):
        if self.degree < 1:
            raise PermutationError("degree must be at least 1")
        if not 0 <= self.length <= self.degree - 1:
            raise PermutationError(f"length {self.length} outside 0..{self.degree - 1}")


@dataclass(frozen=True)
class ClassSpec:
    cycle_type: CycleType

    @property
    def degree(self) -> int:
        return self.cycle_type.degree


def partitions(n: int, parts: int | None = None, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in decreasing lexicographic order, optionally with a fixed number of parts."""
    if max_part is None:
        max_part = n
    if n == 0:
        if parts in (None, 0):
            yield ()
        return
    if parts is not None and (parts <= 0 or parts > n or parts * max_part < n):
        return
    for first in range(min(n, max_part), 0, -1):
        rest_parts = None if parts is None else parts - 1
        for rest in partitions(n - first, rest_parts, first):
            yield (first,) + rest


def level_set_types(n: int, length: int) -> list[CycleType]:
    """Cycle types making up the level set of reflection length ``length``."""
    return [CycleType(p) for p in partitions(n, n - length)]


def z_factor(ct: CycleType) -> int:
    mult = Counter(ct.parts)
    return prod(ct.parts) * prod(factorial(m) for m in mult.values())


def class_size(ct: CycleType) -> int:
    """n! / z_lambda."""
    return factorial(ct.degree) // z_factor(ct)


@lru_cache(maxsize=None)
def stirling_first_kind(n: int, k: int) -> int:
    """Unsigned Stirling number c(n, k): permutations of n points with k cycles."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if n == k:
        return 1
    if k == 0:
        return 0
    return stirling_first_kind(n - 1, k - 1) + (n - 1) * stirling_first_kind(n - 1, k)


def narayana(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return comb(n, k) * comb(n, k - 1) // n


def level_set_size(n: int, length: int) -> int:
    return stirling_first_kind(n, n - length)


def _class_images(parts: tuple[int, ...], n: int) -> Iterator[bytes]:
    sizes = Counter(parts)
    longest = max(parts)
    img = bytearray(range(n))
    free = [True] * n

    def close(cycle):
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            img[a] = b

    def place(start_from):
        p = start_from
        while p < n and not free[p]:
            p += 1
        if p == n:
            yield bytes(img)
            return
        free[p] = False
        yield from extend([p], p + 1)
        free[p] = True

    def extend(cycle, next_start):
        L = len(cycle)
        if sizes[L] > 0:
            sizes[L] -= 1
            close(cycle)
            yield from place(next_start)
            for a in cycle:
                img[a] = a
            sizes[L] += 1
        if L < longest:
            for q in range(cycle[0] + 1, n):
                if free[q]:
                    free[q] = False
                    yield from extend(cycle + [q], next_start)
                    free[q] = True

    yield from place(0)


def enumerate_class(spec: ClassSpec | CycleType) -> Iterator[Permutation]:
    """Every permutation of the given cycle type, each exactly once."""
    ct = spec.cycle_type if isinstance(spec, ClassSpec) else spec
    for img in _class_images(ct.parts, ct.degree):
        yield Permutation._raw(img)


def enumerate_level_set(spec: LevelSetSpec) -> Iterator[Permutation]:
    """Every sigma in S_n with l(sigma) = length, class by class."""
    for ct in level_set_types(spec.degree, spec.length):
        yield from enumerate_class(ct)


def class_array(ct: CycleType) -> np.ndarray:
    """The class as a ``(size, n)`` uint8 batch (0-based rows)."""
    n = ct.degree
    buf = b"".join(_class_images(ct.parts, n))
    return np.frombuffer(buf, dtype=np.uint8).reshape(-1, n).copy()


@lru_cache(maxsize=64)
def _level_set_array_cached(n: int, length: int) -> np.ndarray:
    chunks = [class_array(ct) for ct in level_set_types(n, length)]
    arr = np.concatenate(chunks) if chunks else np.zeros((0, n), dtype=np.uint8)
    arr.setflags(write=False)
    return arr


def level_set_array(n: int, length: int) -> np.ndarray:
    LevelSetSpec(n, length)
    return _level_set_array_cached(n, length)


def level_set_chunks(n: int, length: int) -> list[np.ndarray]:
    """The level set split at cycle-type boundaries, in enumeration order."""
    arr = level_set_array(n, length)
    sizes = [class_size(ct) for ct in level_set_types(n, length)]
    return np.split(arr, np.cumsum(sizes)[:-1])


def symmetric_group_array(n: int) -> np.ndarray:
    """All of S_n, level set by level set (small n only)."""
    return np.concatenate([level_set_array(n, i) for i in range(n)])
