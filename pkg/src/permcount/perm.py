"""Immutable permutations of {1..n} with cycle structure and reflection length.

Images are stored 0-based in a ``bytes`` object, one byte per point, so a
permutation is hashable, compact and converts to a numpy row for free.
The public API is 1-based throughout.

Products use ``(a*b)(x) = a(b(x))``: the right factor acts first.
"""

from __future__ import annotations

import re
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_DEGREE = 16

RIGHT_FIRST = "right"  # (a*b)(x) = a(b(x))
LEFT_FIRST = "left"  # (a*b)(x) = b(a(x)); test hook only

CONVENTION_NOTE = "(a∘b)(x)=a(b(x))"

_convention = RIGHT_FIRST


def get_convention() -> str:
    return _convention


@contextmanager
def composition_convention(rule: str):
    """Temporarily switch the product convention.

    Only meant for tests checking that the counts do not depend on it.
    """
    global _convention
    if rule not in (RIGHT_FIRST, LEFT_FIRST):
        raise ValueError(f"unknown convention {rule!r}")
    old, _convention = _convention, rule
    try:
        yield
    finally:
        _convention = old


class PermutationError(ValueError):
    """Malformed permutation text or an operation outside its domain."""


@dataclass(frozen=True)
class CycleType:
    """Cycle lengths of a permutation as a weakly decreasing partition of n."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise PermutationError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def cycle_count(self) -> int:
        return len(self.parts)

    @property
    def reflection_length(self) -> int:
        return self.degree - len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


class Permutation:
    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int] | bytes):
        """Build from 1-based one-line images, e.g. ``Permutation([2, 1, 3])``."""
        if isinstance(images, (bytes, bytearray)):
            img = bytes(images)
        else:
            vals = [int(v) for v in images]
            if len(vals) > MAX_DEGREE:
                raise PermutationError(f"degree {len(vals)} exceeds the supported maximum {MAX_DEGREE}")
            if any(not 1 <= v <= len(vals) for v in vals):
                raise PermutationError(f"images must lie in 1..n: {vals}")
            img = bytes(v - 1 for v in vals)
        n = len(img)
        if n < 1:
            raise PermutationError("degree must be at least 1")
        if n > MAX_DEGREE:
            raise PermutationError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
        if sorted(img) != list(range(n)):
            raise PermutationError(f"not a permutation: {[v + 1 for v in img]}")
        self._img = img
        self._hash = hash(img)

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, img: bytes) -> "Permutation":
        obj = cls.__new__(cls)
        obj._img = img
        obj._hash = hash(img)
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(bytes(range(n)))

    @classmethod
    def from_array(cls, row) -> "Permutation":
        """From a 0-based numpy row (as used by the kernels)."""
        return cls(np.asarray(row, dtype=np.uint8).tobytes())

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        used = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 1 <= c <= n:
                    raise PermutationError(f"point {c} outside 1..{n}")
                if c in used:
                    raise PermutationError(f"point {c} appears twice")
                used.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(bytes(img))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        if a == b:
            raise PermutationError("a transposition needs two distinct points")
        return cls.from_cycles([(a, b)], n)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse ``"(1 4 2)(3)"`` or ``"[4,1,3,2]"``.

        In cycle form omitted points are fixed; ``n`` defaults to the largest
        point mentioned.  ``"()"`` is the identity and then needs ``n``.
        """
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise PermutationError(f"unterminated one-line form: {text!r}")
            body = s[1:-1].strip()
            vals = [int(v) for v in re.split(r"[\s,]+", body) if v] if body else []
            perm = cls(vals)
            if n is not None and perm.degree != n:
                raise PermutationError(f"expected degree {n}, got {perm.degree}")
            return perm
        if s in ("", "id", "e"):
            s = "()"
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", s):
            raise PermutationError(f"cannot parse permutation {text!r}")
        cycles = [[int(v) for v in re.split(r"[\s,]+", body.strip()) if v]
                  for body in re.findall(r"\(([^()]*)\)", s)]
        top = max((c for cyc in cycles for c in cyc), default=0)
        if n is None:
            if top == 0:
                raise PermutationError("degree needed for the empty cycle form")
            n = top
        if top > n:
            raise PermutationError(f"point {top} exceeds degree {n}")
        return cls.from_cycles(cycles, n)

    # -- basic data ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based one-line images."""
        return tuple(v + 1 for v in self._img)

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self._img, dtype=np.uint8).copy()

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other):
        return self._img < other._img

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return self.cycle_string()

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    # -- structure ---------------------------------------------------------

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Cycles in canonical form: each starts at its minimum, sorted by first point."""
        img = self._img
        seen = bytearray(len(img))
        out = []
        for s in range(len(img)):
            if seen[s]:
                continue
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = 1
                cyc.append(x + 1)
                x = img[x]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> CycleType:
        return CycleType(tuple(len(c) for c in self.cycles()))

    def reflection_length(self) -> int:
        return self.degree - self.cycle_count()

    def fixed_points(self) -> frozenset[int]:
        return frozenset(x + 1 for x, y in enumerate(self._img) if x == y)

    def inverse(self) -> "Permutation":
        inv = bytearray(len(self._img))
        for x, y in enumerate(self._img):
            inv[y] = x
        return Permutation._raw(bytes(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self._img))

    def cycle_string(self) -> str:
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def one_line(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def _check_degrees(a: Permutation, b: Permutation):
    if a.degree != b.degree:
        raise PermutationError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The product ``a*b``; by default ``x -> a(b(x))``."""
    _check_degrees(a, b)
    if _convention == LEFT_FIRST:
        a, b = b, a
    ai = a._img
    return Permutation._raw(bytes(ai[y] for y in b._img))


def inverse(sigma: Permutation) -> Permutation:
    return sigma.inverse()


def reflection_length(sigma: Permutation) -> int:
    """n minus the number of cycles (fixed points count)."""
    return sigma.reflection_length()


def cycle_decomposition(sigma: Permutation) -> list[tuple[int, ...]]:
    return sigma.cycles()


def cycle_type(sigma: Permutation) -> CycleType:
    return sigma.cycle_type()


def fixed_points(sigma: Permutation) -> frozenset[int]:
    return sigma.fixed_points()


def conjugate(sigma: Permutation, by: Permutation) -> Permutation:
    """``by * sigma * by^-1``, i.e. sigma with its points relabelled by ``by``."""
    _check_degrees(sigma, by)
    return compose(by, compose(sigma, by.inverse()))


def delete_point(sigma: Permutation) -> Permutation:
    """Excise the last point n from its cycle: (..., i, n, j, ...) -> (..., i, j, ...)."""
    n = sigma.degree
    img = bytearray(sigma._img)
    last = n - 1
    if img[last] == last:
        raise PermutationError("deletion undefined on fixed point")
    pre = img.index(last)
    img[pre] = img[last]
    return Permutation._raw(bytes(img[:last]))


def product(*perms: Permutation) -> Permutation:
    out = perms[0]
    for p in perms[1:]:
        out = compose(out, p)
    return out
