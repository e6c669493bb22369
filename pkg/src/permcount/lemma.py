"""The A(k) filtration of S_m and the pair counts F_k(i, j, tau).

A(k) holds the permutations sigma for which right multiplication by each of
the first k transpositions s_1..s_k raises the reflection length, i.e. the
two points of every such s_i sit in different cycles of sigma.

F_k(i, j, tau) counts ordered pairs (s1, s2) in A(k) x A(k) with
l(s1) = i, l(s2) = j and l(s1 * s2 * tau) = i + j + l(tau).
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import kernels
from ._parallel import map_sum, resolve_workers, split_rows
from .enumeration import level_set_array, level_set_types, enumerate_class, symmetric_group_array
from .perm import LEFT_FIRST, Permutation, PermutationError, compose, get_convention
from .report import Report, timed


@dataclass(frozen=True)
class TranspositionOrder:
    """An ordering s_1, s_2, ... of all transpositions of S_m.

    Admissible orders have l(s_1 * ... * s_{m-1}) = m - 1, which happens
    exactly when the first m - 1 transpositions form a spanning tree.
    """

    degree: int
    sequence: tuple[tuple[int, int], ...]
    name: str = "custom"
    _arrays: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        m = self.degree
        if m < 2:
            raise PermutationError("transposition orders need m >= 2")
        seq = tuple((min(a, b), max(a, b)) for a, b in self.sequence)
        want = set(combinations(range(1, m + 1), 2))
        if len(seq) != len(want) or set(seq) != want:
            raise PermutationError("order must list every transposition of S_m exactly once")
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "_arrays", (
            np.array([a - 1 for a, _ in seq], dtype=np.intp),
            np.array([b - 1 for _, b in seq], dtype=np.intp),
        ))
        prefix = Permutation.identity(m)
        for s in self.transpositions()[: m - 1]:
            prefix = compose(prefix, s)
        if prefix.reflection_length() != m - 1:
            raise PermutationError("order is not admissible: l(s_1 ... s_{m-1}) != m - 1")

    def __len__(self):
        return len(self.sequence)

    def transposition(self, index: int) -> Permutation:
        """s_index, 1-based."""
        a, b = self.sequence[index - 1]
        return Permutation.transposition(self.degree, a, b)

    def transpositions(self) -> list[Permutation]:
        return [Permutation.transposition(self.degree, a, b) for a, b in self.sequence]

    @classmethod
    def random_admissible(cls, m: int, rng: random.Random) -> "TranspositionOrder":
        """A random spanning tree first, the remaining transpositions shuffled after it."""
        verts = list(range(1, m + 1))
        rng.shuffle(verts)
        tree = [tuple(sorted((verts[t], rng.choice(verts[:t])))) for t in range(1, m)]
        rng.shuffle(tree)
        rest = [p for p in combinations(range(1, m + 1), 2) if p not in set(tree)]
        rng.shuffle(rest)
        return cls(m, tuple(tree + rest), name="random")


def default_order(m: int) -> TranspositionOrder:
    """Star order (1 2), (1 3), ..., (1 m), then the rest lexicographically."""
    star = [(1, k) for k in range(2, m + 1)]
    rest = [p for p in combinations(range(1, m + 1), 2) if p[0] != 1]
    return TranspositionOrder(m, tuple(star + rest), name="star")


@dataclass(frozen=True)
class FQuery:
    m: int
    k: int
    i: int
    j: int
    tau: Permutation

    def __post_init__(self):
        K = self.m * (self.m - 1) // 2
        if not 0 <= self.k <= K:
            raise PermutationError(f"k={self.k} outside 0..{K}")
        if self.i < 0 or self.j < 0:
            raise PermutationError("lengths must be non-negative")
        if self.tau.degree != self.m:
            raise PermutationError(f"tau has degree {self.tau.degree}, expected {self.m}")

    def as_dict(self):
        return {"m": self.m, "k": self.k, "i": self.i, "j": self.j, "tau": str(self.tau)}


def _check_k(k: int, order: TranspositionOrder):
    if not 0 <= k <= len(order):
        raise PermutationError(f"k={k} outside 0..{len(order)}")


def in_A(sigma: Permutation, k: int, order: TranspositionOrder) -> bool:
    """True iff l(sigma * s_i) > l(sigma) for every i <= k."""
    if sigma.degree != order.degree:
        raise PermutationError("degree mismatch between sigma and the order")
    _check_k(k, order)
    label = [0] * sigma.degree
    for c, cyc in enumerate(sigma.cycles()):
        for x in cyc:
            label[x - 1] = c
    return all(label[a - 1] != label[b - 1] for a, b in order.sequence[:k])


def depths(X: np.ndarray, order: TranspositionOrder) -> np.ndarray:
    """Largest k with row in A(k), for every row of a batch."""
    X = kernels.as_batch(X)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    lab = kernels.cycle_labels(X)
    a, b = order._arrays
    same = lab[:, a] == lab[:, b]  # (N, K)
    K = len(order)
    first = np.where(same.any(axis=1), same.argmax(axis=1), K)
    return first.astype(np.int64)


def filtered_level_set(m: int, length: int, k: int, order: TranspositionOrder) -> np.ndarray:
    """Level set of S_m intersected with A(k)."""
    if not 0 <= length <= m - 1:
        return np.zeros((0, m), dtype=np.uint8)
    X = level_set_array(m, length)
    if k == 0:
        return X
    return X[depths(X, order) >= k]


def count_F_brute(q: FQuery, order: TranspositionOrder | None = None, workers=1) -> int:
    """F_k(i, j, tau) by running over every pair in the two filtered level sets."""
    order = order or default_order(q.m)
    if order.degree != q.m:
        raise PermutationError("order degree differs from query degree")
    _check_k(q.k, order)
    Xi = filtered_level_set(q.m, q.i, q.k, order)
    Xj = filtered_level_set(q.m, q.j, q.k, order)
    ltau = q.tau.reflection_length()
    target = q.i + q.j + ltau
    if target > q.m - 1:
        return 0
    tau = q.tau.to_array()
    if get_convention() == LEFT_FIRST:
        # s1 s2 tau read left-first is tau.s2.s1, conjugate to s2.s1.tau
        Xi, Xj = Xj, Xi
    chunks = split_rows(Xi, resolve_workers(workers))
    return map_sum(lambda c: kernels.count_pairs(c, Xj, tau, target), chunks, workers)


def f_table(m: int, tau: Permutation, order: TranspositionOrder | None = None) -> np.ndarray:
    """All F_k(i, j, tau) at once: ``table[k, i, j]`` for 0 <= k <= K, 0 <= i, j < m."""
    order = order or default_order(m)
    X = symmetric_group_array(m)
    lx = m - kernels.cycle_counts(X)
    dx = depths(X, order)
    K = len(order)
    hist = kernels.additive_hist(X, lx, dx, tau.to_array(), tau.reflection_length(), K)
    if get_convention() == LEFT_FIRST:
        hist = np.ascontiguousarray(hist.transpose(0, 2, 1))
    # pairs with min depth d lie in A(k) for all k <= d
    return np.cumsum(hist[::-1], axis=0)[::-1]


def _recursion(order: TranspositionOrder):
    K = len(order)
    s = [order.transposition(t + 1) for t in range(K)]

    @lru_cache(maxsize=None)
    def F(k, i, j, tau):
        if i < 0 or j < 0:
            return 0
        if k == K:
            return 1 if i == 0 and j == 0 else 0
        if i + j > K - k:
            # each step lowers i + j by at most one
            return 0
        st = compose(s[k], tau)
        return F(k + 1, i, j, tau) + F(k + 1, i - 1, j, st) + F(k + 1, i, j - 1, st)

    return F


_RECURSIONS: dict[TranspositionOrder, object] = {}


def count_F_recursive(q: FQuery, order: TranspositionOrder | None = None) -> int:
    """F_k(i, j, tau) from the three-term recursion over k.

    F_k(i,j,tau) = F_{k+1}(i,j,tau) + F_{k+1}(i-1,j,s_{k+1} tau) + F_{k+1}(i,j-1,s_{k+1} tau),
    with F_K(i,j,tau) = [i = j = 0] at full depth and 0 for negative lengths.
    The recursion is evaluated exactly as written; it is *not* adjusted to
    agree with :func:`count_F_brute` (see :func:`verify_recursion`).
    """
    order = order or default_order(q.m)
    if order.degree != q.m:
        raise PermutationError("order degree differs from query degree")
    _check_k(q.k, order)
    F = _RECURSIONS.get(order)
    if F is None:
        F = _RECURSIONS[order] = _recursion(order)
    limit = sys.getrecursionlimit()
    if limit < 4 * len(order) + 100:
        sys.setrecursionlimit(4 * len(order) + 100)
    return F(q.k, q.i, q.j, q.tau)


def class_representatives(m: int) -> list[Permutation]:
    """First element (in enumeration order) of every conjugacy class of S_m."""
    reps = []
    for length in range(m):
        for ct in level_set_types(m, length):
            reps.append(next(enumerate_class(ct)))
    return reps


def lemma1_twists(m: int, exhaustive_max: int = 5) -> tuple[list[Permutation], str]:
    if m <= exhaustive_max:
        return [Permutation.from_array(r) for r in symmetric_group_array(m)], "exhaustive"
    return class_representatives(m), "class-representatives"


def verify_lemma1(m: int, order: TranspositionOrder | None = None,
                  exhaustive_max: int = 5) -> Report:
    """Check F_k(i,j,tau) <= F_k(i+1,j-1,tau) whenever i + 1 < j.

    Every depth k and every (i, j) with lengths below m are checked; twists run
    over all of S_m up to ``exhaustive_max`` and over one representative per
    class beyond.  For odd m = 2g-3 the strict case F_0(g-3,g-1,id) <
    F_0(g-2,g-2,id) is checked as well.
    """
    if m < 3:
        raise PermutationError("lemma1 needs m >= 3")
    order = order or default_order(m)
    twists, sample = lemma1_twists(m, exhaustive_max)
    rep = Report("lemma1", {"m": m, "twists": sample}, method="brute", order=order.name)
    with timed(rep):
        instances = violations = 0
        for tau in twists:
            T = f_table(m, tau, order)
            for i in range(m):
                for j in range(i + 2, m):
                    lhs, rhs = T[:, i, j], T[:, i + 1, j - 1]
                    instances += lhs.size
                    bad = np.nonzero(lhs > rhs)[0]
                    violations += bad.size
                    for k in bad:
                        rep.add_counterexample({"k": int(k), "i": i, "j": j, "tau": str(tau),
                                                "lhs": int(lhs[k]), "rhs": int(rhs[k])})
        rep.counts["instances"] = instances
        rep.counts["violations"] = violations
        strict_ok = True
        if m % 2 == 1:
            g = (m + 3) // 2
            T0 = f_table(m, Permutation.identity(m), order)
            small, big = int(T0[0, g - 3, g - 1]), int(T0[0, g - 2, g - 2])
            rep.query["g"] = g
            rep.counts[f"F_0({g - 3},{g - 1},id)"] = small
            rep.counts[f"F_0({g - 2},{g - 2},id)"] = big
            strict_ok = small < big
            if not strict_ok:
                rep.add_counterexample({"strict_case": True, "lhs": small, "rhs": big})
        rep.verified = violations == 0 and strict_ok
    return rep


def recursion_queries(m: int, count: int | None = None, seed: int = 0) -> list[FQuery]:
    """Every (k, i, j, tau) for small m, otherwise ``count`` seeded random queries."""
    K = m * (m - 1) // 2
    if count is None:
        taus = [Permutation.from_array(r) for r in symmetric_group_array(m)]
        return [FQuery(m, k, i, j, tau) for tau in taus for k in range(K + 1)
                for i in range(m) for j in range(m)]
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        images = list(range(1, m + 1))
        rng.shuffle(images)
        out.append(FQuery(m, rng.randint(0, K), rng.randrange(m), rng.randrange(m), Permutation(images)))
    return out


def verify_recursion(m: int, count: int | None = None, seed: int = 0,
                     order: TranspositionOrder | None = None, workers=1) -> Report:
    """Compare the recursion against brute force; every mismatch is reported."""
    order = order or default_order(m)
    exhaustive = count is None
    queries = recursion_queries(m, count, seed)
    rep = Report("recursion", {"m": m, "queries": "exhaustive" if exhaustive else f"random:{count}:seed={seed}"},
                 method="recursion-vs-brute", order=order.name)
    with timed(rep):
        mismatches = 0
        tables: dict[Permutation, np.ndarray] = {}
        for q in queries:
            if exhaustive:
                T = tables.get(q.tau)
                if T is None:
                    T = tables[q.tau] = f_table(m, q.tau, order)
                brute = int(T[q.k, q.i, q.j])
            else:
                brute = count_F_brute(q, order, workers)
            rec = count_F_recursive(q, order)
            if brute != rec:
                mismatches += 1
                rep.add_counterexample({**q.as_dict(), "brute": brute, "recursive": rec})
        rep.counts["queries"] = len(queries)
        rep.counts["mismatches"] = mismatches
        rep.verified = mismatches == 0
    return rep


def verify_A_chain(m: int, order: TranspositionOrder | None = None) -> Report:
    """A(0) = S_m, A(k+1) within A(k) (automatic from depths), A(K) = {id}, and the split rule."""
    order = order or default_order(m)
    rep = Report("A-chain", {"m": m}, method="brute", order=order.name)
    with timed(rep):
        X = symmetric_group_array(m)
        d = depths(X, order)
        K = len(order)
        full = X[d >= K]
        rep.counts["|A(0)|"] = int(np.count_nonzero(d >= 0))
        rep.counts["|A(K)|"] = int(full.shape[0])
        ok = full.shape[0] == 1 and bool((full[0] == np.arange(m)).all())
        # sigma in A(k) \ A(k+1)  =>  sigma * s_{k+1} in A(k+1)
        a, b = order._arrays
        split_fail = 0
        for k in range(K):
            drop = X[d == k]
            if drop.shape[0] == 0:
                continue
            moved = drop.copy()
            moved[:, [a[k], b[k]]] = drop[:, [b[k], a[k]]]
            split_fail += int(np.count_nonzero(depths(moved, order) < k + 1))
        rep.counts["split_failures"] = split_fail
        rep.verified = ok and split_fail == 0
    return rep
