"""Two-factor counts in S_{2g-2}: G(i, j), the deletion covering, and the diagonal difference.

G(i, j) counts ordered pairs (s1, s2) of reflection lengths i, j whose
product has length i + j - 2 and fixes the last point n = 2g - 2.  The
strict variant (the default) also drops pairs in which both factors fix n;
those are exactly the pairs the deletion map cannot see.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial

import numpy as np

from . import kernels
from ._parallel import map_sum, resolve_workers, split_rows
from .enumeration import level_set_array
from .lemma import FQuery, count_F_brute, default_order
from .perm import LEFT_FIRST, Permutation, PermutationError, compose, get_convention
from .report import Report, timed

STRICT = "strict"
ALL = "all"
BRUTE = "brute"
REDUCED = "reduced"


@dataclass(frozen=True)
class GQuery:
    g: int
    i: int
    j: int
    variant: str = STRICT
    method: str = BRUTE

    def __post_init__(self):
        if self.g < 3:
            raise PermutationError("g must be at least 3")
        n = self.n
        for name, v in (("i", self.i), ("j", self.j)):
            if not 0 <= v <= n - 1:
                raise PermutationError(f"{name}={v} outside 0..{n - 1}")
        if self.variant not in (STRICT, ALL):
            raise PermutationError(f"unknown variant {self.variant!r}")
        if self.method not in (BRUTE, REDUCED):
            raise PermutationError(f"unknown method {self.method!r}")

    @property
    def n(self) -> int:
        return 2 * self.g - 2

    def as_dict(self):
        return {"g": self.g, "i": self.i, "j": self.j, "variant": self.variant, "method": self.method}


def conditions_123(s1: Permutation, s2: Permutation) -> bool:
    """l(s1 s2) = l(s1) + l(s2) - 2, s1 s2 has a fixed point, s1 and s2 share none."""
    if s1.degree != s2.degree:
        raise PermutationError(f"degree mismatch: {s1.degree} vs {s2.degree}")
    p = compose(s1, s2)
    if p.reflection_length() != s1.reflection_length() + s2.reflection_length() - 2:
        return False
    if not p.fixed_points():
        return False
    return not (s1.fixed_points() & s2.fixed_points())


def long_cycle_fixing_last(n: int) -> np.ndarray:
    """(1 2 ... n-1) with n fixed, 0-based one-line."""
    rep = np.arange(n, dtype=np.uint8)
    rep[: n - 1] = np.roll(np.arange(n - 1), -1)
    return rep


def reduced_applies(q: GQuery) -> bool:
    return q.i + q.j - 2 == q.n - 2


def _count_G_brute(q: GQuery, workers) -> int:
    n = q.n
    target = q.i + q.j - 2
    if target < 0 or target > n - 1:
        return 0
    X, Y = level_set_array(n, q.i), level_set_array(n, q.j)
    if get_convention() == LEFT_FIRST:
        X, Y = Y, X
    exclude = kernels.EXCLUDE_BOTH_FIX if q.variant == STRICT else kernels.EXCLUDE_NONE
    ident = np.arange(n, dtype=np.uint8)
    chunks = split_rows(X, resolve_workers(workers))
    return map_sum(lambda c: kernels.count_pairs(c, Y, ident, target, n - 1, exclude), chunks, workers)


def _cofactor_count(X: np.ndarray, target: np.ndarray, j: int, strict: bool, fix: int) -> int:
    left = get_convention() == LEFT_FIRST
    lengths = kernels.cofactor_lengths(X, target, left=left)
    keep = lengths == j
    if strict and X.shape[0]:
        # s2 = s1^-1 t, or t s1^-1 when products are read left-first
        if left:
            s2_at_fix = target[np.argmax(X == fix, axis=1)]
        else:
            s2_at_fix = np.argmax(X == target[fix], axis=1)
        keep &= ~((X[:, fix] == fix) & (s2_at_fix == fix))
    return int(np.count_nonzero(keep))


def _count_G_reduced(q: GQuery, workers) -> tuple[int, int]:
    """(P, orbit factor): pairs over one fixed product representative, times the class size."""
    n = q.n
    tau0 = long_cycle_fixing_last(n)
    X = level_set_array(n, q.i)
    strict = q.variant == STRICT
    chunks = split_rows(X, resolve_workers(workers))
    P = map_sum(lambda c: _cofactor_count(c, tau0, q.j, strict, n - 1), chunks, workers)
    # (n-1)-cycles on the first n-1 points: (n-2)! = (2g-4)!
    return P, factorial(n - 2)


def count_G(q: GQuery, workers=1) -> int:
    """G(i, j) in the requested variant; ``reduced`` falls back to brute off the top stratum."""
    if q.method == REDUCED and reduced_applies(q):
        P, orbit = _count_G_reduced(q, workers)
        return P * orbit
    return _count_G_brute(q, workers)


def count_G_detail(q: GQuery, workers=1) -> dict:
    """Like :func:`count_G` but also says which method actually ran."""
    if q.method == REDUCED and reduced_applies(q):
        P, orbit = _count_G_reduced(q, workers)
        return {"value": P * orbit, "method": REDUCED, "per_representative": P, "orbit": orbit}
    return {"value": _count_G_brute(q, workers), "method": BRUTE}


def count_N_direct(g: int, i: int, j: int, workers=1) -> int:
    """#{(s1, s2) : l(s1)=i, l(s2)=j, conditions (1)-(3)} by brute force over the two level sets."""
    n = 2 * g - 2
    target = i + j - 2
    if target < 0 or target > n - 1 or not (0 <= i < n and 0 <= j < n):
        return 0
    X, Y = level_set_array(n, i), level_set_array(n, j)
    if get_convention() == LEFT_FIRST:
        X, Y = Y, X
    ident = np.arange(n, dtype=np.uint8)
    chunks = split_rows(X, resolve_workers(workers))
    return map_sum(lambda c: kernels.count_pairs(c, Y, ident, target, -1, kernels.EXCLUDE_COMMON_FIX,
                                                 need_fixed=True), chunks, workers)


def lemma2_pairs(g: int) -> tuple[tuple[int, int], tuple[int, int]]:
    return (g - 1, g - 1), (g - 2, g)


def verify_lemma2(g: int, variants=(STRICT, ALL), method: str = REDUCED, workers=1) -> Report:
    """G(g-1, g-1) > G(g-2, g) in each requested variant."""
    (a, b), (c, d) = lemma2_pairs(g)
    rep = Report("lemma2", {"g": g, "variants": "+".join(variants)}, method=method)
    with timed(rep):
        ok = True
        used = set()
        for variant in variants:
            tag = "G" if variant == STRICT else "G_all"
            big = count_G_detail(GQuery(g, a, b, variant, method), workers)
            small = count_G_detail(GQuery(g, c, d, variant, method), workers)
            used.update((big["method"], small["method"]))
            rep.counts[f"{tag}({a},{b})"] = big["value"]
            rep.counts[f"{tag}({c},{d})"] = small["value"]
            if not big["value"] > small["value"]:
                ok = False
                rep.add_counterexample({"variant": variant, "lhs": big["value"], "rhs": small["value"]})
        rep.method = "+".join(sorted(used))
        rep.verified = ok
    return rep


# ---------------------------------------------------------------------------
# the deletion map as a covering


def _matching_pairs(X: np.ndarray, Y: np.ndarray, target: int, fix: int, strict: bool):
    """Index pairs satisfying the G conditions (numpy; small degrees only)."""
    n = X.shape[1]
    prod = X[:, Y]
    keep = prod[:, :, fix] == fix
    if strict:
        keep &= ~((X[:, fix] == fix)[:, None] & (Y[:, fix] == fix)[None, :])
    lengths = np.full(keep.shape, -1)
    lengths[keep] = n - kernels.cycle_counts(prod[keep])
    return np.nonzero(lengths == target)


def delete_last(X: np.ndarray) -> np.ndarray:
    """Row-wise deletion map on a batch where no row fixes the last point."""
    X = X.copy()
    last = X.shape[1] - 1
    pre = np.argmax(X == last, axis=1)
    X[np.arange(X.shape[0]), pre] = X[:, last]
    return X[:, :last]


def deletion_fibers(g: int, i: int, j: int) -> Counter:
    """Image of the strict G(i, j) pairs under (s1, s2) -> (f(s1), f(s2)), with multiplicities."""
    n = 2 * g - 2
    X, Y = level_set_array(n, i), level_set_array(n, j)
    ia, ib = _matching_pairs(X, Y, i + j - 2, n - 1, strict=True)
    fa, fb = delete_last(X[ia]), delete_last(Y[ib])
    return Counter(zip(map(bytes, fa), map(bytes, fb)))


def f0_pair_set(m: int, i: int, j: int) -> set:
    """The pairs of F_0(i, j, id) in S_m as byte keys."""
    if not (0 <= i < m and 0 <= j < m):
        return set()
    X, Y = level_set_array(m, i), level_set_array(m, j)
    prod = X[:, Y]
    lengths = m - kernels.cycle_counts(prod.reshape(-1, m)).reshape(prod.shape[:2])
    ia, ib = np.nonzero(lengths == i + j)
    return set(zip(map(bytes, X[ia]), map(bytes, Y[ib])))


def verify_covering(g: int, method: str = REDUCED, workers=1, set_level_max_g: int = 4) -> Report:
    """G_strict(i, j) = (2g-3) F_0(i-1, j-1, id) for the two top-stratum pairs and their transposes.

    Up to ``set_level_max_g`` the covering is also checked pair by pair: the
    deletion image equals the F_0 pair set and every fibre has 2g - 3 points.
    """
    m = 2 * g - 3
    order = default_order(m)
    (a, b), (c, d) = lemma2_pairs(g)
    rep = Report("covering", {"g": g, "m": m}, method=method, order=order.name)
    with timed(rep):
        ok = True
        for i, j in ((a, b), (c, d), (d, c)):
            G = count_G(GQuery(g, i, j, STRICT, method), workers)
            F = count_F_brute(FQuery(m, 0, i - 1, j - 1, Permutation.identity(m)), order, workers)
            rep.counts[f"G({i},{j})"] = G
            rep.counts[f"F_0({i - 1},{j - 1},id)"] = F
            if G != m * F:
                ok = False
                rep.add_counterexample({"i": i, "j": j, "G": G, "(2g-3)F": m * F})
            if g <= set_level_max_g and (i, j) != (d, c):
                fib = deletion_fibers(g, i, j)
                same = set(fib) == f0_pair_set(m, i - 1, j - 1)
                uniform = set(fib.values()) <= {m}
                rep.counts[f"fibres({i},{j})"] = len(fib)
                if not (same and uniform):
                    ok = False
                    rep.add_counterexample({"i": i, "j": j, "image_matches": same,
                                            "fibre_sizes": sorted(set(fib.values()))})
        rep.verified = ok
    return rep


# ---------------------------------------------------------------------------
# diagonal coefficient


@dataclass(frozen=True)
class DiagCoefficient:
    g: int
    value: int
    balanced: int  # N(g-1, g-1)
    skewed: int  # N(g-2, g)

    def as_counts(self) -> dict[str, int]:
        g = self.g
        return {f"N({g - 1},{g - 1})": self.balanced, f"N({g - 2},{g})": self.skewed, "Delta": self.value}


def diag_coefficient(g: int, method: str = REDUCED, workers=1) -> DiagCoefficient:
    """N(g-1,g-1) - N(g-2,g) with N(i, j) = (2g-2) G_strict(i, j).

    Both terms of c_{g-1}^2 - c_{g-2} c_g carry the sign (-1)^(2g-2) = +1, so
    this is a plain difference; only its sign means anything.
    """
    n = 2 * g - 2
    (a, b), (c, d) = lemma2_pairs(g)
    big = n * count_G(GQuery(g, a, b, STRICT, method), workers)
    small = n * count_G(GQuery(g, c, d, STRICT, method), workers)
    return DiagCoefficient(g, big - small, big, small)


def diag_direct(g: int, workers=1) -> DiagCoefficient:
    """The same difference counted straight from conditions (1)-(3)."""
    (a, b), (c, d) = lemma2_pairs(g)
    big = count_N_direct(g, a, b, workers)
    small = count_N_direct(g, c, d, workers)
    return DiagCoefficient(g, big - small, big, small)


def verify_diag(g: int, method: str = REDUCED, workers=1, direct_max_g: int = 4) -> Report:
    rep = Report("diag", {"g": g}, method=method)
    with timed(rep):
        dc = diag_coefficient(g, method, workers)
        rep.counts.update(dc.as_counts())
        ok = dc.value > 0
        if g <= direct_max_g:
            direct = diag_direct(g, workers)
            rep.counts["Delta_direct"] = direct.value
            if direct != dc:
                ok = False
                rep.add_counterexample({"stabilizer": dc.as_counts(), "direct": direct.as_counts()})
        rep.verified = ok
    return rep
