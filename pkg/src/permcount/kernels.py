"""Hot loops over batches of permutations.

Every batch is a 2-D ``uint8`` array of shape ``(N, n)`` whose rows are
permutations of ``0..n-1`` in one-line form (row[x] is the image of x).
Products follow ``(a*b)[x] = a[b[x]]``.

Each kernel exists twice: a numba ``@njit`` loop and a blockwise numpy
version.  The module-level names dispatch to numba when it is importable
and ``PERMCOUNT_DISABLE_JIT`` is unset; both variants stay importable so
tests and the benchmark can compare them.
"""

import numpy as np

from ._jit import HAVE_NUMBA, njit

# pairs per numpy block (rows * cols * n entries kept under a few MB)
_BLOCK_ENTRIES = 1 << 22

EXCLUDE_NONE = 0
EXCLUDE_BOTH_FIX = 1  # drop pairs where both factors fix ``fix``
EXCLUDE_COMMON_FIX = 2  # drop pairs sharing any fixed point


def as_batch(perms):
    arr = np.ascontiguousarray(perms, dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


# ---------------------------------------------------------------------------
# cycle counts


@njit(cache=True, nogil=True)
def _cycle_counts_nb(P):
    N, n = P.shape
    out = np.zeros(N, dtype=np.int64)
    seen = np.zeros(n, dtype=np.uint8)
    for r in range(N):
        seen[:] = 0
        c = 0
        for s in range(n):
            if seen[s] == 0:
                c += 1
                x = s
                while seen[x] == 0:
                    seen[x] = 1
                    x = P[r, x]
        out[r] = c
    return out


def _orbit_min_np(P):
    """Smallest point on the cycle through each point (vectorised)."""
    P = P.astype(np.intp, copy=False)
    lab = np.broadcast_to(np.arange(P.shape[-1]), P.shape).copy()
    cur = lab.copy()
    for _ in range(P.shape[-1] - 1):
        cur = np.take_along_axis(P, cur, axis=-1)
        np.minimum(lab, cur, out=lab)
    return lab


def _cycle_counts_np(P):
    P = as_batch(P)
    if P.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    lab = _orbit_min_np(P)
    return (lab == np.arange(P.shape[1])).sum(axis=-1).astype(np.int64)


def cycle_labels(P):
    """Label every point by the smallest point of its cycle."""
    return _orbit_min_np(as_batch(P)).astype(np.int64)


# ---------------------------------------------------------------------------
# pair counting: #{(x, y) : l(x*y*tau) == target, ...}


@njit(cache=True, nogil=True)
def _count_pairs_nb(X, Y, tau, target_len, fix, exclude, need_fixed):
    nx, n = X.shape
    ny = Y.shape[0]
    Yt = np.empty((ny, n), dtype=np.uint8)
    for b in range(ny):
        for p in range(n):
            Yt[b, p] = Y[b, tau[p]]
    prod = np.empty(n, dtype=np.uint8)
    seen = np.zeros(n, dtype=np.uint8)
    total = 0
    for a in range(nx):
        for b in range(ny):
            if fix >= 0:
                if X[a, Yt[b, fix]] != fix:
                    continue
                if exclude == 1 and X[a, fix] == fix and Y[b, fix] == fix:
                    continue
            if exclude == 2:
                common = False
                for p in range(n):
                    if X[a, p] == p and Y[b, p] == p:
                        common = True
                        break
                if common:
                    continue
            has_fixed = False
            for p in range(n):
                prod[p] = X[a, Yt[b, p]]
                seen[p] = 0
                if prod[p] == p:
                    has_fixed = True
            if need_fixed and not has_fixed:
                continue
            c = 0
            for s in range(n):
                if seen[s] == 0:
                    c += 1
                    x = s
                    while seen[x] == 0:
                        seen[x] = 1
                        x = prod[x]
            if n - c == target_len:
                total += 1
    return total


def _count_pairs_np(X, Y, tau, target_len, fix, exclude, need_fixed):
    X, Y = as_batch(X), as_batch(Y)
    nx, n = X.shape
    ny = Y.shape[0]
    if nx == 0 or ny == 0:
        return 0
    Yt = Y[:, np.asarray(tau, dtype=np.intp)]
    ar = np.arange(n)
    xfix = X == ar
    yfix = Y == ar
    rows = max(1, _BLOCK_ENTRIES // max(1, ny * n))
    total = 0
    for lo in range(0, nx, rows):
        Xb = X[lo:lo + rows]
        prod = Xb[:, Yt]  # (bx, ny, n)
        keep = np.ones(prod.shape[:2], dtype=bool)
        if fix >= 0:
            keep &= prod[:, :, fix] == fix
            if exclude == EXCLUDE_BOTH_FIX:
                keep &= ~(xfix[lo:lo + rows, fix][:, None] & yfix[None, :, fix])
        if exclude == EXCLUDE_COMMON_FIX:
            keep &= ~(xfix[lo:lo + rows, None, :] & yfix[None, :, :]).any(axis=-1)
        if need_fixed:
            keep &= (prod == ar).any(axis=-1)
        cand = prod[keep]
        if cand.shape[0]:
            total += int(np.count_nonzero(n - _cycle_counts_np(cand) == target_len))
    return total


# ---------------------------------------------------------------------------
# additive-length histogram used by the F_k sweep


@njit(cache=True, nogil=True)
def _additive_hist_nb(X, lx, dx, tau, ltau, depth_max):
    """hist[d, i, j] = #{(a, b) : min(dx) == d, l(a)=i, l(b)=j, l(a*b*tau) == i+j+l(tau)}."""
    N, n = X.shape
    hist = np.zeros((depth_max + 1, n, n), dtype=np.int64)
    Xt = np.empty((N, n), dtype=np.uint8)
    for b in range(N):
        for p in range(n):
            Xt[b, p] = X[b, tau[p]]
    prod = np.empty(n, dtype=np.uint8)
    seen = np.zeros(n, dtype=np.uint8)
    for a in range(N):
        for b in range(N):
            want = lx[a] + lx[b] + ltau
            if want > n - 1:
                continue
            for p in range(n):
                prod[p] = X[a, Xt[b, p]]
                seen[p] = 0
            c = 0
            for s in range(n):
                if seen[s] == 0:
                    c += 1
                    x = s
                    while seen[x] == 0:
                        seen[x] = 1
                        x = prod[x]
            if n - c == want:
                d = dx[a] if dx[a] < dx[b] else dx[b]
                hist[d, lx[a], lx[b]] += 1
    return hist


def _additive_hist_np(X, lx, dx, tau, ltau, depth_max):
    X = as_batch(X)
    N, n = X.shape
    lx = np.asarray(lx, dtype=np.int64)
    dx = np.asarray(dx, dtype=np.int64)
    hist = np.zeros((depth_max + 1, n, n), dtype=np.int64)
    Xt = X[:, np.asarray(tau, dtype=np.intp)]
    rows = max(1, _BLOCK_ENTRIES // max(1, N * n))
    for lo in range(0, N, rows):
        Xb = X[lo:lo + rows]
        want = lx[lo:lo + rows, None] + lx[None, :] + ltau
        ok = want <= n - 1
        prod = Xb[:, Xt][ok]
        got = n - _cycle_counts_np(prod)
        hit = got == want[ok]
        ia, ib = np.nonzero(ok)
        ia, ib = ia[hit] + lo, ib[hit]
        d = np.minimum(dx[ia], dx[ib])
        np.add.at(hist, (d, lx[ia], lx[ib]), 1)
    return hist


# ---------------------------------------------------------------------------
# cofactor lengths: y = x^-1 * target (right) or target * x^-1 (left)


@njit(cache=True, nogil=True)
def _cofactor_lengths_nb(X, target, left):
    N, n = X.shape
    out = np.empty(N, dtype=np.int64)
    inv = np.empty(n, dtype=np.uint8)
    y = np.empty(n, dtype=np.uint8)
    seen = np.zeros(n, dtype=np.uint8)
    for r in range(N):
        for p in range(n):
            inv[X[r, p]] = p
        for p in range(n):
            if left:
                y[p] = target[inv[p]]
            else:
                y[p] = inv[target[p]]
            seen[p] = 0
        c = 0
        for s in range(n):
            if seen[s] == 0:
                c += 1
                x = s
                while seen[x] == 0:
                    seen[x] = 1
                    x = y[x]
        out[r] = n - c
    return out


def _cofactor_lengths_np(X, target, left):
    X = as_batch(X)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    inv = np.argsort(X, axis=1).astype(np.uint8)
    target = np.asarray(target, dtype=np.intp)
    if left:
        Y = target[inv]
    else:
        Y = np.take_along_axis(inv, np.broadcast_to(target, inv.shape), axis=1)
    return X.shape[1] - _cycle_counts_np(Y)


# ---------------------------------------------------------------------------
# dispatch


def cycle_counts(P):
    P = as_batch(P)
    if HAVE_NUMBA:
        return _cycle_counts_nb(P)
    return _cycle_counts_np(P)


def count_pairs(X, Y, tau, target_len, fix=-1, exclude=EXCLUDE_NONE, need_fixed=False):
    """Count pairs (x, y) in X x Y whose product x*y*tau has length ``target_len``.

    ``fix`` >= 0 additionally requires the product to fix that point;
    ``exclude`` drops pairs by a fixed-point rule (see the EXCLUDE_* flags);
    ``need_fixed`` requires the product to have at least one fixed point.
    """
    X, Y = as_batch(X), as_batch(Y)
    tau = np.ascontiguousarray(tau, dtype=np.uint8)
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return 0
    if exclude == EXCLUDE_BOTH_FIX and fix < 0:
        raise ValueError("EXCLUDE_BOTH_FIX needs a fixed point")
    if HAVE_NUMBA:
        return int(_count_pairs_nb(X, Y, tau, target_len, fix, exclude, need_fixed))
    return _count_pairs_np(X, Y, tau, target_len, fix, exclude, need_fixed)


def additive_hist(X, lx, dx, tau, ltau, depth_max):
    X = as_batch(X)
    tau = np.ascontiguousarray(tau, dtype=np.uint8)
    lx = np.ascontiguousarray(lx, dtype=np.int64)
    dx = np.ascontiguousarray(dx, dtype=np.int64)
    if HAVE_NUMBA:
        return _additive_hist_nb(X, lx, dx, tau, int(ltau), int(depth_max))
    return _additive_hist_np(X, lx, dx, tau, int(ltau), int(depth_max))


def cofactor_lengths(X, target, left=False):
    """Reflection lengths of the cofactors y with x*y == target (or y*x with ``left``)."""
    X = as_batch(X)
    target = np.ascontiguousarray(target, dtype=np.uint8)
    if HAVE_NUMBA:
        return _cofactor_lengths_nb(X, target, bool(left))
    return _cofactor_lengths_np(X, target, bool(left))
