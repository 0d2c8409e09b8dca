"""Hot numeric kernels.

Each kernel has a numba body (compiled through :func:`cpext._accel.njit`) and a
numpy path.  :data:`cpext._accel.USE_NUMBA` picks one at call time through the
small dispatch functions at the bottom of the module.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, njit


@njit
def xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@njit
def unit_normalizer(a, m):
    """A unit ``u`` of Z/m with ``u*a == gcd(a, m) (mod m)``."""
    g, s, _ = xgcd(a % m, m)
    if g == 0:
        return 1
    m1 = m // g
    s = s % m1 if m1 > 1 else 0
    u = s
    while True:
        if xgcd(u, m)[0] == 1:
            return u % m
        u += m1


@njit
def _howell_nb(M, m, used):
    R, C = M.shape
    pivcols = np.full(R, -1, dtype=np.int64)
    pr = 0
    for j in range(C):
        if pr >= R:
            break
        for i in range(pr + 1, used):
            b = M[i, j]
            if b == 0:
                continue
            a = M[pr, j]
            if a == 0:
                for k in range(j, C):
                    tmp = M[pr, k]
                    M[pr, k] = M[i, k]
                    M[i, k] = tmp
                continue
            g, s, t = xgcd(a, b)
            u = b // g
            v = a // g
            for k in range(j, C):
                x = M[pr, k]
                y = M[i, k]
                M[pr, k] = (s * x + t * y) % m
                M[i, k] = (v * y - u * x) % m
        a = M[pr, j]
        if a == 0:
            continue
        w = unit_normalizer(a, m)
        if w != 1:
            for k in range(j, C):
                M[pr, k] = (M[pr, k] * w) % m
        g = M[pr, j]
        if g != 1:
            f = m // g
            nz = False
            for k in range(j + 1, C):
                val = (M[pr, k] * f) % m
                M[used, k] = val
                if val != 0:
                    nz = True
            if nz:
                used += 1
            else:
                for k in range(j + 1, C):
                    M[used, k] = 0
        pivcols[pr] = j
        pr += 1
    for k in range(pr):
        j = pivcols[k]
        p = M[k, j]
        for i in range(k):
            q = M[i, j] // p
            if q != 0:
                for c in range(j, C):
                    M[i, c] = (M[i, c] - q * M[k, c]) % m
    return pr, pivcols


def _howell_np(M, m, used):
    R, C = M.shape
    pivcols = np.full(R, -1, dtype=np.int64)
    pr = 0
    for j in range(C):
        if pr >= R:
            break
        col = M[pr:used, j]
        nz = np.nonzero(col)[0]
        if nz.size:
            rows = nz + pr
            vals = M[rows, j]
            gs = np.gcd(vals, m)
            best = int(np.argmin(gs))
            gbest = int(gs[best])
            if np.all(vals % gbest == 0):
                # one entry generates the column ideal: eliminate in one shot
                r0 = int(rows[best])
                if r0 != pr:
                    M[[pr, r0]] = M[[r0, pr]]
                    rows = np.where(rows == pr, r0, rows)
                    rows[best] = pr
                w = int(unit_normalizer(int(M[pr, j]), m))
                if w != 1:
                    M[pr, j:] = (M[pr, j:] * w) % m
                others = rows[rows != pr]
                if others.size:
                    q = M[others, j] // M[pr, j]
                    M[others, j:] = (M[others, j:] - q[:, None] * M[pr, j:]) % m
            else:
                for i in rows:
                    i = int(i)
                    if i == pr:
                        continue
                    b = int(M[i, j])
                    if b == 0:
                        continue
                    a = int(M[pr, j])
                    if a == 0:
                        M[[pr, i], j:] = M[[i, pr], j:]
                        continue
                    g, s, t = xgcd(a, b)
                    u, v = b // g, a // g
                    x = M[pr, j:].copy()
                    y = M[i, j:].copy()
                    M[pr, j:] = (s * x + t * y) % m
                    M[i, j:] = (v * y - u * x) % m
        a = int(M[pr, j])
        if a == 0:
            continue
        w = int(unit_normalizer(a, m))
        if w != 1:
            M[pr, j:] = (M[pr, j:] * w) % m
        g = int(M[pr, j])
        if g != 1:
            ann = (M[pr, j + 1:] * (m // g)) % m
            if ann.any():
                M[used, :] = 0
                M[used, j + 1:] = ann
                used += 1
        pivcols[pr] = j
        pr += 1
    for k in range(pr):
        j = int(pivcols[k])
        p = M[k, j]
        if k:
            q = M[:k, j] // p
            if q.any():
                M[:k, j:] = (M[:k, j:] - q[:, None] * M[k, j:]) % m
    return pr, pivcols


def howell_reduce(A, m):
    """Howell normal form of the row span of ``A`` over Z/m.

    Returns ``(rows, pivot_columns)`` where ``rows`` holds the nonzero canonical
    rows in pivot order.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    r, c = A.shape
    if c == 0 or r == 0:
        return np.zeros((0, c), dtype=np.int64), np.zeros(0, dtype=np.int64)
    M = np.zeros((r + c + 1, c), dtype=np.int64)
    M[:r] = A % m
    if USE_NUMBA:
        pr, piv = _howell_nb(M, np.int64(m), np.int64(r))
    else:
        pr, piv = _howell_np(M, m, r)
    return M[:pr].copy(), piv[:pr].copy()


@njit
def _reduce_vector_nb(rows, pivots, v, m):
    coeffs = np.zeros(rows.shape[0], dtype=np.int64)
    C = v.shape[0]
    for k in range(rows.shape[0]):
        j = pivots[k]
        p = rows[k, j]
        x = v[j] % m
        if x % p != 0:
            continue
        q = x // p
        coeffs[k] = q
        if q != 0:
            for c in range(j, C):
                v[c] = (v[c] - q * rows[k, c]) % m
    return coeffs


def reduce_vector(rows, pivots, v, m):
    """Back-substitute ``v`` against a Howell basis.

    Returns ``(remainder, coeffs)``; ``v`` lies in the span iff the remainder is
    zero, in which case ``coeffs @ rows == v (mod m)``.
    """
    v = np.asarray(v, dtype=np.int64) % m
    if USE_NUMBA:
        coeffs = _reduce_vector_nb(rows, pivots, v, np.int64(m))
        return v, coeffs
    coeffs = np.zeros(rows.shape[0], dtype=np.int64)
    for k in range(rows.shape[0]):
        j = int(pivots[k])
        p = int(rows[k, j])
        x = int(v[j])
        if x % p:
            continue
        q = x // p
        coeffs[k] = q
        if q:
            v[j:] = (v[j:] - q * rows[k, j:]) % m
    return v, coeffs


def lcm_list(values):
    out = 1
    for v in values:
        out = out * int(v) // math.gcd(out, int(v))
    return out
