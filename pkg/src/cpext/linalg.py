"""Exact linear algebra over Z and Z/m.

Smith normal form over the integers (with unimodular transforms), Howell bases
of submodules of (Z/m)^c, kernels mod m and invariant factors of quotient
modules.  Everything is exact; residues are kept in ``[0, m)`` as int64.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .kernels import howell_reduce, reduce_vector, unit_normalizer, xgcd


class IntMatrix:
    """Integer matrix given densely or as ``(row, col, value)`` triplets."""

    def __init__(self, rows: int, cols: int, entries=None, dense=None):
        self.rows = rows
        self.cols = cols
        if dense is not None:
            self._dense = [[int(x) for x in r] for r in dense]
            if len(self._dense) != rows or any(len(r) != cols for r in self._dense):
                raise ValueError("dense shape mismatch")
        else:
            self._dense = [[0] * cols for _ in range(rows)]
            seen = set()
            for i, j, v in entries or ():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"triplet index ({i}, {j}) out of range")
                if (i, j) in seen:
                    raise ValueError(f"duplicate entry at ({i}, {j})")
                seen.add((i, j))
                self._dense[i][j] = int(v)

    @classmethod
    def from_array(cls, a) -> "IntMatrix":
        a = [list(map(int, r)) for r in a]
        cols = len(a[0]) if a else 0
        return cls(len(a), cols, dense=a)

    def tolist(self) -> list[list[int]]:
        return [r[:] for r in self._dense]

    def triplets(self):
        for i, r in enumerate(self._dense):
            for j, v in enumerate(r):
                if v:
                    yield i, j, v

    def dump(self) -> str:
        """Debug dump, one ``row col value`` line per nonzero entry."""
        return "".join(f"{i} {j} {v}\n" for i, j, v in self.triplets())


def _as_lists(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return A.tolist()
    return [[int(x) for x in r] for r in A]


@dataclass
class SmithForm:
    invariants: tuple[int, ...]
    U: list[list[int]]
    V: list[list[int]]
    D: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.invariants)


def _matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def smith_normal_form(A) -> SmithForm:
    """Smith normal form ``U A V = D`` over the integers.

    Pivot is the nonzero entry of least absolute value, ties broken by the
    lowest ``(row, col)``.  ``invariants`` lists the nonzero diagonal entries.
    """
    M = _as_lists(A)
    r = len(M)
    c = len(M[0]) if r else (A.cols if isinstance(A, IntMatrix) else 0)
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            changed = False
            for i in range(t + 1, r):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if M[i][t]:
                    changed = True
            for j in range(t + 1, c):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if M[t][j]:
                    changed = True
            if changed:
                best = None
                for i in range(t, r):
                    if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                        best = (abs(M[i][t]), i, "r")
                for j in range(t, c):
                    if M[t][j] and (best is None or abs(M[t][j]) < best[0]):
                        best = (abs(M[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    inv = tuple(M[i][i] for i in range(min(r, c)) if M[i][i])
    return SmithForm(inv, U, V, M)


def _snf_mod(K: np.ndarray, r: int, m: int):
    """Diagonalize the rows ``K`` (k x r) over Z/m by unimodular row/col ops.

    Returns ``(diag, V, Vinv)``: ``diag`` has length ``r`` with entries dividing
    ``m`` (``m`` meaning a zero diagonal), ``V`` and ``Vinv`` are mutually
    inverse column transforms mod m.
    """
    M = [[int(x) % m for x in row] for row in K]
    M = [row for row in M if any(row)]
    k = len(M)
    V = [[int(i == j) for j in range(r)] for i in range(r)]
    Vi = [[int(i == j) for j in range(r)] for i in range(r)]

    def col_op(i, j, s, t, u, v):
        # new col_i = s*c_i + t*c_j ; new col_j = u*c_i + v*c_j  (det = s*v - t*u = 1)
        for row in M:
            a, b = row[i], row[j]
            row[i] = (s * a + t * b) % m
            row[j] = (u * a + v * b) % m
        for row in V:
            a, b = row[i], row[j]
            row[i] = (s * a + t * b) % m
            row[j] = (u * a + v * b) % m
        # inverse acts on rows i, j of Vinv: [[v, -u], [-t, s]]
        ri, rj = Vi[i], Vi[j]
        Vi[i] = [(v * a - u * b) % m for a, b in zip(ri, rj)]
        Vi[j] = [(-t * a + s * b) % m for a, b in zip(ri, rj)]

    def row_op(i, j, s, t, u, v):
        ri, rj = M[i], M[j]
        M[i] = [(s * a + t * b) % m for a, b in zip(ri, rj)]
        M[j] = [(u * a + v * b) % m for a, b in zip(ri, rj)]

    def col_scale(i, w):
        winv = pow(w, -1, m) if m > 1 else 0
        for row in M:
            row[i] = (row[i] * w) % m
        for row in V:
            row[i] = (row[i] * w) % m
        Vi[i] = [(a * winv) % m for a in Vi[i]]

    diag = []
    t = 0
    while t < min(k, r):
        best = None
        for i in range(t, k):
            for j in range(t, r):
                if M[i][j]:
                    g = math.gcd(M[i][j], m)
                    if best is None or g < best[0]:
                        best = (g, i, j)
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        if j != t:
            # swap with a sign so the transform keeps determinant 1
            col_op(t, j, 0, 1, -1, 0)
        while True:
            for i in range(t + 1, k):
                b = M[i][t]
                if b:
                    a = M[t][t]
                    if a == 0:
                        M[t], M[i] = M[i], M[t]
                        continue
                    if b % a == 0:
                        row_op(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, tt = xgcd(a, b)
                        row_op(t, i, s, tt, -(b // g), a // g)
            for j in range(t + 1, r):
                b = M[t][j]
                if b:
                    a = M[t][t]
                    if a == 0:
                        col_op(t, j, 0, 1, -1, 0)
                        continue
                    if b % a == 0:
                        col_op(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, tt = xgcd(a, b)
                        col_op(t, j, s, tt, -(b // g), a // g)
            if any(M[i][t] for i in range(t + 1, k)):
                continue
            a = M[t][t]
            if a == 0:
                break
            w = int(unit_normalizer(a, m))
            if w != 1:
                col_scale(t, w)
            p = M[t][t]
            bad = None
            for i in range(t + 1, k):
                if any(M[i][j] % p for j in range(t + 1, r)):
                    bad = i
                    break
            if bad is None:
                break
            M[t] = [(a + b) % m for a, b in zip(M[t], M[bad])]
        if M[t][t] == 0:
            break
        diag.append(M[t][t])
        t += 1
    diag = diag + [m] * (r - len(diag))
    return diag, np.array(V, dtype=np.int64).reshape(r, r), np.array(Vi, dtype=np.int64).reshape(r, r)


@dataclass(frozen=True)
class ModuleBasis:
    """Howell basis of a submodule of (Z/m)^ncols."""

    modulus: int
    rows: np.ndarray
    pivots: tuple[int, ...]
    ncols: int

    @property
    def rank_profile(self) -> tuple[int, ...]:
        return self.pivots

    def order(self) -> int:
        out = 1
        for k, j in enumerate(self.pivots):
            out *= self.modulus // int(self.rows[k, j])
        return out

    def is_zero(self) -> bool:
        return len(self.pivots) == 0

    def reduce(self, v):
        return reduce_vector(self.rows, np.asarray(self.pivots, dtype=np.int64), v, self.modulus)

    def contains(self, v) -> bool:
        rem, _ = self.reduce(v)
        return not rem.any()

    def contains_all(self, other: "ModuleBasis") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coefficients(self, v) -> np.ndarray:
        rem, coeffs = self.reduce(v)
        if rem.any():
            raise ValueError("vector not in span")
        return coeffs

    def elements(self, limit: int = 1 << 16):
        """Enumerate the span (small modules only)."""
        if self.order() > limit:
            raise ValueError("module too large to enumerate")
        ranges = [range(self.modulus // int(self.rows[k, j])) for k, j in enumerate(self.pivots)]
        for coeffs in itertools.product(*ranges):
            v = np.zeros(self.ncols, dtype=np.int64)
            for q, row in zip(coeffs, self.rows):
                if q:
                    v = (v + q * row) % self.modulus
            yield v


def howell_form(A, m: int, ncols: int | None = None) -> ModuleBasis:
    """Canonical Howell basis of the row span of ``A`` over Z/m."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        c = ncols if ncols is not None else (A.shape[1] if A.ndim == 2 else 0)
        return ModuleBasis(m, np.zeros((0, c), dtype=np.int64), (), c)
    rows, piv = howell_reduce(A, m)
    return ModuleBasis(m, rows, tuple(int(p) for p in piv), A.shape[1])


def howell_accumulate(chunks, m: int, ncols: int) -> ModuleBasis:
    """Howell basis of the span of a stream of row blocks.

    Each block is reduced together with the current basis, so memory stays at
    one block plus at most ``ncols`` basis rows.
    """
    rows = np.zeros((0, ncols), dtype=np.int64)
    for block in chunks:
        block = np.asarray(block, dtype=np.int64).reshape(-1, ncols)
        if block.shape[0] == 0:
            continue
        rows, _ = howell_reduce(np.vstack([rows, block]), m)
    return howell_form(rows, m, ncols=ncols)


def zero_module(m: int, ncols: int) -> ModuleBasis:
    return ModuleBasis(m, np.zeros((0, ncols), dtype=np.int64), (), ncols)


def full_module(m: int, ncols: int) -> ModuleBasis:
    return howell_form(np.eye(ncols, dtype=np.int64), m)


def module_sum(*mods: ModuleBasis) -> ModuleBasis:
    m = mods[0].modulus
    c = mods[0].ncols
    stacked = np.vstack([x.rows for x in mods]) if any(len(x.pivots) for x in mods) else np.zeros((0, c), dtype=np.int64)
    return howell_form(stacked, m, ncols=c)


def kernel_mod(A, m: int, ncols: int | None = None) -> ModuleBasis:
    """Basis of ``{x : A x == 0 (mod m)}``."""
    A = np.asarray(A, dtype=np.int64)
    c = A.shape[1] if A.ndim == 2 and A.size else (ncols or 0)
    if A.size == 0:
        return full_module(m, c)
    H = howell_form(A, m)
    h = len(H.pivots)
    if h == 0:
        return full_module(m, c)
    aug = np.zeros((c, h + c), dtype=np.int64)
    aug[:, :h] = H.rows.T
    aug[:, h:] = np.eye(c, dtype=np.int64)
    rows, piv = howell_reduce(aug, m)
    tails = [rows[k, h:] for k in range(len(piv)) if piv[k] >= h]
    if not tails:
        return zero_module(m, c)
    K = howell_form(np.array(tails), m)
    return K


def intersect(A: ModuleBasis, B: ModuleBasis) -> ModuleBasis:
    """Intersection of two submodules of the same ambient (Zassenhaus trick)."""
    m, c = A.modulus, A.ncols
    if A.is_zero() or B.is_zero():
        return zero_module(m, c)
    top = np.hstack([A.rows, A.rows])
    bot = np.hstack([B.rows, np.zeros_like(B.rows)])
    rows, piv = howell_reduce(np.vstack([top, bot]), m)
    tails = [rows[k, c:] for k in range(len(piv)) if piv[k] >= c]
    if not tails:
        return zero_module(m, c)
    return howell_form(np.array(tails), m)


@dataclass
class FinAbGroup:
    """Finite abelian group ``Z/d_1 + ... + Z/d_k`` with ``d_i | d_{i+1}``.

    When produced by :func:`quotient_invariants` it carries coordinate maps to
    and from the ambient quotient ``span / sub``.
    """

    invariants: tuple[int, ...]
    _project: Callable | None = field(default=None, repr=False)
    _lift: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        self.invariants = tuple(int(d) for d in self.invariants)
        if any(d <= 1 for d in self.invariants):
            raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FinAbGroup":
        return cls(tuple(normalize_invariants(orders)))

    def order(self) -> int:
        return math.prod(self.invariants)

    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def rank(self) -> int:
        return len(self.invariants)

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.invariants if d % p == 0)

    def is_trivial(self) -> bool:
        return not self.invariants

    def project(self, v) -> tuple[int, ...]:
        if self._project is None:
            raise ValueError("group has no ambient coordinates")
        return self._project(v)

    def lift(self, coords) -> np.ndarray:
        if self._lift is None:
            raise ValueError("group has no ambient coordinates")
        return self._lift(coords)

    def elements(self):
        return itertools.product(*[range(d) for d in self.invariants])

    def subgroups(self) -> list[frozenset]:
        """All subgroups as frozensets of coordinate tuples (closure of cyclic joins)."""
        elems = list(self.elements())
        inv = self.invariants

        def add(a, b):
            return tuple((x + y) % d for x, y, d in zip(a, b, inv))

        def closure(gens):
            zero = tuple(0 for _ in inv)
            seen = {zero}
            frontier = [zero]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = add(x, g)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            return frozenset(seen)

        cyclic = {closure([e]) for e in elems}
        subs = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    J = closure(list(H | C))
                    if J not in subs:
                        new.add(J)
            subs |= new
            frontier = new
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    def __str__(self):
        if not self.invariants:
            return "1"
        return " x ".join(f"C{d}" for d in self.invariants)


def normalize_invariants(orders: Sequence[int]) -> list[int]:
    """Invariant factor chain of ``Z/o_1 + ... + Z/o_k`` (trivial factors dropped)."""
    primes: dict[int, list[int]] = {}
    for o in orders:
        o = int(o)
        if o <= 0:
            raise ValueError("orders must be positive")
        n = o
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 1
                while n % p == 0:
                    n //= p
                    e *= p
                primes.setdefault(p, []).append(e)
            p += 1
        if n > 1:
            primes.setdefault(n, []).append(n)
    if not primes:
        return []
    k = max(len(v) for v in primes.values())
    out = [1] * k
    for p, pows in primes.items():
        pows = sorted(pows)
        pows = [1] * (k - len(pows)) + pows
        for i in range(k):
            out[i] *= pows[i]
    return [d for d in out if d > 1]


def quotient_invariants(span: ModuleBasis, sub: ModuleBasis) -> FinAbGroup:
    """Invariant factors of ``span / sub`` with project/lift coordinate maps."""
    if span.modulus != sub.modulus or span.ncols != sub.ncols:
        raise ValueError("modules live in different ambients")
    if not span.contains_all(sub):
        raise ValueError("not a submodule")
    m = span.modulus
    S = span.rows
    r = S.shape[0]
    c = span.ncols
    if r == 0:
        return FinAbGroup((), lambda v: (), lambda coords: np.zeros(c, dtype=np.int64))
    top = np.hstack([S, np.eye(r, dtype=np.int64)])
    blocks = [top]
    if len(sub.pivots):
        blocks.append(np.hstack([sub.rows, np.zeros((sub.rows.shape[0], r), dtype=np.int64)]))
    rows, piv = howell_reduce(np.vstack(blocks), m)
    kgens = np.array([rows[k, c:] for k in range(len(piv)) if piv[k] >= c], dtype=np.int64).reshape(-1, r)
    diag, V, Vi = _snf_mod(kgens, r, m)
    factors = [math.gcd(int(d), m) for d in diag]
    keep = [i for i, e in enumerate(factors) if e > 1]
    inv = tuple(factors[i] for i in keep)
    piv_arr = np.asarray(span.pivots, dtype=np.int64)

    def project(v):
        rem, lam = reduce_vector(S, piv_arr, v, m)
        if rem.any():
            raise ValueError("vector not in span")
        w = (lam @ V) % m
        return tuple(int(w[i]) % e for i, e in zip(keep, inv))

    def lift(coords):
        lam2 = np.zeros(r, dtype=np.int64)
        for i, x in zip(keep, coords):
            lam2[i] = int(x) % m
        lam = (lam2 @ Vi) % m
        return (lam @ S) % m

    return FinAbGroup(inv, project, lift)


def abelian_invariants_from_orders(element_orders: Sequence[int]) -> list[int]:
    """Invariant factors of a finite abelian group from its element-order multiset.

    For each prime ``p`` the count of elements with order dividing ``p^j``
    equals ``prod p^min(j, e_i)`` over the ``p``-primary cyclic factors.
    """
    n = len(element_orders)
    if n == 1:
        return []
    primes = []
    x = n
    p = 2
    while p * p <= x:
        if x % p == 0:
            primes.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        primes.append(x)
    orders = np.asarray(element_orders, dtype=np.int64)
    parts = []
    for p in primes:
        counts = []
        j = 0
        while True:
            pj = p ** j
            cnt = int(np.sum(pj % orders == 0))
            counts.append(cnt)
            if j > 0 and cnt == counts[-2]:
                break
            j += 1
        # log_p of counts gives sum_i min(j, e_i); differences give #factors with e_i >= j
        logs = [round(math.log(c_, p)) for c_ in counts]
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        for j in range(len(ge)):
            exact = ge[j] - (ge[j + 1] if j + 1 < len(ge) else 0)
            parts.extend([p ** (j + 1)] * exact)
    return normalize_invariants(parts)
