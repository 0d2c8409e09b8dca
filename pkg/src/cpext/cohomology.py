"""Second cohomology H^2(Q, N), its commutativity-preserving part, and multipliers.

Two independent models are available.

``direct``
    Normalized 2-cochains ``omega(x, y)`` for non-identity ``x, y`` as unknowns
    over Z/m, one cocycle equation per triple.  Works for any finite module and
    is the reference for small groups.

``relation``
    For trivial coefficients Z/m.  With ``F`` free on the generators of ``Q``
    and ``R`` the relation subgroup, ``H^2(Q, Z/m)`` is the cokernel of
    ``Hom(F, Z/m) -> Hom(R/[F,R], Z/m)``.  ``R`` is free on the Schreier
    generators (non-tree edges of the Cayley graph), so a class is a vector
    ``theta`` indexed by those edges.  This has ``|Q|*(k-1)+1`` unknowns for
    ``k`` generators instead of ``(|Q|-1)^2``, which is what makes order-128
    groups cheap.

Conventions: ``[x, y] = x^-1 y^-1 x y``; group law of a realized extension is
``(a, x)(b, y) = (a + x.b + omega(x, y), xy)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, abelianization
from .kernels import lcm_list
from .linalg import (
    FinAbGroup,
    ModuleBasis,
    howell_accumulate,
    howell_form,
    kernel_mod,
    module_sum,
    normalize_invariants,
    quotient_invariants,
    smith_normal_form,
    zero_module,
)

DIRECT_ORDER_CAP = 32
DIRECT_DIM_CAP = 8
RELATION_ORDER_CAP = 256


class CohomologyCapExceeded(ValueError):
    pass


# --------------------------------------------------------------------------
# modules


class GModule:
    """Finite abelian group ``N = sum Z/n_i`` with a left action of ``Q``.

    ``action[x]`` is an integer matrix ``A`` with ``x.b = A b`` on coordinate
    columns.  ``None`` means the trivial action.
    """

    def __init__(self, Q: FiniteGroup, moduli: Sequence[int], action=None):
        self.Q = Q
        self.moduli = tuple(int(n) for n in moduli)
        if any(n < 1 for n in self.moduli):
            raise ValueError("moduli must be positive")
        self.dim = len(self.moduli)
        self.modulus = lcm_list(self.moduli) if self.moduli else 1
        d = self.dim
        if action is None:
            self.action = np.broadcast_to(np.eye(d, dtype=np.int64), (Q.n, d, d)).copy()
            self._trivial = True
        else:
            A = np.asarray(action, dtype=np.int64).reshape(Q.n, d, d)
            self.action = A % np.asarray(self.moduli, dtype=np.int64)[None, :, None] if d else A
            self._trivial = None
        self._validate()

    @classmethod
    def trivial(cls, Q: FiniteGroup, moduli: Sequence[int]) -> "GModule":
        return cls(Q, moduli, None)

    @classmethod
    def from_generator_action(cls, Q: FiniteGroup, moduli: Sequence[int], matrices) -> "GModule":
        """Extend matrices for ``Q.generators`` to a full action (checked)."""
        d = len(moduli)
        mats = [np.asarray(M, dtype=np.int64).reshape(d, d) for M in matrices]
        if len(mats) != len(Q.generators):
            raise ValueError("one matrix per generator required")
        order, parent, gen = Q.bfs_tree
        act = np.zeros((Q.n, d, d), dtype=np.int64)
        act[0] = np.eye(d, dtype=np.int64)
        mod = np.asarray(moduli, dtype=np.int64)[:, None]
        for y in order[1:]:
            act[y] = (act[parent[y]] @ mats[gen[y]]) % mod
        return cls(Q, moduli, act)

    def _validate(self):
        Q, d = self.Q, self.dim
        if d == 0:
            return
        mod = np.asarray(self.moduli, dtype=np.int64)
        # well defined on the quotient coordinates: n_i | A_ij n_j
        for x in range(Q.n):
            if ((self.action[x] * mod[None, :]) % mod[:, None]).any():
                raise ValueError("action matrix does not respect the moduli")
        if not np.array_equal(self.action[0] % mod[:, None], np.eye(d, dtype=np.int64) % mod[:, None]):
            raise ValueError("identity must act trivially")
        for x in range(Q.n):
            for y in range(Q.n):
                lhs = (self.action[x] @ self.action[y]) % mod[:, None]
                if not np.array_equal(lhs, self.action[Q.mul[x, y]] % mod[:, None]):
                    raise ValueError("action is not a homomorphism")
        if self._trivial is None:
            eye = np.eye(d, dtype=np.int64) % mod[:, None]
            self._trivial = all(np.array_equal(self.action[x] % mod[:, None], eye) for x in range(Q.n))

    @property
    def is_trivial(self) -> bool:
        return bool(self._trivial)

    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def scale(self) -> np.ndarray:
        """Embedding factors ``m / n_i`` into the common modulus."""
        return np.asarray([self.modulus // n for n in self.moduli], dtype=np.int64)

    @property
    def coef(self) -> np.ndarray:
        """Action on embedded coordinates: ``c_ij = A_ij n_j / n_i``."""
        mod = np.asarray(self.moduli, dtype=np.int64)
        return (self.action * mod[None, None, :]) // mod[None, :, None]

    def act(self, x: int, b) -> np.ndarray:
        b = np.asarray(b, dtype=np.int64)
        return (self.action[x] @ b) % np.asarray(self.moduli, dtype=np.int64)

    def embed(self, b) -> np.ndarray:
        return (np.asarray(b, dtype=np.int64) * self.scale) % self.modulus

    def unembed(self, u) -> np.ndarray:
        return (np.asarray(u, dtype=np.int64) // self.scale) % np.asarray(self.moduli, dtype=np.int64)

    def elements(self):
        import itertools

        return itertools.product(*[range(n) for n in self.moduli])

    @lru_cache(maxsize=None)
    def cp_rows(self, x: int, y: int) -> np.ndarray:
        """Rows ``R`` with ``v in Im(x-1) + Im(y-1)  iff  R v == 0 (mod m)``.

        ``v`` is in embedded coordinates.  For a trivial action ``R`` is the
        identity (the subgroup is zero).
        """
        d, m = self.dim, self.modulus
        mod = list(self.moduli)
        rels = [[n if i == j else 0 for j in range(d)] for i, n in enumerate(mod)]
        for g in (x, y):
            D = (self.action[g] - np.eye(d, dtype=np.int64))
            for j in range(d):
                col = D[:, j] % np.asarray(mod)
                if col.any():
                    rels.append(col.tolist())
        snf = smith_normal_form(rels)
        diag = list(snf.invariants) + [0] * (d - len(snf.invariants))
        rows = []
        for i in range(d):
            e = diag[i]
            if e == 1:
                continue
            if e == 0:
                raise AssertionError("module quotient should be finite")
            row = []
            for j in range(d):
                num = snf.V[j][i] * mod[j]
                if num % e:
                    raise AssertionError("quotient map not well defined")
                row.append((num // e) % m)
            rows.append(row)
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), d)


# --------------------------------------------------------------------------
# cocycles


class Cocycle:
    """Normalized 2-cochain stored as a table ``omega[x, y, i]`` (values mod n_i)."""

    def __init__(self, module: GModule, table):
        self.module = module
        n, d = module.Q.n, module.dim
        t = np.asarray(table, dtype=np.int64).reshape(n, n, d)
        if d:
            t = t % np.asarray(module.moduli, dtype=np.int64)
        if t[0].any() or t[:, 0].any():
            raise ValueError("cochain is not normalized")
        self.table = t

    @classmethod
    def zero(cls, module: GModule) -> "Cocycle":
        n = module.Q.n
        return cls(module, np.zeros((n, n, module.dim), dtype=np.int64))

    @classmethod
    def from_vector(cls, module: GModule, vec) -> "Cocycle":
        """From the embedded flat vector over (non-identity x, non-identity y, coordinate)."""
        n, d = module.Q.n, module.dim
        v = np.asarray(vec, dtype=np.int64).reshape(n - 1, n - 1, d)
        t = np.zeros((n, n, d), dtype=np.int64)
        t[1:, 1:] = v // module.scale if d else v
        return cls(module, t)

    def vector(self) -> np.ndarray:
        v = self.table[1:, 1:] * self.module.scale if self.module.dim else self.table[1:, 1:]
        return (v % self.module.modulus).reshape(-1)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.module, self.table + other.table)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.module, self.table - other.table)

    def __mul__(self, k: int) -> "Cocycle":
        return Cocycle(self.module, self.table * int(k))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Cocycle) and np.array_equal(self.table, other.table)

    def defect(self) -> np.ndarray:
        """``x.w(y,z) - w(xy,z) + w(x,yz) - w(x,y)`` for all triples."""
        M = self.module
        Q = M.Q
        w = self.table
        mul = Q.mul
        if M.is_trivial:
            xw = np.broadcast_to(w[None, :, :, :], (Q.n,) + w.shape)
        else:
            xw = np.einsum("xij,yzj->xyzi", M.action, w)
        out = xw - w[mul]  # w(xy, z) at [x, y, z]
        out = out + w[np.arange(Q.n)[:, None, None], mul[None, :, :]]  # w(x, yz)
        out = out - w[:, :, None, :]
        return out % np.asarray(M.moduli, dtype=np.int64) if M.dim else out

    def is_cocycle(self) -> bool:
        return not self.defect().any()

    def cp_defect_pairs(self) -> list[tuple[int, int]]:
        """Commuting pairs where the CP condition fails (unordered, x < y)."""
        M = self.module
        Q = M.Q
        bad = []
        C = Q.commuting
        m = M.modulus
        for x in range(1, Q.n):
            for y in range(x + 1, Q.n):
                if not C[x, y]:
                    continue
                diff = (self.table[x, y] - self.table[y, x]) % np.asarray(M.moduli, dtype=np.int64)
                if M.is_trivial:
                    if diff.any():
                        bad.append((x, y))
                else:
                    R = M.cp_rows(x, y)
                    if ((R @ M.embed(diff)) % m).any():
                        bad.append((x, y))
        return bad

    def is_cp(self) -> bool:
        return not self.cp_defect_pairs()

    def to_json(self) -> dict:
        entries = []
        n = self.module.Q.n
        for x in range(1, n):
            for y in range(1, n):
                v = self.table[x, y]
                if v.any():
                    entries.append([x, y, [int(a) for a in v]])
        return {"modulus": self.module.modulus, "moduli": list(self.module.moduli), "entries": entries}

    @classmethod
    def from_json(cls, module: GModule, data) -> "Cocycle":
        if isinstance(data, str):
            data = json.loads(data)
        n, d = module.Q.n, module.dim
        t = np.zeros((n, n, d), dtype=np.int64)
        for x, y, coords in data["entries"]:
            if not (0 < x < n and 0 < y < n) or len(coords) != d:
                raise ValueError("cocycle entry out of range")
            t[x, y] = coords
        return cls(module, t)


def coboundary(module: GModule, phi) -> Cocycle:
    """``(d phi)(x, y) = x.phi(y) - phi(xy) + phi(x)`` for ``phi`` normalized at 1."""
    Q = module.Q
    phi = np.asarray(phi, dtype=np.int64).reshape(Q.n, module.dim)
    phi = phi - phi[0][None, :]
    if module.is_trivial:
        xphi = np.broadcast_to(phi[None, :, :], (Q.n, Q.n, module.dim))
    else:
        xphi = np.einsum("xij,yj->xyi", module.action, phi)
    t = xphi - phi[Q.mul] + phi[:, None, :]
    return Cocycle(module, t)


# --------------------------------------------------------------------------
# direct model


def _direct_guard(module: GModule, cap: int):
    if module.Q.n > cap or module.dim > DIRECT_DIM_CAP:
        raise CohomologyCapExceeded(
            f"direct cocycle system limited to |Q| <= {cap}, dim N <= {DIRECT_DIM_CAP}")


def _cocycle_row_blocks(module: GModule):
    """Cocycle-identity rows, one block per first argument ``x``."""
    Q, d, m = module.Q, module.dim, module.modulus
    n = Q.n
    coef = module.coef
    nu = (n - 1) * (n - 1) * d

    def u(x, y, i):
        return ((x - 1) * (n - 1) + (y - 1)) * d + i

    ys, zs = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    ys = ys.reshape(-1)
    zs = zs.reshape(-1)
    npairs = ys.size
    for x in range(1, n):
        block = np.zeros((npairs * d, nu), dtype=np.int64)
        xy = Q.mul[x, ys]
        yz = Q.mul[ys, zs]
        for i in range(d):
            r = np.arange(npairs) * d + i
            for j in range(d):
                c = int(coef[x, i, j])
                if c:
                    np.add.at(block, (r, u(ys, zs, j)), c)
            ok = xy != 0
            np.add.at(block, (r[ok], u(xy[ok], zs[ok], i)), -1)
            ok = yz != 0
            np.add.at(block, (r[ok], u(np.full(ok.sum(), x), yz[ok], i)), 1)
            np.add.at(block, (r, u(np.full(npairs, x), ys, i)), -1)
        yield block % m
    # torsion rows keep each coordinate inside its embedded subgroup
    if any(nn != m for nn in module.moduli):
        rows = []
        for idx in range(nu):
            i = idx % d
            if module.moduli[i] != m:
                row = np.zeros(nu, dtype=np.int64)
                row[idx] = module.moduli[i]
                rows.append(row)
        yield np.asarray(rows)


def _cp_rows(module: GModule) -> np.ndarray:
    Q, d, m = module.Q, module.dim, module.modulus
    n = Q.n
    nu = (n - 1) * (n - 1) * d
    rows = []
    C = Q.commuting

    def u(x, y, i):
        return ((x - 1) * (n - 1) + (y - 1)) * d + i

    for x in range(1, n):
        for y in range(x + 1, n):
            if not C[x, y]:
                continue
            if module.is_trivial:
                for i in range(d):
                    row = np.zeros(nu, dtype=np.int64)
                    row[u(x, y, i)] += 1
                    row[u(y, x, i)] -= 1
                    rows.append(row % m)
            else:
                for r in module.cp_rows(x, y):
                    row = np.zeros(nu, dtype=np.int64)
                    for j in range(d):
                        row[u(x, y, j)] += r[j]
                        row[u(y, x, j)] -= r[j]
                    if (row % m).any():
                        rows.append(row % m)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), nu)


def _embedded_ambient(module: GModule) -> ModuleBasis:
    n, d, m = module.Q.n, module.dim, module.modulus
    nu = (n - 1) * (n - 1) * d
    return howell_form(np.diag(np.tile(module.scale, (n - 1) * (n - 1))), m, ncols=nu)


@lru_cache(maxsize=64)
def _cocycle_equations(module: GModule) -> ModuleBasis:
    n, d, m = module.Q.n, module.dim, module.modulus
    nu = (n - 1) * (n - 1) * d
    return howell_accumulate(_cocycle_row_blocks(module), m, nu)


def two_cocycles(module: GModule, cap: int = DIRECT_ORDER_CAP) -> ModuleBasis:
    """Normalized 2-cocycles (embedded coordinates over the common modulus)."""
    _direct_guard(module, cap)
    n, d, m = module.Q.n, module.dim, module.modulus
    nu = (n - 1) * (n - 1) * d
    if d == 0 or m == 1 or n == 1:
        return zero_module(max(m, 2), nu)
    E = _cocycle_equations(module)
    return kernel_mod(E.rows, m, ncols=nu) if len(E.pivots) else _embedded_ambient(module)


def two_coboundaries(module: GModule, cap: int = DIRECT_ORDER_CAP) -> ModuleBasis:
    """Image of the coboundary map on normalized 1-cochains."""
    _direct_guard(module, cap)
    Q, d, m = module.Q, module.dim, module.modulus
    n = Q.n
    nu = (n - 1) * (n - 1) * d
    if d == 0 or m == 1 or n == 1:
        return zero_module(max(m, 2), nu)
    gens = []
    for x in range(1, n):
        for j in range(d):
            phi = np.zeros((n, d), dtype=np.int64)
            phi[x, j] = 1
            gens.append(coboundary(module, phi).vector())
    return howell_form(np.asarray(gens), m, ncols=nu)


def cp_two_cocycles(module: GModule, cap: int = DIRECT_ORDER_CAP) -> ModuleBasis:
    """Cocycles satisfying the commutativity-preserving condition on commuting pairs."""
    _direct_guard(module, cap)
    Q, d, m = module.Q, module.dim, module.modulus
    n = Q.n
    nu = (n - 1) * (n - 1) * d
    if d == 0 or m == 1 or n == 1:
        return zero_module(max(m, 2), nu)
    E = _cocycle_equations(module)
    cp = _cp_rows(module)
    rows = np.vstack([E.rows, cp]) if cp.size else E.rows
    return kernel_mod(rows, m, ncols=nu)


# --------------------------------------------------------------------------
# relation-module model (trivial coefficients Z/m)


class RelationModel:
    """``Hom(R/[F,R], Z/m)`` on Schreier generators, with the derived quotients.

    Attributes ``L`` (all invariant homs), ``L_cp`` (those killing commutators
    of commuting lifts), ``const`` (restrictions from ``Hom(F, Z/m)``) and
    ``ext`` (inflations of ``Ext(Q^ab, Z/m)``) are :class:`ModuleBasis` objects
    in ``(Z/m)^S`` with ``S`` the number of Schreier generators.
    """

    def __init__(self, Q: FiniteGroup, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        if Q.n > RELATION_ORDER_CAP:
            raise CohomologyCapExceeded(f"relation model limited to |Q| <= {RELATION_ORDER_CAP}")
        self.Q = Q
        self.m = m
        n = Q.n
        gens = list(Q.generators)
        k = len(gens)
        self.k = k
        order, parent, gen = Q.bfs_tree
        self.order = order
        self.parent = parent
        self.treegen = gen
        gid = np.full((n, k), -1, dtype=np.int64)
        tree = {(int(parent[y]), int(gen[y])) for y in range(1, n)}
        edges = []
        for x in range(n):
            for s in range(k):
                if (x, s) not in tree:
                    gid[x, s] = len(edges)
                    edges.append((x, s))
        self.gid = gid
        self.edges = edges
        self.S = len(edges)
        self.words = [Q.word(x) for x in range(n)]
        # exponent sums of the tree words
        E = np.zeros((n, k), dtype=np.int64)
        for y in order[1:]:
            E[y] = E[parent[y]]
            E[y, gen[y]] += 1
        self.E = E
        self._build()

    # walking words through the Cayley graph ---------------------------------
    def _walk(self, letters, base: int, vec: np.ndarray, sign: int = 1) -> int:
        """Accumulate Schreier coordinates of a word read from coset ``base``.

        ``letters`` holds ``(generator index, +1/-1)``.  Returns the end coset.
        """
        mul = self.Q.mul
        gens = self.Q.generators
        inv = self.Q.inv
        z = base
        for s, e in letters:
            if e > 0:
                g = self.gid[z, s]
                if g >= 0:
                    vec[g] += sign
                z = int(mul[z, gens[s]])
            else:
                z = int(mul[z, inv[gens[s]]])
                g = self.gid[z, s]
                if g >= 0:
                    vec[g] -= sign
        return z

    def _tree_letters(self, x: int, inverse: bool = False):
        w = self.words[x]
        if inverse:
            return [(s, -1) for s in reversed(w)]
        return [(s, 1) for s in w]

    def _build(self):
        Q, m, S, k = self.Q, self.m, self.S, self.k
        gens = Q.generators
        # conjugation invariance: theta(s^-1 w s) = theta(w) for each Schreier generator w
        rows = []
        for idx, (x, s) in enumerate(self.edges):
            word = self._tree_letters(x) + [(s, 1)] + self._tree_letters(int(Q.mul[x, gens[s]]), inverse=True)
            for t in range(k):
                v = np.zeros(S, dtype=np.int64)
                base = int(Q.inv[gens[t]])
                end = self._walk(word, base, v)
                if end != base:
                    raise AssertionError("Schreier word is not a relation")
                v[idx] -= 1
                if (v % m).any():
                    rows.append(v % m)
        self.invariance_rows = np.asarray(rows, dtype=np.int64).reshape(len(rows), S)
        self.L = kernel_mod(self.invariance_rows, m, ncols=S) if rows else howell_form(np.eye(S, dtype=np.int64), m)
        # commuting pairs
        cprows = []
        C = Q.commuting
        for x in range(1, Q.n):
            for y in range(x + 1, Q.n):
                if C[x, y]:
                    v = self.commutator_vector(x, y)
                    if (v % m).any():
                        cprows.append(v % m)
        self.cp_rows = np.asarray(cprows, dtype=np.int64).reshape(len(cprows), S)
        allrows = np.vstack([self.invariance_rows, self.cp_rows])
        self.L_cp = kernel_mod(allrows, m, ncols=S) if allrows.shape[0] else self.L
        # restrictions of homomorphisms F -> Z/m
        const = []
        for j in range(k):
            v = np.zeros(S, dtype=np.int64)
            for g, (x, s) in enumerate(self.edges):
                y = int(Q.mul[x, gens[s]])
                v[g] = self.E[x, j] + (1 if s == j else 0) - self.E[y, j]
            const.append(v % m)
        self.const = howell_form(np.asarray(const), m, ncols=S) if const else zero_module(m, S)
        # inflations of Ext(Q^ab, Z/m)
        ab = abelianization(Q)
        self.ab = ab
        ext = []
        for i, d in enumerate(ab.invariants):
            a = ab.coords[:, i]
            carry = ((a[:, None] + a[None, :]) >= d).astype(np.int64)
            ext.append(self.theta_of_table(carry))
        self.ext = howell_form(np.asarray(ext), m, ncols=S) if ext else zero_module(m, S)
        self.const_ext = module_sum(self.const, self.ext)
        for sub, sup, what in ((self.const, self.L_cp, "restrictions"), (self.ext, self.L_cp, "inflations"),
                               (self.L_cp, self.L, "CP part")):
            if not sup.contains_all(sub):
                raise AssertionError(f"{what} not contained where expected")

    def commutator_vector(self, x: int, y: int) -> np.ndarray:
        """Schreier coordinates of ``u_x^-1 u_y^-1 u_x u_y`` (a relation when x, y commute)."""
        v = np.zeros(self.S, dtype=np.int64)
        word = (self._tree_letters(x, inverse=True) + self._tree_letters(y, inverse=True)
                + self._tree_letters(x) + self._tree_letters(y))
        end = self._walk(word, 0, v)
        if end != 0:
            raise AssertionError("commutator word is not a relation")
        return v

    # conversions -----------------------------------------------------------
    def theta_of_table(self, table) -> np.ndarray:
        """Schreier coordinates of a normalized cocycle ``omega`` (n x n, values mod m)."""
        Q = self.Q
        w = np.asarray(table, dtype=np.int64).reshape(Q.n, Q.n)
        gens = Q.generators
        P = np.zeros(Q.n, dtype=np.int64)
        for y in self.order[1:]:
            p = self.parent[y]
            P[y] = P[p] + w[p, gens[self.treegen[y]]]
        out = np.zeros(self.S, dtype=np.int64)
        for g, (x, s) in enumerate(self.edges):
            xs = int(Q.mul[x, gens[s]])
            out[g] = P[x] + w[x, gens[s]] - P[xs]
        return out % self.m

    def table_of_theta(self, theta) -> np.ndarray:
        """Normalized cocycle table realizing ``theta`` (zero along tree edges)."""
        Q, n = self.Q, self.Q.n
        theta = np.asarray(theta, dtype=np.int64) % self.m
        c = np.zeros((n, self.k), dtype=np.int64)
        mask = self.gid >= 0
        c[mask] = theta[self.gid[mask]]
        w = np.zeros((n, n), dtype=np.int64)
        for y in self.order[1:]:
            p = self.parent[y]
            w[:, y] = w[:, p] + c[Q.mul[:, p], self.treegen[y]]
        return w % self.m

    def cocycle(self, theta) -> Cocycle:
        M = GModule.trivial(self.Q, [self.m])
        return Cocycle(M, self.table_of_theta(theta)[:, :, None])

    def theta(self, omega: Cocycle) -> np.ndarray:
        if omega.module.dim != 1 or omega.module.modulus != self.m:
            raise ValueError("cocycle must take values in Z/m")
        return self.theta_of_table(omega.table[:, :, 0])

    # quotients -------------------------------------------------------------
    @property
    def h2(self) -> FinAbGroup:
        return quotient_invariants(self.L, self.const)

    @property
    def h2_cp(self) -> FinAbGroup:
        return quotient_invariants(self.L_cp, self.const)

    @property
    def ext_image(self) -> FinAbGroup:
        return quotient_invariants(self.const_ext, self.const)

    @property
    def hom_b0(self) -> FinAbGroup:
        return quotient_invariants(self.L_cp, self.const_ext)

    @property
    def hom_m(self) -> FinAbGroup:
        return quotient_invariants(self.L, self.const_ext)

    @property
    def hom_m0(self) -> FinAbGroup:
        return quotient_invariants(self.L, self.L_cp)


_MODEL_CACHE: dict = {}


def relation_model(Q: FiniteGroup, m: int) -> RelationModel:
    key = (id(Q), m)
    hit = _MODEL_CACHE.get(key)
    if hit is not None and hit[0] is Q:
        return hit[1]
    model = RelationModel(Q, m)
    if len(_MODEL_CACHE) > 256:
        _MODEL_CACHE.clear()
    _MODEL_CACHE[key] = (Q, model)
    return model


# --------------------------------------------------------------------------
# cohomology groups


@dataclass
class CohomologyGroup:
    """``span / sub`` with coordinate maps to and from cocycles.

    For the direct model ``span`` is Z^2 (or Z^2_CP) and ``sub`` is B^2 in
    embedded cochain coordinates; for the relation model both live in
    Schreier coordinates.
    """

    module: GModule
    cp: bool
    method: str
    span: ModuleBasis
    sub: ModuleBasis
    quotient: FinAbGroup
    _model: RelationModel | None = field(default=None, repr=False)

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.quotient.invariants

    def order(self) -> int:
        return self.quotient.order()

    def cocycle(self, coords) -> Cocycle:
        v = self.quotient.lift(coords)
        if self.method == "relation":
            return self._model.cocycle(v)
        return Cocycle.from_vector(self.module, v)

    def _coordinates(self, omega: Cocycle) -> np.ndarray:
        if self.method == "relation":
            return self._model.theta(omega)
        return omega.vector()

    def classify(self, omega: Cocycle) -> tuple[int, ...]:
        return self.quotient.project(self._coordinates(omega))

    def contains(self, omega: Cocycle) -> bool:
        return self.span.contains(self._coordinates(omega))

    def is_coboundary(self, omega: Cocycle) -> bool:
        return self.sub.contains(self._coordinates(omega))

    @property
    def representatives(self) -> list[Cocycle]:
        out = []
        for i in range(len(self.invariants)):
            coords = [0] * len(self.invariants)
            coords[i] = 1
            out.append(self.cocycle(coords))
        return out


def cohomology_group(module: GModule, cp: bool = False, method: str = "auto") -> CohomologyGroup:
    """H^2(Q, N) (``cp=False``) or H^2_CP(Q, N) (``cp=True``)."""
    if method == "auto":
        method = "relation" if module.is_trivial and module.dim == 1 else "direct"
    if method == "relation":
        if not (module.is_trivial and module.dim == 1):
            raise ValueError("relation model needs trivial cyclic coefficients")
        m = module.modulus
        if m == 1:
            z = zero_module(2, 0)
            return CohomologyGroup(module, cp, "direct", z, z, FinAbGroup((), lambda v: (), lambda c: np.zeros(0)))
        R = relation_model(module.Q, m)
        span = R.L_cp if cp else R.L
        return CohomologyGroup(module, cp, "relation", span, R.const, quotient_invariants(span, R.const), R)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    Z = cp_two_cocycles(module) if cp else two_cocycles(module)
    B = two_coboundaries(module)
    if module.dim == 0 or module.modulus == 1 or module.Q.n == 1:
        return CohomologyGroup(module, cp, "direct", Z, B, FinAbGroup((), lambda v: (), lambda c: np.zeros(Z.ncols, dtype=np.int64)))
    return CohomologyGroup(module, cp, "direct", Z, B, quotient_invariants(Z, B))


# --------------------------------------------------------------------------
# UCT decomposition and multipliers


def ext_invariants(ab_invariants: Sequence[int], m: int) -> tuple[int, ...]:
    """Invariant factors of ``Ext(sum Z/d_i, Z/m) = sum Z/gcd(d_i, m)``."""
    return tuple(normalize_invariants([math.gcd(d, m) for d in ab_invariants]))


def hom_invariants(invariants: Sequence[int], m: int) -> tuple[int, ...]:
    """Invariant factors of ``Hom(sum Z/d_i, Z/m)``."""
    return tuple(normalize_invariants([math.gcd(d, m) for d in invariants]))


@dataclass
class UctDecomposition:
    m: int
    ext: FinAbGroup
    hom_b0: FinAbGroup
    hom_m: FinAbGroup
    hom_m0: FinAbGroup
    h2: FinAbGroup
    h2_cp: FinAbGroup
    model: RelationModel = field(repr=False)

    def section(self, coords) -> Cocycle:
        """A CP cocycle whose class maps to ``coords`` in ``Hom(B0, Z/m)``."""
        return self.model.cocycle(self.hom_b0.lift(coords))

    def as_dict(self) -> dict:
        return {
            "modulus": self.m,
            "ext": list(self.ext.invariants),
            "hom_b0": list(self.hom_b0.invariants),
            "hom_m": list(self.hom_m.invariants),
            "hom_m0": list(self.hom_m0.invariants),
            "h2": list(self.h2.invariants),
            "h2_cp": list(self.h2_cp.invariants),
        }


def uct_decomposition(Q: FiniteGroup, m: int | None = None) -> UctDecomposition:
    """Split the CP cohomology of trivial Z/m into its Ext and Hom(B0) parts."""
    m = Q.n if m is None else int(m)
    if m % Q.n:
        raise ValueError("modulus must be a multiple of |Q|")
    if Q.n == 1:
        triv = FinAbGroup(())
        return UctDecomposition(m, triv, triv, triv, triv, triv, triv, None)
    R = relation_model(Q, m)
    out = UctDecomposition(m, R.ext_image, R.hom_b0, R.hom_m, R.hom_m0, R.h2, R.h2_cp, R)
    expected_ext = ext_invariants(R.ab.invariants, m)
    if out.ext.invariants != expected_ext:
        raise AssertionError("inflation of Ext is not injective")
    if out.h2_cp.order() != out.ext.order() * out.hom_b0.order():
        raise AssertionError("|H2_CP| != |Ext| |Hom(B0)|")
    if out.h2.order() != out.ext.order() * out.hom_m.order():
        raise AssertionError("|H2| != |Ext| |Hom(M)|")
    if out.hom_m.order() != out.hom_b0.order() * out.hom_m0.order():
        raise AssertionError("|Hom(M)| != |Hom(B0)| |Hom(M0)|")
    return out


@dataclass(frozen=True)
class MultiplierReport:
    b0: tuple[int, ...]
    m: tuple[int, ...]
    m0: tuple[int, ...]
    path: str
    modulus: int

    def as_dict(self) -> dict:
        return {"B0": list(self.b0), "M": list(self.m), "M0": list(self.m0),
                "path": self.path, "modulus": self.modulus}


def multiplier_invariants(Q: FiniteGroup) -> MultiplierReport:
    """B0(Q), M(Q), M0(Q) read off the dual groups with coefficients Z/|Q|."""
    U = uct_decomposition(Q, Q.n)
    rep = MultiplierReport(U.hom_b0.invariants, U.hom_m.invariants, U.hom_m0.invariants,
                           "cohomological", U.m)
    if math.prod(rep.m) != math.prod(rep.b0) * math.prod(rep.m0):
        raise AssertionError("|M| != |B0| |M0|")
    return rep
