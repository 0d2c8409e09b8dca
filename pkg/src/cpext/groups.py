"""Finite groups as multiplication tables.

Groups are built from a small JSON-able spec (permutations, presentations,
Cayley tables, abelian invariants, direct and semidirect products).  Elements
are numbered breadth-first from the identity over the generator list, so every
downstream artifact indexed by elements is reproducible.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .linalg import smith_normal_form
from .todd_coxeter import EnumerationOverflow, enumerate_cosets

DEFAULT_ORDER_CAP = 512
DEFAULT_COSET_CAP = 20000
GENERATOR_SEARCH_CAP = 4
ABELIAN_SEARCH_CAP = 128


class GroupError(ValueError):
    """Malformed spec or a size cap hit while building a group."""


class CapExceeded(GroupError):
    pass


class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul[x, y]`` is the index of ``x*y``; the identity is index 0.
    """

    def __init__(self, mul, generators: Sequence[int], name: str = "", check: bool = True):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if n == 0 or not np.array_equal(mul[0], np.arange(n)) or not np.array_equal(mul[:, 0], np.arange(n)):
            raise GroupError("index 0 must be the identity")
        self.mul = mul
        self.mul.setflags(write=False)
        self.n = n
        self.generators = tuple(int(g) for g in generators)
        self.name = name
        inv = np.argmin(mul, axis=1)
        if not np.all(mul[np.arange(n), inv] == 0):
            raise GroupError("table has an element without inverse")
        self.inv = inv
        self.inv.setflags(write=False)
        if check:
            self._check()

    def _check(self):
        n = self.n
        for row in self.mul:
            if len(set(row.tolist())) != n:
                raise GroupError("table rows are not permutations")
        if n <= 256:
            m = self.mul
            # (x y) z == x (y z) over all triples, vectorized per x
            for x in range(n):
                if not np.array_equal(m[m[x]], m[x][m]):
                    raise GroupError("table is not associative")
        if len(self.closure(self.generators)) != n:
            raise GroupError("generators do not generate the group")

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.n})"

    @property
    def order(self) -> int:
        return self.n

    def m(self, *xs) -> int:
        """Product of the listed elements, left to right."""
        out = 0
        for x in xs:
            out = int(self.mul[out, x])
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, x])
        return out

    def comm(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        inv = self.inv
        return int(self.mul[self.mul[inv[x], inv[y]], self.mul[x, y]])

    def conj(self, x: int, g: int) -> int:
        """``x^g = g^-1 x g``."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    @cached_property
    def commutator_table(self) -> np.ndarray:
        m, inv = self.mul, self.inv
        out = m[m[inv][:, inv], m]
        out.setflags(write=False)
        return out

    @cached_property
    def commuting(self) -> np.ndarray:
        """Boolean matrix ``x*y == y*x``."""
        out = self.mul == self.mul.T
        out.setflags(write=False)
        return out

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``gens``."""
        gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        frontier = np.array([0], dtype=np.int64)
        if gens.size == 0:
            return np.array([0], dtype=np.int64)
        while frontier.size:
            nxt = np.unique(self.mul[frontier][:, gens])
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return np.nonzero(seen)[0]

    def is_subgroup(self, elems) -> bool:
        s = np.zeros(self.n, dtype=bool)
        s[list(elems)] = True
        e = np.nonzero(s)[0]
        return bool(s[0] and s[self.mul[np.ix_(e, e)]].all())

    def is_normal(self, elems) -> bool:
        s = np.zeros(self.n, dtype=bool)
        s[list(elems)] = True
        e = np.nonzero(s)[0]
        for g in self.generators:
            if not s[self.mul[self.mul[self.inv[g], e], g]].all():
                return False
        return True

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.n
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        pw = idx.copy()
        k = 1
        while (orders == 0).any():
            hit = (pw == 0) & (orders == 0)
            orders[hit] = k
            pw = self.mul[pw, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    def exponent(self) -> int:
        return math.lcm(*self.element_orders.tolist())

    def is_abelian(self) -> bool:
        return bool(self.commuting.all())

    @cached_property
    def center(self) -> np.ndarray:
        return np.nonzero(self.commuting[:, list(self.generators)].all(axis=1))[0] if self.generators else np.arange(self.n)

    @cached_property
    def commutator_set(self) -> np.ndarray:
        return np.unique(self.commutator_table)

    @cached_property
    def derived(self) -> np.ndarray:
        return self.closure(self.commutator_set)

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        n = self.n
        label = np.full(n, -1, dtype=np.int64)
        classes = []
        gens = list(self.generators)
        for x in range(n):
            if label[x] >= 0:
                continue
            cid = len(classes)
            label[x] = cid
            orbit = [x]
            q = [x]
            while q:
                y = q.pop()
                for g in gens:
                    z = self.conj(y, g)
                    if label[z] < 0:
                        label[z] = cid
                        orbit.append(z)
                        q.append(z)
            classes.append(tuple(sorted(orbit)))
        return classes

    def centralizer(self, x: int) -> np.ndarray:
        return np.nonzero(self.commuting[x])[0]

    @cached_property
    def bfs_tree(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(order, parent, gen)``: BFS order over generators and tree edges.

        For ``y != 0``: ``y == mul[parent[y], generators[gen[y]]]``.
        """
        n = self.n
        parent = np.full(n, -1, dtype=np.int64)
        gen = np.full(n, -1, dtype=np.int64)
        order = [0]
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for k, s in enumerate(self.generators):
                y = int(self.mul[x, s])
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    gen[y] = k
                    order.append(y)
        return np.asarray(order, dtype=np.int64), parent, gen

    def word(self, x: int) -> list[int]:
        """Generator-index word for ``x`` along the BFS tree."""
        _, parent, gen = self.bfs_tree
        out = []
        while x != 0:
            out.append(int(gen[x]))
            x = int(parent[x])
        return out[::-1]

    @cached_property
    def structure(self) -> "StructureReport":
        return structure_report(self)

    def to_cayley_spec(self) -> dict:
        return {"type": "cayley", "table": self.mul.tolist()}


@dataclass(frozen=True)
class StructureReport:
    center: tuple[int, ...]
    derived: tuple[int, ...]
    commutator_set: tuple[int, ...]
    conjugacy_classes: tuple[tuple[int, ...], ...]
    abelianization_invariants: tuple[int, ...]
    commuting_pairs: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "center_order": len(self.center),
            "derived_order": len(self.derived),
            "commutator_set_size": len(self.commutator_set),
            "class_count": len(self.conjugacy_classes),
            "abelianization": list(self.abelianization_invariants),
        }


def structure_report(G: FiniteGroup) -> StructureReport:
    ab = abelianization(G)
    pairs = tuple(zip(*[a.tolist() for a in np.nonzero(G.commuting)]))
    rep = StructureReport(
        center=tuple(G.center.tolist()),
        derived=tuple(G.derived.tolist()),
        commutator_set=tuple(G.commutator_set.tolist()),
        conjugacy_classes=tuple(G.conjugacy_classes),
        abelianization_invariants=tuple(ab.invariants),
        commuting_pairs=pairs,
    )
    if sum(len(c) for c in rep.conjugacy_classes) != G.n:
        raise AssertionError("classes do not partition the group")
    if math.prod(rep.abelianization_invariants) * len(rep.derived) != G.n:
        raise AssertionError("abelianization order mismatch")
    return rep


def commuting_probability(G: FiniteGroup) -> Fraction:
    """Exact commuting probability, computed by pair count and by class count."""
    pairs = int(G.commuting.sum())
    by_pairs = Fraction(pairs, G.n * G.n)
    by_classes = Fraction(len(G.conjugacy_classes), G.n)
    if by_pairs != by_classes:
        raise AssertionError("pair count and class count disagree")
    return by_pairs


# --------------------------------------------------------------------------
# abelianization with explicit coordinates


@dataclass(frozen=True)
class Abelianization:
    invariants: tuple[int, ...]
    coords: np.ndarray  # (n, k): coordinates of the image of each element


def abelianization(G: FiniteGroup) -> Abelianization:
    """Invariant factors of G/[G,G] and a coordinate map G -> sum Z/d_i.

    The relation lattice of the generator images is read off the Cayley graph
    of G/[G,G] (one vector per non-tree edge) and diagonalized over Z.
    """
    n = G.n
    D = G.derived
    if len(D) == n:
        return Abelianization((), np.zeros((n, 0), dtype=np.int64))
    # coset labels of [G,G]
    label = np.full(n, -1, dtype=np.int64)
    reps = []
    for x in range(n):
        if label[x] < 0:
            label[G.mul[x, D]] = len(reps)
            reps.append(x)
    k = len(G.generators)
    gl = [int(label[s]) for s in G.generators]
    na = len(reps)
    # multiplication of cosets by generator images
    step = np.array([[label[G.mul[r, s]] for s in G.generators] for r in reps], dtype=np.int64)
    vec = np.full((na, k), 0, dtype=np.int64)
    seen = np.zeros(na, dtype=bool)
    root = int(label[0])
    seen[root] = True
    order = [root]
    tree = set()
    head = 0
    while head < len(order):
        a = order[head]
        head += 1
        for j in range(k):
            b = int(step[a, j])
            if not seen[b]:
                seen[b] = True
                vec[b] = vec[a]
                vec[b, j] += 1
                tree.add((a, j))
                order.append(b)
    rels = []
    for a in range(na):
        for j in range(k):
            if (a, j) in tree:
                continue
            r = vec[a].copy()
            r[j] += 1
            r -= vec[int(step[a, j])]
            if r.any():
                rels.append(r.tolist())
    snf = smith_normal_form(rels if rels else [[0] * k])
    d = list(snf.invariants) + [0] * (k - len(snf.invariants))
    if 0 in d:
        raise AssertionError("abelianization should be finite")
    V = np.array(snf.V, dtype=object)
    keep = [i for i in range(k) if d[i] > 1]
    inv = tuple(d[i] for i in keep)
    cv = (vec.astype(object) @ V)
    coords_cosets = np.array([[int(cv[a, i]) % d[i] for i in keep] for a in range(na)], dtype=np.int64).reshape(na, len(keep))
    coords = coords_cosets[label]
    if math.prod(inv) != na:
        raise AssertionError("abelianization invariants inconsistent")
    return Abelianization(inv, coords)


# --------------------------------------------------------------------------
# building


def _bfs_number(identity: Hashable, gens: Sequence[Hashable], mul: Callable, cap: int):
    """Breadth-first numbering of the closure of ``gens`` under right multiplication."""
    elems = [identity]
    index = {identity: 0}
    parent = [-1]
    pgen = [-1]
    right = [[] for _ in gens]
    head = 0
    while head < len(elems):
        x = elems[head]
        for k, g in enumerate(gens):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                index[y] = j
                elems.append(y)
                parent.append(head)
                pgen.append(k)
            right[k].append(j)
        head += 1
    n = len(elems)
    R = np.array(right, dtype=np.int64).reshape(len(gens), n)
    table = np.zeros((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for y in range(1, n):
        table[:, y] = R[pgen[y]][table[:, parent[y]]]
    return elems, table, [index[mul(identity, g)] for g in gens]


def _renumber(table: np.ndarray, gens: Sequence[int], name: str, cap: int = DEFAULT_ORDER_CAP,
              prune: bool = True) -> tuple[FiniteGroup, np.ndarray]:
    """Renumber a group table (identity at 0) BFS-wise from ``gens``.

    Returns the new group and the array sending old indices to new ones.
    """
    gens = [int(g) for g in gens]
    if prune:
        gens = _irredundant(table, gens)
    elems, newtab, gidx = _bfs_number(0, gens, lambda a, b: int(table[a, b]), cap + 1)
    if len(elems) != table.shape[0]:
        raise GroupError("malformed spec: generators do not generate the group")
    old_to_new = np.empty(len(elems), dtype=np.int64)
    old_to_new[np.asarray(elems, dtype=np.int64)] = np.arange(len(elems))
    return FiniteGroup(newtab, gidx, name=name), old_to_new


def _from_table(table, gens, name, cap=DEFAULT_ORDER_CAP, prune=True) -> FiniteGroup:
    return _renumber(table, gens, name, cap, prune)[0]


def _closure_size(table, gens):
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def _irredundant(table, gens):
    n = table.shape[0]
    out = []
    for g in gens:
        if g != 0 and g not in out:
            out.append(g)
    i = 0
    while i < len(out):
        rest = out[:i] + out[i + 1:]
        if _closure_size(table, rest) == n:
            out = rest
        else:
            i += 1
    return out


def _greedy_generators(table) -> list[int]:
    n = table.shape[0]
    gens: list[int] = []
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    while not inside.all():
        g = int(np.argmin(inside))
        gens.append(g)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(table[x, s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        inside[:] = False
        inside[list(seen)] = True
    return gens


def group_from_table(table, name: str = "", generators: Sequence[int] | None = None) -> FiniteGroup:
    """Group from an explicit Cayley table (any identity position)."""
    T = np.asarray(table, dtype=np.int64)
    n = T.shape[0]
    if T.ndim != 2 or T.shape != (n, n):
        raise GroupError("malformed spec: Cayley table must be square")
    if T.min() < 0 or T.max() >= n:
        raise GroupError("malformed spec: table entries out of range")
    ids = [e for e in range(n) if np.array_equal(T[e], np.arange(n))]
    if len(ids) != 1 or not np.array_equal(T[:, ids[0]], np.arange(n)):
        raise GroupError("malformed spec: no two-sided identity")
    e = ids[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0  # relabel so the identity is 0
    inv = np.argsort(perm)
    T0 = inv[T[np.ix_(perm, perm)]]
    for row in T0:
        if len(set(row.tolist())) != n:
            raise GroupError("malformed spec: rows are not permutations")
    if n <= 256:
        for x in range(n):
            if not np.array_equal(T0[T0[x]], T0[x][T0]):
                raise GroupError("malformed spec: table is not associative")
    gens = _greedy_generators(T0) if generators is None else [int(inv[g]) for g in generators]
    return _from_table(T0, gens, name, cap=max(n, DEFAULT_ORDER_CAP))


def group_from_permutations(perms: Sequence[Sequence[int]], name: str = "", cap: int = DEFAULT_ORDER_CAP,
                            one_based: bool = True) -> FiniteGroup:
    """Permutation group; products compose left to right (``xy`` = first x, then y)."""
    if not perms:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), [], name=name)
    deg = len(perms[0])
    gens = []
    for p in perms:
        if len(p) != deg:
            raise GroupError("malformed spec: permutations on different domains")
        q = tuple(int(v) - (1 if one_based else 0) for v in p)
        if sorted(q) != list(range(deg)):
            raise GroupError("malformed spec: not a permutation")
        gens.append(q)
    ident = tuple(range(deg))

    def mul(a, b):
        return tuple(b[i] for i in a)

    elems, table, _ = _bfs_number(ident, gens, mul, cap)
    gidx = [elems.index(g) for g in gens]
    return _from_table(table, gidx, name, cap)


def letters_from_string(word: str, ngens: int) -> list[int]:
    """Relator alphabet: ``a..z`` generators, ``A..Z`` inverses."""
    out = []
    for ch in word:
        if "a" <= ch <= "z":
            g = ord(ch) - ord("a")
            letter = 2 * g
        elif "A" <= ch <= "Z":
            g = ord(ch) - ord("A")
            letter = 2 * g + 1
        else:
            raise GroupError(f"malformed spec: bad relator letter {ch!r}")
        if g >= ngens:
            raise GroupError(f"malformed spec: relator uses undeclared generator {ch!r}")
        out.append(letter)
    return out


def group_from_presentation(ngens: int, relators: Sequence, name: str = "",
                            coset_cap: int = DEFAULT_COSET_CAP) -> FiniteGroup:
    rels = [letters_from_string(r, ngens) if isinstance(r, str) else list(r) for r in relators]
    try:
        table = enumerate_cosets(ngens, rels, cap=coset_cap)
    except EnumerationOverflow as exc:
        raise CapExceeded("presentation too large") from exc
    mul, gens = regular_table(table)
    return _from_table(mul, gens, name, cap=max(table.shape[0], 1))


def regular_table(coset_table) -> tuple[np.ndarray, list[int]]:
    """Cayley table of the group acting regularly through a coset table.

    Elements keep their coset numbers (coset 0 is the identity).  Right
    multiplication by generator ``g`` is column ``2g``.  Returns the table and
    the elements represented by the generators.
    """
    T = np.asarray(coset_table, dtype=np.int64)
    n = T.shape[0]
    ngens = T.shape[1] // 2
    mul = np.full((n, n), -1, dtype=np.int64)
    mul[:, 0] = np.arange(n)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            for g in range(ngens):
                y = int(T[p, 2 * g])
                if not done[y]:
                    done[y] = True
                    mul[:, y] = T[mul[:, p], 2 * g]
                    nxt.append(y)
        frontier = nxt
    if not done.all():
        raise GroupError("coset table is not transitive")
    return mul, [int(T[0, 2 * g]) for g in range(ngens)]


def abelian_group(invariants: Sequence[int], name: str = "") -> FiniteGroup:
    inv = [int(d) for d in invariants]
    if any(d < 1 for d in inv):
        raise GroupError("malformed spec: invariants must be positive")
    inv = [d for d in inv if d > 1]
    k = len(inv)
    ident = (0,) * k
    gens = [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def mul(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, inv))

    cap = max(DEFAULT_ORDER_CAP, math.prod(inv))
    elems, table, gidx = _bfs_number(ident, gens, mul, cap + 1)
    return FiniteGroup(table, gidx, name=name or "x".join(f"C{d}" for d in inv) or "C1")


def cyclic_group(n: int) -> FiniteGroup:
    return abelian_group([n], name=f"C{n}")


def direct_product(*factors: FiniteGroup, name: str = "", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    k = len(factors)
    ident = (0,) * k
    gens = []
    for i, F in enumerate(factors):
        for g in F.generators:
            gens.append(tuple(g if j == i else 0 for j in range(k)))

    def mul(a, b):
        return tuple(int(F.mul[x, y]) for F, x, y in zip(factors, a, b))

    elems, table, gidx = _bfs_number(ident, gens, mul, cap + 1)
    return _from_table(table, gidx, name or " x ".join(F.name for F in factors), cap)


def semidirect_product(K: FiniteGroup, Q: FiniteGroup, action: Sequence[Sequence[int]], name: str = "",
                       cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``K ⋊ Q`` with ``(k1,q1)(k2,q2) = (k1 * q1(k2), q1 q2)``.

    ``action[i]`` lists the images of the elements of ``K`` under the i-th
    generator of ``Q``; it must be an automorphism and the assignment must
    extend to a homomorphism ``Q -> Aut(K)``.
    """
    if len(action) != len(Q.generators):
        raise GroupError("malformed spec: one action per quotient generator required")
    acts = []
    for a in action:
        a = np.asarray(a, dtype=np.int64)
        if sorted(a.tolist()) != list(range(K.n)):
            raise GroupError("malformed spec: action is not a permutation of the kernel")
        if not np.array_equal(a[K.mul], K.mul[np.ix_(a, a)]):
            raise GroupError("malformed spec: action is not an automorphism")
        acts.append(a)
    phi = _extend_action(Q, acts, K.n)
    ident = (0, 0)
    gens = [(g, 0) for g in K.generators] + [(0, q) for q in Q.generators]

    def mul(a, b):
        return (int(K.mul[a[0], phi[a[1]][b[0]]]), int(Q.mul[a[1], b[1]]))

    elems, table, gidx = _bfs_number(ident, gens, mul, cap + 1)
    if len(elems) != K.n * Q.n:
        raise GroupError("malformed spec: semidirect product has wrong order")
    return _from_table(table, gidx, name or f"({K.name}) : ({Q.name})", cap)


def _extend_action(Q: FiniteGroup, acts, kernel_order: int):
    """Extend generator actions to all of Q, checking well-definedness."""
    order, parent, gen = Q.bfs_tree
    phi = [None] * Q.n
    phi[0] = np.arange(kernel_order)
    for y in order[1:]:
        # phi(p s) = phi(p) o phi(s), composed as index arrays
        phi[y] = phi[parent[y]][acts[gen[y]]]
    for x in range(Q.n):
        for k, s in enumerate(Q.generators):
            if not np.array_equal(phi[Q.mul[x, s]], phi[x][acts[k]]):
                raise GroupError("malformed spec: action does not define a homomorphism")
    return phi


def build_group(spec: Any, name: str = "", order_cap: int = DEFAULT_ORDER_CAP,
                coset_cap: int = DEFAULT_COSET_CAP) -> FiniteGroup:
    """Build a :class:`FiniteGroup` from a spec dict (see README for the format)."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "type" not in spec:
        raise GroupError("malformed spec: expected an object with a 'type' field")
    kind = spec["type"]
    name = name or spec.get("name", "")
    try:
        if kind == "permutation":
            return group_from_permutations(spec["generators"], name=name, cap=order_cap)
        if kind == "presentation":
            ngens = int(spec["generators"])
            return group_from_presentation(ngens, spec.get("relators", []), name=name, coset_cap=coset_cap)
        if kind == "cayley":
            return group_from_table(spec["table"], name=name)
        if kind == "abelian":
            G = abelian_group(spec["invariants"], name=name)
            if G.n > order_cap:
                raise CapExceeded(f"group order exceeds cap {order_cap}")
            return G
        if kind == "direct_product":
            factors = [build_group(f, order_cap=order_cap, coset_cap=coset_cap) for f in spec["factors"]]
            return direct_product(*factors, name=name, cap=order_cap)
        if kind == "semidirect":
            K = build_group(spec["kernel"], order_cap=order_cap, coset_cap=coset_cap)
            Q = build_group(spec["quotient"], order_cap=order_cap, coset_cap=coset_cap)
            return semidirect_product(K, Q, spec["action"], name=name, cap=order_cap)
    except (KeyError, TypeError) as exc:
        raise GroupError(f"malformed spec: {exc}") from exc
    raise GroupError(f"malformed spec: unknown type {kind!r}")


# --------------------------------------------------------------------------
# subgroups and quotients


def subgroup(G: FiniteGroup, elems: Iterable[int], name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """The subgroup on ``elems`` as its own group, plus the embedding array."""
    elems = sorted(set(int(e) for e in elems))
    if not G.is_subgroup(elems):
        raise GroupError("not a subgroup")
    local = {e: i for i, e in enumerate(elems)}
    T = np.array([[local[int(G.mul[a, b])] for b in elems] for a in elems], dtype=np.int64)
    H, old_to_new = _renumber(T, _greedy_generators(T), name, cap=max(len(elems), 1))
    emb = np.empty(H.n, dtype=np.int64)
    emb[old_to_new] = np.asarray(elems, dtype=np.int64)
    return H, emb


def quotient_group(G: FiniteGroup, N: Iterable[int], name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` for a normal subgroup ``N``, plus the projection array."""
    N = np.asarray(sorted(set(int(x) for x in N)), dtype=np.int64)
    if not (G.is_subgroup(N) and G.is_normal(N)):
        raise GroupError("not a normal subgroup")
    label = np.full(G.n, -1, dtype=np.int64)
    reps = []
    for x in range(G.n):
        if label[x] < 0:
            label[G.mul[x, N]] = len(reps)
            reps.append(x)
    T = np.array([[label[G.mul[a, b]] for b in reps] for a in reps], dtype=np.int64)
    gens = [int(label[g]) for g in G.generators]
    Q, old_to_new = _renumber(T, gens, name, cap=max(len(reps), 1))
    return Q, old_to_new[label]


def center_quotient(G: FiniteGroup):
    return quotient_group(G, G.center)


# --------------------------------------------------------------------------
# structural searches


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_group_prime(G: FiniteGroup) -> int | None:
    ps = prime_factors(G.n)
    return ps[0] if len(ps) == 1 else None


def frattini_subgroup_pgroup(G: FiniteGroup, p: int) -> np.ndarray:
    pth = np.unique(_powers(G, p))
    return G.closure(np.concatenate([G.derived, pth]))


def _powers(G, k):
    idx = np.arange(G.n)
    pw = np.zeros(G.n, dtype=np.int64)
    for _ in range(k):
        pw = G.mul[pw, idx]
    return pw


def minimal_generator_count(G: FiniteGroup, search_cap: int = GENERATOR_SEARCH_CAP) -> int:
    """Least size of a generating set.

    For p-groups this is the rank of the Frattini quotient; a lifted basis is
    checked to generate.  Other groups use a subset search up to ``search_cap``
    with the first element restricted to conjugacy-class representatives.
    """
    if G.n == 1:
        return 0
    p = p_group_prime(G)
    if p is not None:
        Phi = frattini_subgroup_pgroup(G, p)
        r = round(math.log(G.n // len(Phi), p))
        if p ** r * len(Phi) != G.n:
            raise AssertionError("Frattini quotient order is not a prime power")
        if G.n <= 64:
            # lift a basis of G/Phi greedily and check it generates G
            chosen: list[int] = []
            span = set(Phi.tolist())
            for x in range(G.n):
                if x not in span:
                    chosen.append(x)
                    span = set(G.closure(chosen + Phi.tolist()).tolist())
                if len(span) == G.n:
                    break
            if len(chosen) != r or len(G.closure(chosen)) != G.n:
                raise AssertionError("Frattini rank cross-check failed")
        return r
    reps = [c[0] for c in G.conjugacy_classes if c[0] != 0]
    for k in range(1, search_cap + 1):
        for first in reps:
            for rest in itertools.combinations(range(1, G.n), k - 1):
                if len(G.closure((first,) + rest)) == G.n:
                    return k
    raise CapExceeded("generator search cap exceeded")


def maximal_abelian_subgroups(G: FiniteGroup, cap: int = ABELIAN_SEARCH_CAP) -> list[tuple[int, ...]]:
    """Maximal abelian subgroups as maximal cliques of the commuting graph."""
    import networkx as nx

    if G.n > cap:
        raise CapExceeded(f"abelian subgroup search limited to order {cap}")
    Z = set(G.center.tolist())
    rest = [x for x in range(G.n) if x not in Z]
    if not rest:
        return [tuple(range(G.n))]
    graph = nx.Graph()
    graph.add_nodes_from(rest)
    C = G.commuting
    for i, x in enumerate(rest):
        for y in rest[i + 1:]:
            if C[x, y]:
                graph.add_edge(x, y)
    out = []
    for clique in nx.find_cliques(graph):
        S = tuple(sorted(set(clique) | Z))
        if not G.is_subgroup(S):
            raise AssertionError("maximal commuting set is not a subgroup")
        out.append(S)
    return sorted(out)


def normal_subgroups_with_cyclic_quotient(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All normal S with G/S cyclic, as kernels of characters of G/[G,G]."""
    ab = abelianization(G)
    inv = ab.invariants
    if not inv:
        return [tuple(range(G.n))]
    e = inv[-1]
    seen = set()
    out = []
    for c in itertools.product(*[range(d) for d in inv]):
        # chi(x) = sum c_i * coord_i * (e / d_i) mod e
        w = np.array([ci * (e // d) for ci, d in zip(c, inv)], dtype=np.int64)
        vals = (ab.coords @ w) % e
        S = tuple(np.nonzero(vals == 0)[0].tolist())
        if S not in seen:
            seen.add(S)
            out.append(S)
    return sorted(out, key=lambda s: (-len(s), s))


def group_summary(G: FiniteGroup) -> dict:
    rep = G.structure
    d = {"name": G.name, "order": G.n, "exponent": G.exponent(), "abelian": G.is_abelian()}
    d.update(rep.as_dict())
    cp = commuting_probability(G)
    d["commuting_probability"] = f"{cp.numerator}/{cp.denominator}"
    return d
