"""Isomorphism, automorphisms and isoclinism for small groups and extensions.

Everything is a backtracking search over images of a small generating set.
Isoclinism never searches the derived-subgroup map: it is forced by the
central-quotient map on commutators and only checked for well-definedness.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .groups import CapExceeded, FiniteGroup, center_quotient, quotient_group

ISO_ORDER_CAP = 128
AUT_ORDER_CAP = 64
GENERATOR_CAP = 4


# --------------------------------------------------------------------------
# isomorphisms


def _profile(G: FiniteGroup) -> tuple:
    orders = Counter(G.element_orders.tolist())
    classes = Counter(len(c) for c in G.conjugacy_classes)
    return (G.n, tuple(sorted(orders.items())), tuple(sorted(classes.items())), len(G.center), len(G.derived))


def _class_size(G: FiniteGroup) -> np.ndarray:
    out = np.zeros(G.n, dtype=np.int64)
    for c in G.conjugacy_classes:
        out[np.asarray(c)] = len(c)
    return out


def _small_generating_set(G: FiniteGroup) -> list[int]:
    """Few generators, preferring rare (order, class size) labels."""
    if G.n == 1:
        return []
    cs = _class_size(G)
    label = list(zip(G.element_orders.tolist(), cs.tolist()))
    freq = Counter(label)
    ranked = sorted(range(1, G.n), key=lambda x: (freq[label[x]], -G.element_orders[x], x))
    gens = list(G.generators)
    best = gens
    # greedy: add the rarest element that enlarges the closure
    chosen: list[int] = []
    span = {0}
    for x in ranked:
        if x in span:
            continue
        chosen.append(x)
        span = set(G.closure(chosen).tolist())
        if len(span) == G.n:
            break
    if len(chosen) <= len(best):
        best = chosen
    return best


def _extend(G: FiniteGroup, H: FiniteGroup, gens, imgs):
    """Map on <gens> determined by gens -> imgs, or None if not an injective hom."""
    img = np.full(G.n, -1, dtype=np.int64)
    img[0] = 0
    used = np.zeros(H.n, dtype=bool)
    used[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            ix = int(img[x])
            for g, h in zip(gens, imgs):
                y = int(G.mul[x, g])
                v = int(H.mul[ix, h])
                if img[y] < 0:
                    if used[v]:
                        return None
                    img[y] = v
                    used[v] = True
                    nxt.append(y)
                elif img[y] != v:
                    return None
        frontier = nxt
    return img


def iter_isomorphisms(G: FiniteGroup, H: FiniteGroup, gens=None) -> Iterator[np.ndarray]:
    """All isomorphisms G -> H as element maps, in lexicographic order of generator images."""
    if G.n != H.n:
        return
    if G.n > ISO_ORDER_CAP:
        raise CapExceeded(f"isomorphism search limited to order {ISO_ORDER_CAP}")
    if _profile(G) != _profile(H):
        return
    if G.n == 1:
        yield np.zeros(1, dtype=np.int64)
        return
    gens = list(gens) if gens is not None else _small_generating_set(G)
    if len(gens) > GENERATOR_CAP:
        raise CapExceeded(f"generator cap exceeded ({len(gens)} > {GENERATOR_CAP})")
    csG, csH = _class_size(G), _class_size(H)
    oG, oH = G.element_orders, H.element_orders
    cands = [np.nonzero((oH == oG[g]) & (csH == csG[g]))[0].tolist() for g in gens]

    def rec(i, imgs):
        if i == len(gens):
            m = _extend(G, H, gens, imgs)
            if m is not None and (m >= 0).all():
                yield m
            return
        for h in cands[i]:
            if h in imgs:
                continue
            trial = imgs + [h]
            if i + 1 < len(gens) and _extend(G, H, gens[: i + 1], trial) is None:
                continue
            yield from rec(i + 1, trial)

    yield from rec(0, [])


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> tuple[bool, np.ndarray | None]:
    for m in iter_isomorphisms(G, H):
        return True, m
    return False, None


@dataclass
class AutGroup:
    group: FiniteGroup
    maps: list

    @property
    def order(self) -> int:
        return len(self.maps)

    def is_closed(self) -> bool:
        keys = {m.tobytes() for m in self.maps}
        return all(a[b].tobytes() in keys for a in self.maps for b in self.maps)


def automorphisms(G: FiniteGroup) -> AutGroup:
    if G.n > AUT_ORDER_CAP:
        raise CapExceeded(f"automorphism search limited to order {AUT_ORDER_CAP}")
    return AutGroup(G, list(iter_isomorphisms(G, G)))


# --------------------------------------------------------------------------
# isoclinism


@dataclass
class IsoclinismWitness:
    alpha: np.ndarray  # central quotient of G -> central quotient of H
    beta: dict  # derived subgroup of G -> derived subgroup of H

    def as_dict(self) -> dict:
        return {"alpha": self.alpha.tolist(), "beta": {str(k): v for k, v in sorted(self.beta.items())}}


def _lifts(proj: np.ndarray, nq: int) -> np.ndarray:
    lift = np.full(nq, -1, dtype=np.int64)
    for x in range(len(proj) - 1, -1, -1):
        lift[proj[x]] = x
    return lift


def _forced_beta(G, H, liftG, liftH, alpha):
    """beta([x, y]) = [alpha x, alpha y] if well defined and an isomorphism G' -> H'."""
    a = np.asarray(liftG)
    b = liftH[np.asarray(alpha)]
    cg = G.commutator_table[np.ix_(a, a)].reshape(-1)
    ch = H.commutator_table[np.ix_(b, b)].reshape(-1)
    beta = np.full(G.n, -1, dtype=np.int64)
    beta[cg] = ch
    if not np.array_equal(beta[cg], ch):
        return None
    # extend from a generating subset of commutators and compare
    vals = np.unique(cg)
    gens = []
    span = {0}
    for v in vals.tolist():
        if v not in span:
            gens.append(v)
            span = set(G.closure(gens).tolist())
    full = _extend(G, H, gens, [int(beta[g]) for g in gens]) if gens else np.full(G.n, -1)
    if full is None:
        return None
    if gens and not np.array_equal(full[vals], beta[vals]):
        return None
    D = G.derived
    img = full[D] if gens else np.zeros(1, dtype=np.int64)
    if len(set(img.tolist())) != len(H.derived) or len(D) != len(H.derived):
        return None
    if not set(img.tolist()) <= set(H.derived.tolist()):
        return None
    return {int(x): int(y) for x, y in zip(D.tolist(), img.tolist())}


def are_isoclinic(G: FiniteGroup, H: FiniteGroup) -> tuple[bool, IsoclinismWitness | None]:
    if G.n // len(G.center) != H.n // len(H.center) or len(G.derived) != len(H.derived):
        return False, None
    Gb, pG = center_quotient(G)
    Hb, pH = center_quotient(H)
    if Gb.n > 64 or Hb.n > 64:
        raise CapExceeded("central quotients limited to order 64")
    liftG, liftH = _lifts(pG, Gb.n), _lifts(pH, Hb.n)
    for alpha in iter_isomorphisms(Gb, Hb):
        beta = _forced_beta(G, H, liftG, liftH, alpha)
        if beta is not None:
            return True, IsoclinismWitness(alpha, beta)
    return False, None


def _extension_view(e):
    """(G, projection, Q) for extension data or an explicit triple."""
    if isinstance(e, tuple):
        return e
    return e.G, e.projection, e.Q


def extensions_isoclinic(e1, e2) -> bool:
    """Search eta: Q1 -> Q2 with forced xi on commutators of lifts."""
    G1, p1, Q1 = _extension_view(e1)
    G2, p2, Q2 = _extension_view(e2)
    if Q1.n != Q2.n or len(G1.derived) != len(G2.derived):
        return False
    l1, l2 = _lifts(np.asarray(p1), Q1.n), _lifts(np.asarray(p2), Q2.n)
    for eta in iter_isomorphisms(Q1, Q2):
        if _forced_beta(G1, G2, l1, l2, eta) is not None:
            return True
    return False


def quotient_extension(e, L):
    """Extension ``G/L -> Q`` for L inside the kernel of ``e``."""
    G, proj, Q = _extension_view(e)
    Gq, pq = quotient_group(G, L)
    newproj = np.zeros(Gq.n, dtype=np.int64)
    newproj[pq] = np.asarray(proj)
    return Gq, newproj, Q


# --------------------------------------------------------------------------
# isoclinism classes of central CP extensions


@dataclass
class ClassCount:
    count: int
    b0: tuple[int, ...]
    subgroup_count: int
    orbits: list
    aut_order: int

    def as_dict(self) -> dict:
        return {"count": self.count, "B0": list(self.b0), "subgroups": self.subgroup_count,
                "orbit_sizes": [len(o) for o in self.orbits], "aut_order": self.aut_order,
                "representatives": [sorted(min(o, key=lambda s: sorted(s))) for o in self.orbits]}


def _aut_action_on_hom_b0(Q: FiniteGroup, e: int, auts):
    """Matrices of [omega] -> [omega o (phi x phi)] on Hom(B0, Z/e) coordinates."""
    from .cohomology import relation_model

    R = relation_model(Q, e)
    X = R.hom_b0
    basis = []
    for i in range(len(X.invariants)):
        c = [0] * len(X.invariants)
        c[i] = 1
        basis.append(R.table_of_theta(X.lift(c)))
    mats = []
    seen = set()
    for phi in auts:
        cols = []
        for w in basis:
            w2 = w[np.ix_(phi, phi)]
            cols.append(tuple(X.project(R.theta_of_table(w2))))
        key = tuple(cols)
        if key not in seen:
            seen.add(key)
            mats.append(cols)
    return X, mats


def cp_extension_isoclinism_classes(Q: FiniteGroup) -> ClassCount:
    """Orbits of Aut Q on subgroups of B0(Q), acting through Hom(B0, Z/e).

    Subgroups of B0 and of its dual correspond through annihilators, and the
    correspondence commutes with the action, so the dual side is counted.
    """
    from .cohomology import multiplier_invariants
    from .linalg import FinAbGroup

    b0 = multiplier_invariants(Q).b0
    if not b0:
        return ClassCount(1, (), 1, [[frozenset({()})]], 0)
    e = b0[-1]
    auts = automorphisms(Q).maps
    X, mats = _aut_action_on_hom_b0(Q, e, auts)
    inv = X.invariants
    A = FinAbGroup(inv, None, None)
    subs = A.subgroups()

    def apply(mat, v):
        out = [0] * len(inv)
        for k, col in zip(v, mat):
            for j, c in enumerate(col):
                out[j] = (out[j] + k * c) % inv[j]
        return tuple(out)

    index = {s: i for i, s in enumerate(subs)}
    parent = list(range(len(subs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mat in mats:
        for s in subs:
            t = frozenset(apply(mat, v) for v in s)
            a, b = find(index[s]), find(index[t])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i, s in enumerate(subs):
        groups.setdefault(find(i), []).append(s)
    orbits = list(groups.values())
    return ClassCount(len(orbits), tuple(b0), len(subs), orbits, len(auts))


def empirical_class_count(Q: FiniteGroup) -> int:
    """Isoclinism classes among the quotients of a CP cover by subgroups of its kernel."""
    from .extensions import cp_cover

    cover = cp_cover(Q)
    G = cover.G
    kern = cover.kernel.tolist()
    subs = {(0,)}
    frontier = list(subs)
    while frontier:
        new = []
        for L in frontier:
            for x in kern:
                if x not in L:
                    S = tuple(sorted(G.closure(list(L) + [x]).tolist()))
                    if S not in subs:
                        subs.add(S)
                        new.append(S)
        frontier = new
    exts = [quotient_extension(cover, list(L)) for L in sorted(subs)]
    reps: list = []
    for ext in exts:
        if not any(extensions_isoclinic(ext, r) for r in reps):
            reps.append(ext)
    return len(reps)
