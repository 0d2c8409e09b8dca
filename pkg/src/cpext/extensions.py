"""Realizing extensions from cocycles, CP tests, and CP covers.

An extension of ``Q`` by a module ``N`` is realized on the set ``N x Q`` with
``(a, x)(b, y) = (a + x.b + omega(x, y), xy)``.  Element ``(a, x)`` gets index
``code(a) * |Q| + x`` where ``code`` is the mixed-radix code of the
coordinates of ``a``; the kernel is therefore the set of multiples of ``|Q|``
and the projection is reduction mod ``|Q|``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cohomology import (
    Cocycle,
    GModule,
    cohomology_group,
    multiplier_invariants,
    relation_model,
)
from .groups import (
    CapExceeded,
    FiniteGroup,
    _irredundant,
    build_group,
    commuting_probability,
    quotient_group,
)
from .linalg import abelian_invariants_from_orders, howell_form, normalize_invariants

EXTENSION_ORDER_CAP = 512
COVER_SEARCH_BUDGET = 4096


class CoverSearchExhausted(RuntimeError):
    pass


@dataclass
class CentralExtensionData:
    """A realized extension ``N -> G -> Q`` with its defining cocycle."""

    Q: FiniteGroup
    module: GModule
    cocycle: Cocycle
    G: FiniteGroup
    kernel: np.ndarray
    projection: np.ndarray
    identification: dict = field(default_factory=dict)

    @property
    def is_central(self) -> bool:
        return self.module.is_trivial

    @property
    def kernel_order(self) -> int:
        return len(self.kernel)

    def kernel_element(self, coords) -> int:
        return _encode(self.module.moduli, coords) * self.Q.n

    def to_bundle(self, base=None) -> dict:
        """Extension bundle (base spec, module, cocycle) as a JSON-able dict."""
        mod = {"invariants": list(self.module.moduli)}
        if not self.module.is_trivial:
            mod["action"] = [self.module.action[s].tolist() for s in self.Q.generators]
        return {
            "schema": 1,
            "base": base if base is not None else self.Q.to_cayley_spec(),
            "module": mod,
            "cocycle": self.cocycle.to_json(),
        }


def _radices(moduli):
    out = []
    r = 1
    for n in moduli:
        out.append(r)
        r *= n
    return out


def _encode(moduli, coords) -> int:
    return sum(int(c) % n * r for c, n, r in zip(coords, moduli, _radices(moduli)))


def _all_coords(moduli) -> np.ndarray:
    if not moduli:
        return np.zeros((1, 0), dtype=np.int64)
    # code = sum c_i * radix_i, so the first coordinate varies fastest
    grids = np.meshgrid(*[np.arange(n) for n in reversed(moduli)], indexing="ij")
    return np.stack([g.reshape(-1) for g in reversed(grids)], axis=1).astype(np.int64)


def realize_extension(Q: FiniteGroup, module: GModule, omega: Cocycle, cap: int = EXTENSION_ORDER_CAP,
                      check: bool = True, name: str = "") -> CentralExtensionData:
    """Group on ``N x Q`` defined by the cocycle ``omega``."""
    if module.Q is not Q or omega.module is not module:
        if module.Q.n != Q.n or omega.module.moduli != module.moduli:
            raise ValueError("cocycle, module and base group do not match")
    nN = module.order()
    n = Q.n
    if nN * n > cap:
        raise CapExceeded(f"extension order {nN * n} exceeds cap {cap}")
    if check and not omega.is_cocycle():
        raise ValueError("not a cocycle")
    moduli = module.moduli
    coords = _all_coords(moduli)  # (nN, d)
    radix = np.asarray(_radices(moduli), dtype=np.int64)
    mod = np.asarray(moduli, dtype=np.int64)

    def code(c):
        return (c % mod) @ radix if len(moduli) else np.zeros(c.shape[:-1], dtype=np.int64)

    # addition table of N and action table x.b
    add = code(coords[:, None, :] + coords[None, :, :])
    if module.is_trivial:
        act = np.broadcast_to(np.arange(nN)[None, :], (n, nN))
    else:
        act = code(np.einsum("xij,bj->xbi", module.action, coords))
    wcode = code(omega.table)  # (n, n)
    A = np.arange(nN)[:, None, None, None]
    X = np.arange(n)[None, :, None, None]
    B = np.arange(nN)[None, None, :, None]
    Y = np.arange(n)[None, None, None, :]
    a_part = add[add[A, act[X, B]], wcode[X, Y]]
    table = (a_part * n + Q.mul[X, Y]).reshape(nN * n, nN * n)
    lifts = [int(s) for s in Q.generators]
    kern_gens = []
    for i in range(len(moduli)):
        e = [0] * len(moduli)
        e[i] = 1
        kern_gens.append(_encode(moduli, e) * n)
    gens = _irredundant(table, lifts + kern_gens)
    G = FiniteGroup(table, gens, name=name or f"{Q.name}[omega]", check=check and nN * n <= 256)
    if check and nN * n > 256:
        _spot_check_associativity(table)
    kernel = np.arange(nN, dtype=np.int64) * n
    projection = np.arange(nN * n, dtype=np.int64) % n
    return CentralExtensionData(Q, module, omega, G, kernel, projection)


def _spot_check_associativity(table, samples: int = 20000, seed: int = 0):
    rng = np.random.default_rng(seed)
    N = table.shape[0]
    x, y, z = rng.integers(0, N, (3, samples))
    if not np.array_equal(table[table[x, y], z], table[x, table[y, z]]):
        raise ValueError("realized table is not associative")


@dataclass
class CPCheck:
    is_cp: bool
    witness: tuple[int, int] | None
    lift_search: bool
    kernel_criterion: bool | None

    def as_dict(self) -> dict:
        return {"is_cp": self.is_cp, "witness": list(self.witness) if self.witness else None,
                "lift_search": self.lift_search, "kernel_criterion": self.kernel_criterion}


def check_cp_extension(ext: CentralExtensionData) -> CPCheck:
    """Decide whether commuting pairs of Q have commuting lifts.

    Method 1 searches lifts of every commuting pair; method 2 (central case)
    tests whether the kernel meets the commutator set.  The two must agree.
    """
    Q, G = ext.Q, ext.G
    n = Q.n
    nN = ext.kernel_order
    C = G.commuting
    witness = None
    base = np.arange(nN, dtype=np.int64) * n
    for x in range(1, n):
        for y in range(x + 1, n):
            if not Q.commuting[x, y]:
                continue
            if not C[np.ix_(base + x, base + y)].any():
                witness = (x, y)
                break
        if witness:
            break
    method1 = witness is None
    method2 = None
    if ext.is_central:
        K = G.commutator_set
        method2 = not bool(np.any((K % n == 0) & (K != 0)))
        if method1 != method2:
            raise AssertionError("lift search and kernel criterion disagree")
    return CPCheck(method1, witness, method1, method2)


# --------------------------------------------------------------------------
# CP covers


def _generates(vectors, invariants, e) -> bool:
    """Do the coordinate vectors generate ``sum Z/b_j`` (exponent e)?"""
    if not invariants:
        return True
    scale = np.asarray([e // b for b in invariants], dtype=np.int64)
    rows = [(np.asarray(v, dtype=np.int64) * scale) % e for v in vectors]
    H = howell_form(np.asarray(rows), e, ncols=len(invariants))
    return H.order() == math.prod(invariants)


def cp_cover(Q: FiniteGroup, budget: int = COVER_SEARCH_BUDGET) -> CentralExtensionData:
    """A CP cover of Q: stem central CP extension with kernel of order |B0(Q)|."""
    b0 = multiplier_invariants(Q).b0
    if not b0:
        M = GModule.trivial(Q, [])
        ext = realize_extension(Q, M, Cocycle.zero(M), name=f"cover of {Q.name}")
        ext.identification = {"b0": [], "components": []}
        return ext
    e = b0[-1]
    Re = relation_model(Q, e)
    X = Re.hom_b0
    if X.invariants != tuple(b0):
        raise AssertionError("Hom(B0, Z/e) does not match B0")
    comps = []
    for d in b0:
        Rd = relation_model(Q, d)
        H = Rd.hom_b0
        cands = []
        for c in H.elements():
            theta = H.lift(c)
            img = X.project((theta * (e // d)) % e)
            cands.append((c, theta, img))
        comps.append((d, Rd, H, cands))

    M = GModule.trivial(Q, list(b0))
    tried = 0

    def build(choice):
        tables = [Rd.table_of_theta(theta) for (d, Rd, H, _), (c, theta, img) in zip(comps, choice)]
        return Cocycle(M, np.stack(tables, axis=2))

    # backtracking over component classes whose images generate Hom(B0, Z/e)
    def search(i, chosen):
        nonlocal tried
        if i == len(comps):
            if not _generates([img for (_, _, img) in chosen], X.invariants, e):
                return None
            tried += 1
            omega = build(chosen)
            ext = realize_extension(Q, M, omega, name=f"cover of {Q.name}")
            if _is_stem(ext) and check_cp_extension(ext).is_cp:
                ext.identification = {
                    "b0": list(b0),
                    "components": [list(c) for (c, _, _) in chosen],
                }
                return ext
            return _ext_adjust(ext, chosen)
        for cand in comps[i][3]:
            if not any(cand[2]):
                continue
            r = search(i + 1, chosen + [cand])
            if r is not None:
                return r
            if tried >= budget:
                return None
        return None

    def _ext_adjust(ext, chosen):
        # shift each component by inflation classes, in Howell-basis order
        nonlocal tried
        gens = []
        for (d, Rd, H, _) in comps:
            gens.append([row for row in Rd.ext.rows])
        ranges = [list(itertools.product(range(d), repeat=len(g))) for (d, *_), g in zip(comps, gens)]
        for combo in itertools.product(*ranges):
            if tried >= budget:
                return None
            tried += 1
            new = []
            for (d, Rd, H, _), (c, theta, img), g, coeffs in zip(comps, chosen, gens, combo):
                t = theta.copy()
                for k, row in zip(coeffs, g):
                    t = (t + k * row) % d
                new.append((c, t, img))
            omega = build(new)
            cand = realize_extension(Q, M, omega, name=f"cover of {Q.name}")
            if _is_stem(cand) and check_cp_extension(cand).is_cp:
                cand.identification = {"b0": list(b0), "components": [list(c) for (c, _, _) in new],
                                       "adjusted": True}
                return cand
        return None

    out = search(0, [])
    if out is None:
        raise CoverSearchExhausted(
            f"no CP cover found for {Q.name} within {budget} candidates (B0 = {list(b0)})")
    return out


def _is_stem(ext: CentralExtensionData) -> bool:
    D = set(ext.G.derived.tolist())
    return all(int(k) in D for k in ext.kernel)


def _abelian_invariants_of(G: FiniteGroup, elems) -> tuple[int, ...]:
    return tuple(abelian_invariants_from_orders(G.element_orders[np.asarray(elems, dtype=np.int64)].tolist()))


@dataclass
class CoverReport:
    is_cp: bool
    cp_methods_agree: bool
    is_stem: bool
    kernel_order: int
    b0_Q_order: int
    b0_G: tuple[int, ...]
    center_projects_onto: bool
    center_order_ok: bool
    center_isomorphic: bool
    cp_G: Fraction
    cp_Q: Fraction
    k_G: int
    k_Q: int
    identification: dict = field(default_factory=dict)

    @property
    def checks(self) -> dict:
        return {
            "cp": self.is_cp and self.cp_methods_agree,
            "stem": self.is_stem,
            "kernel_order": self.kernel_order == self.b0_Q_order,
            "b0_trivial": not self.b0_G,
            "center_projection": self.center_projects_onto,
            "center_order": self.center_order_ok,
            "center_structure": self.center_isomorphic,
            "commuting_probability": self.cp_G == self.cp_Q,
            "class_count": self.k_G == self.kernel_order * self.k_Q,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "checks": self.checks,
            "passed": self.passed,
            "kernel_order": self.kernel_order,
            "b0_Q_order": self.b0_Q_order,
            "b0_G": list(self.b0_G),
            "cp_G": str(self.cp_G),
            "cp_Q": str(self.cp_Q),
            "k_G": self.k_G,
            "k_Q": self.k_Q,
            "identification": self.identification,
        }


def verify_cover(ext: CentralExtensionData) -> CoverReport:
    """Check every cover property; failures are reported, not raised."""
    Q, G = ext.Q, ext.G
    chk = check_cp_extension(ext)
    agree = chk.kernel_criterion is None or chk.kernel_criterion == chk.lift_search
    b0Q = math.prod(multiplier_invariants(Q).b0)
    b0G = multiplier_invariants(G).b0 if G.n > 1 else ()
    ZG = G.center
    ZQ = set(Q.center.tolist())
    proj_center = set(ext.projection[ZG].tolist())
    zq_inv = _abelian_invariants_of(Q, sorted(ZQ))
    zg_inv = _abelian_invariants_of(G, ZG)
    expected = tuple(normalize_invariants(list(zq_inv) + list(ext.module.moduli)))
    return CoverReport(
        is_cp=chk.is_cp,
        cp_methods_agree=agree,
        is_stem=_is_stem(ext),
        kernel_order=ext.kernel_order,
        b0_Q_order=b0Q,
        b0_G=tuple(b0G),
        center_projects_onto=proj_center == ZQ,
        center_order_ok=len(ZG) == len(ZQ) * ext.kernel_order,
        center_isomorphic=zg_inv == expected,
        cp_G=commuting_probability(G),
        cp_Q=commuting_probability(Q),
        k_G=len(G.conjugacy_classes),
        k_Q=len(Q.conjugacy_classes),
        identification=dict(ext.identification),
    )


def corrupted_cover(ext: CentralExtensionData) -> CentralExtensionData:
    """Drop the Hom(B0) part of a cover cocycle, keeping only an inflation class.

    Adding inflation (Ext) classes never changes the Hom(M) component, which is
    what decides stemness; replacing the cocycle by a non-zero inflation class
    alone gives a central CP extension whose kernel leaves the derived
    subgroup.
    """
    Q, M = ext.Q, ext.module
    tables = []
    for i, d in enumerate(M.moduli):
        R = relation_model(Q, d)
        if len(R.ext.pivots):
            theta = R.ext.rows[0]
        else:
            theta = np.zeros(R.S, dtype=np.int64)
        tables.append(R.table_of_theta(theta))
    omega = Cocycle(M, np.stack(tables, axis=2))
    return realize_extension(Q, M, omega, name=f"corrupted cover of {Q.name}")


# --------------------------------------------------------------------------
# central CP quotients


@dataclass
class QuotientCheck:
    accepted: bool
    reason: str
    b0_quotient_order: int = 0
    b0_G_order: int = 0
    intersection_order: int = 0
    order_law_holds: bool | None = None
    certified_cover: bool = False

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def central_cp_quotient_check(G: FiniteGroup, N) -> QuotientCheck:
    """``|B0(G/N)| = |B0(G)| |N cap [G,G]|`` for a central CP subgroup N."""
    N = sorted(set(int(x) for x in N))
    if not G.is_subgroup(N):
        return QuotientCheck(False, "N is not a subgroup")
    if not set(N) <= set(G.center.tolist()):
        return QuotientCheck(False, "N is not central")
    K = set(G.commutator_set.tolist())
    if any(x in K for x in N if x != 0):
        return QuotientCheck(False, "N is not CP (it meets the commutator set)")
    Qg, _ = quotient_group(G, N)
    b0q = math.prod(multiplier_invariants(Qg).b0) if Qg.n > 1 else 1
    b0g = math.prod(multiplier_invariants(G).b0) if G.n > 1 else 1
    D = set(G.derived.tolist())
    inter = sum(1 for x in N if x in D)
    holds = b0q == b0g * inter
    cert = holds and b0g == 1 and inter == len(N)
    return QuotientCheck(True, "ok", b0q, b0g, inter, holds, cert)


# --------------------------------------------------------------------------
# bundles


def extension_from_bundle(bundle, resolve=None) -> CentralExtensionData:
    """Rebuild an extension from its JSON bundle.

    ``resolve`` maps a non-dict ``base`` (a catalog name) to a group.
    """
    if isinstance(bundle, str):
        bundle = json.loads(bundle)
    base = bundle["base"]
    if isinstance(base, dict):
        Q = build_group(base)
    elif resolve is not None:
        Q = resolve(base)
    else:
        raise ValueError("cannot resolve base group")
    mod = bundle["module"]
    inv = mod.get("invariants", [])
    if "action" in mod:
        M = GModule.from_generator_action(Q, inv, mod["action"])
    else:
        M = GModule.trivial(Q, inv)
    omega = Cocycle.from_json(M, bundle["cocycle"])
    return realize_extension(Q, M, omega)
