"""Non-abelian exterior square by coset enumeration.

``Q ^ Q`` is presented on symbols ``w(x, y)`` for all ordered pairs with

* ``w(xy, z) = w(x^y, z^y) w(y, z)``
* ``w(x, yz) = w(x, z) w(x^z, y^z)``
* ``w(x, x) = 1``

and the curly square additionally kills ``w(x, y)`` for commuting ``x, y``.
The commutator map ``w(x, y) -> [x, y]`` has kernel ``M(Q)`` on the wedge
side and ``B0(Q)`` on the curly side; ``M0(Q)`` is the kernel of the natural
map from the wedge to the curly square.  Nothing here touches the cohomology
code, so agreement between the two is independent evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cohomology import MultiplierReport
from .groups import FiniteGroup, _irredundant, regular_table
from .linalg import abelian_invariants_from_orders
from .todd_coxeter import EnumerationOverflow, enumerate_cosets

ORACLE_ORDER_CAP = 24
ORACLE_COSET_CAP = 20000


class OracleOutOfRange(RuntimeError):
    pass


@dataclass
class ExteriorPresentation:
    Q: FiniteGroup
    variant: str
    ngens: int
    relators: list

    def symbol(self, x: int, y: int) -> int:
        return x * self.Q.n + y


def exterior_presentation(Q: FiniteGroup, variant: str = "wedge") -> ExteriorPresentation:
    if variant not in ("wedge", "curly"):
        raise ValueError("variant must be 'wedge' or 'curly'")
    n = Q.n
    conj = Q.conj

    def w(x, y):
        return 2 * (x * n + y)

    def winv(x, y):
        return 2 * (x * n + y) + 1

    rels = []
    # canonical order: lexicographic in (x, y, z)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                rels.append([winv(Q.m(x, y), z), w(conj(x, y), conj(z, y)), w(y, z)])
                rels.append([winv(x, Q.m(y, z)), w(x, z), w(conj(x, z), conj(y, z))])
    for x in range(n):
        rels.append([w(x, x)])
    if variant == "curly":
        C = Q.commuting
        for x in range(n):
            for y in range(n):
                if C[x, y]:
                    rels.append([w(x, y)])
    return ExteriorPresentation(Q, variant, n * n, rels)


@dataclass
class ExteriorSquare:
    """Enumerated square: regular table plus the element of each symbol."""

    presentation: ExteriorPresentation
    group: FiniteGroup
    symbol_element: np.ndarray  # element index of w(x, y), flattened x*n + y
    commutator_image: np.ndarray  # element of Q for each element of the square
    coset_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.group.n

    def kernel(self) -> np.ndarray:
        return np.nonzero(self.commutator_image == 0)[0]


def _word_images(coset_table: np.ndarray, gen_image: list[int], target_mul: np.ndarray) -> np.ndarray:
    """Images of every element under the homomorphism fixed on generators.

    Consistency is checked on every edge of the coset table.
    """
    n = coset_table.shape[0]
    ngens = coset_table.shape[1] // 2
    img = np.full(n, -1, dtype=np.int64)
    img[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for g in range(ngens):
                d = int(coset_table[c, 2 * g])
                v = int(target_mul[img[c], gen_image[g]])
                if img[d] < 0:
                    img[d] = v
                    nxt.append(d)
        frontier = nxt
    gi = np.asarray(gen_image, dtype=np.int64)
    for g in range(ngens):
        if not np.array_equal(img[coset_table[:, 2 * g]], target_mul[img, gi[g]]):
            raise AssertionError("generator assignment does not define a homomorphism")
    return img


def exterior_groups(Q: FiniteGroup, variant: str = "wedge", order_cap: int = ORACLE_ORDER_CAP,
                    coset_cap: int = ORACLE_COSET_CAP) -> ExteriorSquare:
    """Enumerate ``Q ^ Q`` (``wedge``) or the curly square (``curly``)."""
    if Q.n > order_cap:
        raise OracleOutOfRange(f"oracle limited to |Q| <= {order_cap}")
    P = exterior_presentation(Q, variant)
    try:
        table = enumerate_cosets(P.ngens, P.relators, cap=coset_cap)
    except EnumerationOverflow as exc:
        raise OracleOutOfRange("oracle out of range") from exc
    mul, sym = regular_table(table)
    gens = _irredundant(mul, sorted(set(sym))) if mul.shape[0] > 1 else []
    G = FiniteGroup(mul, gens, name=f"{Q.name} {variant} square", check=mul.shape[0] <= 64)
    n = Q.n
    comm_of_symbol = [Q.comm(s // n, s % n) for s in range(P.ngens)]
    cimg = _word_images(table, comm_of_symbol, Q.mul)
    return ExteriorSquare(P, G, np.asarray(sym, dtype=np.int64), cimg, table)


def _subgroup_invariants(G: FiniteGroup, elems) -> tuple[int, ...]:
    elems = np.asarray(elems, dtype=np.int64)
    sub = G.mul[np.ix_(elems, elems)]
    if not np.array_equal(sub, sub.T):
        raise AssertionError("kernel is not abelian")
    return tuple(abelian_invariants_from_orders(G.element_orders[elems].tolist()))


@dataclass
class ExteriorReport:
    wedge: ExteriorSquare
    curly: ExteriorSquare
    M: tuple[int, ...]
    B0: tuple[int, ...]
    M0: tuple[int, ...]
    derived_order: int

    def as_dict(self) -> dict:
        return {"wedge_order": self.wedge.order, "curly_order": self.curly.order,
                "M": list(self.M), "B0": list(self.B0), "M0": list(self.M0),
                "derived_order": self.derived_order}


def exterior_report(Q: FiniteGroup, **caps) -> ExteriorReport:
    W = exterior_groups(Q, "wedge", **caps)
    C = exterior_groups(Q, "curly", **caps)
    Mset = W.kernel()
    Bset = C.kernel()
    # natural map wedge -> curly, symbol to symbol
    to_curly = _word_images(W.coset_table, C.symbol_element.tolist(), C.group.mul)
    M0set = np.nonzero(to_curly == 0)[0]
    dq = len(Q.derived)
    if W.order != len(Mset) * dq or C.order != len(Bset) * dq:
        raise AssertionError("commutator map is not onto the derived subgroup")
    for S, G in ((Mset, W.group), (Bset, C.group)):
        centre = set(G.center.tolist())
        if not set(S.tolist()) <= centre:
            raise AssertionError("multiplier kernel is not central")
    rep = ExteriorReport(W, C, _subgroup_invariants(W.group, Mset), _subgroup_invariants(C.group, Bset),
                         _subgroup_invariants(W.group, M0set), dq)
    if math.prod(rep.M) != math.prod(rep.M0) * math.prod(rep.B0):
        raise AssertionError("|M| != |M0| |B0| in the oracle")
    return rep


def multiplier_oracle(Q: FiniteGroup, **caps) -> MultiplierReport:
    rep = exterior_report(Q, **caps)
    return MultiplierReport(rep.B0, rep.M, rep.M0, "oracle", 0)


@dataclass
class CpQuotientOracleReport:
    is_cp: bool
    m0_surjective: bool
    curly_orders_equal: bool
    curly_order_G: int
    curly_order_quotient: int
    b0_order_G: int
    b0_order_quotient: int
    intersection_order: int
    b0_lemma_holds: bool | None

    @property
    def consistent(self) -> bool:
        return self.is_cp == self.m0_surjective == self.curly_orders_equal and self.b0_lemma_holds is not False

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["consistent"] = self.consistent
        return d


def cp_quotient_oracle_checks(G: FiniteGroup, N, **caps) -> CpQuotientOracleReport:
    """Compare three equivalent conditions for a central subgroup ``N`` of ``G``."""
    from .groups import quotient_group

    N = sorted(set(int(x) for x in N))
    if not set(N) <= set(G.center.tolist()):
        raise ValueError("N must be central")
    Qg, proj = quotient_group(G, N)
    K = set(G.commutator_set.tolist())
    is_cp = not any(x in K for x in N if x != 0)
    repG = exterior_report(G, **caps)
    repQ = exterior_report(Qg, **caps)
    # images of commuting-pair wedges of G inside the wedge square of G/N
    W = repQ.wedge
    nq = Qg.n
    CG = G.commuting
    imgs = set()
    for x in range(G.n):
        for y in range(G.n):
            if CG[x, y]:
                imgs.add(int(W.symbol_element[int(proj[x]) * nq + int(proj[y])]))
    CQ = Qg.commuting
    m0_gens = {int(W.symbol_element[a * nq + b]) for a in range(nq) for b in range(nq) if CQ[a, b]}
    if not imgs <= m0_gens:
        raise AssertionError("image of a commuting wedge is not a commuting wedge")
    surj = len(W.group.closure(imgs)) == len(W.group.closure(m0_gens))
    DG = set(G.derived.tolist())
    inter = len([x for x in N if x in DG])
    b0G = math.prod(repG.B0)
    b0Q = math.prod(repQ.B0)
    lemma = (b0Q == b0G * inter) if is_cp else None
    return CpQuotientOracleReport(is_cp, surj, repG.curly.order == repQ.curly.order,
                                  repG.curly.order, repQ.curly.order, b0G, b0Q, inter, lemma)
