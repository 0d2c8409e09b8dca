"""Upper bound for the rank of B0 read off a presentation.

The bound is ``#relators - #commutator relators - #generators``.  A relator
counts as a commutator only when, after free reduction, it literally has the
shape ``U^-1 V^-1 U V``; membership in the commutator set of the free group is
not decided, so the bound may be weaker than the best possible one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import CapExceeded, GroupError, group_from_presentation, letters_from_string, minimal_generator_count
from .todd_coxeter import free_reduce, invert_word


@dataclass
class PresentationBoundInput:
    generators: int
    relators: list
    flags: list = field(default_factory=list)

    @classmethod
    def from_json(cls, data: dict) -> "PresentationBoundInput":
        ngens = int(data["generators"])
        rels = [letters_from_string(r, ngens) if isinstance(r, str) else list(r) for r in data["relators"]]
        rels = [free_reduce(r) for r in rels]
        return cls(ngens, rels, [is_commutator_shaped(r) for r in rels])


def is_commutator_shaped(word) -> bool:
    """Is the freely reduced word literally ``u^-1 v^-1 u v`` for non-empty u, v?"""
    w = free_reduce(list(word))
    n = len(w)
    if n < 4 or n % 2:
        return False
    for i in range(1, n // 2):
        j = n // 2 - i
        A, B, C, D = w[:i], w[i:i + j], w[i + j:2 * i + j], w[2 * i + j:]
        if A == invert_word(C) and B == invert_word(D):
            return True
    return False


@dataclass
class RankBound:
    bound: int | None
    relators: int
    commutator_relators: int
    generators: int
    d_Q: int | None
    status: str  # "ok", "not applicable", "unverified minimality"
    order: int | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def presentation_rank_bound(inp: PresentationBoundInput, coset_cap: int = 20000) -> RankBound:
    r = len(inp.relators)
    rk = sum(1 for f in inp.flags if f)
    k = inp.generators
    raw = max(r - rk - k, 0)
    try:
        G = group_from_presentation(k, inp.relators, coset_cap=coset_cap)
    except (CapExceeded, GroupError):
        return RankBound(raw, r, rk, k, None, "unverified minimality")
    d = minimal_generator_count(G) if G.n > 1 else 0
    if d != k:
        return RankBound(None, r, rk, k, d, "not applicable", G.n)
    return RankBound(raw, r, rk, k, d, "ok", G.n)
