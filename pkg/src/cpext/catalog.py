"""Named small groups used by the suites, the tests and the CLI."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .groups import FiniteGroup, GroupError, build_group


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: dict
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    citation: str = ""

    @property
    def order(self) -> int:
        return self.expected["order"]

    def build(self) -> FiniteGroup:
        return get_group(self.name)


def _comm(u: str, v: str) -> str:
    inv = lambda w: "".join(ch.swapcase() for ch in reversed(w))  # noqa: E731
    return inv(u) + inv(v) + u + v


def _perm_spec(perms) -> dict:
    return {"type": "permutation", "generators": [[i + 1 for i in p] for p in perms]}


def _unitriangular_spec(n: int, p: int) -> dict:
    """UT_n(p) acting on row vectors of F_p^n, generated by elementary matrices."""
    points = list(itertools.product(range(p), repeat=n))
    index = {v: i for i, v in enumerate(points)}
    perms = []
    for i in range(n - 1):
        # v -> v (I + E_{i,i+1}): coordinate i+1 gains v_i
        img = []
        for v in points:
            w = list(v)
            w[i + 1] = (w[i + 1] + v[i]) % p
            img.append(index[tuple(w)])
        perms.append(img)
    return _perm_spec(perms)


def _dihedral_spec(n: int) -> dict:
    return {"type": "presentation", "generators": 2, "relators": ["a" * n, "bb", "abab"]}


def _symmetric_perms(k: int):
    cycle = list(range(1, k)) + [0]
    swap = [1, 0] + list(range(2, k))
    return [cycle, swap]


ABELIAN_CHAINS = [
    [2, 2], [2, 4], [2, 2, 2], [3, 3], [2, 6], [2, 8], [4, 4], [2, 2, 4], [2, 2, 2, 2], [3, 6],
    [2, 10], [2, 12], [2, 2, 6], [5, 5], [3, 9], [3, 3, 3], [2, 14], [2, 16], [4, 8], [2, 2, 8],
    [2, 4, 4], [2, 2, 2, 4], [2, 2, 2, 2, 2],
]

# three involutions a, b, c; order 64, B0 = C2, commuting probability 1/4
PHI16_RELATORS = ["aa", "bb", "cc", "acacacac", "cbcbcbacba"]
PHI16_CITATION = (
    "Order-64 group of the Hall-Senior family Phi16 (isoclinism family with non-trivial Bogomolov "
    "multiplier at order 64, cf. Chu, Hu, Kang, Kunyavskii, 'Noether's problem and the unramified "
    "Brauer group for groups of order 64'). Presentation located by tools/find_phi16.py and "
    "reduced by coset enumeration."
)


def _entries() -> list[CatalogEntry]:
    out: list[CatalogEntry] = []

    def add(name, spec, order, cp=None, b0=None, tag=None, citation="", **extra):
        expected = {"order": order}
        prov = {"order": "TRIVIAL"}
        if cp is not None:
            expected["cp"] = str(cp)
            prov["cp"] = tag or "DERIVED"
        if b0 is not None:
            expected["b0"] = list(b0)
            prov["b0"] = tag or "DERIVED"
        expected.update(extra)
        out.append(CatalogEntry(name, {**spec, "name": name}, expected, prov, citation))

    for n in range(2, 33):
        add(f"C{n}", {"type": "abelian", "invariants": [n]}, n, cp=1, b0=(), tag="TRIVIAL")
    for chain in ABELIAN_CHAINS:
        name = "x".join(f"C{d}" for d in chain)
        order = 1
        for d in chain:
            order *= d
        add(name, {"type": "abelian", "invariants": chain}, order, cp=1, b0=(), tag="TRIVIAL")
    for n in range(3, 9):
        add(f"D{n}", _dihedral_spec(n), 2 * n)
    add("Q8", {"type": "presentation", "generators": 2, "relators": ["aaaa", "aaBB", "Baba"]}, 8,
        cp=Fraction(5, 8))
    add("Q16", {"type": "presentation", "generators": 2, "relators": ["aaaaaaaa", "aaaaBB", "Baba"]}, 16)
    add("M16", {"type": "presentation", "generators": 2, "relators": ["aaaaaaaa", "bb", "BabAAAAA"]}, 16)
    add("S3", _perm_spec(_symmetric_perms(3)), 6, cp=Fraction(1, 2))
    add("S4", _perm_spec(_symmetric_perms(4)), 24)
    add("A4", _perm_spec([[1, 2, 0, 3], [1, 0, 3, 2]]), 12)
    add("A5", _perm_spec([[1, 2, 3, 4, 0], [1, 2, 0, 3, 4]]), 60)
    heis = ["aaa", "bbb", _comm("a", "b") * 3, _comm(_comm("a", "b"), "a"), _comm(_comm("a", "b"), "b")]
    add("Heis27", {"type": "presentation", "generators": 2, "relators": heis}, 27)
    add("UT3(2)", _unitriangular_spec(3, 2), 8)
    add("UT3(3)", _unitriangular_spec(3, 3), 27)
    add("UT4(2)", _unitriangular_spec(4, 2), 64, b0=(), tag="PAPER")
    d4 = _dihedral_spec(4)
    q8 = {"type": "presentation", "generators": 2, "relators": ["aaaa", "aaBB", "Baba"]}
    c2 = {"type": "abelian", "invariants": [2]}
    add("C2xD4", {"type": "direct_product", "factors": [c2, d4]}, 16)
    add("C2xQ8", {"type": "direct_product", "factors": [c2, q8]}, 16)
    add("C2xS3", {"type": "direct_product", "factors": [c2, _perm_spec(_symmetric_perms(3))]}, 12)
    add("C4xD4", {"type": "direct_product", "factors": [{"type": "abelian", "invariants": [4]}, d4]}, 32)
    add("C2xC2xD4", {"type": "direct_product", "factors": [{"type": "abelian", "invariants": [2, 2]}, d4]}, 32)
    add("Phi16", {"type": "presentation", "generators": 3, "relators": list(PHI16_RELATORS)}, 64,
        cp=Fraction(1, 4), b0=(2,), tag="PAPER", citation=PHI16_CITATION)
    add("C2xPhi16", {"type": "direct_product", "factors": [c2, {"type": "presentation", "generators": 3,
                                                                  "relators": list(PHI16_RELATORS)}]},
        128, cp=Fraction(1, 4), b0=(2,), tag="DERIVED")
    return out


@lru_cache(maxsize=None)
def catalog_entries() -> tuple[CatalogEntry, ...]:
    return tuple(_entries())


def catalog() -> list[CatalogEntry]:
    return list(catalog_entries())


def entry(name: str) -> CatalogEntry:
    for e in catalog_entries():
        if e.name == name:
            return e
    raise KeyError(name)


class CatalogDataError(GroupError):
    """A catalog spec does not reproduce its recorded order."""


@lru_cache(maxsize=None)
def get_group(name: str) -> FiniteGroup:
    e = entry(name)
    G = build_group(e.spec, name=name)
    if G.n != e.expected["order"]:
        raise CatalogDataError(f"catalog entry {name} builds order {G.n}, expected {e.expected['order']}")
    return G


def resolve_group(ref) -> FiniteGroup:
    """Catalog name, path to a GroupSpec JSON file, or a spec dict."""
    if isinstance(ref, FiniteGroup):
        return ref
    if isinstance(ref, dict):
        return build_group(ref)
    try:
        return get_group(ref)
    except KeyError:
        pass
    p = Path(ref)
    if p.exists():
        return build_group(json.loads(p.read_text()), name=p.stem)
    raise KeyError(f"unknown group {ref!r} (not a catalog name or spec file)")


def select(max_order: int | None = None, min_order: int = 1, p_groups: bool = False,
           names=None) -> list[CatalogEntry]:
    from .groups import prime_factors

    out = []
    for e in catalog_entries():
        if names is not None and e.name not in names:
            continue
        if max_order is not None and e.order > max_order:
            continue
        if e.order < min_order:
            continue
        if p_groups and len(prime_factors(e.order)) != 1:
            continue
        out.append(e)
    return out


ISOCLINIC_PAIRS = [("D4", "Q8"), ("D4", "C2xD4"), ("Q8", "C2xQ8"), ("S3", "C2xS3"), ("D8", "Q16"),
                   ("C2", "C4"), ("Phi16", "C2xPhi16")]
