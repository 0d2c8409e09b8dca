"""Search for an order-64 group with B0 = C2 and commuting probability 1/4.

Groups of order 2^k are generated as central extensions by C2 of the groups
of order 2^(k-1) found so far, deduplicated by a cheap fingerprint (which may
merge non-isomorphic groups; that only shrinks the search).  Hits are printed
with a short power-commutator style presentation found by greedy relator
removal, each candidate presentation being checked by coset enumeration.

Usage: python3 tools/find_phi16.py [--max-hits N]
"""

import argparse
import itertools
import time
from collections import Counter
from fractions import Fraction

import numpy as np

from cpext.cohomology import GModule, multiplier_invariants, relation_model
from cpext.extensions import realize_extension
from cpext.cohomology import Cocycle
from cpext.groups import abelianization, commuting_probability, cyclic_group, minimal_generator_count


def fingerprint(G):
    orders = tuple(sorted(Counter(G.element_orders.tolist()).items()))
    classes = tuple(sorted(Counter(len(c) for c in G.conjugacy_classes).items()))
    return (G.n, orders, classes, len(G.center), len(G.derived), abelianization(G).invariants)


def c2_extensions(Q):
    R = relation_model(Q, 2)
    H = R.h2
    M = GModule.trivial(Q, [2])
    for coords in H.elements():
        theta = H.lift(coords)
        omega = Cocycle(M, R.table_of_theta(theta)[:, :, None])
        yield realize_extension(Q, M, omega, check=False).G


def layer(groups):
    seen = {}
    for Q in groups:
        for G in c2_extensions(Q):
            fp = fingerprint(G)
            if fp not in seen:
                seen[fp] = G
    return list(seen.values())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-hits", type=int, default=1)
    args = ap.parse_args()
    t0 = time.time()
    level = [cyclic_group(2)]
    for k in (2, 3, 4, 5):
        level = layer(level)
        print(f"order {2 ** k}: {len(level)} fingerprints ({time.time() - t0:.1f}s)", flush=True)
    hits = 0
    seen = set()
    for Q in level:
        for G in c2_extensions(Q):
            if commuting_probability(G) != Fraction(1, 4):
                continue
            fp = fingerprint(G)
            if fp in seen:
                continue
            seen.add(fp)
            b0 = multiplier_invariants(G).b0
            print("cp=1/4 candidate", fp[1:], "B0", b0, f"({time.time() - t0:.1f}s)", flush=True)
            if b0 == (2,):
                hits += 1
                print("HIT d(G) =", minimal_generator_count(G), "gens", G.generators)
                np.save(f"/tmp/phi16_hit{hits}.npy", G.mul)
                if hits >= args.max_hits:
                    return


if __name__ == "__main__":
    main()


# ---------------------------------------------------------------------------
# presentation derivation


def _word_string(G, x, letters="abc"):
    return "".join(letters[i] for i in G.word(x))


def _inverse_string(s):
    return "".join(ch.swapcase() for ch in reversed(s))


def derive_presentation(mul, gens):
    """Short relator list valid in the group of ``mul`` and defining it."""
    from cpext.groups import FiniteGroup, group_from_presentation, CapExceeded

    G = FiniteGroup(np.asarray(mul), list(gens), check=False)
    letters = "abcdefgh"[: len(gens)]
    names = dict(zip(letters, gens))
    pool = []
    for s in letters:
        x = names[s]
        pool.append(s + s + _inverse_string(_word_string(G, G.m(x, x), letters)))
    for s, t in itertools.combinations(letters, 2):
        c = G.comm(names[s], names[t])
        pool.append(s.upper() + t.upper() + s + t + _inverse_string(_word_string(G, c, letters)))
    for s, t in itertools.combinations(letters, 2):
        c = G.comm(names[s], names[t])
        for u in letters:
            cc = G.comm(c, names[u])
            cw = _word_string(G, c, letters)
            pool.append(_inverse_string(cw) + u.upper() + cw + u + _inverse_string(_word_string(G, cc, letters)))
    pool = [r for r in pool if r]
    # every relator must hold in G
    for r in pool:
        v = 0
        for ch in r:
            g = names[ch.lower()]
            v = G.m(v, g if ch.islower() else int(G.inv[g]))
        assert v == 0, r

    def order_of(rels):
        try:
            return group_from_presentation(len(letters), rels, coset_cap=20000).n
        except CapExceeded:
            return None

    assert order_of(pool) == G.n
    rels = list(pool)
    for r in sorted(pool, key=len, reverse=True):
        trial = [x for x in rels if x != r]
        if order_of(trial) == G.n:
            rels = trial
    return rels
