from fractions import Fraction

import numpy as np
import pytest

from cpext.groups import (
    CapExceeded,
    GroupError,
    abelian_group,
    build_group,
    commuting_probability,
    cyclic_group,
    maximal_abelian_subgroups,
    minimal_generator_count,
    normal_subgroups_with_cyclic_quotient,
    quotient_group,
    semidirect_product,
    subgroup,
)
from cpext.isoclinism import are_isomorphic
from cpext.todd_coxeter import EnumerationOverflow, enumerate_cosets, free_reduce

D4_PRES = {"type": "presentation", "generators": 2, "relators": ["aaaa", "bb", "abab"]}
D4_PERM = {"type": "permutation", "generators": [[2, 3, 4, 1], [3, 2, 1, 4]]}
Q8_PRES = {"type": "presentation", "generators": 2, "relators": ["aaaa", "abAb", "aaBB"]}
S3_PERM = {"type": "permutation", "generators": [[2, 3, 1], [2, 1, 3]]}


def _letters(s):
    return [(ord(ch) - 97) * 2 if ch.islower() else (ord(ch) - 65) * 2 + 1 for ch in s]


@pytest.mark.parametrize("rels,ngens,order", [
    (["aaaa", "bb", "abab"], 2, 8),
    (["aaaaaa"], 1, 6),
    (["aa", "bbb", "ababab"], 2, 12),
    (["aa", "bbb", "ababababab"], 2, 60),
    (["aaaa", "abAb", "aaBB"], 2, 8),
])
def test_coset_enumeration_orders(rels, ngens, order):
    assert enumerate_cosets(ngens, [_letters(r) for r in rels]).shape[0] == order


def test_coset_enumeration_overflow():
    with pytest.raises(EnumerationOverflow):
        enumerate_cosets(2, [_letters("abAB")], cap=500)


def test_free_reduce():
    assert free_reduce(_letters("aAbBa")) == _letters("a")
    assert free_reduce(_letters("abBA")) == []


def test_build_examples():
    D4p, D4 = build_group(D4_PRES), build_group(D4_PERM)
    assert D4p.n == D4.n == 8
    assert are_isomorphic(D4p, D4)[0]
    A = build_group({"type": "abelian", "invariants": [2, 4]})
    assert A.n == 8 and A.structure.abelianization_invariants == (2, 4)


def test_cayley_round_trip():
    D4 = build_group(D4_PERM)
    R = build_group(D4.to_cayley_spec())
    assert np.array_equal(R.mul, D4.mul)


def test_malformed_specs():
    with pytest.raises(GroupError, match="malformed spec"):
        build_group({"type": "nonsense"})
    with pytest.raises(GroupError, match="malformed spec"):
        build_group({"generators": 2})
    with pytest.raises(CapExceeded, match="presentation too large"):
        build_group({"type": "presentation", "generators": 2, "relators": []}, coset_cap=100)


def test_structure_q8_s3_abelian():
    r = build_group(Q8_PRES).structure
    assert len(r.center) == 2 and len(r.derived) == 2 and len(r.conjugacy_classes) == 5
    S3 = build_group(S3_PERM)
    r = S3.structure
    assert len(r.derived) == 3 and set(r.commutator_set) == set(r.derived) and len(r.conjugacy_classes) == 3
    A = abelian_group([3, 3])
    r = A.structure
    assert r.derived == (0,) and r.commutator_set == (0,)
    assert all(len(c) == 1 for c in r.conjugacy_classes)


def test_commuting_probability_examples():
    assert commuting_probability(build_group(S3_PERM)) == Fraction(1, 2)
    assert commuting_probability(build_group(Q8_PRES)) == Fraction(5, 8)
    assert commuting_probability(abelian_group([2, 6])) == 1


def test_minimal_generator_count():
    assert minimal_generator_count(cyclic_group(6)) == 1
    assert minimal_generator_count(build_group(D4_PERM)) == 2
    assert minimal_generator_count(abelian_group([2, 2, 2])) == 3
    A5 = build_group({"type": "permutation", "generators": [[2, 3, 1, 4, 5], [1, 2, 4, 5, 3]]})
    assert minimal_generator_count(A5) == 2


def test_maximal_abelian_subgroups():
    D4 = build_group(D4_PERM)
    subs = maximal_abelian_subgroups(D4)
    assert sorted(len(s) for s in subs) == [4, 4, 4]
    cyclic = [s for s in subs if D4.element_orders[list(s)].max() == 4]
    assert len(cyclic) == 1
    Q8 = build_group(Q8_PRES)
    subs = maximal_abelian_subgroups(Q8)
    assert len(subs) == 3 and all(Q8.element_orders[list(s)].max() == 4 for s in subs)
    A = abelian_group([2, 4])
    assert maximal_abelian_subgroups(A) == [tuple(range(8))]


def test_normal_subgroups_with_cyclic_quotient():
    D4 = build_group(D4_PERM)
    subs = normal_subgroups_with_cyclic_quotient(D4)
    # D4 itself plus three index-2 subgroups
    assert sorted(len(s) for s in subs) == [4, 4, 4, 8]
    for S in subs:
        Qg, _ = quotient_group(D4, S)
        assert Qg.n == 1 or minimal_generator_count(Qg) == 1


def test_semidirect_quotient_subgroup():
    K, Q = cyclic_group(3), cyclic_group(2)
    inv = [int(K.inv[x]) for x in range(3)]
    S = semidirect_product(K, Q, [inv])
    assert S.n == 6 and not S.is_abelian() and len(S.conjugacy_classes) == 3
    D4 = build_group(D4_PERM)
    Z, proj = quotient_group(D4, D4.center)
    assert Z.n == 4 and Z.is_abelian() and len(proj) == 8
    H, emb = subgroup(D4, maximal_abelian_subgroups(D4)[0])
    assert H.n == 4 and len(emb) == 4


def test_quotient_rejects_non_normal():
    S3 = build_group(S3_PERM)
    inv = [x for x in range(6) if S3.element_orders[x] == 2][0]
    with pytest.raises(GroupError):
        quotient_group(S3, [0, inv])
