import numpy as np
import pytest

from cpext.catalog import ISOCLINIC_PAIRS, get_group
from cpext.cohomology import GModule, cohomology_group
from cpext.extensions import check_cp_extension, cp_cover, realize_extension
from cpext.groups import abelian_group, cyclic_group, direct_product, group_from_presentation
from cpext.isoclinism import (
    are_isoclinic,
    are_isomorphic,
    automorphisms,
    cp_extension_isoclinism_classes,
    empirical_class_count,
    extensions_isoclinic,
)


def test_isomorphism_examples():
    D4, Q8 = get_group("D4"), get_group("Q8")
    assert not are_isomorphic(D4, Q8)[0]
    ok, m = are_isomorphic(D4, D4)
    assert ok and sorted(m.tolist()) == list(range(8))
    C6 = group_from_presentation(1, ["aaaaaa"])
    assert are_isomorphic(C6, direct_product(cyclic_group(2), cyclic_group(3)))[0]


def test_isomorphism_witness_is_homomorphism():
    G, H = get_group("D4"), get_group("UT3(2)")
    ok, m = are_isomorphic(G, H)
    assert ok
    assert (m[G.mul] == H.mul[m[:, None], m[None, :]]).all()


def test_automorphism_counts():
    assert automorphisms(abelian_group([2, 2])).order == 6
    assert automorphisms(cyclic_group(4)).order == 2
    A = automorphisms(get_group("S3"))
    assert A.order == 6 and A.is_closed()
    assert automorphisms(get_group("D4")).order == 8


def test_isoclinism_examples():
    D4, Q8 = get_group("D4"), get_group("Q8")
    ok, wit = are_isoclinic(D4, Q8)
    assert ok and len(wit.beta) == 2
    assert are_isoclinic(D4, get_group("C2xD4"))[0]
    assert not are_isoclinic(abelian_group([2, 2]), D4)[0]


@pytest.mark.parametrize("a,b", ISOCLINIC_PAIRS)
def test_catalog_pairs_isoclinic_and_symmetric(a, b):
    G, H = get_group(a), get_group(b)
    assert are_isoclinic(G, H)[0] and are_isoclinic(H, G)[0]
    assert are_isoclinic(G, G)[0]


def test_extension_isoclinism_examples():
    C2 = cyclic_group(2)
    M = GModule.trivial(C2, [2])
    H = cohomology_group(M)
    e_c4 = realize_extension(C2, M, H.cocycle((1,)))
    e_v4 = realize_extension(C2, M, H.cocycle((0,)))
    assert extensions_isoclinic(e_c4, e_c4)
    assert extensions_isoclinic(e_c4, e_v4)


def test_cp_and_non_cp_extensions_not_isoclinic():
    Q = abelian_group([2, 2])
    M = GModule.trivial(Q, [2])
    H = cohomology_group(M)
    exts = [realize_extension(Q, M, H.cocycle(c)) for c in H.quotient.elements()]
    cp = [e for e in exts if check_cp_extension(e).is_cp]
    non = [e for e in exts if not check_cp_extension(e).is_cp]
    assert cp and non
    for a in cp:
        for b in non:
            assert not extensions_isoclinic(a, b)


def test_isoclinic_extensions_preserve_cp():
    rng = np.random.default_rng(7)
    Q = get_group("D4")
    M = GModule.trivial(Q, [2])
    H = cohomology_group(M)
    classes = list(H.quotient.elements())
    for _ in range(12):
        c1 = classes[int(rng.integers(len(classes)))]
        c2 = classes[int(rng.integers(len(classes)))]
        e1, e2 = realize_extension(Q, M, H.cocycle(c1)), realize_extension(Q, M, H.cocycle(c2))
        if extensions_isoclinic(e1, e2) and check_cp_extension(e1).is_cp:
            assert check_cp_extension(e2).is_cp


def test_covers_of_isoclinic_groups():
    G, H = get_group("D4"), get_group("Q8")
    assert are_isoclinic(cp_cover(G).G, cp_cover(H).G)[0]


def test_class_counts():
    assert cp_extension_isoclinism_classes(get_group("D4")).count == 1
    cc = cp_extension_isoclinism_classes(get_group("Phi16"))
    assert cc.count == 2 and cc.subgroup_count == 2 and cc.aut_order == 512
    assert empirical_class_count(get_group("Phi16")) == 2
