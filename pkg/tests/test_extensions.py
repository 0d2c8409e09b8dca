import json

import numpy as np
import pytest

from cpext.catalog import get_group
from cpext.cohomology import Cocycle, GModule, coboundary, cohomology_group
from cpext.extensions import (
    central_cp_quotient_check,
    check_cp_extension,
    corrupted_cover,
    cp_cover,
    extension_from_bundle,
    realize_extension,
    verify_cover,
)
from cpext.groups import CapExceeded, abelian_group, commuting_probability, cyclic_group
from cpext.isoclinism import are_isomorphic
from cpext.suites import action_example


def test_c2_by_c2_gives_c4():
    C2 = cyclic_group(2)
    M = GModule.trivial(C2, [2])
    t = np.zeros((2, 2, 1), dtype=np.int64)
    t[1, 1, 0] = 1
    ext = realize_extension(C2, M, Cocycle(M, t))
    assert ext.G.n == 4 and ext.G.element_orders.max() == 4
    chk = check_cp_extension(ext)
    assert chk.is_cp and chk.kernel_criterion


def test_zero_cocycle_gives_direct_product():
    Q = get_group("S3")
    M = GModule.trivial(Q, [2])
    ext = realize_extension(Q, M, Cocycle.zero(M))
    assert are_isomorphic(ext.G, get_group("C2xS3"))[0]


def test_numbering_is_kernel_major():
    Q = get_group("S3")
    M = GModule.trivial(Q, [3])
    ext = realize_extension(Q, M, Cocycle.zero(M))
    assert ext.kernel.tolist() == [0, 6, 12]
    assert (ext.projection == np.arange(18) % 6).all()
    # projection is a homomorphism
    p = ext.projection
    assert (p[ext.G.mul] == Q.mul[p[:, None], p[None, :]]).all()


def test_errors():
    Q = cyclic_group(3)
    M = GModule.trivial(Q, [2])
    t = np.zeros((3, 3, 1), dtype=np.int64)
    t[1, 1, 0] = 1  # defect at (x, x, x) is omega(x, x) for a generator x
    with pytest.raises(ValueError, match="not a cocycle"):
        realize_extension(Q, M, Cocycle(M, t))
    A5 = get_group("A5")
    with pytest.raises(CapExceeded):
        realize_extension(A5, GModule.trivial(A5, [9]), Cocycle.zero(GModule.trivial(A5, [9])))


def test_action_example_not_cp():
    ext, (x1, x2) = action_example(2)
    assert ext.G.n == 32 and not ext.is_central
    chk = check_cp_extension(ext)
    assert not chk.is_cp and chk.witness == (x1, x2) and chk.kernel_criterion is None


def test_d4_over_klein_four_not_cp():
    Q = abelian_group([2, 2])
    M = GModule.trivial(Q, [2])
    H = cohomology_group(M)
    D4 = get_group("D4")
    found = False
    for coords in H.quotient.elements():
        ext = realize_extension(Q, M, H.cocycle(coords))
        if are_isomorphic(ext.G, D4)[0]:
            found = True
            chk = check_cp_extension(ext)
            assert not chk.is_cp
            assert int(ext.kernel[1]) in set(ext.G.commutator_set.tolist())
    assert found


def test_cohomologous_cocycles_same_reports():
    rng = np.random.default_rng(4)
    Q = get_group("D4")
    M = GModule.trivial(Q, [2])
    H = cohomology_group(M)
    for coords in H.quotient.elements():
        w = H.cocycle(coords)
        w2 = w + coboundary(M, rng.integers(0, 2, Q.n))
        e1, e2 = realize_extension(Q, M, w), realize_extension(Q, M, w2)
        assert check_cp_extension(e1).is_cp == check_cp_extension(e2).is_cp
        assert verify_cover(e1).checks == verify_cover(e2).checks


@pytest.mark.parametrize("name", ["D4", "Q8", "S3", "C2xC2", "A4"])
def test_central_cp_extensions_center_and_classes(name):
    Q = get_group(name)
    for p in (2, 3):
        M = GModule.trivial(Q, [p])
        H = cohomology_group(M, cp=True)
        for coords in H.quotient.elements():
            ext = realize_extension(Q, M, H.cocycle(coords))
            assert check_cp_extension(ext).is_cp
            G = ext.G
            assert set(ext.projection[G.center].tolist()) == set(Q.center.tolist())
            assert len(G.center) == p * len(Q.center)
            assert len(G.conjugacy_classes) == p * len(Q.conjugacy_classes)
            assert commuting_probability(G) == commuting_probability(Q)


@pytest.mark.parametrize("name", ["D4", "C2xC4", "A5"])
def test_trivial_covers(name):
    Q = get_group(name)
    ext = cp_cover(Q)
    assert ext.G.n == Q.n and ext.kernel_order == 1
    rep = verify_cover(ext)
    assert rep.passed


def test_phi16_cover():
    Q = get_group("Phi16")
    ext = cp_cover(Q)
    assert ext.G.n == 128
    rep = verify_cover(ext)
    assert rep.passed and rep.b0_G == () and str(rep.cp_G) == "1/4" and rep.k_G == 2 * rep.k_Q
    assert ext.identification["b0"] == [2]
    bad = verify_cover(corrupted_cover(ext))
    assert not bad.is_stem and bad.is_cp
    q = central_cp_quotient_check(ext.G, ext.kernel)
    assert q.accepted and (q.b0_quotient_order, q.b0_G_order, q.intersection_order) == (2, 1, 2)
    assert q.certified_cover


def test_quotient_check_rejections():
    Q8 = get_group("Q8")
    r = central_cp_quotient_check(Q8, Q8.center)
    assert not r.accepted and "CP" in r.reason
    S3 = get_group("S3")
    r = central_cp_quotient_check(S3, S3.derived)
    assert not r.accepted and "central" in r.reason
    A = get_group("C2xC4")
    r = central_cp_quotient_check(A, [0, 1])
    assert r.accepted and r.order_law_holds


def test_bundle_round_trip(tmp_path):
    ext = cp_cover(get_group("Phi16"))
    bundle = json.loads(json.dumps(ext.to_bundle()))
    again = extension_from_bundle(bundle)
    assert np.array_equal(again.G.mul, ext.G.mul)
    ext2, _ = action_example(2)
    again = extension_from_bundle(json.dumps(ext2.to_bundle()))
    assert np.array_equal(again.G.mul, ext2.G.mul)
    assert not check_cp_extension(again).is_cp
