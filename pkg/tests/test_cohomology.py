import itertools

import numpy as np
import pytest

from cpext.catalog import get_group
from cpext.cohomology import (
    Cocycle,
    GModule,
    coboundary,
    cohomology_group,
    cp_two_cocycles,
    multiplier_invariants,
    relation_model,
    two_coboundaries,
    two_cocycles,
    uct_decomposition,
)
from cpext.groups import abelian_group, cyclic_group


def _brute_cocycles(M):
    n = M.Q.n
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    count = 0
    for vals in itertools.product(range(M.modulus), repeat=len(cells)):
        t = np.zeros((n, n, 1), dtype=np.int64)
        for (x, y), v in zip(cells, vals):
            t[x, y, 0] = v
        count += Cocycle(M, t).is_cocycle()
    return count


def test_cocycles_c2():
    M = GModule.trivial(cyclic_group(2), [2])
    assert two_cocycles(M).order() == 2 == _brute_cocycles(M)
    assert two_coboundaries(M).order() == 1
    assert cohomology_group(M).invariants == (2,)


def test_cocycles_klein_four_brute_force():
    M = GModule.trivial(abelian_group([2, 2]), [2])
    assert two_cocycles(M).order() == _brute_cocycles(M) == 16
    assert two_coboundaries(M).order() == 2
    assert cohomology_group(M).order() == 8
    assert cohomology_group(M, cp=True).order() == 4


def test_zero_module():
    M = GModule.trivial(get_group("S3"), [])
    assert two_cocycles(M).order() == 1


def test_constant_phi_gives_zero_coboundary():
    Q = get_group("S3")
    M = GModule.trivial(Q, [3])
    assert not coboundary(M, np.full(Q.n, 2)).table.any()


def test_abelian_cp_equals_ext():
    for inv, m in [([2, 2], 2), ([2, 4], 4), ([3, 3], 3)]:
        Q = abelian_group(inv)
        H = cohomology_group(GModule.trivial(Q, [m]), cp=True, method="direct")
        ext = 1
        for d in inv:
            ext *= np.gcd(d, m)
        assert H.order() == ext


def test_q8_all_cocycles_cp():
    Q8 = get_group("Q8")
    for m in (2, 4):
        M = GModule.trivial(Q8, [m])
        assert cp_two_cocycles(M).order() == two_cocycles(M).order()


def test_coboundaries_are_cp():
    rng = np.random.default_rng(0)
    D4 = get_group("D4")
    act = [np.eye(2, dtype=np.int64), np.array([[0, 1], [1, 0]])]
    for M in (GModule.trivial(D4, [4]), GModule.from_generator_action(D4, [2, 2], act)):
        for _ in range(5):
            w = coboundary(M, rng.integers(0, 4, (D4.n, M.dim)))
            assert w.is_cocycle() and w.is_cp()


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "C2xC2xC2", "D8", "Q16", "M16", "C4xC4", "C2xD4"])
@pytest.mark.parametrize("m", [2, 4])
def test_direct_and_relation_models_agree(name, m):
    Q = get_group(name)
    M = GModule.trivial(Q, [m])
    for cp in (False, True):
        a = cohomology_group(M, cp=cp, method="direct")
        b = cohomology_group(M, cp=cp, method="relation")
        assert a.invariants == b.invariants


def test_relation_classify_random_cocycles():
    rng = np.random.default_rng(1)
    Q = get_group("D4")
    M = GModule.trivial(Q, [4])
    H = cohomology_group(M, method="relation")
    Hd = cohomology_group(M, method="direct")
    for _ in range(10):
        coords = [int(rng.integers(d)) for d in H.invariants]
        w = H.cocycle(coords) + coboundary(M, rng.integers(0, 4, Q.n))
        assert H.classify(w) == tuple(coords)
        assert Hd.contains(w)
        assert (H.classify(w) == (0,) * len(coords)) == Hd.is_coboundary(w)


def test_cocycle_json_round_trip():
    Q = get_group("S3")
    M = GModule.trivial(Q, [6])
    H = cohomology_group(M)
    w = H.representatives[0] if H.invariants else coboundary(M, np.arange(Q.n))
    assert Cocycle.from_json(M, w.to_json()) == w


def test_uct_examples():
    U = uct_decomposition(get_group("C4"), 4)
    assert U.ext.invariants == (4,) and U.hom_b0.invariants == () and U.h2_cp.order() == 4
    U = uct_decomposition(get_group("Q8"), 8)
    assert U.ext.invariants == (2, 2) and U.hom_m.invariants == () and U.h2.order() == U.h2_cp.order()
    U = uct_decomposition(get_group("D4"), 8)
    assert U.hom_m.invariants == (2,) and U.hom_b0.invariants == () and U.hom_m0.invariants == (2,)


def test_uct_needs_multiple_of_order():
    with pytest.raises(ValueError):
        uct_decomposition(get_group("D4"), 4)


def test_multiplier_examples():
    assert multiplier_invariants(get_group("UT3(2)")).b0 == ()
    rep = multiplier_invariants(get_group("C2xC4"))
    assert rep.b0 == () and rep.m == rep.m0 == (2,)
    rep = multiplier_invariants(get_group("Phi16"))
    assert rep.b0 == (2,) and rep.m == (2, 4) and rep.m0 == (2, 2)


def test_nontrivial_module_direct_route():
    # C2 acting on Z/2 x Z/2 by swapping: the permutation module, H^2 = 0
    C2 = cyclic_group(2)
    M = GModule.from_generator_action(C2, [2, 2], [np.array([[0, 1], [1, 0]])])
    assert cohomology_group(M).order() == 1
    # C2 acting on Z/3 by inversion: H^2 = 0 (coprime orders)
    M = GModule.from_generator_action(C2, [3], [np.array([[2]])])
    assert cohomology_group(M).order() == 1


def test_relation_model_containments():
    R = relation_model(get_group("Phi16"), 2)
    assert R.L.contains_all(R.L_cp)
    assert R.L_cp.contains_all(R.const_ext)
    assert R.hom_b0.invariants == (2,)
