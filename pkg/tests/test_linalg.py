import itertools
import random

import numpy as np
import pytest

from cpext.kernels import xgcd
from cpext.linalg import (
    IntMatrix,
    full_module,
    howell_form,
    intersect,
    kernel_mod,
    module_sum,
    quotient_invariants,
    smith_normal_form,
    zero_module,
)


def _span(A, m, c):
    A = np.asarray(A, dtype=np.int64).reshape(-1, c)
    out = {tuple([0] * c)}
    for co in itertools.product(range(m), repeat=A.shape[0]):
        out.add(tuple((np.asarray(co, dtype=np.int64) @ A) % m))
    return out


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariants == (1, 6)
    assert smith_normal_form([[0]]).invariants == ()
    assert smith_normal_form([[2, 4], [6, 8]]).invariants == (2, 4)


def test_snf_transforms_are_unimodular():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A = rng.integers(-9, 10, (4, 5))
        S = smith_normal_form(A)
        U, V, D = (np.array(x, dtype=object) for x in (S.U, S.V, S.D))
        assert (U.dot(np.array(A, dtype=object)).dot(V) == D).all()
        assert abs(round(np.linalg.det(np.array(S.U, dtype=float)))) == 1
        assert abs(round(np.linalg.det(np.array(S.V, dtype=float)))) == 1
        inv = S.invariants
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))


def test_snf_permutation_invariance():
    rng = np.random.default_rng(5)
    for _ in range(15):
        A = rng.integers(-6, 7, (4, 4))
        base = smith_normal_form(A).invariants
        P = A[rng.permutation(4)][:, rng.permutation(4)]
        assert smith_normal_form(P).invariants == base


def test_xgcd():
    for a in range(-12, 13):
        for b in range(-12, 13):
            g, s, t = xgcd(a, b)
            assert s * a + t * b == g
            assert g == np.gcd(a, b)


def test_howell_examples():
    H = howell_form([[2]], 4, ncols=1)
    assert H.order() == 2 and H.contains([2]) and not H.contains([1])
    assert howell_form(np.eye(2, dtype=np.int64), 6).order() == 36
    H = howell_form([[2, 0], [0, 3]], 6)
    # enumeration of all 36 vectors gives a span of order 6 (see the ledger)
    assert H.order() == len(_span([[2, 0], [0, 3]], 6, 2)) == 6
    assert H.contains([2, 3])


@pytest.mark.parametrize("seed", range(4))
def test_howell_membership_brute_force(seed):
    rnd = random.Random(seed)
    for _ in range(40):
        m = rnd.choice([2, 4, 6, 8, 9, 12])
        c = rnd.randint(1, 3)
        r = rnd.randint(0, 3)
        A = [[rnd.randrange(m) for _ in range(c)] for _ in range(r)]
        span = _span(A, m, c)
        H = howell_form(np.asarray(A, dtype=np.int64).reshape(r, c), m, ncols=c)
        assert H.order() == len(span)
        for v in itertools.product(range(m), repeat=c):
            assert H.contains(np.asarray(v)) == (v in span)
        for row in np.asarray(H.rows).reshape(-1, c):
            assert tuple(row % m) in span


def test_kernel_examples():
    assert kernel_mod(np.array([[2]]), 4, ncols=1).order() == 2
    assert kernel_mod(np.eye(3, dtype=np.int64), 5, ncols=3).order() == 1
    K = kernel_mod(np.array([[1, 1], [1, 1]]), 2, ncols=2)
    assert K.order() == 2 and K.contains([1, 1])


def test_kernel_brute_force():
    rnd = random.Random(11)
    for _ in range(30):
        m = rnd.choice([4, 6, 8])
        A = np.array([[rnd.randrange(m) for _ in range(3)] for _ in range(2)])
        K = kernel_mod(A, m, ncols=3)
        ker = [v for v in itertools.product(range(m), repeat=3) if not ((A @ np.array(v)) % m).any()]
        assert K.order() == len(ker)
        for row in np.asarray(K.rows).reshape(-1, 3):
            assert not ((A @ row) % m).any()


def test_quotient_examples():
    assert quotient_invariants(full_module(4, 1), howell_form([[2]], 4, ncols=1)).invariants == (2,)
    F = full_module(6, 2)
    assert quotient_invariants(F, F).invariants == ()
    assert quotient_invariants(F, howell_form([[2, 0], [0, 3]], 6)).invariants == (6,)
    with pytest.raises(ValueError, match="not a submodule"):
        quotient_invariants(howell_form([[2]], 4, ncols=1), full_module(4, 1))


def test_quotient_maps_round_trip():
    rnd = random.Random(2)
    for _ in range(25):
        m = rnd.choice([4, 6, 8])
        A = np.array([[rnd.randrange(m) for _ in range(2)] for _ in range(2)])
        S = howell_form(A, m, ncols=2)
        Qg = quotient_invariants(full_module(m, 2), S)
        assert Qg.order() * S.order() == m * m
        for co in Qg.elements():
            assert Qg.project(Qg.lift(co)) == tuple(co)
        for v in itertools.product(range(m), repeat=2):
            assert (not any(Qg.project(np.array(v)))) == S.contains(np.array(v))


def test_sum_and_intersection():
    A = howell_form([[2, 0]], 4, ncols=2)
    B = howell_form([[0, 2]], 4, ncols=2)
    assert module_sum(A, B).order() == 4
    assert intersect(A, B).order() == 1
    assert zero_module(4, 2).order() == 1


def test_int_matrix_dump_round_trip():
    M = IntMatrix.from_array([[0, 3], [5, 0]])
    assert sorted(M.triplets()) == [(0, 1, 3), (1, 0, 5)]
    text = M.dump()
    assert "0 1 3" in text and "1 0 5" in text
    assert M.tolist() == [[0, 3], [5, 0]]
