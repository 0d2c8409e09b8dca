import itertools
import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cpext.catalog import get_group
from cpext.cohomology import GModule, cohomology_group, ext_invariants, hom_invariants, multiplier_invariants
from cpext.groups import abelian_group, commuting_probability, direct_product
from cpext.linalg import howell_form, smith_normal_form

small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.randoms(use_true_random=False))
def test_snf_invariant_under_permutation(A, rnd):
    A = np.array(A, dtype=np.int64)
    r = list(range(A.shape[0]))
    c = list(range(A.shape[1]))
    rnd.shuffle(r)
    rnd.shuffle(c)
    assert smith_normal_form(A).invariants == smith_normal_form(A[r][:, c]).invariants


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_snf_determinant_and_chain(A):
    S = smith_normal_form(A)
    inv = S.invariants
    assert all(d > 0 for d in inv)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    A = np.array(A)
    if A.shape[0] == A.shape[1]:
        det = round(abs(np.linalg.det(A.astype(float))))
        if det:
            assert math.prod(inv) == det


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6, 8, 9]), st.lists(st.lists(st.integers(0, 35), min_size=2, max_size=2), max_size=3))
def test_howell_order_matches_enumeration(m, rows):
    A = np.array(rows, dtype=np.int64).reshape(len(rows), 2) % m
    span = {(0, 0)}
    for co in itertools.product(range(m), repeat=len(rows)):
        span.add(tuple((np.array(co, dtype=np.int64) @ A) % m) if rows else (0, 0))
    H = howell_form(A, m, ncols=2)
    assert H.order() == len(span)


@settings(max_examples=12, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=3), st.sampled_from([2, 4, 6]))
def test_abelian_cp_cohomology_is_ext(inv, m):
    Q = abelian_group(inv)
    if Q.n > 32:
        return
    H = cohomology_group(GModule.trivial(Q, [m]), cp=True)
    assert H.order() == math.prod(ext_invariants(inv, m))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4", "D5", "C2xC2"]), st.sampled_from([2, 3, 4, 6]))
def test_uct_order_law(name, m):
    Q = get_group(name)
    H = cohomology_group(GModule.trivial(Q, [m]), cp=True)
    from cpext.groups import abelianization

    ext = ext_invariants(abelianization(Q).invariants, m)
    hom = hom_invariants(multiplier_invariants(Q).b0, m)
    assert H.order() == math.prod(ext) * math.prod(hom)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4"]), st.sampled_from(["C2", "C3", "S3", "Q8"]))
def test_commuting_probability_is_multiplicative(a, b):
    G, H = get_group(a), get_group(b)
    P = direct_product(G, H)
    assert commuting_probability(P) == commuting_probability(G) * commuting_probability(H)
