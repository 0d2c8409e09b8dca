import pytest

from cpext.catalog import get_group
from cpext.cohomology import multiplier_invariants
from cpext.exterior import (
    OracleOutOfRange,
    cp_quotient_oracle_checks,
    exterior_groups,
    exterior_presentation,
    exterior_report,
    multiplier_oracle,
)


def test_presentation_shape():
    Q = get_group("S3")
    P = exterior_presentation(Q, "wedge")
    assert P.ngens == 36 and len(P.relators) == 2 * 6 ** 3 + 6
    C = exterior_presentation(Q, "curly")
    assert len(C.relators) == len(P.relators) + int(Q.commuting.sum())


@pytest.mark.parametrize("name,wedge,curly", [("C2xC2", 2, 1), ("S3", 3, 3), ("D4", 4, 2)])
def test_square_orders(name, wedge, curly):
    Q = get_group(name)
    assert exterior_groups(Q, "wedge").order == wedge
    assert exterior_groups(Q, "curly").order == curly


def test_oracle_examples():
    r = multiplier_oracle(get_group("Q8"))
    assert r.m == r.m0 == r.b0 == ()
    r = multiplier_oracle(get_group("C2xC2"))
    assert r.m == r.m0 == (2,) and r.b0 == ()
    r = multiplier_oracle(get_group("S4"))
    assert r.m == (2,) and r.b0 == ()


def test_s3_wedge_is_cyclic_of_order_3():
    rep = exterior_report(get_group("S3"))
    assert rep.wedge.group.is_abelian() and rep.wedge.order == 3 and rep.M == ()


@pytest.mark.parametrize("name", ["D4", "Q8", "C2xD4", "A4", "D6"])
def test_oracle_matches_cohomology(name):
    Q = get_group(name)
    coh = multiplier_invariants(Q)
    ora = multiplier_oracle(Q)
    assert (coh.m, coh.m0, coh.b0) == (ora.m, ora.m0, ora.b0)


def test_oracle_cap():
    with pytest.raises(OracleOutOfRange):
        exterior_groups(get_group("A5"))


def test_quotient_oracle_examples():
    C4 = get_group("C4")
    sq = C4.closure([int(x) for x in range(C4.n) if C4.element_orders[x] == 2])
    r = cp_quotient_oracle_checks(C4, sq)
    assert r.is_cp and r.consistent and r.b0_order_G == r.b0_order_quotient == 1
    D4 = get_group("D4")
    r = cp_quotient_oracle_checks(D4, D4.center)
    assert not r.is_cp and r.consistent and (r.curly_order_G, r.curly_order_quotient) == (2, 1)
    Q8 = get_group("Q8")
    r = cp_quotient_oracle_checks(Q8, Q8.center)
    assert not r.is_cp and r.consistent
