"""Acceptance run: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
"""

import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES

from cpext import catalog as cat
from cpext.extensions import check_cp_extension, cp_cover, verify_cover
from cpext.groups import commuting_probability
from cpext.suites import action_example, case_uct, run_suite


def _report(number, title, ok, detail="", started=None):
    took = f" ({time.perf_counter() - started:.1f}s)" if started is not None else ""
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}{took}"
    if detail:
        line += f" [{detail}]"
    ACCEPTANCE_LINES.append(line)
    return ok


def _suite(number, title, suite, min_cases=1, limit=None):
    t0 = time.perf_counter()
    rep = run_suite(suite)
    failed = [c.name for c in rep.cases if not c.passed]
    ok = rep.passed and rep.total >= min_cases
    if limit is not None:
        ok = ok and rep.wall_time <= limit
    _report(number, title, ok, f"{rep.total} cases, {len(failed)} failed", t0)
    assert ok, failed[:5]
    return rep


def test_01_small_groups_have_trivial_b0():
    _suite(1, "B0 = 0 for catalog groups of order <= 32", "small-b0", min_cases=25, limit=60)


def test_02_phi16_witness():
    t0 = time.perf_counter()
    from cpext.cohomology import multiplier_invariants

    Q = cat.get_group("Phi16")
    b0 = multiplier_invariants(Q).b0
    cp = commuting_probability(Q)
    ok = Q.n == 64 and tuple(b0) == (2,) and cp == Fraction(1, 4)
    _report(2, "Phi16 representative has B0 = C2 and cp = 1/4", ok, f"B0={list(b0)}, cp={cp}", t0)
    assert ok and time.perf_counter() - t0 <= 120


def test_03_phi16_cover():
    t0 = time.perf_counter()
    ext = cp_cover(cat.get_group("Phi16"))
    rep = verify_cover(ext)
    ok = ext.G.n == 128 and rep.passed and rep.k_G == 2 * rep.k_Q and rep.cp_G == Fraction(1, 4)
    _report(3, "CP cover of Phi16 has order 128 and passes every check", ok,
            ", ".join(f"{k}={v}" for k, v in rep.checks.items()), t0)
    assert ok and time.perf_counter() - t0 <= 600


def test_04_oracle_equivalence():
    _suite(4, "cohomological and exterior invariants agree up to order 16", "oracle-crosscheck", limit=300)


def test_05_uct_order_law():
    t0 = time.perf_counter()
    failed, total = [], 0
    for e in cat.select(max_order=32):
        n = e.order
        if n == 1:
            continue
        for m in sorted({2, 4, n}):
            total += 1
            res = case_uct(e.name, m)
            if not res.passed:
                failed.append(res.name)
    ok = not failed and total > 0
    _report(5, "UCT order law for m in {2, 4, |Q|}", ok, f"{total} cases, {len(failed)} failed", t0)
    assert ok, failed[:5]


def test_06_rank_formula():
    _suite(6, "rank of H2_CP(Q, F_p) equals d(Q) + d(B0)", "rank-formula")


def test_07_commuting_probability_criterion():
    _suite(7, "cp(Q[w]) = cp(Q) iff the class is CP, and iff kernel meets K(G) trivially", "comm-prob", min_cases=100)


def test_08_divisibility_bounds():
    _suite(8, "divisibility bounds on B0", "bounds")


def test_09_cp_above_quarter():
    _suite(9, "cp > 1/4 forces B0 = 0", "cp-quarter")


def test_10_non_cp_example():
    t0 = time.perf_counter()
    ext, (x1, x2) = action_example(2)
    chk = check_cp_extension(ext)
    ok = ext.G.n == 32 and not chk.is_cp and chk.witness == (x1, x2)
    _report(10, "action example is flagged non-CP", ok, f"witness={chk.witness}", t0)
    assert ok


def test_11_exponent_chain():
    _suite(11, "exp M | exp B0 * exp M0 and exp M0 | exp Q", "exp-schur")


def test_12_isoclinism():
    _suite(12, "isoclinism of D4/Q8, covers and class counts", "isoclinism")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
