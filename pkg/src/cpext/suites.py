"""Verification suites over the catalog.

Each suite expands into a list of independent cases; a case is a top-level
function plus plain arguments so that ``jobs > 1`` can farm cases out to a
process pool.  Reports are assembled in case order, so output does not depend
on scheduling.
"""

from __future__ import annotations

import math
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import catalog as cat
from .bounds import PresentationBoundInput, presentation_rank_bound
from .cohomology import (
    Cocycle,
    GModule,
    coboundary,
    cohomology_group,
    ext_invariants,
    hom_invariants,
    multiplier_invariants,
    relation_model,
    uct_decomposition,
)
from .exterior import cp_quotient_oracle_checks, exterior_report
from .extensions import (
    central_cp_quotient_check,
    check_cp_extension,
    corrupted_cover,
    cp_cover,
    realize_extension,
    verify_cover,
)
from .groups import (
    abelianization,
    abelian_group,
    commuting_probability,
    maximal_abelian_subgroups,
    minimal_generator_count,
    normal_subgroups_with_cyclic_quotient,
    p_group_prime,
    subgroup,
)
from .isoclinism import (
    are_isoclinic,
    are_isomorphic,
    cp_extension_isoclinism_classes,
    empirical_class_count,
)

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240601
SUITES = ("small-b0", "cp-quarter", "rank-formula", "bounds", "covers", "oracle-crosscheck",
          "comm-prob", "exp-schur", "isoclinism", "non-cp-example")


@dataclass
class CaseResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"case": self.name, "passed": self.passed, "details": self.details}


@dataclass
class SuiteReport:
    suite: str
    cases: list
    wall_time: float = 0.0

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.passed)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "passed": self.passed,
            "totals": {"cases": self.total, "passed": self.total - self.failed, "failed": self.failed},
            "cases": [c.as_dict() for c in self.cases],
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d


class UnknownSuite(KeyError):
    pass


# --------------------------------------------------------------------------
# shared helpers


@lru_cache(maxsize=None)
def _multipliers(name: str):
    return multiplier_invariants(cat.get_group(name))


def _b0(name: str) -> tuple[int, ...]:
    G = cat.get_group(name)
    return () if G.n == 1 else _multipliers(name).b0


def _exp(inv) -> int:
    return inv[-1] if inv else 1


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_filter(expr: str | None):
    """``order<=32``, ``order>=8``, ``name=D4|Q8``, ``pgroup``; comma separated."""
    if not expr:
        return lambda e: True
    tests = []
    for clause in expr.split(","):
        clause = clause.strip()
        if not clause:
            continue
        m = re.fullmatch(r"order\s*(<=|>=|<|>|==|=)\s*(\d+)", clause)
        if m:
            op, v = m.group(1), int(m.group(2))
            fn = {"<=": lambda a, b: a <= b, ">=": lambda a, b: a >= b, "<": lambda a, b: a < b,
                  ">": lambda a, b: a > b, "==": lambda a, b: a == b, "=": lambda a, b: a == b}[op]
            tests.append(lambda e, fn=fn, v=v: fn(e.order, v))
            continue
        m = re.fullmatch(r"name\s*=\s*(.+)", clause)
        if m:
            names = set(m.group(1).split("|"))
            tests.append(lambda e, names=names: e.name in names)
            continue
        if clause == "pgroup":
            tests.append(lambda e: len({p for p in _primes(e.order)}) == 1)
            continue
        raise ValueError(f"bad filter clause {clause!r}")
    return lambda e: all(t(e) for t in tests)


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _entries(max_order=None, pred=None, p_groups=False):
    out = cat.select(max_order=max_order, p_groups=p_groups)
    if pred is not None:
        out = [e for e in out if pred(e)]
    return [e.name for e in out]


# --------------------------------------------------------------------------
# case functions (top level so they pickle)


def case_small_b0(name):
    b0 = _b0(name)
    return CaseResult(f"B0({name}) trivial", not b0, {"order": cat.entry(name).order, "B0": list(b0)})


def case_cp_quarter(name):
    G = cat.get_group(name)
    e = cat.entry(name)
    cp = commuting_probability(G)
    b0 = _b0(name)
    ok = not (cp > Fraction(1, 4) and b0)
    det = {"cp": _frac(cp), "B0": list(b0)}
    if "cp" in e.expected:
        det["expected_cp"] = e.expected["cp"]
        ok = ok and Fraction(e.expected["cp"]) == cp
    if "b0" in e.expected:
        det["expected_B0"] = e.expected["b0"]
        ok = ok and list(b0) == e.expected["b0"]
    return CaseResult(f"cp({name}) > 1/4 implies B0 = 0", ok, det)


def case_uct(name, m):
    G = cat.get_group(name)
    M = GModule.trivial(G, [m])
    H = cohomology_group(M, cp=True)
    ext = ext_invariants(abelianization(G).invariants, m)
    hom = hom_invariants(_b0(name), m)
    lhs, rhs = H.order(), math.prod(ext) * math.prod(hom)
    det = {"m": m, "H2_CP": list(H.invariants), "Ext": list(ext), "Hom_B0": list(hom)}
    if m % G.n == 0 and G.n > 1:
        det["split"] = uct_decomposition(G, m).as_dict()
    return CaseResult(f"|H2_CP({name}, Z/{m})| = |Ext| |Hom(B0)|", lhs == rhs, det)


def case_rank(name):
    G = cat.get_group(name)
    p = p_group_prime(G)
    R = relation_model(G, p)
    inv = R.h2_cp.invariants
    elementary = all(d == p for d in inv)
    d = minimal_generator_count(G)
    b0 = _b0(name)
    db0 = sum(1 for x in b0 if x % p == 0)
    return CaseResult(f"rank H2_CP({name}, F_{p}) = d + d(B0)", elementary and len(inv) == d + db0,
                      {"p": p, "rank": len(inv), "d": d, "d_B0": db0})


def case_bounds(name):
    G = cat.get_group(name)
    b0 = _b0(name)
    failures = []
    nS = 0
    for S in normal_subgroups_with_cyclic_quotient(G):
        if len(S) == G.n:
            continue
        nS += 1
        H, _ = subgroup(G, S)
        b0S = () if H.n == 1 else multiplier_invariants(H).b0
        ab = abelianization(H).invariants if H.n > 1 else ()
        if (math.prod(b0S) * math.prod(ab)) % math.prod(b0) or len(b0) > len(b0S) + len(ab):
            failures.append({"S_order": len(S), "B0_S": list(b0S), "S_ab": list(ab)})
    e = _exp(b0)
    nA = 0
    for A in maximal_abelian_subgroups(G):
        nA += 1
        if (G.n // len(A)) % e:
            failures.append({"A_order": len(A)})
    return CaseResult(f"divisibility bounds for {name}", not failures,
                      {"B0": list(b0), "normal_cyclic_quotient": nS, "maximal_abelian": nA,
                       "failures": failures})


def _comm(u, v):
    inv = lambda w: "".join(ch.swapcase() for ch in reversed(w))  # noqa: E731
    return inv(u) + inv(v) + u + v


PRESENTATION_CASES = {
    "UT3(2)": {"generators": 2, "relators": ["aa", "bb", _comm("a", "b") * 2, _comm(_comm("a", "b"), "a"),
                                            _comm(_comm("a", "b"), "b")]},
    "C5": {"generators": 1, "relators": ["aaaaa"]},
    "Phi16": {"generators": 3, "relators": list(cat.PHI16_RELATORS)},
}


def case_presentation_bound(name):
    inp = PresentationBoundInput.from_json(PRESENTATION_CASES[name])
    rb = presentation_rank_bound(inp)
    G = cat.get_group(name)
    d_b0 = len(_b0(name))
    ok = rb.status == "ok" and rb.bound >= d_b0 and rb.order == G.n
    return CaseResult(f"presentation bound for {name}", ok, {**rb.as_dict(), "d_B0": d_b0})


def case_cover(name):
    G = cat.get_group(name)
    ext = cp_cover(G)
    rep = verify_cover(ext)
    det = rep.as_dict()
    det["cover_order"] = ext.G.n
    return CaseResult(f"CP cover of {name}", rep.passed, det)


def case_corrupted_cover(name):
    ext = cp_cover(cat.get_group(name))
    bad = verify_cover(corrupted_cover(ext))
    return CaseResult(f"corrupted cover of {name} is not stem", not bad.is_stem,
                      {"checks": bad.checks})


def case_quotient_check(name):
    ext = cp_cover(cat.get_group(name))
    rep = central_cp_quotient_check(ext.G, ext.kernel)
    return CaseResult(f"B0(G/N) = B0(G) |N cap G'| for the cover of {name}",
                      rep.accepted and rep.order_law_holds and rep.certified_cover, rep.as_dict())


def case_quotient_reject(name):
    G = cat.get_group(name)
    rep = central_cp_quotient_check(G, G.center)
    return CaseResult(f"Z({name}) rejected as non-CP", not rep.accepted, rep.as_dict())


def case_oracle(name):
    G = cat.get_group(name)
    coh = _multipliers(name) if G.n > 1 else None
    ora = exterior_report(G)
    det = {"oracle": ora.as_dict(), "cohomological": coh.as_dict() if coh else None}
    if coh is None:
        ok = not ora.M and not ora.B0 and not ora.M0
    else:
        ok = (coh.b0, coh.m, coh.m0) == (ora.B0, ora.M, ora.M0)
    return CaseResult(f"oracle agrees for {name}", ok, det)


def case_oracle_quotient(name, which):
    G = cat.get_group(name)
    N = G.center if which == "center" else G.closure([int(G.center[-1])])
    rep = cp_quotient_oracle_checks(G, N)
    return CaseResult(f"CP quotient criteria agree for {name}/{which}", rep.consistent, rep.as_dict())


def case_exp_schur(name):
    G = cat.get_group(name)
    rep = exterior_report(G)
    eM, eB, eM0 = _exp(rep.M), _exp(rep.B0), _exp(rep.M0)
    ok = (eB * eM0) % eM == 0 and G.exponent() % eM0 == 0
    return CaseResult(f"exponent chain for {name}", ok,
                      {"exp_M": eM, "exp_B0": eB, "exp_M0": eM0, "exp_Q": G.exponent()})


def case_comm_prob(index, seed, max_order):
    """One random class: cp equality, CP cocycle and kernel criterion all agree."""
    rng = np.random.default_rng([seed, index])
    names = [n for n in _entries(max_order=max_order) if cat.get_group(n).n > 1]
    name = names[int(rng.integers(len(names)))]
    m = int(rng.choice([2, 4]))
    Q = cat.get_group(name)
    M = GModule.trivial(Q, [m])
    H = cohomology_group(M, cp=False)
    coords = [int(rng.integers(d)) for d in H.invariants]
    omega = H.cocycle(coords) + coboundary(M, rng.integers(0, m, Q.n))
    ext = realize_extension(Q, M, omega)
    chk = check_cp_extension(ext)
    in_cp = relation_model(Q, m).L_cp.contains(relation_model(Q, m).theta(omega))
    cp_equal = commuting_probability(ext.G) == commuting_probability(Q)
    ok = cp_equal == in_cp == chk.is_cp == chk.kernel_criterion == omega.is_cp()
    return CaseResult(f"random class #{index} on {name} mod {m}", ok,
                      {"class": coords, "cp_equal": cp_equal, "in_H2_CP": bool(in_cp),
                       "lift_search": chk.lift_search, "kernel_criterion": chk.kernel_criterion})


def case_iso_d4_q8():
    D4, Q8 = cat.get_group("D4"), cat.get_group("Q8")
    iso, _ = are_isomorphic(D4, Q8)
    icl, _ = are_isoclinic(D4, Q8)
    return CaseResult("D4 and Q8 isoclinic but not isomorphic", (not iso) and icl,
                      {"isomorphic": iso, "isoclinic": icl})


def case_isoclinic_covers(a, b):
    G, H = cat.get_group(a), cat.get_group(b)
    pair, _ = are_isoclinic(G, H)
    rev, _ = are_isoclinic(H, G)
    covers = None
    if pair:
        cG, cH = cp_cover(G), cp_cover(H)
        covers, _ = are_isoclinic(cG.G, cH.G)
    return CaseResult(f"covers of {a} and {b} isoclinic", bool(pair and rev and covers),
                      {"pair_isoclinic": pair, "symmetric": rev == pair, "covers_isoclinic": covers})


def case_class_count(name):
    Q = cat.get_group(name)
    cc = cp_extension_isoclinism_classes(Q)
    emp = empirical_class_count(Q)
    expected = 2 if cc.b0 == (2,) else (1 if not cc.b0 else None)
    ok = cc.count == emp and (expected is None or cc.count == expected)
    return CaseResult(f"isoclinism classes of CP extensions of {name}", ok,
                      {**cc.as_dict(), "empirical": emp})


def action_example(p: int = 2):
    """Q = C_p^2 acting on N = C_p^3 (x1 trivially, x2 swapping a1, a2) with x2^x1 = x2 a3."""
    Q = abelian_group([p, p], name=f"C{p}xC{p}")
    swap = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=np.int64)
    # Q generators in order x1, x2
    N = GModule.from_generator_action(Q, [p, p, p], [np.eye(3, dtype=np.int64), swap])
    x1, x2 = int(Q.generators[0]), int(Q.generators[1])
    # omega(x, y) = (coefficient of x2 in x) * (coefficient of x1 in y) * a3
    coord = {}
    for i in range(p):
        for j in range(p):
            coord[Q.m(Q.power(x1, i), Q.power(x2, j))] = (i, j)
    t = np.zeros((Q.n, Q.n, 3), dtype=np.int64)
    for x in range(Q.n):
        for y in range(Q.n):
            t[x, y, 2] = coord[x][1] * coord[y][0]
    omega = Cocycle(N, t)
    return realize_extension(Q, N, omega, name="action example"), (x1, x2)


def case_non_cp_example():
    ext, (x1, x2) = action_example(2)
    chk = check_cp_extension(ext)
    ok = ext.G.n == 32 and not chk.is_cp and chk.witness == (min(x1, x2), max(x1, x2))
    return CaseResult("action example is not CP", ok,
                      {"order": ext.G.n, **chk.as_dict(), "x1": x1, "x2": x2})


# --------------------------------------------------------------------------
# suite definitions


def _plan(suite: str, pred, seed: int):
    P = pred

    def names(**kw):
        return _entries(pred=P, **kw)

    if suite == "small-b0":
        return [(case_small_b0, (n,)) for n in names(max_order=32)]
    if suite == "cp-quarter":
        return [(case_cp_quarter, (n,)) for n in names()]
    if suite == "rank-formula":
        return [(case_rank, (n,)) for n in names(max_order=64, p_groups=True)]
    if suite == "bounds":
        plan = [(case_bounds, (n,)) for n in names(max_order=64) if cat.get_group(n).n > 1]
        plan += [(case_presentation_bound, (n,)) for n in PRESENTATION_CASES if P(cat.entry(n))]
        return plan
    if suite == "covers":
        plan = [(case_cover, (n,)) for n in names() if cat.get_group(n).n * math.prod(_b0(n)) <= 512]
        with_b0 = [n for n in names() if _b0(n)]
        plan += [(case_corrupted_cover, (n,)) for n in with_b0]
        plan += [(case_quotient_check, (n,)) for n in with_b0]
        if P(cat.entry("Q8")):
            plan.append((case_quotient_reject, ("Q8",)))
        return plan
    if suite == "oracle-crosscheck":
        plan = [(case_oracle, (n,)) for n in names(max_order=16)]
        for n in ("D4", "C4", "Q8", "C2xD4"):
            if P(cat.entry(n)):
                plan.append((case_oracle_quotient, (n, "center")))
        return plan
    if suite == "comm-prob":
        return [(case_comm_prob, (i, seed, 16)) for i in range(120)]
    if suite == "exp-schur":
        return [(case_exp_schur, (n,)) for n in names(max_order=16) if cat.get_group(n).n > 1]
    if suite == "isoclinism":
        plan = [(case_iso_d4_q8, ())]
        plan += [(case_isoclinic_covers, pair) for pair in cat.ISOCLINIC_PAIRS
                 if P(cat.entry(pair[0])) and P(cat.entry(pair[1]))]
        plan += [(case_class_count, (n,)) for n in names(max_order=64)]
        return plan
    if suite == "non-cp-example":
        return [(case_non_cp_example, ())]
    raise UnknownSuite(suite)


def _call(item):
    fn, args = item
    try:
        return fn(*args)
    except Exception as exc:  # a crash is a failed case, reported with its reason
        return CaseResult(f"{fn.__name__}{args}", False, {"error": f"{type(exc).__name__}: {exc}"})


def run_suite(name: str, filter_expr: str | None = None, seed: int = DEFAULT_SEED, jobs: int = 1) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(name)
    t0 = time.perf_counter()
    plan = _plan(name, parse_filter(filter_expr), seed)
    if jobs > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_call, plan))
    else:
        cases = [_call(item) for item in plan]
    return SuiteReport(name, cases, time.perf_counter() - t0)
