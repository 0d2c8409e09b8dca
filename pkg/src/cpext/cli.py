"""Command-line interface: ``cpext <command> ...``.

Exit codes: 0 when everything checked passes, 1 on a mathematical failure,
2 on usage errors, malformed input or exceeded caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as cat
from .bounds import PresentationBoundInput, presentation_rank_bound
from .cohomology import CohomologyCapExceeded, GModule, cohomology_group, multiplier_invariants, uct_decomposition
from .exterior import OracleOutOfRange, exterior_report
from .extensions import CoverSearchExhausted, check_cp_extension, cp_cover, extension_from_bundle, verify_cover
from .groups import CapExceeded, GroupError, group_summary
from .isoclinism import are_isoclinic, are_isomorphic, cp_extension_isoclinism_classes
from .suites import DEFAULT_SEED, SCHEMA_VERSION, SUITES, UnknownSuite, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _group(ref):
    try:
        return cat.resolve_group(ref)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


def _emit(payload: dict, as_json: bool, text_lines=None):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    if as_json or text_lines is None:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_analyze(args):
    G = _group(args.group)
    summary = group_summary(G)
    mult = multiplier_invariants(G).as_dict() if G.n > 1 else {"B0": [], "M": [], "M0": []}
    payload = {"command": "analyze", "group": args.group, "summary": summary, "multipliers": mult}
    _emit(payload, args.json, [
        f"{args.group}: order {G.n}, exponent {summary['exponent']}",
        f"commuting probability {summary['commuting_probability']}",
        f"M = {mult['M']}  M0 = {mult['M0']}  B0 = {mult['B0']}",
    ])
    return EXIT_OK


def cmd_b0(args):
    G = _group(args.group)
    b0 = list(multiplier_invariants(G).b0) if G.n > 1 else []
    _emit({"command": "b0", "group": args.group, "B0": b0}, args.json, [f"B0({args.group}) = {b0 or 'trivial'}"])
    return EXIT_OK


def cmd_h2cp(args):
    G = _group(args.group)
    M = GModule.trivial(G, [args.mod])
    H = cohomology_group(M, cp=True, method=args.method)
    full = cohomology_group(M, cp=False, method=args.method)
    payload = {"command": "h2cp", "group": args.group, "modulus": args.mod, "method": H.method,
               "H2_CP": list(H.invariants), "H2": list(full.invariants)}
    if args.mod % G.n == 0 and G.n > 1:
        payload["uct"] = uct_decomposition(G, args.mod).as_dict()
    _emit(payload, args.json, [f"H2_CP({args.group}, Z/{args.mod}) = {list(H.invariants)}",
                               f"H2({args.group}, Z/{args.mod}) = {list(full.invariants)}"])
    return EXIT_OK


def cmd_cover(args):
    G = _group(args.group)
    ext = cp_cover(G)
    rep = verify_cover(ext)
    base = cat.entry(args.group).spec if args.group in {e.name for e in cat.catalog()} else None
    if args.export:
        Path(args.export).write_text(json.dumps(ext.to_bundle(base), sort_keys=True) + "\n")
    payload = {"command": "cover", "group": args.group, "cover_order": ext.G.n, "report": rep.as_dict()}
    lines = [f"CP cover of {args.group}: order {ext.G.n}, kernel {list(ext.module.moduli)}"]
    lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in rep.checks.items()]
    _emit(payload, args.json, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_check_cp(args):
    try:
        bundle = json.loads(Path(args.bundle).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read bundle: {exc}") from exc
    try:
        ext = extension_from_bundle(bundle, resolve=_group)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"malformed bundle: {exc}") from exc
    chk = check_cp_extension(ext)
    payload = {"command": "check-cp", "order": ext.G.n, "central": ext.is_central, **chk.as_dict()}
    if ext.is_central:
        rep = verify_cover(ext)
        payload["cover_report"] = rep.as_dict()
    text = [f"extension of order {ext.G.n}: {'CP' if chk.is_cp else 'not CP'}"]
    if chk.witness:
        text.append(f"  commuting pair without commuting lifts: {chk.witness}")
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_isoclinic(args):
    G, H = _group(args.g1), _group(args.g2)
    icl, wit = are_isoclinic(G, H)
    iso = are_isomorphic(G, H)[0] if G.n == H.n else False
    payload = {"command": "isoclinic", "groups": [args.g1, args.g2], "isoclinic": icl, "isomorphic": iso}
    if wit is not None and args.witness:
        payload["witness"] = wit.as_dict()
    _emit(payload, args.json, [f"{args.g1} ~ {args.g2}: isoclinic={icl} isomorphic={iso}"])
    return EXIT_OK


def cmd_classes(args):
    G = _group(args.group)
    cc = cp_extension_isoclinism_classes(G)
    _emit({"command": "classes", "group": args.group, **cc.as_dict()}, args.json,
          [f"{args.group}: {cc.count} isoclinism classes of central CP extensions (B0 = {list(cc.b0)})"])
    return EXIT_OK


def cmd_oracle(args):
    G = _group(args.group)
    ora = exterior_report(G)
    coh = multiplier_invariants(G) if G.n > 1 else None
    agree = coh is None or (coh.m, coh.m0, coh.b0) == (ora.M, ora.M0, ora.B0)
    payload = {"command": "oracle", "group": args.group, "oracle": ora.as_dict(),
               "cohomological": coh.as_dict() if coh else None, "agree": agree}
    _emit(payload, args.json, [
        f"{args.group}: wedge order {ora.wedge.order}, curly order {ora.curly.order}",
        f"oracle M = {list(ora.M)}  M0 = {list(ora.M0)}  B0 = {list(ora.B0)}  agree = {agree}",
    ])
    return EXIT_OK if agree else EXIT_FAIL


def cmd_bound(args):
    try:
        data = json.loads(Path(args.presentation).read_text())
        inp = PresentationBoundInput.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, GroupError) as exc:
        raise UsageError(f"malformed presentation: {exc}") from exc
    rb = presentation_rank_bound(inp)
    payload = {"command": "bound", **rb.as_dict(), "commutator_flags": inp.flags}
    text = [f"d(B0) <= {rb.bound if rb.bound is not None else 'n/a'} ({rb.status})"]
    if rb.status == "unverified minimality":
        print("warning: group too large to verify minimality", file=sys.stderr)
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_verify(args):
    try:
        rep = run_suite(args.suite, filter_expr=args.filter, seed=args.seed, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = rep.as_dict(timing=args.timing)
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" for c in rep.cases]
    lines.append(f"{rep.suite}: {rep.total - rep.failed}/{rep.total} passed")
    if args.json:
        print(json.dumps(d, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    print(f"{rep.suite}: {rep.wall_time:.1f}s", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_catalog(args):
    rows = [{"name": e.name, **e.expected, "provenance": e.provenance} for e in cat.catalog()]
    _emit({"command": "catalog", "entries": rows}, args.json,
          [f"{r['name']:>14}  order {r['order']}" for r in rows])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpext", description="CP extensions, Bogomolov multipliers and covers")
    p.add_argument("--json", action="store_true", help="print JSON reports")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("analyze", cmd_analyze, "structure, commuting probability and multipliers")
    sp.add_argument("group")
    sp = add("b0", cmd_b0, "Bogomolov multiplier")
    sp.add_argument("group")
    sp = add("h2cp", cmd_h2cp, "CP cohomology with trivial Z/m coefficients")
    sp.add_argument("group")
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--method", choices=["auto", "relation", "direct"], default="auto")
    sp = add("cover", cmd_cover, "construct and verify a CP cover")
    sp.add_argument("group")
    sp.add_argument("--export", help="write the extension bundle JSON here")
    sp = add("check-cp", cmd_check_cp, "decide whether an extension bundle is CP")
    sp.add_argument("bundle")
    sp = add("isoclinic", cmd_isoclinic, "isoclinism test")
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp.add_argument("--witness", action="store_true")
    sp = add("classes", cmd_classes, "isoclinism classes of central CP extensions")
    sp.add_argument("group")
    sp = add("oracle", cmd_oracle, "exterior-square multipliers")
    sp.add_argument("group")
    sp = add("bound", cmd_bound, "rank bound for B0 from a presentation")
    sp.add_argument("presentation")
    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--filter", default=None, help="e.g. 'order<=16,pgroup' or 'name=D4|Q8'")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    add("catalog", cmd_catalog, "list catalog groups")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (UsageError, GroupError, CapExceeded, CohomologyCapExceeded, OracleOutOfRange, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoverSearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
