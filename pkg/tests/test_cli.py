import json
import subprocess
import sys

from cpext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "Q8")
    d = json.loads(out)
    assert code == 0 and d["schema_version"] == 1
    assert d["summary"]["commuting_probability"] == "5/8"
    assert d["multipliers"]["B0"] == []


def test_b0_and_h2cp(capsys):
    code, out, _ = run(capsys, "b0", "Phi16", "--json")
    assert code == 0 and json.loads(out)["B0"] == [2]
    code, out, _ = run(capsys, "h2cp", "C2xC2", "--mod", "2", "--json")
    d = json.loads(out)
    assert code == 0 and d["H2_CP"] == [2, 2] and d["H2"] == [2, 2, 2]


def test_cover_export_and_check(capsys, tmp_path):
    bundle = tmp_path / "cover.json"
    code, out, _ = run(capsys, "cover", "Phi16", "--export", str(bundle), "--json")
    assert code == 0 and json.loads(out)["cover_order"] == 128
    code, out, _ = run(capsys, "check-cp", str(bundle), "--json")
    d = json.loads(out)
    assert code == 0 and d["is_cp"] and d["cover_report"]["passed"]


def test_isoclinic_classes_oracle_bound(capsys, tmp_path):
    code, out, _ = run(capsys, "isoclinic", "D4", "Q8", "--json")
    d = json.loads(out)
    assert code == 0 and d["isoclinic"] and not d["isomorphic"]
    code, out, _ = run(capsys, "classes", "Phi16", "--json")
    assert code == 0 and json.loads(out)["count"] == 2
    code, out, _ = run(capsys, "oracle", "D4", "--json")
    assert code == 0 and json.loads(out)["agree"]
    pres = tmp_path / "p.json"
    pres.write_text(json.dumps({"generators": 1, "relators": ["aaaa"]}))
    code, out, _ = run(capsys, "bound", str(pres), "--json")
    assert code == 0 and json.loads(out)["bound"] == 0


def test_usage_errors(capsys):
    assert run(capsys, "b0", "NoSuchGroup")[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "oracle", "A5")[0] == 2


def test_verify_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "verify", "comm-prob", "--seed", "3", "--json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    d = json.loads(outs[0])
    assert d["totals"]["cases"] == 120 and d["passed"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    from cpext import suites

    monkeypatch.setattr(suites, "case_non_cp_example",
                        lambda: suites.CaseResult("forced failure", False))
    assert run(capsys, "verify", "non-cp-example")[0] == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cpext.cli", "--json", "b0", "D4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["B0"] == []
