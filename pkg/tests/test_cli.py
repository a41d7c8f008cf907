import json
import os
import subprocess
import sys

CLI = [sys.executable, "-m", "stabcat.cli"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + list(args), capture_output=True, text=True, env=env)


def test_verify_table_exit_zero():
    out = run_cli("verify-table", "a2-torsion")
    assert out.returncode == 0
    assert "exact match" in out.stdout


def test_hn_command(tmp_path):
    data = tmp_path / "a2.json"
    data.write_text(json.dumps({"order": ["1", "2"], "pieces": {"1": ["S1"], "2": ["S2"]}}))
    out = run_cli("hn", "--ambient", "an:2", "--data", str(data), "--object", "M[1,2]")
    assert out.returncode == 0
    lines = out.stdout.strip().splitlines()
    assert lines[1].strip() == "phase 2: M[2,2]@A2"
    assert lines[2].strip() == "phase 1: M[1,1]@A2"


def test_validate_invalid_exit_one(tmp_path):
    data = tmp_path / "bad.json"
    data.write_text(json.dumps({"order": ["1", "2"],
                                "pieces": {"1": ["S1^(1)@2"], "2": ["S0^(1)@2"]}}))
    out = run_cli("validate", "--ambient", "tube:2", "--data", str(data))
    assert out.returncode == 1
    assert "HN failure" in out.stdout


def test_validate_torsion_pair_file(tmp_path):
    data = tmp_path / "pair.json"
    data.write_text(json.dumps({"T": ["S1"], "F": ["P1", "S2"]}))
    out = run_cli("validate", "--ambient", "an:2", "--data", str(data))
    assert out.returncode == 0 and "valid" in out.stdout


def test_parse_error_exit_two(tmp_path):
    out = run_cli("validate", "--ambient", "nonsense:9", "--data", "/dev/null")
    assert out.returncode == 2


def test_window_violation_exit_three(tmp_path):
    data = tmp_path / "sd.json"
    data.write_text(json.dumps({"order": ["0"], "pieces": {"0": ["O(0)"]}}))
    out = run_cli("hn", "--ambient", "p1:window=-2..2:points=2",
                  "--data", str(data), "--object", "O(99)")
    assert out.returncode == 3
    assert "window" in out.stderr.lower()


def test_budget_violation_exit_four():
    out = run_cli("oracle-check", "tube-middle", env_extra={"STABCAT_BUDGET": "1"})
    assert out.returncode == 4
    assert "budget" in out.stderr.lower()


def test_finest_deterministic_output():
    a = run_cli("finest", "--ambient", "tube:3", "--upto-tau")
    b = run_cli("finest", "--ambient", "tube:3", "--upto-tau")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert "4 finest stability data" in a.stdout


def test_torsion_methods_agree_via_cli():
    brute = run_cli("torsion", "--ambient", "tube:3", "--method", "brute", "--upto-tau", "--json")
    structural = run_cli("torsion", "--ambient", "tube:3", "--method", "ray-coray",
                         "--upto-tau", "--json")
    assert brute.returncode == structural.returncode == 0
    assert json.loads(brute.stdout) == json.loads(structural.stdout)


def test_refine_and_compare(tmp_path):
    coarse = tmp_path / "coarse.json"
    coarse.write_text(json.dumps(
        {"order": ["1"], "pieces": {"1": ["S1", "S2", "P1"]}}))
    out = run_cli("refine", "--ambient", "an:2", "--data", str(coarse))
    assert out.returncode == 0
    refined = tmp_path / "refined.json"
    refined.write_text(out.stdout)
    cmp_out = run_cli("compare", "--ambient", "an:2", "--data", str(coarse),
                      "--data2", str(refined))
    assert cmp_out.returncode == 0
    assert "first coarser than second: True" in cmp_out.stdout
    assert "equivalent: False" in cmp_out.stdout


def test_emitted_json_reparses(tmp_path):
    out = run_cli("finest", "--ambient", "an:3")
    body = out.stdout.split("\n", 1)[1]
    docs = json.loads(body)
    assert len(docs) == 9
    from stabcat.ambients import parse_ambient
    from stabcat.stability import StabilityData

    amb = parse_ambient("an:3")
    for doc in docs:
        sd = StabilityData.from_json(doc, amb)
        assert sd.to_json() == {k: doc[k] for k in ("order", "pieces")}


def test_oracle_check_unknown_suite():
    out = run_cli("oracle-check", "no-such-suite")
    assert out.returncode == 2


def test_jobs_flag_result_independent():
    one = run_cli("oracle-check", "tube-hom", "--jobs", "1")
    four = run_cli("oracle-check", "tube-hom", "--jobs", "4")
    assert one.returncode == four.returncode == 0
    assert one.stdout.replace("jobs=1", "jobs=N") == four.stdout.replace("jobs=4", "jobs=N")


def test_verify_table_mismatch_prints_diff(monkeypatch):
    import stabcat.tables as tables

    real = tables.golden_text("a2-torsion")
    doc = json.loads(real)
    doc["rows"] = doc["rows"][:-1]

    def fake_golden(name):
        return json.dumps(doc)

    monkeypatch.setattr(tables, "golden_text", fake_golden)
    ok, diffs = tables.verify_table("a2-torsion")
    assert not ok and any("not in golden" in d for d in diffs)
