import json

import pytest

from qcong.cli import main
from qcong.runner import (
    CONJECTURE_COUNTEREXAMPLE,
    EXPECTED_FAILURE_CONFIRMED,
    SKIPPED,
    THEOREM_FAILED,
    THEOREM_VERIFIED,
    RunOptions,
    load_plan,
    make_report,
    outcome_status,
    parse_plan,
    parse_set,
    run_tasks,
    strip_timing,
)
from qcong.errors import ValidationError

FALSE_THEOREM = """claim wrong
kind: congruence
status: {status}
params: n
where: n >= 1; n odd
lhs: sum k=0..(n-1)/2 of [2*k+1]
rhs: 0
mod: Phi(n)^2
"""


@pytest.fixture
def wrong_dir(tmp_path):
    def make(status):
        d = tmp_path / status
        d.mkdir()
        (d / "wrong.qclaim").write_text(FALSE_THEOREM.format(status=status))
        return d
    return make


def test_status_mapping():
    assert outcome_status("theorem", True) == THEOREM_VERIFIED
    assert outcome_status("theorem", False) == THEOREM_FAILED
    assert outcome_status("conjecture", False) == CONJECTURE_COUNTEREXAMPLE
    assert outcome_status("refuted", False) == EXPECTED_FAILURE_CONFIRMED
    with pytest.raises(ValueError):
        outcome_status("lemma", True)


def test_plan_and_set_parsing():
    plan = parse_plan("# c\nthm1_1 d=2 n=3  # trailing\n\nrahman a=q^2\n")
    assert plan == [("thm1_1", {"d": 2, "n": 3}), ("rahman", {"a": "q^2"})]
    with pytest.raises(ValidationError):
        parse_plan("thm1_1 d2")
    assert parse_set(["d=2", "n=3..7,11"]) == {"d": [2], "n": [3, 4, 5, 6, 7, 11]}
    with pytest.raises(ValidationError):
        parse_set(["n"])
    names = {name for name, _ in load_plan()}
    assert {"thm1_1", "counterexample_n15", "vanhamme_g2", "rahman_d0"} <= names


def test_verify_text_output(capsys):
    code = main(["verify", "--filter", "thm1_1", "--set", "d=2", "--set", "n=3,7,11"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert len(out) == 4
    assert all(line.startswith(THEOREM_VERIFIED) for line in out[:3])
    assert "n=3" in out[0] and "n=11" in out[2]
    assert out[-1].startswith("totals: THEOREM_VERIFIED=3")


def test_json_report_and_rerender(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--filter", "lemma4_1", "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert {"version", "seed", "results", "totals"} <= set(report)
    assert report["seed"] == 42
    assert report["totals"][THEOREM_VERIFIED] == 4
    assert sum(report["totals"].values()) == len(report["results"])
    capsys.readouterr()
    assert main(["report", str(out)]) == 0
    assert capsys.readouterr().out.count(THEOREM_VERIFIED) == 5  # four lines plus totals


def test_expected_failure_and_dump(tmp_path, capsys):
    dump = tmp_path / "rem.json"
    code = main(["verify", "--filter", "counterexample_n15", "--set", "n=15", "--dump-remainder", str(dump)])
    out = capsys.readouterr().out
    assert code == 0
    assert EXPECTED_FAILURE_CONFIRMED in out and "remainder degree" in out
    data = json.loads(dump.read_text())
    (key, coeffs), = data.items()
    assert key.startswith("counterexample_n15(") and any(c != "0" for c in coeffs)


def test_theorem_failure_exit_code(wrong_dir, capsys):
    assert main(["verify", "--claims", str(wrong_dir("theorem")), "--set", "n=5"]) == 1
    assert THEOREM_FAILED in capsys.readouterr().out


def test_scan_counterexample_exit_code(wrong_dir, capsys):
    d = wrong_dir("conjecture")
    assert main(["verify", "--claims", str(d), "--set", "n=5"]) == 0
    assert main(["scan", "wrong", "--claims", str(d), "--set", "n=1..7"]) == 1
    err = capsys.readouterr().err
    assert "counterexample" in err


def test_claims_env_var(wrong_dir, monkeypatch, capsys):
    monkeypatch.setenv("QCONG_CLAIMS", str(wrong_dir("theorem")))
    assert main(["verify", "--set", "n=3"]) == 1


def test_usage_errors(tmp_path, capsys):
    assert main(["verify", "--filter", "thm1_1", "--set", "d=2", "--set", "n=5"]) == 2
    assert main(["verify", "--filter", "no_such_claim"]) == 2
    assert main(["report", str(tmp_path / "missing.json")]) == 2
    assert main(["scan", "no_such_claim", "--set", "n=1"]) == 2
    assert main(["scan", "thm1_1", "--set", "n=1..5"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["series", "--truncation", "-1"]) == 2


def test_scan_skips_inadmissible(capsys):
    assert main(["scan", "thm1_4_case1", "--set", "n=1..13"]) == 0
    lines = capsys.readouterr().out.splitlines()[:-1]
    assert [l.split("n=")[1].split(")")[0] for l in lines] == ["1", "5", "9", "13"]


def test_series_and_padic_subcommands(capsys):
    assert main(["series", "--filter", "chen_chu*", "--truncation", "20"]) == 0
    assert main(["padic", "--filter", "vanhamme_g2"]) == 0
    out = capsys.readouterr().out
    assert out.count(THEOREM_VERIFIED) >= 4


def test_budget_reports_skipped(claims):
    opts = RunOptions(budget=0.01)
    recs = run_tasks([("conj5_4", {"n": 5, "r": 2, "d": 2})], claims, opts)
    assert recs[0]["status"] == SKIPPED


def test_parallel_matches_sequential(claims):
    tasks = [(n, a) for n, a in load_plan() if n in ("thm1_1", "lemma4_1", "cor1_2", "qg2", "counterexample_n15")]
    opts = RunOptions()
    seq = make_report(run_tasks(tasks, claims, opts, parallel=1), 42, 0.0)
    par = make_report(run_tasks(list(reversed(tasks)), claims, opts, parallel=3), 42, 1.0)
    assert strip_timing(seq) == strip_timing(par)
