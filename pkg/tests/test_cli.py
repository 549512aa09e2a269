import json
import subprocess
import sys

import numpy as np
import pytest

from rrsvd import cli, report
from rrsvd.errors import ConvergenceError
from rrsvd.groups import GROUP_LETTERS, embedded_group
from rrsvd.report import analyze, to_dict, to_json, to_text

TOP_KEYS = ["tournament", "matrix", "svd", "scores", "explained", "predicted",
            "correction", "polar", "standings"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_c_text(capsys):
    code, out, err = run(capsys, "analyze", "--group", "C")
    assert code == 0 and err == ""
    assert "Singular values: (4.3328, 2.1135, 1.5973, 0.6971)" in out
    assert "Explained fraction: k=1: 0.7144" in out
    assert "Boring: Poland (-0.4490), Mexico (-0.4425), Saudi Arabia (-0.1660)" in out
    assert "Poland 0.3757:0.3757 Saudi Arabia" in out


def test_group_c_standings_section(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "C", "--section", "standings")
    assert code == 0
    lines = [ln.split() for ln in out.splitlines()]
    table = {ln[0]: ln for ln in lines if len(ln) == 9 and ln[0] in ("Argentina", "Poland", "Mexico")}
    assert table["Argentina"][1] == "6"
    assert table["Poland"][1] == "4" and table["Poland"][7] == "0"
    assert table["Mexico"][1] == "4" and table["Mexico"][7] == "-1"
    assert "Saudi Arabia       3" in out
    assert "Advancing: Argentina, Poland" in out
    assert "Poland > Mexico: goal_difference" in out
    assert "Singular values" not in out


def test_json_schema_and_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "C", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert list(data) == TOP_KEYS
    r = analyze(embedded_group("C"))
    assert data["svd"]["sigma"] == r.svd.sigma.tolist()
    assert np.array_equal(np.array(data["svd"]["u"]).T, r.svd.u)
    assert np.array_equal(np.array(data["matrix"]["rows"]), r.performance.matrix)
    assert data["matrix"]["labels"] == ["Argentina", "Poland", "Mexico", "Saudi Arabia"]
    assert data["standings"]["advancing"] == ["Argentina", "Poland"]
    assert data["scores"]["offense_ranking"] == ["Argentina", "Saudi Arabia", "Mexico", "Poland"]
    assert data["explained"]["fractions"][0]["value"] == pytest.approx(0.7144, abs=5e-4)
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_json_section_filter():
    r = analyze(embedded_group("B"))
    assert list(to_dict(r, "polar")) == ["tournament", "polar"]
    assert list(to_dict(r, "svd")) == ["tournament", "svd", "explained"]


@pytest.mark.parametrize("letter", GROUP_LETTERS)
def test_text_and_json_share_one_report(letter):
    r = analyze(embedded_group(letter))
    text = to_text(r)
    data = json.loads(to_json(r))
    for x in data["svd"]["sigma"]:
        assert f"{x:.4f}" in text


def test_json_to_file(tmp_path, capsys):
    dest = tmp_path / "c.json"
    code, out, _ = run(capsys, "analyze", "--group", "C", "--format", "json", "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["tournament"]["teams"][3] == "Saudi Arabia"


def test_degenerate_file(tmp_path, capsys):
    f = tmp_path / "minimal.rrt"
    f.write_text("teams: A, B\nA 0:0 B\n")
    code, out, _ = run(capsys, "analyze", "--file", str(f))
    assert code == 0
    assert "DEGENERATE" in out and "degenerate" in out
    code, out, _ = run(capsys, "analyze", "--file", str(f), "--format", "json")
    data = json.loads(out)
    assert data["explained"]["degenerate"] is True
    assert data["matrix"]["rows"] == [[0.0, 0.0], [0.0, 0.0]]
    assert data["correction"]["degenerate"] is True


def test_rank_one_file(tmp_path, capsys):
    f = tmp_path / "draw.rrt"
    f.write_text("teams: A, B\nA 1:1 B\n")
    code, out, _ = run(capsys, "analyze", "--file", str(f), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["explained"]["fractions"][0]["value"] == 1.0
    assert data["correction"]["degenerate"] is True
    assert data["polar"]["rank_deficient"] is True


def test_rank_flag(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "C", "--format", "json", "--rank", "4")
    data = json.loads(out)
    assert np.allclose(data["predicted"]["rows"], data["matrix"]["rows"], atol=1e-12)
    code, _, err = run(capsys, "analyze", "--group", "C", "--rank", "9")
    assert code == 2 and "--rank" in err


def test_seed_flag_overrides_file(tmp_path, capsys):
    f = tmp_path / "draws.rrt"
    f.write_text("teams: A, B, C, D\nseed: 1\n"
                 "A 0:0 B\nA 0:0 C\nA 0:0 D\nB 0:0 C\nB 0:0 D\nC 0:0 D\n")
    seen = set()
    for seed in range(12):
        _, out, _ = run(capsys, "analyze", "--file", str(f), "--format", "json",
                        "--section", "standings", "--seed", str(seed))
        seen.add(tuple(json.loads(out)["standings"]["advancing"]))
    assert len(seen) > 1


def test_diagonal_rule_flag(capsys):
    _, out, _ = run(capsys, "analyze", "--group", "H", "--format", "json", "--diagonal-rule")
    data = json.loads(out)
    assert data["tournament"]["diagonal_source"] == "rule"
    assert data["matrix"]["rows"][0][0] == pytest.approx(10 / 6)


@pytest.mark.parametrize("argv, fragment", [
    (["analyze", "--group", "Z"], "unknown group"),
    (["analyze", "--file", "/nonexistent/x.rrt"], "cannot read"),
])
def test_input_errors(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert fragment in err


def test_parse_error_line_number(tmp_path, capsys):
    f = tmp_path / "bad.rrt"
    f.write_text("teams: A, B\n\nA 1:x B\n")
    code, _, err = run(capsys, "analyze", "--file", str(f))
    assert code == 2 and "line 3" in err


def test_numeric_error_exit_code(capsys, monkeypatch):
    def boom(_):
        raise ConvergenceError("one-sided Jacobi did not converge", 1e-3, 64)
    monkeypatch.setattr(report, "svd", boom)
    code, _, err = run(capsys, "analyze", "--group", "C")
    assert code == 3 and "numeric error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        cli.main(["analyze"])
    assert info.value.code == 2


def test_group_subcommand_round_trips(capsys):
    code, out, _ = run(capsys, "group", "e")
    assert code == 0 and "Spain 7:0 \"Costa Rica\"" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rrsvd", "analyze", "--group", "A",
                           "--section", "svd"], capture_output=True, text=True, check=True)
    assert "Explained fraction: k=1: 0.9302" in proc.stdout
