import json

import pytest

from quadsieve import cli
from quadsieve.acceptance import CriterionResult
from quadsieve.reporting import BoundReport


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_farey_json(capsys):
    code, out, err = _run(capsys, "farey", "--order", "4")
    assert code == 0
    assert out == '["1/4","1/3","1/2","2/3","3/4"]\n'
    assert err == ""


def test_farey_csv(capsys):
    code, out, _ = _run(capsys, "farey", "--order", "4", "--format", "csv")
    assert code == 0
    assert out == "fraction\n1/4\n1/3\n1/2\n2/3\n3/4\n"


def test_farey_bad_order_exits_1(capsys):
    code, out, err = _run(capsys, "farey", "--order", "1")
    assert code == 1
    assert out == ""
    assert "error" in err


def test_usage_errors_exit_1(capsys):
    assert _run(capsys, "farey")[0] == 1  # missing --order
    assert _run(capsys, "frobnicate")[0] == 1  # unknown command
    assert _run(capsys)[0] == 1  # no command at all


def test_rsum_point_value(capsys):
    code, out, _ = _run(capsys, "rsum", "--n", "1105")
    assert code == 0
    assert json.loads(out) == {"n": 1105, "r2": 32}


def test_rsum_sup(capsys):
    code, out, _ = _run(capsys, "rsum", "--sup-upto", "144")
    assert code == 0
    assert json.loads(out) == {"sup_r": 16, "argmax": 65}


def test_rsum_flag_discipline(capsys):
    code, _, err = _run(capsys, "rsum", "--n", "4", "--sup-upto", "10")
    assert code == 1
    assert "exactly one" in err
    assert _run(capsys, "rsum")[0] == 1


def test_rsum_scan_limit_exits_1(capsys):
    code, _, err = _run(capsys, "rsum", "--sup-upto", "4000000")
    assert code == 1
    assert "scan limit" in err


def test_circle_with_bounds(capsys):
    code, out, _ = _run(
        capsys, "circle", "--c1", "2", "--c2", "1", "--c3", "2", "--m", "1", "--H", "1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["points"] == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert payload["pass"] is True
    assert payload["bounds"]["pass"] is True
    assert payload["bounds"]["factors"]["point_count"] == 4


def test_circle_without_enough_points(capsys):
    code, out, _ = _run(
        capsys, "circle", "--c1", "1", "--c2", "0", "--c3", "3", "--m", "1", "--H", "2"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["points"] == []
    assert payload["bounds"] is None
    assert payload["pass"] is None


def test_circle_csv_rows(capsys):
    code, out, _ = _run(
        capsys,
        "circle", "--c1", "1", "--c2", "0", "--c3", "25", "--m", "1", "--H", "5",
        "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 13
    assert "0,5" in lines


def test_circle_rational_arguments(capsys):
    code, out, _ = _run(
        capsys,
        "circle", "--c1", "1", "--c2", "0", "--c3", "8", "--m", "1/2", "--H", "5/2",
    )
    assert code == 0
    assert json.loads(out)["points"] == [[-2, -2], [-2, 2], [2, -2], [2, 2]]
    assert _run(capsys, "circle", "--c1", "1", "--c2", "0", "--c3", "8",
                "--m", "1/0", "--H", "2")[0] == 1


def test_ay_profile(capsys):
    code, out, _ = _run(capsys, "ay", "--q", "1", "--p", "0", "--M", "0", "--N", "2")
    assert code == 0
    assert json.loads(out) == {"2": 1, "5": 2, "8": 1}


def test_ay_convention_violation(capsys):
    code, _, err = _run(capsys, "ay", "--q", "2", "--p", "0", "--M", "0", "--N", "2")
    assert code == 1
    assert "q = 1" in err


def test_verify_lemma_sweep(capsys):
    code, out, _ = _run(capsys, "verify-lemma", "--n", "25")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "verify-lemma"
    assert payload["instances"] == 25
    assert payload["passes"] == 25
    assert payload["failures"] == 0
    assert payload["failing"] == []
    assert 0.0 < payload["max_lhs_over_rhs"] <= 1.0


def test_verify_lemma_deterministic(capsys):
    first = _run(capsys, "verify-lemma", "--n", "12", "--seed", "3")
    second = _run(capsys, "verify-lemma", "--n", "12", "--seed", "3")
    assert first == second
    other_seed = _run(capsys, "verify-lemma", "--n", "12", "--seed", "4")
    assert other_seed[1] != first[1]


def test_verify_theorem_sweep(capsys):
    code, out, _ = _run(capsys, "verify-theorem", "--n", "10", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "instance,lhs,rhs,error_budget,pass"
    assert len(lines) == 11
    assert all(line.endswith("true") for line in lines[1:])


def test_verify_corollary_spec_file(tmp_path, capsys):
    spec = tmp_path / "instance.json"
    spec.write_text(
        '{"c0": 1, "c1": 0, "c2": 0, "M": 0, "N": 2, "Q": 3, "a": "ones"}',
        encoding="utf-8",
    )
    code, out, _ = _run(capsys, "verify-corollary", "--spec", str(spec))
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert abs(payload["lhs"] - 8.0) <= 1e-9
    assert payload["instance"]["M"] == 0
    assert payload["instance"]["N"] == 2
    assert payload["instance"]["Q"] == 3
    assert payload["factors"]["sup_r"] == 32


def test_verify_corollary_bad_spec_files(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    code, _, err = _run(capsys, "verify-corollary", "--spec", str(broken))
    assert code == 1
    assert "not valid JSON" in err

    code, _, err = _run(capsys, "verify-corollary", "--spec", str(tmp_path / "missing.json"))
    assert code == 1
    assert "cannot read" in err

    incomplete = tmp_path / "incomplete.json"
    incomplete.write_text('{"c0": 1, "c1": 0, "c2": 0, "M": 0, "Q": 3, "a": "ones"}',
                          encoding="utf-8")
    code, _, err = _run(capsys, "verify-corollary", "--spec", str(incomplete))
    assert code == 1
    assert "'N'" in err


def test_verify_corollary_sweep(capsys):
    code, out, _ = _run(
        capsys, "verify-corollary", "--n", "10", "--Qmax", "6", "--Nmax", "4"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["instances"] == 10
    assert payload["failures"] == 0


def test_sharpness_grid(capsys):
    code, out, _ = _run(capsys, "sharpness", "--Qmax", "4", "--Nmax", "3")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["cells"]) == 6
    assert payload["min_ratio"] <= payload["max_ratio"]
    ratios = {(c["Q"], c["N"]): c["ratio"] for c in payload["cells"]}
    assert abs(ratios[(3, 2)] - 8.0 / 30.0) <= 1e-12


def test_sharpness_csv_header(capsys):
    code, out, _ = _run(capsys, "sharpness", "--Qmax", "4", "--Nmax", "2",
                        "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "Q,N,lhs,ratio,envelope"


def test_out_file_writes_same_bytes(tmp_path, capsys):
    target = tmp_path / "farey.json"
    code, out, _ = _run(capsys, "farey", "--order", "7", "--out", str(target))
    assert code == 0
    assert out == ""
    direct = _run(capsys, "farey", "--order", "7")[1]
    assert target.read_text(encoding="utf-8") == direct


def test_selftest_single_criterion(capsys):
    code, out, _ = _run(capsys, "selftest", "--only", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert record["criterion"] == 1
    assert record["name"] == "farey-structure"
    assert record["pass"] is True
    assert "detail" in record


def test_selftest_rejects_unknown_criteria(capsys):
    code, _, err = _run(capsys, "selftest", "--only", "99")
    assert code == 1
    assert "99" in err
    assert _run(capsys, "selftest", "--only", "1,x")[0] == 1


def test_selftest_reports_failures_with_exit_2(monkeypatch, capsys):
    fake = [CriterionResult(1, "farey-structure", False, "forced failure", 0.0)]
    monkeypatch.setattr(cli.acceptance, "run", lambda numbers=None: fake)
    code, out, _ = _run(capsys, "selftest", "--only", "1")
    assert code == 2
    assert json.loads(out.splitlines()[0])["pass"] is False


def test_sweep_output_verdict_exit_code():
    config = cli.RunConfig("verify-lemma", {}, None, "json", 0)
    bad = BoundReport(2.0, 1.0, {}, 0.0, False)
    good = BoundReport(1.0, 2.0, {}, 0.0, True)
    text, code = cli._sweep_output(config, "verify-lemma", [good, bad])
    assert code == 2
    payload = json.loads(text)
    assert payload["failures"] == 1
    assert len(payload["failing"]) == 1
    text, code = cli._sweep_output(config, "verify-lemma", [good])
    assert code == 0


def test_worker_env_does_not_change_cli_bytes(monkeypatch, capsys):
    monkeypatch.setenv("LSL_THREADS", "1")
    serial = _run(capsys, "verify-theorem", "--n", "8", "--seed", "6")
    monkeypatch.setenv("LSL_THREADS", "2")
    threaded = _run(capsys, "verify-theorem", "--n", "8", "--seed", "6")
    assert serial == threaded


def test_entry_point_installed():
    import importlib.metadata as md

    entries = md.entry_points(group="console_scripts")
    names = {entry.name for entry in entries}
    assert "quadsieve" in names
