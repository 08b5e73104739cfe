import json

import pytest

from kmweights.cli import EXIT_CONSISTENT, main
from kmweights.serialize import FORMAT_VERSION, ParseError, parse_weight_expr, weight_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_minimal_d4(capsys):
    code, out, _ = run(capsys, "minimal", "--type", "D4", "--emit", "json")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == FORMAT_VERSION
    assert len(doc["cosets"]) == 4
    assert {c["beta_vee"] for c in doc["cosets"]} <= {"0", "1"}


def test_weights_json(capsys):
    code, out, _ = run(capsys, "weights", "--type", "A1", "--level", "1", "--highest", "Λ0",
                       "--depth", "3", "--emit", "json")
    doc = json.loads(out)
    mults = {(w["weight"]["finite"][0], w["weight"]["d"]): w["mult"] for w in doc["weights"]}
    assert code == 0
    assert mults[("0", "-3")] == 3 and mults[("0", "0")] == 1


def test_mu0(capsys):
    code, out, _ = run(capsys, "mu0", "--type", "A1", "--highest", "L0", "--s", "-1", "--emit", "json")
    assert code == 0 and json.loads(out)["member"] is True


def test_casimir_audit(capsys):
    code, out, _ = run(capsys, "casimir-audit", "--type", "A2", "--level", "1", "--depth", "2")
    assert code == 0 and "all positive = True" in out


def test_verify_all_is_deterministic(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("KMWEIGHTS_OUTPUT_DIR", str(tmp_path))
    code, first, _ = run(capsys, "verify-all", "--max-rank", "2", "--depth", "1")
    saved = (tmp_path / "verify-all.json").read_text(encoding="utf-8")
    code2, second, _ = run(capsys, "verify-all", "--max-rank", "2", "--depth", "1")
    assert code == code2 == 0
    assert first == second == saved
    doc = json.loads(first)
    assert doc["ok"] and "wall_time" not in first
    keys = [(c["check"], json.dumps(c["params"], sort_keys=True)) for c in doc["cells"]]
    assert len(keys) == len(set(keys))
    assert set(doc["summary"]) == {"minimal-coroot-values", "mu0-membership",
                                   "casimir-pairs", "delta-finiteness"}


def test_verify_all_timings(capsys):
    code, out, _ = run(capsys, "verify-all", "--max-rank", "1", "--depth", "0", "--timings")
    assert code == 0 and "wall_time" in out


def _support_file(tmp_path, weights, level=1, depth=6):
    p = tmp_path / "support.json"
    p.write_text(json.dumps({"level": level, "depth": depth,
                             "weights": [weight_to_json(w) for w in weights]}))
    return str(p)


def test_obstruct_contradiction_and_window(capsys, tmp_path):
    from kmweights.affine import AffineWeight
    ladder = [AffineWeight((0, -6), -k, 1) for k in range(7)]
    path = _support_file(tmp_path, ladder)
    code, out, _ = run(capsys, "obstruct", "--spec", "B(1,1)", "--support", path)
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "contradiction" and doc["checker_errors"] == []
    code, out, _ = run(capsys, "obstruct", "--spec", "B(1,1)", "--support", path, "--mode", "window")
    assert code == EXIT_CONSISTENT and json.loads(out)["verdict"] == "consistent-at-depth"


def test_obstruct_hypothesis_errors(capsys, tmp_path):
    from kmweights.affine import AffineWeight
    path = _support_file(tmp_path, [AffineWeight((0, 0), 0, 0)], level=0)
    code, _, err = run(capsys, "obstruct", "--spec", "B(1,1)", "--support", path)
    assert code == 2 and "hypothesis violated" in err and "level" in err
    path = _support_file(tmp_path, [AffineWeight((0, 0, 0), 0, 1)])
    code, _, err = run(capsys, "obstruct", "--spec", "C(3)", "--support", path)
    assert code == 2 and "two" in err


@pytest.mark.parametrize("argv", [
    ["minimal", "--type", "Z3"],
    ["weights", "--type", "A1", "--highest", "L0 +* w1"],
    ["obstruct", "--spec", "B(1", "--support", "x.json"],
    ["weights", "--type", "A1", "--highest", "L0 + 3w1"],
    ["weights", "--type", "A1", "--highest", "2L0", "--level", "1"],
])
def test_errors_exit_nonzero(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code != 0 and err


def test_missing_support_file(capsys, tmp_path):
    code, _, err = run(capsys, "obstruct", "--spec", "B(1,1)", "--support", str(tmp_path / "nope.json"))
    assert code == 2 and "parse error" in err


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_weight_expr("L0 + w1 ? d", 1)
    assert e.value.pos == 8
    with pytest.raises(ParseError):
        parse_weight_expr("w3", 2)
    w = parse_weight_expr("2Λ0 + ω1 - 1/2δ", 2)
    assert (w.level, w.finite, w.d) == (2, (1, 0), -0.5)
