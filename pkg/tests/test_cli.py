"""Command-line front end: determinism, output formats, exit codes."""

import json

import pytest

from tatepair import cli
from tatepair import curvedata as cd


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# pair


def test_pair_random_is_deterministic(capsys):
    rc1, out1, _ = run(capsys, "pair", "desk-ed-a1-k6", "--random", "--seed", "1")
    rc2, out2, _ = run(capsys, "pair", "desk-ed-a1-k6", "--random", "--seed", "1")
    assert rc1 == rc2 == cli.EXIT_OK
    assert out1 == out2
    assert "mu_n = True" in out1
    rc3, out3, _ = run(capsys, "pair", "desk-ed-a1-k6", "--random", "--seed", "2")
    assert rc3 == cli.EXIT_OK and out3 != out1


def test_pair_explicit_points_and_oracle_agree(capsys, desk):
    import random
    rec = desk["desk-ed-a1-k6"]
    tower = cd.make_tower(rec)
    rng = random.Random(5)
    P = cd.find_order_n_point(rec, rng)
    Q = cd.find_twist_point(tower, rec, rng)
    p_arg = f"{P[0]};{P[1]}"
    q_arg = ",".join(map(str, Q[0])) + ";" + ",".join(map(str, Q[1]))
    rc1, out1, _ = run(capsys, "pair", "desk-ed-a1-k6", p_arg, q_arg)
    rc2, out2, _ = run(capsys, "pair", "desk-ed-a1-k6", p_arg, q_arg, "--oracle")
    assert rc1 == rc2 == cli.EXIT_OK
    val1 = [l for l in out1.splitlines() if l.startswith("value")]
    val2 = [l for l in out2.splitlines() if l.startswith("value")]
    assert val1 == val2


def test_pair_json_lines_well_formed(capsys):
    rc, out, _ = run(capsys, "pair", "desk-w-am3-k4", "--random",
                     "--format", "json-lines")
    assert rc == cli.EXIT_OK
    (line,) = out.strip().splitlines()
    obj = json.loads(line)
    assert obj["mu_n"] is True
    assert len(obj["value"]) == 4      # k coefficients over F_p


def test_pair_bad_inputs_exit_2(capsys):
    rc, _, err = run(capsys, "pair", "no-such-curve", "--random")
    assert rc == cli.EXIT_BAD_INPUT and "unknown curve" in err
    rc, _, err = run(capsys, "pair", "desk-ed-a1-k6", "1;1", "1,2,3;1,2,3")
    assert rc == cli.EXIT_BAD_INPUT
    rc, _, err = run(capsys, "pair", "desk-ed-a1-k6", "3;4")
    assert rc == cli.EXIT_BAD_INPUT           # Q' missing
    rc, _, err = run(capsys, "pair", "desk-ed-a1-k6", "3;4", "1;2")
    assert rc == cli.EXIT_BAD_INPUT           # wrong component counts


# ---------------------------------------------------------------------------
# opcount


@pytest.mark.parametrize("flavor,k", [("edwards", 6), ("edwards", 4),
                                      ("w-am3", 4), ("w-a0", 6)])
def test_opcount_passes(capsys, flavor, k):
    rc, out, _ = run(capsys, "opcount", flavor, "--k", str(k))
    assert rc == cli.EXIT_OK
    assert out.count("status = PASS") == 3
    assert "FAIL" not in out


def test_opcount_unknown_combination_exit_2(capsys):
    rc, _, err = run(capsys, "opcount", "w-am3", "--k", "8")
    assert rc == cli.EXIT_BAD_INPUT


def test_opcount_mismatch_exit_4(capsys, monkeypatch):
    from tatepair.opcount import OpCounter
    wrong = {"DBL": OpCounter(m=999), "ADD": OpCounter(m=999),
             "mADD": OpCounter(m=999)}
    monkeypatch.setattr(cli, "expected_step_counts", lambda *a, **kw: wrong)
    rc, out, _ = run(capsys, "opcount", "edwards")
    assert rc == cli.EXIT_COUNT_MISMATCH
    assert "FAIL" in out


# ---------------------------------------------------------------------------
# validate-curve


def test_validate_curve_pass_and_fail(capsys, tmp_path, desk):
    rc, out, _ = run(capsys, "validate-curve", "desk-ed-a1-k6",
                     "--effort", "quick")
    assert rc == cli.EXIT_OK and "status = PASS" in out

    rec = desk["desk-ed-a1-k6"]
    import dataclasses
    bad = dataclasses.replace(rec, h=rec.h + 1, name="broken")
    path = tmp_path / "broken.curve"
    path.write_text(cd.serialize_curve(bad), encoding="utf-8")
    rc, out, _ = run(capsys, "validate-curve", str(path), "--effort", "quick")
    assert rc == cli.EXIT_VALIDATION
    assert "FAIL" in out


def test_validate_curve_file_parse_error_exit_2(capsys, tmp_path):
    path = tmp_path / "garbage.curve"
    path.write_text("definitely not a curve file\n", encoding="utf-8")
    rc, _, err = run(capsys, "validate-curve", str(path))
    assert rc == cli.EXIT_BAD_INPUT


# ---------------------------------------------------------------------------
# bench and derive-desk


def test_bench_reports_identical_values(capsys):
    rc, out, _ = run(capsys, "bench", "desk-w-a0-k6", "--reps", "3")
    assert rc == cli.EXIT_OK
    assert "identical_values = True" in out


def test_derive_desk_roundtrip(capsys, tmp_path):
    rc, out, _ = run(capsys, "derive-desk", "--out", str(tmp_path),
                     "--format", "json-lines")
    assert rc == cli.EXIT_OK
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert len(lines) == 4 and all(o["status"] == "PASS" for o in lines)
    for obj in lines:
        rec = cd.load_curve(obj["file"])
        assert rec.p == obj["p"] and rec.n == obj["n"]
