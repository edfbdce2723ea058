import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from realspec.cli import dumps, main
from realspec.exact import parse_graded

GOLDEN = Path(__file__).parent / "data" / "reference_table.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out), out


class TestExact:
    @pytest.mark.parametrize("argv, want", [
        (["exact", "-N", "2", "-L", "2,2"], "20/27 (0.740741)"),
        (["exact", "-N", "1", "-L", "0"], "1"),
        (["exact", "-N", "2", "-L", "2"], "2/3 (0.666667)"),
        (["exact", "-N", "3", "-L", "0"], "0"),
    ])
    def test_examples(self, capsys, argv, want):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert out.splitlines()[0] == want

    def test_cross_check_and_numeric(self, capsys):
        rec, _ = run_json(capsys, "exact", "-N", "3", "-L", "3", "--cross-check", "--numeric")
        assert rec["exact"] == "32/35 * pi^(-2/2)"
        assert rec["cross_check"]["exact"] == rec["exact"]
        assert rec["agreement"] == {"cross_check": True, "numeric": True}

    def test_unsupported_parity_exit_2(self, capsys):
        code, out, err = run(capsys, "exact", "-N", "2", "-L", "1,2")
        assert code == 2
        assert "numeric" in err

    def test_json_exact_and_decimal_consistent(self, capsys):
        for L in ("2,4", "3", "1", "4,6"):
            rec, _ = run_json(capsys, "exact", "-N", "3", "-L", L)
            assert abs(float(parse_graded(rec["exact"])) - rec["decimal"]) <= 1e-12


def test_numeric_command(capsys):
    rec, _ = run_json(capsys, "numeric", "-N", "2", "-L", "1,2")
    G = 0.915965594177219
    assert rec["numeric"]["value"] == pytest.approx((2 * G + 5) / (3 * math.pi), abs=1e-8)
    assert "exact" not in rec
    rec, _ = run_json(capsys, "numeric", "-N", "2", "-L", "2,2")
    assert rec["agreement"]["exact"] is True


def test_numeric_accuracy_exit_3(capsys):
    code, _, err = run(capsys, "numeric", "-N", "2", "-L", "1", "--tol", "1e-18")
    assert code == 3
    assert "accuracy" in err


def test_mc_command(capsys):
    rec, _ = run_json(capsys, "mc", "-N", "2", "-L", "0", "--trials", "100000", "--seed", "42")
    mc = rec["mc"]
    assert abs(mc["p_all_real"] - 0.5) <= 3 * mc["stderr"]
    assert sum(mc["counts"].values()) == 100000
    assert set(mc["counts"]) <= {"0", "2"}
    assert rec["agreement"]["within_3_sigma"]


def test_gvalue_command(capsys):
    code, out, _ = run(capsys, "gvalue", "-j", "1", "-k", "1", "--alphas", "1", "--betas", "1")
    assert code == 0 and out.strip() == "4/3"
    code, _, _ = run(capsys, "gvalue", "-j", "1", "-k", "1", "--alphas", "1,0", "--betas", "1")
    assert code == 2


def test_table_matches_golden(capsys, tmp_path):
    code, out, _ = run(capsys, "table")
    assert code == 0
    assert out == GOLDEN.read_text()
    dest = tmp_path / "t.csv"
    assert main(["table", "--out", str(dest)]) == 0
    assert dest.read_text() == GOLDEN.read_text()


def test_table_custom_grid(capsys):
    code, out, _ = run(capsys, "table", "--n-values", "2", "--l-values", "2,6")
    rows = out.strip().splitlines()
    assert rows[0] == "N,L1,L2,exact,decimal"
    assert [r.split(",")[:3] for r in rows[1:]] == [["2", "2", "2"], ["2", "2", "6"], ["2", "6", "6"]]


@pytest.mark.parametrize("argv", [
    ["exact", "-N", "2", "-L", "2,2"],
    ["exact", "-N", "2", "-L", "3", "--cross-check"],
    ["numeric", "-N", "3", "-L", "2,4"],
    ["mc", "-N", "2", "-L", "2", "--trials", "2000"],
    ["gvalue", "-j", "2", "-k", "1", "--alphas", "1,2", "--betas", "2,1"],
])
def test_json_round_trip(capsys, argv):
    rec, out = run_json(capsys, *argv)
    assert dumps(json.loads(out)) + "\n" == out
    assert dumps(rec) + "\n" == out


@pytest.mark.parametrize("argv, code", [
    (["exact", "-N", "2", "-L", "2,2"], 0),
    (["exact", "-N", "0", "-L", "2"], 2),
    (["exact", "-N", "2", "-L", "x"], 2),
    (["exact", "-N", "2", "-L", "-1"], 2),
    (["bogus"], 2),
    (["mc", "-N", "2", "-L", "2", "--trials", "0"], 2),
    (["numeric", "-N", "2", "-L", "0"], 2),
    (["numeric", "-N", "2", "-L", "1", "--tol", "1e-18"], 3),
])
def test_exit_codes_black_box(argv, code):
    proc = subprocess.run([sys.executable, "-m", "realspec", *argv], capture_output=True, text=True)
    assert proc.returncode == code, proc.stderr
    if code:
        assert proc.stderr.strip()
