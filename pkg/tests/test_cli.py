import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from brwmom import mom_dp

SCHEMA_PATH = (Path(__file__).resolve().parent.parent / "src" / "brwmom"
               / "schema" / "output_record.schema.json")


def run_cli(*args: str) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "brwmom", *args]
    return subprocess.run(cmd, capture_output=True, text=True)


def record(cp: subprocess.CompletedProcess) -> dict:
    assert cp.returncode == 0, cp.stderr
    return json.loads(cp.stdout)


def validate_schema(payload: dict) -> None:
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA_PATH.read_text())
    jsonschema.validate(payload, schema)


class TestMomCommand:
    def test_exact_rational(self):
        rec = record(run_cli("mom", "--k", "2", "--n", "1", "--beta", "1",
                             "--ring", "rational"))
        assert rec["result"]["value"]["value"] == "10/1"
        assert rec["provenance"] == "engine"
        validate_schema(rec)

    def test_first_moment_beta_two(self):
        rec = record(run_cli("mom", "--k", "1", "--n", "3", "--beta", "2"))
        assert rec["result"]["value"]["value"] == "4096/1"

    def test_radical_ring(self):
        rec = record(run_cli("mom", "--k", "2", "--n", "2",
                             "--beta-sq-rational", "1/2", "--ring", "radical"))
        v = rec["result"]["value"]
        assert v["type"] == "radical"
        assert v["root_index"] == 2
        assert v["value"] == "8/1"
        assert rec["parameters"]["ring"] == "radical(2)"
        validate_schema(rec)

    def test_float_ring_tagged_with_precision(self):
        rec = record(run_cli("mom", "--k", "2", "--n", "4", "--beta", "0.3",
                             "--precision", "128"))
        v = rec["result"]["value"]
        assert v["type"] == "float"
        assert v["precision_bits"] == 128
        validate_schema(rec)

    def test_beta_sign_symmetry_byte_identical(self):
        a = run_cli("mom", "--k", "2", "--n", "5", "--beta", "0.7")
        b = run_cli("mom", "--k", "2", "--n", "5", "--beta", "-0.7")
        # the record echoes beta as given, so compare results only
        ra, rb = json.loads(a.stdout), json.loads(b.stdout)
        assert ra["result"] == rb["result"]

    def test_repeat_invocations_byte_identical(self):
        a = run_cli("mom", "--k", "3", "--n", "6", "--beta", "0.4")
        b = run_cli("mom", "--k", "3", "--n", "6", "--beta", "0.4")
        assert a.stdout == b.stdout

    def test_ring_mismatch_exit_code(self):
        cp = run_cli("mom", "--k", "2", "--n", "1", "--beta", "0.3",
                     "--ring", "rational")
        assert cp.returncode == 3

    def test_invalid_flags_exit_code(self):
        assert run_cli("mom", "--k", "2").returncode == 2
        assert run_cli("mom", "--k", "2", "--n", "x", "--beta", "1"
                       ).returncode == 2


class TestPolyCommand:
    def test_csv_rows(self):
        cp = run_cli("poly", "--k", "2", "--beta", "1", "--format", "csv")
        assert cp.returncode == 0
        assert cp.stdout.splitlines() == ["degree,coefficient", "3,3/2",
                                          "2,-1/2"]

    def test_first_moment_row(self):
        cp = run_cli("poly", "--k", "1", "--beta", "2", "--format", "csv")
        assert cp.stdout.splitlines() == ["degree,coefficient", "4,1/1"]

    def test_round_trip_against_mom(self):
        rec = record(run_cli("poly", "--k", "3", "--beta", "1"))
        total = sum(Fraction(c) * Fraction(2) ** (5 * d)
                    for d, c in rec["result"]["rows"])
        assert total == mom_dp(3, 5, 1)
        validate_schema(rec)


class TestAsymCommand:
    def test_supercritical_exact(self):
        rec = record(run_cli("asym", "--k", "2", "--beta", "1"))
        assert rec["result"]["regime"] == "super-critical"
        assert rec["result"]["coefficient"]["value"] == "3/2"
        assert rec["result"]["exponent"] == {"beta_sq_coeff": 4,
                                             "constant": -1}
        validate_schema(rec)

    def test_critical_snap_from_float_beta(self):
        rec = record(run_cli("asym", "--k", "2", "--beta",
                             "0.7071067811865476"))
        assert rec["result"]["regime"] == "critical"
        assert rec["result"]["n_power"] == 1
        assert rec["result"]["coefficient"]["value"].startswith("0.5")

    def test_subcritical_method(self):
        rec = record(run_cli("asym", "--k", "3", "--beta", "0.3"))
        assert rec["result"]["regime"] == "sub-critical"
        assert rec["result"]["method"] == "recursion"

    def test_float_payload_keeps_full_precision(self):
        import mpmath
        rec = record(run_cli("asym", "--k", "3", "--beta",
                             "0.5773502691896258"))
        got = rec["result"]["coefficient"]["value"]
        with mpmath.mp.workprec(256):
            want = mpmath.nstr(
                3 / (mpmath.mpf(2) ** (mpmath.mpf(7) / 3) - 4), 60)
        # the serialized string must agree well beyond double precision
        assert got[:55] == want[:55]


class TestSweepCommand:
    def test_csv_to_file(self, tmp_path):
        out = tmp_path / "sweep.csv"
        cp = run_cli("sweep", "--k", "2", "--beta-min", "0.1", "--beta-max",
                     "1.5", "--steps", "8", "--out", str(out))
        assert cp.returncode == 0, cp.stderr
        lines = out.read_text().splitlines()
        assert lines[0] == "beta,regime,coefficient,method"
        assert len(lines) == 9
        for row in lines[1:]:
            beta, regime, coeff, method = row.split(",")
            assert float(coeff) > 0

    def test_unwritable_file_exit_code(self):
        cp = run_cli("sweep", "--k", "2", "--beta-min", "0.1", "--beta-max",
                     "1.0", "--steps", "3", "--out", "/nonexistent/x.csv")
        assert cp.returncode == 4

    def test_bad_range_exit_code(self):
        cp = run_cli("sweep", "--k", "2", "--beta-min", "1.0", "--beta-max",
                     "0.5", "--steps", "3")
        assert cp.returncode == 2


class TestMcCommand:
    def test_beta_zero_exact(self):
        rec = record(run_cli("mc", "--k", "2", "--n", "6", "--beta", "0",
                             "--trials", "200", "--seed", "9"))
        assert rec["result"]["estimate"] == 1.0
        assert rec["result"]["stderr"] == 0.0
        assert rec["result"]["z_score"] == 0.0
        validate_schema(rec)

    def test_heavy_tail_refusal(self):
        cp = run_cli("mc", "--k", "3", "--n", "4", "--beta", "0.8",
                     "--trials", "100", "--seed", "1")
        assert cp.returncode == 5

    def test_force_overrides_refusal(self):
        cp = run_cli("mc", "--k", "3", "--n", "4", "--beta", "0.8",
                     "--trials", "100", "--seed", "1", "--force")
        assert cp.returncode == 0
        assert json.loads(cp.stdout)["result"]["heavy_tail"] is True

    def test_seeded_reruns_byte_identical(self):
        args = ("mc", "--k", "1", "--n", "5", "--beta", "0.3", "--trials",
                "500", "--seed", "42")
        assert run_cli(*args).stdout == run_cli(*args).stdout


class TestVerifyCommand:
    def test_oracle_suite(self):
        cp = run_cli("verify", "--suite", "oracle", "--budget", "12")
        assert cp.returncode == 0, cp.stdout
        rec = json.loads(cp.stdout)
        assert rec["result"]["pass"] is True
        assert all(c["pass"] for c in rec["result"]["checks"])

    def test_closed_form_suite_and_alias(self):
        cp = run_cli("verify", "--suite", "closedform")
        assert cp.returncode == 0, cp.stdout
        cp2 = run_cli("verify", "--suite", "appendix")
        assert cp2.returncode == 0

    def test_rmt_suite(self):
        cp = run_cli("verify", "--suite", "rmt", "--budget", "2000")
        assert cp.returncode == 0, cp.stdout

    def test_mc_suite(self):
        cp = run_cli("verify", "--suite", "mc", "--budget", "4000")
        assert cp.returncode == 0, cp.stdout
