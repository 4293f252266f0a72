"""End-to-end command-line tests: the tiny polynomial grammar, subcommand
behavior, exit codes, JSON report shapes, and byte-identical reruns."""

import json
import subprocess
import sys

import pytest

from drinfeldtwist import (
    APoly,
    FieldSpec,
    KDomain,
    KElem,
    carlitz,
    goss_L,
    log_at_one,
    power_twist_module,
)
from drinfeldtwist.cli import InputError, laurent_json, parse_poly


SPEC2 = FieldSpec(2)
SPEC3 = FieldSpec(3)
SPEC5 = FieldSpec(5)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "drinfeldtwist"] + list(args),
        capture_output=True)


def run_json(*args, code=0):
    proc = run_cli(*args)
    assert proc.returncode == code, proc.stderr.decode("utf-8")
    return json.loads(proc.stdout.decode("utf-8"))


class TestPolyGrammar:
    def test_adjacency_and_caret(self):
        th = APoly.gen(SPEC5)
        assert parse_poly("4θ^6+4θ^3+1", SPEC5) == 4 * th ** 6 + 4 * th ** 3 + 1

    def test_explicit_star(self):
        th = APoly.gen(SPEC5)
        assert parse_poly("4*θ^6 + 4*θ^3 + 1", SPEC5) == \
            4 * th ** 6 + 4 * th ** 3 + 1

    def test_x_alias(self):
        assert parse_poly("x^2+x", SPEC2) == parse_poly("θ^2+θ", SPEC2)

    def test_coefficients_reduce_mod_p(self):
        assert parse_poly("3θ", SPEC3).is_zero
        assert parse_poly("7", SPEC5) == APoly.const(SPEC5, 2)

    def test_zero(self):
        assert parse_poly("0", SPEC3).is_zero

    @pytest.mark.parametrize("bad", ["", "θ^", "a+b", "*θ", "θ*", "θ+*2",
                                     "θ+", "θ-1"])
    def test_rejects(self, bad):
        with pytest.raises(InputError):
            parse_poly(bad, SPEC3)


class TestPrimes:
    def test_small_enumeration(self):
        data = run_json("primes", "--q", "2", "--deg-max", "3")
        assert data["count"] == 5
        assert data["primes_pretty"] == [
            "θ", "θ+1", "θ^2+θ+1", "θ^3+θ+1", "θ^3+θ^2+1"]
        assert data["primes"][0] == [[0], [1]]

    def test_canonical_order(self):
        data = run_json("primes", "--q", "3", "--deg-max", "2")
        degs = [len(arr) - 1 for arr in data["primes"]]
        assert degs == sorted(degs)

    def test_needs_field(self):
        assert run_cli("primes", "--deg-max", "2").returncode == 2


class TestTwist:
    def test_cyclotomic_request(self, tmp_path):
        req = tmp_path / "req.json"
        req.write_text('{"example": "cyclotomic"}', encoding="utf-8")
        data = run_json("twist", "--in", str(req))
        assert data["f_vector_pretty"] == ["θ^2+1", "θ^2+θ"]
        assert data["integral_model_pretty"][1] == [
            ["θ^2+θ", "1"], ["θ^2+1", "0"]]
        assert data["cleared_by_pretty"] == "θ^2+1"
        assert data["checks"] == {"verify_solution": True,
                                  "verify_sep_isomorphism": True}
        assert data["pass"] is True

    def test_trivial_request_gives_base_module(self, tmp_path):
        req = tmp_path / "req.json"
        req.write_text('{"trivial": {"q": 5, "entry": "1"}}', encoding="utf-8")
        data = run_json("twist", "--in", str(req))
        assert data["N"] == 1
        # the twist of the base module by a trivial character is the module
        assert data["k_model_pretty"] == [[["θ"]], [["1"]]]
        assert data["integral_model_pretty"] == data["k_model_pretty"]

    def test_trivial_request_nonunit_entry_clears(self, tmp_path):
        req = tmp_path / "req.json"
        req.write_text('{"trivial": {"q": 5, "entry": "θ"}}', encoding="utf-8")
        data = run_json("twist", "--in", str(req))
        # f0 = θ^{q-1}; clearing scales by c^{q-1} for c the denominator lcm
        assert data["f_vector_pretty"] == ["θ^4"]
        assert data["k_model_pretty"][1] == [["(1)/(θ^4)"]]
        assert data["cleared_by_pretty"] == "θ^4"
        assert data["integral_model_pretty"][1] == [["θ^12"]]
        assert data["pass"] is True

    def test_perturbed_request_fails_with_names(self, tmp_path):
        req = tmp_path / "req.json"
        req.write_text('{"example": "s3", "perturb": [0, 0]}', encoding="utf-8")
        proc = run_cli("twist", "--in", str(req))
        assert proc.returncode == 1
        data = json.loads(proc.stdout.decode("utf-8"))
        assert data["failing"] == ["verify_solution"]
        assert data["failed_memberships"]

    def test_missing_request(self):
        assert run_cli("twist").returncode == 2

    def test_bad_example_name(self, tmp_path):
        req = tmp_path / "req.json"
        req.write_text('{"example": "unknown"}', encoding="utf-8")
        assert run_cli("twist", "--in", str(req)).returncode == 2


class TestLValue:
    def test_carlitz_matches_library(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 2, "coeffs": ["1"]}', encoding="utf-8")
        data = run_json("lvalue", "--in", str(mod), "--s", "0",
                        "--deg-max", "6")
        value, _ = goss_L(carlitz(SPEC2), 0, 6)
        assert data["value"] == laurent_json(value)
        assert data["excluded_primes"] == []
        assert list(data) == ["value", "s", "deg_max", "excluded_primes"]

    def test_deg_max_zero_is_one(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 3, "coeffs": ["1"]}', encoding="utf-8")
        data = run_json("lvalue", "--in", str(mod), "--deg-max", "0")
        assert data["value"]["top"] == 0
        assert data["value"]["coeffs"][0] == [1]
        assert all(c == [0] for c in data["value"]["coeffs"][1:])

    def test_local_factor_dump(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 2, "coeffs": ["1"], "local_factors": true}',
                       encoding="utf-8")
        data = run_json("lvalue", "--in", str(mod), "--deg-max", "2")
        assert len(data["local_factors"]) == 3
        first = data["local_factors"][0]
        assert first["prime"] == "θ"
        assert first["charpoly"]["coefficients"] == ["t", "1"]
        assert "factor" in first

    def test_bad_module_files(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json", encoding="utf-8")
        assert run_cli("lvalue", "--in", str(bad)).returncode == 2
        empty = tmp_path / "empty.json"
        empty.write_text('{"q": 2, "coeffs": []}', encoding="utf-8")
        assert run_cli("lvalue", "--in", str(empty)).returncode == 2
        zero = tmp_path / "zero.json"
        zero.write_text('{"q": 2, "coeffs": ["0"]}', encoding="utf-8")
        assert run_cli("lvalue", "--in", str(zero)).returncode == 2
        assert run_cli("lvalue", "--in", str(tmp_path / "nope.json")).returncode == 2

    def test_convergence_refusal_is_exit_3(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 2, "coeffs": ["1"]}', encoding="utf-8")
        proc = run_cli("lvalue", "--in", str(mod), "--s", "-1",
                       "--deg-max", "4")
        assert proc.returncode == 3
        assert b"ConvergenceError" in proc.stderr


class TestLogValue:
    def test_matches_library(self):
        data = run_json("logvalue", "--q", "3", "--n", "2", "--f", "θ",
                        "--k-max", "2")
        tw = power_twist_module(APoly.gen(SPEC3), 2)
        assert data["value"] == laurent_json(log_at_one(tw, 2))
        assert data["radius_exponent"] == [1, 1]
        assert data["inside_radius"] is True

    def test_radius_refusal_is_exit_3(self):
        proc = run_cli("logvalue", "--q", "3", "--n", "2", "--f", "θ^3+θ")
        assert proc.returncode == 3
        assert b"RadiusError" in proc.stderr

    def test_bad_order_is_exit_2(self):
        assert run_cli("logvalue", "--q", "3", "--n", "4", "--f", "θ").returncode == 2


class TestVerify:
    def test_cyclotomic(self):
        data = run_json("verify", "cyclotomic")
        assert data["expected_f_vector_pretty"] == ["θ^2+1", "θ^2+θ"]
        assert data["pass"] is True
        assert data["failing"] == []

    def test_s3(self):
        data = run_json("verify", "s3")
        assert data["expected_f_vector_pretty"] == [
            "4*θ^6+4*θ^3+1", "θ^10+θ^4+2*θ"]
        assert set(data["checks"]) == {
            "solution_verifies", "f_vector_matches",
            "integral_model_matches", "sep_isomorphism_holds"}
        assert data["pass"] is True

    def test_power_residue_small(self):
        data = run_json("verify", "power-residue", "--q", "3", "--n", "2",
                        "--f", "θ", "--deg-max", "4", "--k-max", "3",
                        "--prec", "16")
        assert data["pass"] is True
        assert data["disc_euler_dirichlet"] >= 4
        assert data["disc_euler_log"] >= 4
        assert data["disc_dirichlet_log"] >= 4

    def test_power_residue_truncated_log_fails(self):
        proc = run_cli("verify", "power-residue", "--q", "3", "--n", "2",
                       "--f", "θ", "--deg-max", "4", "--k-max", "0",
                       "--prec", "16")
        assert proc.returncode == 1
        data = json.loads(proc.stdout.decode("utf-8"))
        assert data["pass"] is False
        assert data["disc_euler_log"] < 4

    def test_flags_rejected_for_fixed_examples(self):
        assert run_cli("verify", "s3", "--q", "7").returncode == 2

    def test_unknown_example(self):
        assert run_cli("verify", "nonsense").returncode == 2


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 3, "coeffs": ["θ"]}', encoding="utf-8")
        args = ("lvalue", "--in", str(mod), "--deg-max", "4")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout

    def test_parallel_flag_does_not_change_bytes(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 2, "coeffs": ["1"]}', encoding="utf-8")
        plain = run_cli("lvalue", "--in", str(mod), "--deg-max", "5")
        parallel = run_cli("lvalue", "--in", str(mod), "--deg-max", "5",
                           "--parallel", "4")
        assert plain.stdout == parallel.stdout

    def test_verify_reruns_identical(self):
        first = run_cli("verify", "cyclotomic")
        second = run_cli("verify", "cyclotomic")
        assert first.stdout == second.stdout

    def test_out_flag_writes_same_bytes(self, tmp_path):
        mod = tmp_path / "mod.json"
        mod.write_text('{"q": 2, "coeffs": ["1"]}', encoding="utf-8")
        out = tmp_path / "result.json"
        to_stdout = run_cli("lvalue", "--in", str(mod), "--deg-max", "3")
        to_file = run_cli("lvalue", "--in", str(mod), "--deg-max", "3",
                          "--out", str(out))
        assert to_file.stdout == b""
        assert out.read_bytes() == to_stdout.stdout
