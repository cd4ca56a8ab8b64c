import json
import subprocess
import sys

import pytest

from meanforge.cli import main

M1_AT_1_4 = 1.8738824415736874
EXAMPLE_PROBLEM = "T{mu=sum; S=[P[0],P[2]]; M=[P[-2],P[-1],P[1],P[3]]}"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_beta(self, capsys):
        code, out, _ = run(capsys, "eval", "B", "--at", "2,8")
        assert code == 0
        assert float(out) == 3.2

    def test_geometric(self, capsys):
        code, out, _ = run(capsys, "eval", "P[0]", "--at", "2,8")
        assert code == 0
        assert float(out) == 4.0

    def test_negative_order(self, capsys):
        code, out, _ = run(capsys, "eval", "P[-2]", "--at", "1,4")
        assert code == 0
        assert float(out) == pytest.approx(1.3719886811400708, rel=1e-15)

    def test_seventeen_significant_digits(self, capsys):
        _, out, _ = run(capsys, "eval", "P[1]", "--at", "1,2")
        assert out.strip() == "1.5"
        _, out, _ = run(capsys, "eval", "B", "--at", "2,8")
        assert out.strip() == "3.2000000000000002"

    def test_outer_expression(self, capsys):
        code, out, _ = run(capsys, "eval", "qa[log]", "--at", "2,8")
        assert code == 0
        assert float(out) == pytest.approx(2.772588722239781)

    def test_json_record(self, capsys):
        code, out, _ = run(capsys, "eval", "P[1]", "--at", "2,8", "--format", "json")
        record = json.loads(out)
        assert record["kind"] == "eval"
        assert record["input"] == {"expr": "P[1]", "at": [2.0, 8.0]}
        assert record["output"] == 5.0

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "P[", "--at", "2,8")
        assert code == 2 and "parse error" in err

    def test_domain_error_exit_3(self, capsys):
        code, _, err = run(capsys, "eval", "P[0]", "--at=-2,8")
        assert code == 3 and "positive" in err

    def test_bad_vector_literal_exit_2(self, capsys):
        code, _, _ = run(capsys, "eval", "P[0]", "--at", "2;8")
        assert code == 2


class TestSolve:
    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "solve", EXAMPLE_PROBLEM, "--at", "1,4",
                           "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["kind"] == "solve"
        assert record["output"]["status"] == "converged"
        assert record["output"]["root"] == pytest.approx(M1_AT_1_4, rel=1e-9)
        lo, hi = record["output"]["bracket"]
        assert lo <= record["output"]["root"] <= hi
        assert record["residual"] <= 1e-9

    def test_constant_vector(self, capsys):
        code, out, _ = run(capsys, "solve", EXAMPLE_PROBLEM, "--at", "5,5,5",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["output"]["root"] == 5.0

    def test_hypothesis_violation_exit_4(self, capsys):
        code, _, err = run(capsys, "solve", "T{mu=sum; S=[P[5]]; M=[P[1],P[2]]}",
                           "--at", "1,4")
        assert code == 4 and "hypothesis" in err

    def test_non_problem_exit_3(self, capsys):
        code, _, _ = run(capsys, "solve", "P[2]", "--at", "1,4")
        assert code == 3


class TestEmbed:
    def test_certified(self, capsys):
        code, out, _ = run(capsys, "embed", "[P[0],P[2]]",
                           "[P[-2],P[-1],P[1],P[3]]")
        assert code == 0
        assert out.strip() == "certified"

    def test_identical_families(self, capsys):
        code, out, _ = run(capsys, "embed", "[P[1],B]", "[P[1],B]")
        assert code == 0
        assert out.strip() == "certified"

    def test_refuted_exit_4_with_replay(self, capsys):
        code, out, _ = run(capsys, "embed", "[P[5]]", "[P[-2],P[-1],P[1],P[3]]",
                           "--seed", "1")
        assert code == 4
        assert "refuted" in out
        assert 'meanforge eval "P[5]" --at ' in out

    def test_json_witness(self, capsys):
        code, out, _ = run(capsys, "embed", "[P[5]]", "[P[-2],P[-1],P[1],P[3]]",
                           "--seed", "1", "--format", "json")
        assert code == 4
        record = json.loads(out)
        assert record["output"]["mode"] == "refuted"
        assert "witness" in record and "vector" in record["witness"]

    def test_json_certificate(self, capsys):
        code, out, _ = run(capsys, "embed", "[P[0],P[2]]",
                           "[P[-2],P[-1],P[1],P[3]]", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["output"]["mode"] == "certified"
        assert record["output"]["certificate"]["rule"] == "power-mean-exponents"


class TestInvariant:
    def test_arithmetic_harmonic(self, capsys):
        code, out, _ = run(capsys, "invariant", "[P[1],P[-1]]", "--at", "2,8",
                           "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["output"]["converged"] is True
        assert record["output"]["limit"] == pytest.approx(4.0, rel=1e-12)

    def test_agm(self, capsys):
        code, out, _ = run(capsys, "invariant", "[P[1],P[0]]", "--at", "1,2",
                           "--format", "json")
        record = json.loads(out)
        assert record["output"]["limit"] == pytest.approx(1.4567910310469068,
                                                          rel=1e-12)

    def test_constant_input(self, capsys):
        code, out, _ = run(capsys, "invariant", "[P[1],P[0]]", "--at", "3,3",
                           "--format", "json")
        record = json.loads(out)
        assert record["output"]["iterations"] == 0

    def test_requires_some_action(self, capsys):
        code, _, _ = run(capsys, "invariant", "[P[1],P[0]]")
        assert code == 3


class TestSession:
    def test_register_and_reuse(self, capsys, tmp_path):
        session = str(tmp_path / "session.json")
        code, _, _ = run(capsys, "invariant", "[P[1],P[-1]]",
                         "--as-mean", "gm", "--session", session)
        assert code == 0
        code, out, _ = run(capsys, "eval", "gm", "--at", "2,8",
                           "--session", session)
        assert code == 0
        assert float(out) == pytest.approx(4.0, rel=1e-10)
        # registered names survive formatting
        code, out, _ = run(capsys, "parse", "gm", "--session", session)
        assert code == 0 and out.strip() == "mean: gm"

    def test_reserved_name_rejected(self, capsys, tmp_path):
        session = str(tmp_path / "session.json")
        code, _, err = run(capsys, "invariant", "[P[1],P[-1]]",
                           "--as-mean", "beta", "--session", session)
        assert code == 3 and "not a registrable name" in err

    def test_as_mean_needs_session(self, capsys):
        code, _, _ = run(capsys, "invariant", "[P[1],P[-1]]", "--as-mean", "gm")
        assert code == 3


class TestParseCommand:
    def test_canonicalizes(self, capsys):
        code, out, _ = run(capsys, "parse", "T{ mu = sum ; S=[ P[0], P[2] ]; "
                                            "M=[P[-2],P[-1],P[1],P[3]] }")
        assert code == 0
        assert out.strip() == "problem: " + EXAMPLE_PROBLEM

    def test_outer_kind(self, capsys):
        code, out, _ = run(capsys, "parse", "powsum[2]")
        assert code == 0 and out.strip() == "outer: powsum[2]"

    def test_arity_violation_exit_3(self, capsys):
        code, _, _ = run(capsys, "parse", "T{mu=sum; S=[P[0],P[2],P[5]]; M=[P[1],P[3]]}")
        assert code == 3


class TestCheck:
    def test_single_suite_records(self, capsys):
        code, out, _ = run(capsys, "check", "--suite", "vectors",
                           "--samples", "60", "--seed", "3")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert len(records) == 6
        for record in records:
            assert set(record) >= {"kind", "input", "output"}
            assert record["kind"].startswith("vectors.")
            assert record["output"] == "PASS"
            assert record["input"]["seed"] == 3

    def test_env_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("MEANFORGE_SEED", "11")
        _, out, _ = run(capsys, "check", "--suite", "means", "--samples", "40")
        assert all(json.loads(line)["input"]["seed"] == 11
                   for line in out.splitlines())

    def test_deterministic_in_process(self, capsys):
        _, first, _ = run(capsys, "check", "--suite", "invariance",
                          "--samples", "40", "--seed", "7")
        _, second, _ = run(capsys, "check", "--suite", "invariance",
                           "--samples", "40", "--seed", "7")
        assert first == second

    def test_failure_exits_1(self, capsys, monkeypatch):
        import meanforge.checks as checks_module
        failing = [{"kind": "demo.broken", "input": {"seed": 0},
                    "output": "FAIL", "witness": {"vector": [1.0]}}]
        monkeypatch.setattr(checks_module, "run_suite",
                            lambda *a, **k: failing)
        code, out, _ = run(capsys, "check", "--suite", "vectors")
        assert code == 1
        assert json.loads(out)["output"] == "FAIL"


class TestSubprocessEntry:
    def test_module_invocation_byte_identical(self):
        cmd = [sys.executable, "-m", "meanforge.cli", "check",
               "--suite", "means", "--samples", "50", "--seed", "7"]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        assert first.returncode == 0
        assert first.stdout == second.stdout
