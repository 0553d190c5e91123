"""End-to-end tests for the fusionlab command line."""

from __future__ import annotations

import io
import json
import os
import subprocess
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
from unittest import mock


REPO_ROOT = Path(__file__).resolve().parents[1]
CLI = REPO_ROOT / "scripts" / "fusionlab.py"
sys.path.insert(0, str(REPO_ROOT / "scripts"))

from fusionlab import (  # noqa: E402
    BUDGET_ENV,
    ConfigError,
    RunConfig,
    load_budget,
    main,
    validate_config,
)
from verification_suites import SUITES, parse_suites  # noqa: E402


def run_cli(*args: str, env: dict[str, str] | None = None) -> subprocess.CompletedProcess[str]:
    environment = {key: value for key, value in os.environ.items() if key != BUDGET_ENV}
    environment.update(env or {})
    return subprocess.run(
        [sys.executable, str(CLI), *args],
        cwd=REPO_ROOT,
        check=False,
        capture_output=True,
        text=True,
        env=environment,
    )


class ConfigTests(unittest.TestCase):
    def config(self, **overrides) -> RunConfig:
        values = {"command": "verify", "variant": "bmw", "d": 1, "n": 2}
        values.update(overrides)
        return RunConfig(**values)

    def test_budget_table(self) -> None:
        budget = load_budget({})
        validate_config(self.config(d=2, n=2), budget)
        validate_config(self.config(variant="hecke", d=3, n=3), budget)
        with self.assertRaises(ConfigError):
            validate_config(self.config(d=2, n=3), budget)
        with self.assertRaises(ConfigError):
            validate_config(self.config(d=3, n=1), budget)

    def test_budget_override(self) -> None:
        budget = load_budget({BUDGET_ENV: json.dumps({"bmw": {"2": 3}})})
        validate_config(self.config(d=2, n=3), budget)
        self.assertEqual(budget["nw"][2], 2)
        with self.assertRaises(ConfigError):
            load_budget({BUDGET_ENV: "{not json"})
        with self.assertRaises(ConfigError):
            load_budget({BUDGET_ENV: json.dumps({"affine": {"1": 2}})})

    def test_fusion_constant_rules(self) -> None:
        budget = load_budget({})
        validate_config(self.config(variant="hecke", c="-3/2"), budget)
        for variant, c in (("bmw", "2"), ("hecke", "0"), ("hecke", "1/0"), ("hecke", "abc")):
            with self.assertRaises(ConfigError, msg=f"{variant} {c}"):
                validate_config(self.config(variant=variant, c=c), budget)

    def test_suite_selection_runs_in_dependency_order(self) -> None:
        self.assertEqual(parse_suites("all"), list(SUITES))
        self.assertEqual(parse_suites("fusion,params"), ["params", "fusion"])
        with self.assertRaises(ValueError):
            parse_suites("params,plots")

    def test_default_report_path(self) -> None:
        config = self.config(seed=11)
        self.assertEqual(config.report_path, Path("outputs") / "bmw-d1-n2-seed11.json")


class VerifyCommandTests(unittest.TestCase):
    def test_bmw_two_strands_pass_every_suite(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            out = Path(directory) / "report.json"
            completed = run_cli(
                "verify", "--variant", "bmw", "--d", "1", "--n", "2", "--suite", "all",
                "--seed", "7", "--out", str(out),
            )
            self.assertEqual(
                completed.returncode,
                0,
                msg=f"stdout:\n{completed.stdout}\nstderr:\n{completed.stderr}",
            )
            report = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(report["schema_version"], 1)
        self.assertEqual([suite["name"] for suite in report["suites"]], list(SUITES))
        self.assertEqual(report["summary"]["failed"], 0)
        self.assertEqual(report["summary"]["status"], "PASS")
        self.assertIsNone(report["timing"])
        self.assertRegex(report["params"]["q"], r"^-?\d+/\d+$")
        self.assertIn("[PASS] relations.dimension:", completed.stdout)
        fusion = next(suite for suite in report["suites"] if suite["name"] == "fusion")
        entries = [check for check in fusion["checks"] if check["id"].startswith("fusion[")]
        self.assertEqual(len(entries), 3)
        self.assertTrue(all("p_sequence" in check["details"] for check in entries))

    def test_in_process_run_returns_zero(self) -> None:
        for n in ("1", "2"):
            with tempfile.TemporaryDirectory() as directory, mock.patch.dict(os.environ, {}):
                os.environ.pop(BUDGET_ENV, None)
                out = Path(directory) / "report.json"
                with redirect_stdout(io.StringIO()):
                    status = main(
                        [
                            "verify", "--variant", "bmw", "--d", "1", "--n", n,
                            "--suite", "all", "--quiet", "--out", str(out),
                        ]
                    )
                report = json.loads(out.read_text(encoding="utf-8"))
            self.assertEqual(status, 0, msg=f"n={n}")
            combinatorics = next(suite for suite in report["suites"] if suite["name"] == "combinatorics")
            weights = next(check for check in combinatorics["checks"] if check["id"] == "weights-nonzero")
            self.assertEqual(weights["verdict"], "PASS", msg=f"n={n}")

    def test_reports_are_byte_identical(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            paths = [Path(directory) / f"run{index}.json" for index in range(2)]
            for path in paths:
                completed = run_cli(
                    "verify", "--variant", "nw", "--d", "1", "--n", "2",
                    "--suite", "params,combinatorics", "--quiet", "--out", str(path),
                )
                self.assertEqual(completed.returncode, 0, msg=completed.stderr)
            self.assertEqual(paths[0].read_bytes(), paths[1].read_bytes())
        self.assertNotIn("[PASS]", completed.stdout)

    def test_timing_is_recorded_on_request(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            out = Path(directory) / "timed.json"
            completed = run_cli(
                "verify", "--variant", "hecke", "--d", "1", "--n", "2",
                "--suite", "combinatorics", "--timing", "--quiet", "--out", str(out),
            )
            self.assertEqual(completed.returncode, 0, msg=completed.stderr)
            report = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(list(report["timing"]), ["combinatorics"])

    def test_budget_violation_exits_2(self) -> None:
        completed = run_cli("verify", "--variant", "bmw", "--d", "2", "--n", "3")
        self.assertEqual(completed.returncode, 2)
        self.assertEqual(json.loads(completed.stderr)["error"], "ConfigError")

    def test_fusion_constant_rejected_for_bmw(self) -> None:
        completed = run_cli("verify", "--variant", "bmw", "--d", "1", "--n", "2", "--c", "2")
        self.assertEqual(completed.returncode, 2)

    def test_malformed_budget_env_exits_2(self) -> None:
        completed = run_cli(
            "verify", "--variant", "nw", "--d", "1", "--n", "2", env={BUDGET_ENV: "[1,"}
        )
        self.assertEqual(completed.returncode, 2)
        self.assertIn(BUDGET_ENV, json.loads(completed.stderr)["message"])

    def test_unknown_suite_exits_2(self) -> None:
        completed = run_cli("verify", "--variant", "nw", "--d", "1", "--n", "2", "--suite", "plots")
        self.assertEqual(completed.returncode, 2)


class DumpCommandTests(unittest.TestCase):
    def test_enumerate_nw_three_strands(self) -> None:
        completed = run_cli("enumerate", "--variant", "nw", "--d", "1", "--n", "3")
        self.assertEqual(completed.returncode, 0, msg=completed.stderr)
        dump = json.loads(completed.stdout)
        self.assertEqual(dump["dimension"], 15)
        self.assertEqual(len(dump["level_shapes"]), 4)
        self.assertEqual(len(dump["tableaux"]), 7)
        first = dump["tableaux"][0]
        self.assertEqual(set(first), {"tableau", "shape", "contents", "p_sequence", "weight"})
        self.assertEqual(dump["p_range"][1], 2)

    def test_params_dump(self) -> None:
        completed = run_cli("params", "--variant", "bmw", "--d", "1", "--n", "3", "--rho-sign", "-")
        self.assertEqual(completed.returncode, 0, msg=completed.stderr)
        dump = json.loads(completed.stdout)
        self.assertTrue(dump["genericity"]["passed"])
        v1 = dump["params"]["v"][0]
        expected = v1[1:] if v1.startswith("-") else f"-{v1}"
        self.assertEqual(dump["params"]["rho"], expected)

    def test_params_for_a_quotient_with_c(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            out = Path(directory) / "params.json"
            completed = run_cli(
                "params", "--variant", "deg-hecke", "--d", "2", "--n", "2", "--c", "5/2", "--out", str(out)
            )
            self.assertEqual(completed.returncode, 0, msg=completed.stderr)
            dump = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(dump["fusion_constant"], "5/2")


if __name__ == "__main__":
    unittest.main()
