#!/usr/bin/env python3
"""Command-line harness: build parameters and models, run the verification suites, write JSON reports."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from algebra_engine import (
    DEFAULT_SEED,
    AdmissibilityError,
    GenericityError,
    ModelBuildError,
    ParamSet,
    check_generic,
    make_params,
)
from check_results import CheckResult, count_verdicts, overall_status
from element_functions import ResolventError
from exact_arith import PoleError, format_rational, rational
from fusion import HECKE_C_VALUES
from presentations import VARIANTS
from updown import QUOTIENT_VARIANTS, all_tableaux, dimension_oracle, level_shapes, p_range, tableau_record
from vector_enumeration import EnumerationBudgetError
from verification_suites import SUITES, RunContext, parse_suites, run_suites


SCHEMA_VERSION = 1
BUDGET_ENV = "FUSIONLAB_BUDGET"
BUDGET_TABLE: dict[str, dict[int, int]] = {
    "bmw": {1: 3, 2: 2},
    "nw": {1: 3, 2: 2},
    "hecke": {1: 3, 2: 3, 3: 3},
    "deg-hecke": {1: 3, 2: 3, 3: 3},
}
OUTPUT_DIR = Path("outputs")
FATAL_ERRORS = (
    PoleError,
    ModelBuildError,
    EnumerationBudgetError,
    ResolventError,
    GenericityError,
    AdmissibilityError,
)


class ConfigError(ValueError):
    """Raised for an invalid command-line configuration (exit code 2)."""


@dataclass
class RunConfig:
    command: str
    variant: str
    d: int
    n: int
    seed: int = DEFAULT_SEED
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    rho_sign: str = "+"
    c: str | None = None
    out: Path | None = None
    timing: bool = False
    quiet: bool = False

    @property
    def report_path(self) -> Path:
        if self.out is not None:
            return self.out
        return OUTPUT_DIR / f"{self.variant}-d{self.d}-n{self.n}-seed{self.seed}.json"

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "variant": self.variant,
            "d": self.d,
            "n": self.n,
            "seed": self.seed,
            "suites": self.suites,
            "rho_sign": self.rho_sign,
            "c": self.c,
        }


def load_budget(environ: dict[str, str] | None = None) -> dict[str, dict[int, int]]:
    """Budget table with the JSON override from FUSIONLAB_BUDGET merged on top."""
    environ = os.environ if environ is None else environ
    table = {variant: dict(limits) for variant, limits in BUDGET_TABLE.items()}
    raw = environ.get(BUDGET_ENV)
    if not raw:
        return table
    try:
        override = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{BUDGET_ENV} is not valid JSON: {exc}") from exc
    if not isinstance(override, dict):
        raise ConfigError(f"{BUDGET_ENV} must be a JSON object of variant -> {{d: max n}}")
    for variant, limits in override.items():
        if variant not in table or not isinstance(limits, dict):
            raise ConfigError(f"{BUDGET_ENV}: bad entry for {variant!r}")
        for d, max_n in limits.items():
            try:
                table[variant][int(d)] = int(max_n)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{BUDGET_ENV}: bad limit {d!r}: {max_n!r} for {variant}") from exc
    return table


def validate_config(config: RunConfig, budget: dict[str, dict[int, int]]) -> None:
    if config.d < 1 or config.n < 1:
        raise ConfigError(f"need d >= 1 and n >= 1, got d={config.d}, n={config.n}")
    max_n = budget[config.variant].get(config.d)
    if max_n is None or config.n > max_n:
        allowed = ", ".join(f"d={d}: n<={limit}" for d, limit in sorted(budget[config.variant].items()))
        raise ConfigError(
            f"{config.variant} d={config.d} n={config.n} is outside the budget ({allowed}); "
            f"set {BUDGET_ENV} to raise it"
        )
    if config.c is not None:
        if config.variant not in QUOTIENT_VARIANTS:
            raise ConfigError(f"--c applies to the hecke variants only; {config.variant} fixes c")
        try:
            value = rational(config.c)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"--c expects NUM/DEN, got {config.c!r}") from exc
        if not value:
            raise ConfigError("--c must be nonzero")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact verification of JM idempotents and the fusion procedure"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, summary in (
        ("verify", "run verification suites and write a JSON report"),
        ("enumerate", "dump level shapes, tableaux, contents, p-sequences and weights"),
        ("params", "print the generic parameter set, certificate and solver record"),
    ):
        sub = subparsers.add_parser(name, help=summary)
        sub.add_argument("--variant", choices=VARIANTS, required=True)
        sub.add_argument("--d", type=int, default=1)
        sub.add_argument("--n", type=int, default=2)
        sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sub.add_argument("--rho-sign", choices=("+", "-"), default="+")
        sub.add_argument("--c", default=None, help="fusion constant NUM/DEN (hecke variants only)")
        sub.add_argument("--out", type=Path, default=None)
        if name == "verify":
            sub.add_argument("--suite", default="all", help=f"all or a subset of {','.join(SUITES)}")
            sub.add_argument("--timing", action="store_true", help="record per-suite seconds")
            sub.add_argument("--quiet", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    suites = list(SUITES)
    if args.command == "verify":
        try:
            suites = parse_suites(args.suite)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return RunConfig(
        command=args.command,
        variant=args.variant,
        d=args.d,
        n=args.n,
        seed=args.seed,
        suites=suites,
        rho_sign=args.rho_sign,
        c=args.c,
        out=args.out,
        timing=getattr(args, "timing", False),
        quiet=getattr(args, "quiet", False),
    )


def params_for(config: RunConfig) -> ParamSet:
    return make_params(
        config.variant, config.d, seed=config.seed, n=config.n, rho_sign=config.rho_sign, c=config.c
    )


def write_json(path: Path, payload: dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def emit_report(
    config: RunConfig, params: ParamSet, outcomes: Sequence[Any]
) -> dict[str, Any]:
    checks: list[CheckResult] = [result for outcome in outcomes for result in outcome.checks]
    summary = count_verdicts(checks)
    summary["status"] = overall_status(checks)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_json(),
        "params": params.to_json(),
        "suites": [outcome.to_json() for outcome in outcomes],
        "summary": summary,
        "timing": {outcome.name: round(outcome.seconds, 3) for outcome in outcomes}
        if config.timing
        else None,
    }


def run(config: RunConfig) -> int:
    params = params_for(config)
    c_values = (config.c,) if config.c is not None else HECKE_C_VALUES
    ctx = RunContext(params=params, n=config.n, rho_sign=config.rho_sign, c_values=c_values)

    def echo(suite: str, result: CheckResult) -> None:
        if not config.quiet:
            print(f"[{result.verdict}] {suite}.{result.id}: {result.message}")

    outcomes = run_suites(ctx, config.suites, on_check=echo)
    report = emit_report(config, params, outcomes)
    path = config.report_path
    write_json(path, report)
    summary = report["summary"]
    print(
        f"{summary['status']}: {summary['passed']} passed, {summary['failed']} failed, "
        f"{summary['skipped']} skipped -> {path}"
    )
    return 0 if summary["failed"] == 0 else 1


def enumeration_dump(config: RunConfig, params: ParamSet) -> dict[str, Any]:
    tableaux = all_tableaux(config.d, config.n, config.variant)
    low, high = p_range(tableaux)
    shapes = [shape.to_json() for shape in level_shapes(config.d, config.n, config.variant)]
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_json(),
        "params": params.to_json(),
        "level_shapes": shapes,
        "dimension": dimension_oracle(config.d, config.n, config.variant),
        "p_range": [low, high],
        "tableaux": [tableau_record(T, params, config.variant) for T in tableaux],
    }


def params_dump(config: RunConfig, params: ParamSet) -> dict[str, Any]:
    certificate = check_generic(params, config.n)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_json(),
        "params": params.to_json(),
        "genericity": certificate.to_json(),
        "solver": params.solver,
        "fusion_constant": format_rational(params.c),
    }


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        validate_config(config, load_budget())
    except ConfigError as exc:
        print(json.dumps({"error": "ConfigError", "message": str(exc)}, ensure_ascii=False), file=sys.stderr)
        return 2

    try:
        if config.command == "verify":
            return run(config)
        params = params_for(config)
        if config.command == "enumerate":
            payload = enumeration_dump(config, params)
        else:
            payload = params_dump(config, params)
        if config.out is not None:
            write_json(config.out, payload)
        print(json.dumps(payload, indent=2, ensure_ascii=False))
        return 0
    except FATAL_ERRORS as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}, indent=2, ensure_ascii=False),
            file=sys.stderr,
        )
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
