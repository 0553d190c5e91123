#!/usr/bin/env python3
"""Verification suites run by the fusionlab command line, in dependency order."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from sympy.polys.domains import QQ

from algebra_engine import (
    AlgebraModel,
    ParamSet,
    build_model,
    check_generic,
    dimension_check,
    evaluation_hazards,
    faithfulness_check,
    jm_checks,
    solve_admissible,
    verify_relations,
)
from check_results import CheckResult, check, count_verdicts
from exact_arith import PoleError, format_rational
from fusion import (
    HECKE_C_VALUES,
    c_independence_check,
    evaluation_order_check,
    fusion_verify,
    lemma_checks,
    scalar_identities_check,
    unitarity_check,
)
from idempotents import IdempotentSet, branching_checks, spectral_separation, verify_idempotent_system
from multipartitions import neighbors
from updown import (
    QUOTIENT_VARIANTS,
    all_tableaux,
    contents,
    dimension_oracle,
    level_shapes,
    p_range,
    p_sequence,
    weight,
)


SUITES = ("params", "relations", "combinatorics", "idempotents", "scalars", "lemma", "fusion")


@dataclass
class SuiteResult:
    name: str
    checks: list[CheckResult]
    seconds: float = 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checks": [result.to_json() for result in self.checks],
            "counts": count_verdicts(self.checks),
        }


@dataclass
class RunContext:
    """Parameters plus the lazily built model and idempotents shared by the suites."""

    params: ParamSet
    n: int
    rho_sign: str = "+"
    c_values: Sequence[Any] = HECKE_C_VALUES
    budget: int | None = None
    _model: AlgebraModel | None = field(default=None, repr=False)
    _system: IdempotentSet | None = field(default=None, repr=False)

    @property
    def variant(self) -> str:
        return self.params.variant

    @property
    def d(self) -> int:
        return self.params.d

    def model(self) -> AlgebraModel:
        if self._model is None:
            self._model = build_model(self.variant, self.d, self.n, self.params, self.budget)
        return self._model

    def system(self) -> IdempotentSet:
        if self._system is None:
            self._system = IdempotentSet.build(self.model(), params=self.params)
        return self._system


def params_suite(ctx: RunContext) -> list[CheckResult]:
    params = ctx.params
    certificate = check_generic(params, ctx.n)
    results = [
        check(
            "genericity",
            "genericity",
            certificate.passed,
            certificate.reason or f"{certificate.conditions_checked} conditions hold",
            certificate=certificate.to_json(),
        )
    ]
    if params.variant == "bmw":
        kappa = params.q - params.q**-1
        lhs = params.rho - params.rho_inv
        rhs = kappa * (params.delta[0] - 1)
        results.append(
            check(
                "delta-zero",
                "loop-value",
                lhs == rhs,
                f"rho - rho^-1 = {format_rational(lhs)}, (q - q^-1)(delta0 - 1) = {format_rational(rhs)}",
                delta0=format_rational(params.delta[0]),
            )
        )
    if params.variant in ("bmw", "nw"):
        results.append(_admissibility_check(ctx))
    else:
        results.append(
            check(
                "fusion-constant",
                "fusion-constant",
                params.c is not None and params.c != QQ.zero,
                f"c = {format_rational(params.c)} (free in the quotient)",
            )
        )
    hazards = evaluation_hazards(params, ctx.n)
    results.append(
        check(
            "evaluation-safety",
            "evaluation-safety",
            not hazards,
            "fused denominators, weights and content vectors are safe" if not hazards else hazards[0],
            hazards=hazards,
        )
    )
    return results


def _admissibility_check(ctx: RunContext) -> CheckResult:
    params = ctx.params
    if params.d > 1:
        return check(
            "admissibility",
            "admissibility",
            params.solver is not None,
            "solved from the consistency of the two-strand enumeration",
            solver=params.solver,
        )
    solved = solve_admissible(params.variant, 1, params, ctx.rho_sign)
    if params.variant == "bmw":
        expected = params.v[0] if ctx.rho_sign == "+" else -params.v[0]
        found = solved.rho
        label = "rho"
    else:
        expected = 2 * params.v[0] + 1
        found = solved.omega[0]
        label = "omega0"
    return check(
        "admissibility",
        "admissibility",
        found == expected,
        f"solver gives {label} = {format_rational(found)}, closed form {format_rational(expected)}",
        solver=solved.solver,
    )


def relations_suite(ctx: RunContext) -> list[CheckResult]:
    model = ctx.model()
    results = [dimension_check(model)]
    results.extend(verify_relations(model))
    results.extend(verify_relations(model, right_action=True))
    results.append(faithfulness_check(model))
    results.extend(jm_checks(model))
    return results


def _double_factorial(m: int) -> int:
    return math.prod(range(m, 0, -2)) if m > 0 else 1


def combinatorics_suite(ctx: RunContext) -> list[CheckResult]:
    params, d, n, variant = ctx.params, ctx.d, ctx.n, ctx.variant
    tableaux = all_tableaux(d, n, variant)
    shapes = level_shapes(d, n, variant)
    by_shape: dict[Any, list[Any]] = {}
    for T in tableaux:
        by_shape.setdefault(T.level_shape, []).append(T)
    results = [
        check(
            "level-shapes",
            "branching-graph",
            all(shape in by_shape for shape in shapes),
            f"{len(shapes)} shapes, {len(tableaux)} tableaux",
            shapes={str(shape): len(by_shape.get(shape, [])) for shape in shapes},
        )
    ]

    oracle = dimension_oracle(d, n, variant)
    if variant in QUOTIENT_VARIANTS:
        closed = d**n * math.factorial(n)
        formula = "d^n n!"
    else:
        closed = d**n * _double_factorial(2 * n - 1)
        formula = "d^n (2n-1)!!"
    results.append(
        check(
            "dimension-formula",
            "dimension-oracle",
            oracle == closed,
            f"sum of squares {oracle}, {formula} = {closed}",
            oracle=oracle,
            closed_form=closed,
        )
    )

    visited = {shape for T in all_tableaux(d, n, variant) for shape in T.steps}
    broken = []
    for mu in sorted(visited, key=str):
        for box, direction, nu in neighbors(mu):
            back = [(b, dr) for b, dr, shape in neighbors(nu) if shape == mu]
            if len(back) != 1 or back[0][0] != box or back[0][1] == direction:
                broken.append(f"{mu} -> {nu}")
    results.append(
        check(
            "involutive-neighbors",
            "branching-graph",
            not broken,
            f"{len(visited)} shapes checked",
            failures=broken,
        )
    )

    invariant_failures = []
    for shape, members in by_shape.items():
        totals = set()
        for T in members:
            values = contents(T, params, variant)
            if params.family == "bmw":
                total = QQ.one
                for value in values:
                    total *= value
            else:
                total = sum(values, QQ.zero)
            totals.add(total)
        if len(totals) != 1:
            invariant_failures.append(str(shape))
    results.append(
        check(
            "content-invariants",
            "content-invariants",
            not invariant_failures,
            "content product (bmw) or sum (nw) depends only on the shape",
            failures=invariant_failures,
        )
    )

    results.append(spectral_separation(params, n, variant))

    nonzero_p = [str(T) for T in tableaux if not T.has_removals() and any(p_sequence(T))]
    results.append(
        check(
            "p-vanishing",
            "p-sequence",
            not nonzero_p,
            "p-sequences vanish on removal-free tableaux",
            failures=nonzero_p,
        )
    )

    weight_failures, weighed = [], 0
    for level in range(1, n + 1):
        for T in all_tableaux(d, level, variant):
            weighed += 1
            try:
                if weight(T, params, variant) == QQ.zero:
                    weight_failures.append(str(T))
            except PoleError as exc:
                weight_failures.append(f"{T}: {exc}")
    results.append(
        check(
            "weights-nonzero",
            "weights",
            not weight_failures,
            f"{weighed} weights up to n={n} are nonzero rationals",
            failures=weight_failures,
        )
    )

    low, high = p_range(tableaux)
    results.append(check("p-range", "p-sequence", True, f"observed p in [{low}, {high}]", low=low, high=high))

    one_step = []
    for T in all_tableaux(d, 1, variant):
        c_1 = contents(T, params, variant)[0]
        expected = QQ.one
        for value in params.v:
            if value != c_1:
                expected *= c_1 - value
        if weight(T, params, variant) != expected:
            one_step.append(str(T))
    results.append(
        check(
            "one-step-weight",
            "weights",
            not one_step,
            "f(T) = prod over v_t != c_1 of (c_1 - v_t) for one-step tableaux",
            failures=one_step,
        )
    )
    return results


def idempotents_suite(ctx: RunContext) -> list[CheckResult]:
    results = verify_idempotent_system(ctx.model(), ctx.params, ctx.system())
    results.extend(branching_checks(ctx.model(), ctx.params))
    return results


def scalars_suite(ctx: RunContext) -> list[CheckResult]:
    return scalar_identities_check(ctx.params)


def lemma_suite(ctx: RunContext) -> list[CheckResult]:
    return lemma_checks(ctx.model(), ctx.params)


def fusion_suite(ctx: RunContext) -> list[CheckResult]:
    model = ctx.model()
    results = unitarity_check(model, ctx.params)
    results.extend(fusion_verify(model, ctx.params, ctx.system()).to_checks())
    results.extend(evaluation_order_check(model, ctx.params))
    results.extend(c_independence_check(model, ctx.params, ctx.c_values, ctx.system()))
    return results


SUITE_RUNNERS: dict[str, Callable[[RunContext], list[CheckResult]]] = {
    "params": params_suite,
    "relations": relations_suite,
    "combinatorics": combinatorics_suite,
    "idempotents": idempotents_suite,
    "scalars": scalars_suite,
    "lemma": lemma_suite,
    "fusion": fusion_suite,
}


def parse_suites(text: str) -> list[str]:
    """'all' or a comma-separated subset, returned in dependency order."""
    requested = {item.strip() for item in text.split(",") if item.strip()}
    if not requested:
        raise ValueError("no suite selected")
    if "all" in requested:
        return list(SUITES)
    unknown = sorted(requested - set(SUITES))
    if unknown:
        raise ValueError(f"unknown suite(s) {', '.join(unknown)}; expected all or {', '.join(SUITES)}")
    return [name for name in SUITES if name in requested]


def run_suites(
    ctx: RunContext,
    suites: Sequence[str],
    on_check: Callable[[str, CheckResult], None] | None = None,
) -> list[SuiteResult]:
    outcomes = []
    for name in SUITES:
        if name not in suites:
            continue
        started = time.perf_counter()
        checks = SUITE_RUNNERS[name](ctx)
        outcome = SuiteResult(name, checks, time.perf_counter() - started)
        if on_check is not None:
            for result in checks:
                on_check(name, result)
        outcomes.append(outcome)
    return outcomes
