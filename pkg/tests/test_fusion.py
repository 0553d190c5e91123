"""Tests for Baxterized elements, chain lemmas and the fused idempotents."""

from __future__ import annotations

import os
import sys
import unittest
from dataclasses import replace
from pathlib import Path


REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "scripts"))

from sympy.polys.domains import QQ  # noqa: E402

from algebra_engine import build_model, make_params  # noqa: E402
from check_results import FAIL, PASS, SKIP  # noqa: E402
from exact_arith import RatFunc  # noqa: E402
from fusion import (  # noqa: E402
    HECKE_C_VALUES,
    StepDiagnostic,
    baxterized,
    c_independence_check,
    evaluation_order_check,
    f_scalar,
    fused_idempotent,
    fusion_verify,
    g_scalar,
    lemma_check,
    lemma_checks,
    phi_chain,
    prefactor_profile,
    prefactor_regularity,
    q_factor,
    scalar_identities_check,
    unitarity_check,
)
from idempotents import primitive_idempotent  # noqa: E402
from multipartitions import MultiPartition  # noqa: E402
from updown import UpDownTableau, all_tableaux  # noqa: E402


SLOW_TESTS_ENV = "FUSIONLAB_SLOW_TESTS"


def tableau(*shapes: tuple[int, ...]) -> UpDownTableau:
    return UpDownTableau(tuple(MultiPartition.of(shape) for shape in shapes))


def failed_ids(results) -> list[str]:
    return [result.id for result in results if result.verdict == FAIL]


class ScalarTests(unittest.TestCase):
    def test_unitarity_scalars(self) -> None:
        self.assertEqual(f_scalar(2, 1, QQ(3)).constant_value(), QQ(-119, 9))
        u = RatFunc.var()
        self.assertEqual(g_scalar(u, 0), (u + 1) * (u - 1) / (u * u))

    def test_factor_shapes(self) -> None:
        u = RatFunc.var()
        hecke = make_params("hecke", 1, n=2)
        self.assertEqual(len(q_factor(hecke, 1, u, 2).terms), 2)
        self.assertEqual(len(baxterized(hecke, 1, u, 2).terms), 2)
        bmw = make_params("bmw", 1, n=2)
        terms = q_factor(bmw, 1, u, 2).terms
        self.assertEqual([word for _, word in terms], [("T1",), (), ("E1",)])
        kappa = bmw.q - bmw.q**-1
        self.assertEqual(terms[1][0], kappa / (u * 2 * (-(bmw.q**-1) * bmw.rho_inv) - 1))
        nw = make_params("nw", 1, n=2)
        self.assertEqual(q_factor(nw, 1, u, 2).terms[2][0], -1 / (u + 2))

    def test_scalar_identities(self) -> None:
        for variant in ("bmw", "nw"):
            results = scalar_identities_check(make_params(variant, 1, n=3))
            self.assertEqual(len(results), 2)
            self.assertEqual(failed_ids(results), [], msg=variant)
        quotient = scalar_identities_check(make_params("hecke", 1, n=2))
        self.assertEqual(quotient[0].verdict, SKIP)


class TwoStrandFusionTests(unittest.TestCase):
    VARIANTS = ("bmw", "nw", "hecke", "deg-hecke")

    @classmethod
    def setUpClass(cls) -> None:
        cls.models = {}
        for variant in cls.VARIANTS:
            params = make_params(variant, 1, n=2)
            cls.models[variant] = build_model(variant, 1, 2, params)

    def test_unitarity(self) -> None:
        for variant, model in self.models.items():
            results = unitarity_check(model)
            self.assertEqual(len(results), 1)
            self.assertEqual(results[0].verdict, PASS, msg=variant)

    def test_lemma(self) -> None:
        for variant, model in self.models.items():
            self.assertEqual(failed_ids(lemma_checks(model)), [], msg=variant)

    def test_first_chain_is_the_regular_resolvent(self) -> None:
        model = self.models["nw"]
        self.assertTrue(lemma_check(model, UpDownTableau.empty()))
        chain = phi_chain(model, ())
        self.assertEqual(chain.pole_order(model.params.v[0]), 0)

    def test_fused_idempotents_match(self) -> None:
        for variant, model in self.models.items():
            report = fusion_verify(model)
            self.assertTrue(report.passed, msg=variant)
            self.assertEqual(len(report.entries), len(all_tableaux(1, 2, variant)))

    def test_removal_step_has_a_double_zero(self) -> None:
        model = self.models["bmw"]
        T = tableau((1,), ())
        steps: list[StepDiagnostic] = []
        fused = fused_idempotent(model, T, diagnostics=steps)
        self.assertTrue(fused.equals(primitive_idempotent(model, T)))
        self.assertEqual([step.p for step in steps], [0, 1])
        self.assertTrue(prefactor_regularity(T, model.params))
        self.assertEqual([entry["value"] for entry in prefactor_profile(T, model.params)], ["1/1", "1/1"])

    def test_evaluation_order(self) -> None:
        for variant, model in self.models.items():
            results = evaluation_order_check(model)
            self.assertEqual(failed_ids(results), [], msg=variant)
            self.assertTrue(all(len(result.details["sample_points"]) == 3 for result in results))

    def test_quotient_constant_is_free(self) -> None:
        model = self.models["hecke"]
        results = c_independence_check(model, c_values=HECKE_C_VALUES)
        self.assertEqual(len(results), 3)
        self.assertEqual(failed_ids(results), [])
        self.assertTrue(any(result.verdict == PASS for result in results))

    def test_bmw_other_constant_is_logged_only(self) -> None:
        results = c_independence_check(self.models["bmw"])
        self.assertEqual([result.verdict for result in results], [SKIP])
        self.assertIn("mismatches", results[0].details)

    def test_report_checks_carry_p_sequences(self) -> None:
        checks = fusion_verify(self.models["nw"]).to_checks()
        self.assertTrue(all(result.id.startswith("fusion[") for result in checks))
        self.assertTrue(all("p_sequence" in result.details for result in checks))


class ThreeStrandFusionTests(unittest.TestCase):
    def test_bmw_three_strands(self) -> None:
        params = make_params("bmw", 1, n=3)
        model = build_model("bmw", 1, 3, params)
        self.assertEqual(failed_ids(lemma_checks(model)), [])
        report = fusion_verify(model)
        self.assertTrue(report.passed)
        highest = max(max(entry.p_sequence) for entry in report.entries)
        self.assertEqual(highest, 2)

    def test_nw_three_strands(self) -> None:
        params = make_params("nw", 1, n=3)
        model = build_model("nw", 1, 3, params)
        self.assertEqual(failed_ids(lemma_checks(model)), [])
        self.assertTrue(fusion_verify(model).passed)

    def test_bmw_return_to_a_single_box(self) -> None:
        params = make_params("bmw", 1, n=3)
        model = build_model("bmw", 1, 3, params)
        T = tableau((1,), (), (1,))
        self.assertEqual([entry["value"] for entry in prefactor_profile(T, params)], ["1/1"] * 3)
        steps: list[StepDiagnostic] = []
        fused = fused_idempotent(model, T, diagnostics=steps)
        self.assertEqual([step.p for step in steps], [0, 1, 2])
        self.assertTrue(fused.equals(primitive_idempotent(model, T)))

    def test_wrong_constant_breaks_the_lemma(self) -> None:
        params = make_params("nw", 1, n=2)
        model = build_model("nw", 1, 2, params)
        shifted = replace(params, c=params.c + 1)
        self.assertFalse(lemma_check(model, tableau((1,)), shifted))


class LevelTwoQuotientTests(unittest.TestCase):
    def test_hecke_level_two(self) -> None:
        params = make_params("hecke", 2, n=2)
        model = build_model("hecke", 2, 2, params)
        self.assertEqual(failed_ids(unitarity_check(model)), [])
        self.assertEqual(failed_ids(lemma_checks(model)), [])
        self.assertTrue(fusion_verify(model).passed)

    def test_bmw_and_nw_level_two(self) -> None:
        for variant in ("bmw", "nw"):
            params = make_params(variant, 2, n=2)
            model = build_model(variant, 2, 2, params)
            self.assertEqual(failed_ids(lemma_checks(model)), [], msg=variant)
            report = fusion_verify(model)
            self.assertTrue(report.passed, msg=variant)
            self.assertEqual(len(report.entries), len(all_tableaux(2, 2, variant)))


class QuotientThreeStrandTests(unittest.TestCase):
    def verify(self, variant: str, d: int) -> None:
        params = make_params(variant, d, n=3)
        model = build_model(variant, d, 3, params)
        report = fusion_verify(model)
        self.assertTrue(report.passed, msg=f"{variant} d={d}")
        self.assertEqual(len(report.entries), len(all_tableaux(d, 3, variant)))

    def test_level_two(self) -> None:
        for variant in ("hecke", "deg-hecke"):
            self.verify(variant, 2)

    @unittest.skipUnless(os.environ.get(SLOW_TESTS_ENV), f"set {SLOW_TESTS_ENV}=1 to run")
    def test_level_three(self) -> None:
        for variant in ("hecke", "deg-hecke"):
            self.verify(variant, 3)


if __name__ == "__main__":
    unittest.main()
