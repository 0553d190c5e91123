"""Tests for presentations, vector enumeration, parameters and matrix models."""

from __future__ import annotations

import sys
import unittest
from dataclasses import replace
from pathlib import Path


REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "scripts"))

from sympy.polys.domains import QQ  # noqa: E402

from algebra_engine import (  # noqa: E402
    ModelBuildError,
    ParamSet,
    build_model,
    check_generic,
    delta_zero,
    dimension_check,
    element_from_terms,
    evaluation_hazards,
    faithfulness_check,
    jm_checks,
    jm_elements,
    make_params,
    model_summary,
    solve_admissible,
    verify_relations,
)
from check_results import PASS, overall_status  # noqa: E402
from presentations import Relation, build_presentation, jm_word, reversed_relation  # noqa: E402
from vector_enumeration import EnumerationBudgetError, enumerate_module  # noqa: E402
from verification_suites import RunContext, params_suite  # noqa: E402


class PresentationTests(unittest.TestCase):
    def test_jm_words(self) -> None:
        self.assertEqual(jm_word("bmw", 1), ("X1",))
        self.assertEqual(jm_word("hecke", 3), ("T2", "T1", "X1", "T1", "T2"))
        self.assertEqual(jm_word("nw", 3), ("X3",))

    def test_quotients_kill_the_tangles(self) -> None:
        params = make_params("hecke", 1, n=2)
        presentation = build_presentation("hecke", 2, 1, params.presentation_scalars())
        self.assertFalse(presentation.has_tangles)
        self.assertEqual(presentation.relation("quotient[E1]").terms, ((1, ("E1",)),))

    def test_reversed_relation(self) -> None:
        relation = Relation("r", "braid", ((1, ("a", "b")), (-1, ("c",))))
        self.assertEqual(reversed_relation(relation).terms, ((1, ("b", "a")), (-1, ("c",))))

    def test_unknown_variant(self) -> None:
        with self.assertRaises(ValueError):
            build_presentation("affine", 2, 1, make_params("bmw", 1).presentation_scalars())


class VectorEnumerationTests(unittest.TestCase):
    def test_involution_gives_two_dimensions(self) -> None:
        relation = Relation("a^2=1", "involution", ((1, ("a", "a")), (-1, ())))
        result = enumerate_module(("a",), [relation])
        self.assertEqual(result.dimension, 2)
        self.assertEqual(result.words, [(), ("a",)])
        self.assertFalse(result.deferred)

    def test_scalar_generator_collapses(self) -> None:
        relations = [
            Relation("a^2=1", "involution", ((1, ("a", "a")), (-1, ()))),
            Relation("a=1", "scalar", ((1, ("a",)), (-1, ()))),
        ]
        self.assertEqual(enumerate_module(("a",), relations).dimension, 1)

    def test_free_generator_exhausts_the_budget(self) -> None:
        with self.assertRaises(EnumerationBudgetError):
            enumerate_module(("a",), [], budget=50)


class ParameterTests(unittest.TestCase):
    def test_generic_examples(self) -> None:
        self.assertTrue(check_generic(ParamSet("bmw", 1, (QQ(5),), q=QQ(2)), 3).passed)
        bad = check_generic(ParamSet("bmw", 2, (QQ(5), QQ(20)), q=QQ(2)), 3)
        self.assertFalse(bad.passed)
        self.assertEqual(bad.reason, "v1*v2^-1 = q^-2")
        half = check_generic(ParamSet("nw", 1, (QQ(3, 2),)), 2)
        self.assertFalse(half.passed)
        self.assertEqual(half.reason, "2*v1 = 3")

    def test_bmw_level_one_closed_forms(self) -> None:
        params = make_params("bmw", 1, seed=7, n=3)
        self.assertTrue(params.certificate.passed)
        self.assertEqual(params.rho, params.v[0])
        self.assertEqual(params.delta, (delta_zero(params.q, params.rho, params.rho_inv),))
        self.assertEqual(params.c, -(params.q**-1))
        kappa = params.q - params.q**-1
        self.assertEqual(params.rho - params.rho_inv, kappa * (params.delta[0] - 1))
        negative = make_params("bmw", 1, seed=7, n=3, rho_sign="-")
        self.assertEqual(negative.rho, -negative.v[0])

    def test_nw_level_one_closed_form(self) -> None:
        params = make_params("nw", 1, seed=3, n=3)
        self.assertEqual(params.omega, (2 * params.v[0] + 1,))
        self.assertEqual(params.c, 1 - params.omega[0] / 2)

    def test_seed_is_deterministic(self) -> None:
        self.assertEqual(make_params("bmw", 1, seed=11), make_params("bmw", 1, seed=11))

    def test_solver_reproduces_level_one(self) -> None:
        bmw = make_params("bmw", 1, n=2)
        solved = solve_admissible("bmw", 1, replace(bmw, rho=None, delta=()))
        self.assertEqual(solved.rho, bmw.v[0])
        self.assertIn("rho", solved.solver["chosen"])
        nw = make_params("nw", 1, n=2)
        solved = solve_admissible("nw", 1, replace(nw, omega=()))
        self.assertEqual(solved.omega, (2 * nw.v[0] + 1,))

    def test_fusion_constant_only_for_quotients(self) -> None:
        with self.assertRaises(ValueError):
            make_params("bmw", 1, c="2")
        self.assertEqual(make_params("hecke", 2, n=2, c="-3").c, QQ(-3))
        with self.assertRaises(ValueError):
            make_params("hecke", 1).with_c(0)

    def test_hazards_are_empty_for_drawn_parameters(self) -> None:
        for variant in ("bmw", "nw", "hecke", "deg-hecke"):
            params = make_params(variant, 1, n=3)
            self.assertEqual(evaluation_hazards(params, 3), [], msg=variant)

    def test_hazards_flag_coinciding_parameters(self) -> None:
        params = make_params("hecke", 2, n=2)
        collided = replace(params, v=(params.v[0], params.v[0]))
        hazards = evaluation_hazards(collided, 2)
        self.assertTrue(any("share a content vector" in hazard for hazard in hazards), msg=hazards)
        self.assertTrue(any("vanishes" in hazard for hazard in hazards), msg=hazards)

    def test_params_suite_reports_evaluation_safety(self) -> None:
        for variant in ("bmw", "hecke"):
            params = make_params(variant, 2, n=2)
            results = {result.id: result for result in params_suite(RunContext(params, 2))}
            safety = results["evaluation-safety"]
            self.assertEqual(safety.verdict, PASS, msg=variant)
            self.assertEqual(safety.details["hazards"], [])

    def test_json_uses_exact_strings(self) -> None:
        data = make_params("nw", 1).to_json()
        self.assertRegex(data["v"][0], r"^-?\d+/\d+$")
        self.assertIsNone(data["q"])


class ModelTests(unittest.TestCase):
    def assert_all_pass(self, results) -> None:
        failed = [result.id for result in results if result.verdict != PASS]
        self.assertEqual(failed, [])

    def test_bmw_two_strands(self) -> None:
        params = make_params("bmw", 1, n=2)
        model = build_model("bmw", 1, 2, params)
        self.assertEqual(model.dimension, 3)
        self.assertEqual(set(model.basis_words), {(), ("T1",), ("E1",)})
        self.assert_all_pass(verify_relations(model))
        self.assert_all_pass(verify_relations(model, right_action=True))
        self.assert_all_pass([faithfulness_check(model), dimension_check(model)])
        self.assert_all_pass(jm_checks(model))

    def test_bmw_skein_square(self) -> None:
        params = make_params("bmw", 1, n=2)
        model = build_model("bmw", 1, 2, params)
        kappa = params.q - params.q**-1
        t1 = model.word_element(("T1",))
        expected = element_from_terms(model, [(1, ()), (kappa, ("T1",)), (-kappa * params.rho_inv, ("E1",))])
        self.assertTrue((t1 * t1).equals(expected))

    def test_three_strand_dimensions(self) -> None:
        for variant, expected in (("bmw", 15), ("nw", 15), ("hecke", 6), ("deg-hecke", 6)):
            params = make_params(variant, 1, n=3)
            model = build_model(variant, 1, 3, params)
            self.assertEqual(model.dimension, expected, msg=variant)
            self.assertEqual(overall_status(verify_relations(model)), PASS, msg=variant)

    def test_level_two_quotients(self) -> None:
        for variant in ("hecke", "deg-hecke"):
            params = make_params(variant, 2, n=2)
            model = build_model(variant, 2, 2, params)
            self.assertEqual(model.dimension, 8)
            self.assert_all_pass(jm_checks(model))

    def test_level_two_nw_uses_the_solver(self) -> None:
        params = make_params("nw", 2, n=2)
        self.assertIsNotNone(params.solver)
        self.assertEqual(len(params.omega), 2)
        model = build_model("nw", 2, 2, params)
        self.assertEqual(model.dimension, 12)
        self.assert_all_pass(verify_relations(model))

    def test_jm_elements_commute(self) -> None:
        params = make_params("nw", 1, n=3)
        model = build_model("nw", 1, 3, params)
        x = jm_elements(model)
        self.assertEqual(len(x), 3)
        self.assertTrue((x[0] * x[2]).equals(x[2] * x[0]))

    def test_wrong_admissibility_breaks_the_oracle(self) -> None:
        params = make_params("nw", 1, n=2)
        with self.assertRaises(ModelBuildError):
            build_model("nw", 1, 2, replace(params, omega=(params.omega[0] + 1,)))

    def test_summary(self) -> None:
        model = build_model("hecke", 1, 2, make_params("hecke", 1, n=2))
        summary = model_summary(model)
        self.assertEqual(summary["dimension"], 2)
        self.assertEqual(summary["basis_words"][0], "1")


if __name__ == "__main__":
    unittest.main()
