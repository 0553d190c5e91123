"""Tests for algebra-valued rational functions and their operator factors."""

from __future__ import annotations

import sys
import unittest
from pathlib import Path


REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "scripts"))

from sympy.polys.domains import QQ  # noqa: E402

from algebra_engine import build_model, make_params  # noqa: E402
from element_functions import (  # noqa: E402
    ElementFunction,
    ResolventError,
    ResolventFactor,
    ScalarFactor,
    linear,
)
from exact_arith import PoleError, RatFunc  # noqa: E402


class ElementFunctionTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.params = make_params("bmw", 1, n=2)
        cls.model = build_model("bmw", 1, 2, cls.params)
        cls.v = cls.params.v[0]
        cls.u = RatFunc.var()

    def test_scalar_cancellation_normalizes(self) -> None:
        u = self.u
        f = ElementFunction.unit(self.model).scale((u - 2) / ((u - 2) * (u + 1)))
        self.assertEqual(f.den, (u + 1).num)
        self.assertTrue(f.value_at(0).equals(self.model.word_element(())))

    def test_resolvent_of_a_scalar_generator(self) -> None:
        u, v = self.u, self.v
        resolvent = ResolventFactor(("X1",), (v,), "(u-X1)^-1")
        f = ElementFunction.unit(self.model).apply(resolvent)
        expected = ElementFunction.unit(self.model).scale(1 / (u - v))
        self.assertTrue(f.equals(expected))
        with self.assertRaises(PoleError) as caught:
            f.value_at(v)
        self.assertEqual(caught.exception.order, 1)
        regular = f.apply(ScalarFactor(u - v)).value_at(v)
        self.assertTrue(regular.equals(self.model.word_element(())))

    def test_resolvent_rejects_a_wrong_annihilator(self) -> None:
        with self.assertRaises(ResolventError):
            ElementFunction.unit(self.model).apply(ResolventFactor(("X1",), (self.v + 1,)))

    def test_failures_name_the_factor(self) -> None:
        wrong = ResolventFactor(("X1",), (self.v + 1,), "(u-X1)^-1 at the wrong root")
        with self.assertRaises(ResolventError) as caught:
            ElementFunction.unit(self.model).apply(wrong)
        self.assertIn("(u-X1)^-1 at the wrong root", str(caught.exception))
        factors = [
            ScalarFactor(self.u, "prefactor"),
            ResolventFactor(("X1",), (self.v,), "resolvent", point=self.v),
        ]
        with self.assertRaises(PoleError) as caught:
            ElementFunction.unit(self.model).apply_all(factors)
        self.assertIn("resolvent evaluated", str(caught.exception))
        self.assertEqual(caught.exception.__notes__, ["factor 2 of 2: resolvent"])

    def test_resolvent_at_a_fixed_point(self) -> None:
        point = self.v + 3
        f = ElementFunction.unit(self.model).apply(ResolventFactor(("X1",), (self.v,), point=point))
        self.assertTrue(f.value_at(0).equals(self.model.word_element(()).scale(QQ(1, 3))))
        with self.assertRaises(PoleError):
            ElementFunction.unit(self.model).apply(ResolventFactor(("X1",), (self.v,), point=self.v))

    def test_linear_factor_sides(self) -> None:
        u = self.u
        factor = linear((1, ("T1",)), (u, ("E1",)))
        start = ElementFunction.constant(self.model.word_element(("E1",)))
        right = start.apply(factor, "right").value_at(2)
        left = start.apply(factor, "left").value_at(2)
        model = self.model
        e1 = model.word_element(("E1",))
        self.assertTrue(right.equals(e1 * model.word_element(("T1",)) + (e1 * e1).scale(2)))
        self.assertTrue(left.equals(model.word_element(("T1",)) * e1 + (e1 * e1).scale(2)))

    def test_apply_all_order(self) -> None:
        first = linear((1, ("T1",)))
        second = linear((1, ("E1",)))
        start = ElementFunction.unit(self.model)
        right = start.apply_all([first, second]).value_at(0)
        left = start.apply_all([first, second], side="left").value_at(0)
        self.assertTrue(right.equals(self.model.word_element(("T1", "E1"))))
        self.assertTrue(left.equals(self.model.word_element(("T1", "E1"))))

    def test_sum_and_difference(self) -> None:
        u = self.u
        f = ElementFunction.unit(self.model).scale(1 / (u - 1))
        g = ElementFunction.unit(self.model).scale(u / (u - 1))
        self.assertTrue((g - f).equals(ElementFunction.unit(self.model)))
        self.assertTrue((f - f).is_zero)

    def test_bad_side(self) -> None:
        with self.assertRaises(ValueError):
            ElementFunction.unit(self.model).apply(linear((1, ())), "middle")


if __name__ == "__main__":
    unittest.main()
