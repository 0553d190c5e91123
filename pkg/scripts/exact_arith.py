#!/usr/bin/env python3
"""Exact rationals and normalized univariate rational functions over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring


Rational = QQ.dtype
DEFAULT_VARIABLE = "u"
ARITH_OPS = ("add", "sub", "mul", "div")


class PoleError(ArithmeticError):
    """Raised when an exact evaluation or division hits a genuine pole."""

    def __init__(self, message: str, point: Any = None, order: int = 0) -> None:
        super().__init__(message)
        self.point = point
        self.order = order


def rational(value: Any) -> Rational:
    """Coerce ints, "num/den" strings, Fractions and QQ elements to QQ."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        numerator, _, denominator = text.partition("/")
        try:
            num = int(numerator)
            den = int(denominator) if denominator else 1
        except ValueError as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return QQ(num, den)
    return QQ.convert(value)


def format_rational(value: Any) -> str:
    value = rational(value)
    return f"{int(value.numerator)}/{int(value.denominator)}"


def is_integer(value: Rational) -> bool:
    return int(value.denominator) == 1


@lru_cache(maxsize=None)
def polynomial_ring(variable: str):
    poly_ring, _ = ring(variable, QQ)
    return poly_ring


def poly_coefficients(poly: PolyElement) -> list[Rational]:
    """Ascending coefficient list of a univariate polynomial."""
    if not poly:
        return []
    coeffs = [QQ.zero] * (poly.degree() + 1)
    for (power,), coeff in poly.iterterms():
        coeffs[power] = coeff
    return coeffs


def poly_from_roots(roots: Iterable[Rational], variable: str = DEFAULT_VARIABLE) -> PolyElement:
    poly_ring = polynomial_ring(variable)
    (x,) = poly_ring.gens
    poly = poly_ring.one
    for root in roots:
        poly = poly * (x - rational(root))
    return poly


def rational_roots(poly: PolyElement) -> dict[Rational, int]:
    """Rational roots with multiplicity; irreducible nonlinear factors are ignored."""
    roots: dict[Rational, int] = {}
    if poly.is_ground:
        return roots
    _, factors = poly.factor_list()
    for factor, multiplicity in factors:
        if factor.degree() != 1:
            continue
        coeffs = poly_coefficients(factor)
        root = -coeffs[0] / coeffs[1]
        roots[root] = roots.get(root, 0) + multiplicity
    return roots


@dataclass(frozen=True)
class RatFunc:
    """num/den in one variable with gcd(num, den) = 1 and den monic."""

    variable: str
    num: PolyElement
    den: PolyElement

    @classmethod
    def build(cls, variable: str, num: PolyElement, den: PolyElement) -> "RatFunc":
        poly_ring = polynomial_ring(variable)
        num = poly_ring(num)
        den = poly_ring(den)
        if not den:
            raise PoleError("rational function with zero denominator")
        if not num:
            return cls(variable, poly_ring.zero, poly_ring.one)
        _, num, den = num.cofactors(den)
        lead = den.LC
        if lead != QQ.one:
            num = num.quo_ground(lead)
            den = den.quo_ground(lead)
        return cls(variable, num, den)

    @classmethod
    def constant(cls, value: Any, variable: str = DEFAULT_VARIABLE) -> "RatFunc":
        poly_ring = polynomial_ring(variable)
        return cls(variable, poly_ring(rational(value)), poly_ring.one)

    @classmethod
    def var(cls, variable: str = DEFAULT_VARIABLE) -> "RatFunc":
        poly_ring = polynomial_ring(variable)
        return cls(variable, poly_ring.gens[0], poly_ring.one)

    @classmethod
    def from_polynomial(cls, poly: PolyElement, variable: str = DEFAULT_VARIABLE) -> "RatFunc":
        return cls.build(variable, poly, polynomial_ring(variable).one)

    @property
    def ring(self):
        return polynomial_ring(self.variable)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant_value(self) -> Rational:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.num.LC if self.num else QQ.zero

    def degree_bound(self) -> int:
        return max(self.num.degree() if self.num else 0, self.den.degree())

    def _coerce(self, other: Any) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.variable != self.variable:
                raise ValueError(
                    f"variable mismatch: {self.variable!r} vs {other.variable!r}"
                )
            return other
        if isinstance(other, PolyElement):
            return RatFunc.from_polynomial(other, self.variable)
        return RatFunc.constant(other, self.variable)

    def __add__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc.build(
            self.variable,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.variable, -self.num, self.den)

    def __sub__(self, other: Any) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc.build(self.variable, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RatFunc":
        other = self._coerce(other)
        if other.is_zero:
            raise PoleError("division by the zero function")
        return RatFunc.build(self.variable, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Any) -> "RatFunc":
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> "RatFunc":
        return rf_pow(self, exponent)

    def __call__(self, point: Any) -> Rational:
        return rf_eval_regular(self, point)

    def __str__(self) -> str:
        num = str(self.num.as_expr())
        if self.den == self.ring.one:
            return num
        return f"({num})/({self.den.as_expr()})"


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}; expected one of {ARITH_OPS}")


def rf_pow(f: RatFunc, exponent: int) -> RatFunc:
    if exponent < 0:
        if f.is_zero:
            raise PoleError("zero function raised to a negative power")
        return RatFunc.build(f.variable, f.den ** (-exponent), f.num ** (-exponent))
    return RatFunc.build(f.variable, f.num**exponent, f.den**exponent)


def pole_order(den: PolyElement, point: Rational) -> int:
    (x,) = den.ring.gens
    order = 0
    while den and den(point) == QQ.zero:
        den = den.exquo(x - point)
        order += 1
    return order


def rf_eval_regular(f: RatFunc, point: Any) -> Rational:
    """Value at point of the reduced form; removable singularities are already gone."""
    point = rational(point)
    den_value = f.den(point)
    if den_value == QQ.zero:
        order = pole_order(f.den, point)
        raise PoleError(
            f"pole of order {order} at {format_rational(point)} in {f}",
            point=point,
            order=order,
        )
    return f.num(point) / den_value


def rf_product(factors: Sequence[RatFunc], variable: str = DEFAULT_VARIABLE) -> RatFunc:
    result = RatFunc.constant(1, variable)
    for factor in factors:
        result = result * factor
    return result
