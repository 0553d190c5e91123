#!/usr/bin/env python3
"""Algebra-valued rational functions of one variable and the operator factors acting on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from algebra_engine import AlgebraElement, AlgebraModel
from exact_arith import (
    DEFAULT_VARIABLE,
    PoleError,
    RatFunc,
    Rational,
    format_rational,
    poly_coefficients,
    poly_from_roots,
    polynomial_ring,
    rational,
    rational_roots,
)


Word = tuple[str, ...]
SIDES = ("left", "right")


class ResolventError(RuntimeError):
    """Raised when the polynomial behind a resolvent does not annihilate its argument."""


@dataclass(frozen=True)
class LinearFactor:
    """sum of coeff(u)·word; the empty word stands for 1."""

    terms: tuple[tuple[RatFunc, Word], ...]
    label: str = ""


@dataclass(frozen=True)
class ResolventFactor:
    """(u − X)⁻¹ for X given by a word with ∏(X − root) = 0; a fixed point replaces u."""

    word: Word
    roots: tuple[Rational, ...]
    label: str = ""
    point: Rational | None = None


@dataclass(frozen=True)
class ScalarFactor:
    value: RatFunc
    label: str = ""


Factor = LinearFactor | ResolventFactor | ScalarFactor


def _factor_name(factor: Factor) -> str:
    if factor.label:
        return factor.label
    if isinstance(factor, ResolventFactor):
        return f"(u-{' '.join(factor.word)})^-1"
    return type(factor).__name__


def _apply_word(model: AlgebraModel, word: Word, vector: DomainMatrix, side: str) -> DomainMatrix:
    if side == "right":
        return model.right_word(word, vector)
    return model.left_word(word, vector)


def _is_zero(vector: DomainMatrix) -> bool:
    return vector.is_zero_matrix


def _times_poly(model: AlgebraModel, coeffs: Sequence[DomainMatrix], poly: PolyElement) -> list[DomainMatrix]:
    scalars = poly_coefficients(poly)
    if not coeffs or not scalars:
        return []
    result = [model.zero() for _ in range(len(coeffs) + len(scalars) - 1)]
    for i, vector in enumerate(coeffs):
        if _is_zero(vector):
            continue
        for j, scalar in enumerate(scalars):
            if scalar:
                result[i + j] = result[i + j].add(vector.scalarmul(scalar))
    return result


def _add_coeffs(model: AlgebraModel, left: Sequence[DomainMatrix], right: Sequence[DomainMatrix]) -> list[DomainMatrix]:
    size = max(len(left), len(right))
    result = []
    for index in range(size):
        a = left[index] if index < len(left) else model.zero()
        b = right[index] if index < len(right) else model.zero()
        result.append(a.add(b))
    return result


def _horner(model: AlgebraModel, coeffs: Sequence[DomainMatrix], point: Rational) -> DomainMatrix:
    value = model.zero()
    for vector in reversed(coeffs):
        value = value.scalarmul(point).add(vector)
    return value


def _divide_linear(coeffs: Sequence[DomainMatrix], root: Rational) -> list[DomainMatrix]:
    """Synthetic division by (u − root); the remainder is assumed zero."""
    quotient: list[DomainMatrix] = [None] * (len(coeffs) - 1)  # type: ignore[list-item]
    carry = coeffs[-1]
    for index in range(len(coeffs) - 2, -1, -1):
        quotient[index] = carry
        carry = coeffs[index].add(carry.scalarmul(root))
    return quotient


def _trim(coeffs: Sequence[DomainMatrix]) -> list[DomainMatrix]:
    coeffs = list(coeffs)
    while coeffs and _is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


@dataclass(frozen=True, eq=False)
class ElementFunction:
    """sum_i u^i·a_i / den(u), each a_i stored as its image of 1."""

    model: AlgebraModel
    numerator: tuple[DomainMatrix, ...]
    den: PolyElement
    variable: str = DEFAULT_VARIABLE

    @classmethod
    def from_vector(
        cls, model: AlgebraModel, vector: DomainMatrix, variable: str = DEFAULT_VARIABLE
    ) -> "ElementFunction":
        return cls(model, tuple(_trim([vector])), polynomial_ring(variable).one, variable)

    @classmethod
    def constant(cls, element: AlgebraElement, variable: str = DEFAULT_VARIABLE) -> "ElementFunction":
        return cls.from_vector(element.model, element.vector, variable)

    @classmethod
    def unit(cls, model: AlgebraModel, variable: str = DEFAULT_VARIABLE) -> "ElementFunction":
        return cls.from_vector(model, model.unit(), variable)

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def degree(self) -> int:
        return max(len(self.numerator) - 1, self.den.degree())

    def _build(self, numerator: Sequence[DomainMatrix], den: PolyElement) -> "ElementFunction":
        return ElementFunction(self.model, tuple(numerator), den, self.variable).normalized()

    def normalized(self) -> "ElementFunction":
        numerator = _trim(self.numerator)
        poly_ring = polynomial_ring(self.variable)
        if not numerator:
            return ElementFunction(self.model, (), poly_ring.one, self.variable)
        den = self.den
        (x,) = poly_ring.gens
        for root, multiplicity in sorted(rational_roots(den).items()):
            for _ in range(multiplicity):
                if not _is_zero(_horner(self.model, numerator, root)):
                    break
                numerator = _trim(_divide_linear(numerator, root))
                den = den.exquo(x - root)
        lead = den.LC
        if lead != QQ.one:
            scale = QQ.one / lead
            numerator = [vector.scalarmul(scale) for vector in numerator]
            den = den.quo_ground(lead)
        return ElementFunction(self.model, tuple(numerator), den, self.variable)

    def scale(self, value: Any) -> "ElementFunction":
        if not isinstance(value, RatFunc):
            value = RatFunc.constant(value, self.variable)
        return self._build(_times_poly(self.model, self.numerator, value.num), self.den * value.den)

    def __add__(self, other: "ElementFunction") -> "ElementFunction":
        numerator = _add_coeffs(
            self.model,
            _times_poly(self.model, self.numerator, other.den),
            _times_poly(self.model, other.numerator, self.den),
        )
        return self._build(numerator, self.den * other.den)

    def __neg__(self) -> "ElementFunction":
        return ElementFunction(
            self.model, tuple(vector.neg() for vector in self.numerator), self.den, self.variable
        )

    def __sub__(self, other: "ElementFunction") -> "ElementFunction":
        return self + (-other)

    def equals(self, other: "ElementFunction") -> bool:
        lhs = _times_poly(self.model, self.numerator, other.den)
        rhs = _times_poly(self.model, other.numerator, self.den)
        return not _trim(_add_coeffs(self.model, lhs, [vector.neg() for vector in rhs]))

    def word(self, word: Word, side: str = "right") -> "ElementFunction":
        numerator = [_apply_word(self.model, word, vector, side) for vector in self.numerator]
        return ElementFunction(self.model, tuple(_trim(numerator)), self.den, self.variable)

    def apply(self, factor: Factor, side: str = "right") -> "ElementFunction":
        if side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {side!r}")
        if isinstance(factor, ScalarFactor):
            return self.scale(factor.value)
        if isinstance(factor, LinearFactor):
            return self._apply_linear(factor, side)
        return self._apply_resolvent(factor, side)

    def apply_all(self, factors: Iterable[Factor], side: str = "right") -> "ElementFunction":
        """x·F1·F2·... for side='right'; F1·F2·...·x for side='left'."""
        factors = list(factors)
        if side == "left":
            factors.reverse()
        result = self
        for index, factor in enumerate(factors, start=1):
            try:
                result = result.apply(factor, side)
            except (PoleError, ResolventError) as exc:
                exc.add_note(f"factor {index} of {len(factors)}: {_factor_name(factor)}")
                raise
        return result

    def _apply_linear(self, factor: LinearFactor, side: str) -> "ElementFunction":
        common = polynomial_ring(self.variable).one
        for coeff, _ in factor.terms:
            common = common.lcm(coeff.den)
        numerator: list[DomainMatrix] = []
        for coeff, word in factor.terms:
            if coeff.is_zero:
                continue
            moved = self.word(word, side).numerator
            numerator = _add_coeffs(
                self.model, numerator, _times_poly(self.model, moved, coeff.num * common.exquo(coeff.den))
            )
        return self._build(numerator, self.den * common)

    def _apply_resolvent(self, factor: ResolventFactor, side: str) -> "ElementFunction":
        annihilator = poly_from_roots(factor.roots, self.variable)
        m = poly_coefficients(annihilator)
        degree = len(m) - 1
        powers = [list(self.numerator)]
        for _ in range(degree):
            powers.append([_apply_word(self.model, factor.word, vector, side) for vector in powers[-1]])
        for index in range(len(self.numerator)):
            residue = self.model.zero()
            for power, coeff in enumerate(m):
                residue = residue.add(powers[power][index].scalarmul(coeff))
            if not _is_zero(residue):
                roots = ", ".join(format_rational(root) for root in factor.roots)
                raise ResolventError(
                    f"{_factor_name(factor)}: {' '.join(factor.word)} is not annihilated"
                    f" by the polynomial with roots {roots}"
                )
        poly_ring = polynomial_ring(self.variable)
        (x,) = poly_ring.gens
        numerator: list[DomainMatrix] = []
        for j in range(degree):
            h_j = poly_ring.zero
            for i in range(j + 1, degree + 1):
                h_j += x ** (i - 1 - j) * m[i]
            if factor.point is None:
                numerator = _add_coeffs(self.model, numerator, _times_poly(self.model, powers[j], h_j))
            else:
                scale = h_j(factor.point)
                numerator = _add_coeffs(
                    self.model, numerator, [vector.scalarmul(scale) for vector in powers[j]]
                )
        if factor.point is None:
            return self._build(numerator, self.den * annihilator)
        at_point = annihilator(factor.point)
        if at_point == QQ.zero:
            raise PoleError(
                f"{_factor_name(factor)} evaluated at its eigenvalue {format_rational(factor.point)}",
                point=factor.point,
                order=1,
            )
        return self._build([vector.scalarmul(QQ.one / at_point) for vector in numerator], self.den)

    def pole_order(self, point: Any) -> int:
        point = rational(point)
        (x,) = self.den.ring.gens
        den, order = self.den, 0
        while den(point) == QQ.zero:
            den = den.exquo(x - point)
            order += 1
        return order

    def value_at(self, point: Any) -> AlgebraElement:
        """Regular value at point; a surviving denominator root is a genuine pole."""
        point = rational(point)
        reduced = self.normalized()
        den_value = reduced.den(point)
        if den_value == QQ.zero:
            order = reduced.pole_order(point)
            raise PoleError(
                f"element function has a pole of order {order} at {format_rational(point)}",
                point=point,
                order=order,
            )
        vector = _horner(self.model, reduced.numerator, point).scalarmul(QQ.one / den_value)
        return AlgebraElement(self.model, vector)


def scalar_rf(value: Any, variable: str = DEFAULT_VARIABLE) -> RatFunc:
    return value if isinstance(value, RatFunc) else RatFunc.constant(value, variable)


def linear(*terms: tuple[Any, Word], label: str = "", variable: str = DEFAULT_VARIABLE) -> LinearFactor:
    return LinearFactor(tuple((scalar_rf(coeff, variable), word) for coeff, word in terms), label)
