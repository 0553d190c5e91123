#!/usr/bin/env python3
"""Primitive idempotents from Jucys-Murphy eigenvalues and the branching identities they satisfy."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from algebra_engine import AlgebraElement, AlgebraModel, ParamSet
from check_results import CheckResult, check, skipped
from element_functions import ElementFunction, ResolventFactor, ScalarFactor
from exact_arith import PoleError, RatFunc, Rational, format_rational
from multipartitions import REMOVE, box_content, neighbors
from presentations import jm_word
from updown import QUOTIENT_VARIANTS, UpDownTableau, all_tableaux, content_set, contents


RANK_CHECK_LIMIT = 64


def _params(model: AlgebraModel, params: ParamSet | None) -> ParamSet:
    return params if params is not None else model.params


def primitive_idempotent(
    model: AlgebraModel, T: UpDownTableau, params: ParamSet | None = None
) -> AlgebraElement:
    """E_T as a product over k of the Lagrange projectors of X_k onto c(T|k)."""
    params = _params(model, params)
    if T.n > model.n:
        raise ValueError(f"tableau of length {T.n} does not fit the {model.n}-strand model")
    values = contents(T, params, model.variant)
    vector = model.unit()
    for k in range(1, T.n + 1):
        target = values[k - 1]
        word = jm_word(model.variant, k)
        for other in content_set(k, model.d, T.n, params, model.variant):
            if other == target:
                continue
            moved = model.left_word(word, vector).sub(vector.scalarmul(other))
            vector = moved.scalarmul(QQ.one / (target - other))
    return AlgebraElement(model, vector)


@dataclass
class IdempotentSet:
    """E_T for every tableau of one length, with left matrices built on demand."""

    model: AlgebraModel
    level: int
    elements: dict[UpDownTableau, AlgebraElement]
    _matrices: dict[UpDownTableau, DomainMatrix] = field(default_factory=dict, repr=False)

    @classmethod
    def build(
        cls, model: AlgebraModel, level: int | None = None, params: ParamSet | None = None
    ) -> "IdempotentSet":
        level = model.n if level is None else level
        tableaux = all_tableaux(model.d, level, model.variant)
        return cls(
            model,
            level,
            {T: primitive_idempotent(model, T, params) for T in tableaux},
        )

    def __getitem__(self, T: UpDownTableau) -> AlgebraElement:
        return self.elements[T]

    def tableaux(self) -> list[UpDownTableau]:
        return list(self.elements)

    def matrix(self, T: UpDownTableau) -> DomainMatrix:
        if T not in self._matrices:
            self._matrices[T] = self.elements[T].matrix()
        return self._matrices[T]

    def product(self, S: UpDownTableau, T: UpDownTableau) -> AlgebraElement:
        return AlgebraElement(self.model, self.matrix(S).matmul(self.elements[T].vector))

    def total(self) -> AlgebraElement:
        vector = self.model.zero()
        for element in self.elements.values():
            vector = vector.add(element.vector)
        return AlgebraElement(self.model, vector)


def _label(T: UpDownTableau) -> str:
    return str(T)


def spectral_separation(params: ParamSet, n: int, variant: str | None = None) -> CheckResult:
    """Distinct tableaux have distinct content vectors."""
    variant = variant or params.variant
    seen: dict[tuple[Rational, ...], UpDownTableau] = {}
    tableaux = all_tableaux(params.d, n, variant)
    for T in tableaux:
        key = tuple(contents(T, params, variant))
        if key in seen:
            return check(
                "spectral-separation",
                "spectral-separation",
                False,
                f"{seen[key]} and {T} share contents",
                contents=[format_rational(value) for value in key],
            )
        seen[key] = T
    return check(
        "spectral-separation",
        "spectral-separation",
        True,
        f"{len(tableaux)} tableaux, {len(seen)} distinct content vectors",
        tableaux=len(tableaux),
    )


def _extensions(U: UpDownTableau, tableaux: list[UpDownTableau]) -> list[UpDownTableau]:
    return [T for T in tableaux if T.prefix(U.n) == U]


def verify_idempotent_system(
    model: AlgebraModel, params: ParamSet | None = None, system: IdempotentSet | None = None
) -> list[CheckResult]:
    params = _params(model, params)
    system = system or IdempotentSet.build(model, params=params)
    unit = model.word_element(())
    results = []
    tableaux = system.tableaux()

    failures = [
        _label(T) for T in tableaux if not system.product(T, T).equals(system[T])
    ]
    results.append(
        check(
            "idempotency",
            "idempotency",
            not failures,
            f"E_T^2 = E_T for {len(tableaux) - len(failures)} of {len(tableaux)} tableaux",
            failures=failures,
        )
    )

    clash = None
    for S in tableaux:
        for T in tableaux:
            if S != T and not system.product(S, T).is_zero:
                clash = (S, T)
                break
        if clash:
            break
    results.append(
        check(
            "orthogonality",
            "orthogonality",
            clash is None,
            "E_S E_T = 0 for S != T" if clash is None else f"E_S E_T != 0 for {clash[0]}, {clash[1]}",
            pairs=len(tableaux) * (len(tableaux) - 1),
        )
    )

    results.append(
        check(
            "completeness",
            "completeness",
            system.total().equals(unit),
            f"sum over {len(tableaux)} tableaux is the identity",
        )
    )

    eigen_failures = []
    for T in tableaux:
        element = system[T]
        for k, value in enumerate(contents(T, params, model.variant), start=1):
            word = jm_word(model.variant, k)
            scaled = element.scale(value)
            if not (element.left_word(word).equals(scaled) and element.right_word(word).equals(scaled)):
                eigen_failures.append(f"{T} at k={k}")
    results.append(
        check(
            "eigen-relations",
            "eigen-relations",
            not eigen_failures,
            "X_k E_T = E_T X_k = c(T|k) E_T",
            failures=eigen_failures,
        )
    )

    if model.n:
        prefixes = IdempotentSet.build(model, level=model.n - 1, params=params)
        branch_failures = []
        for U, E_U in prefixes.elements.items():
            total = model.zero()
            for T in _extensions(U, tableaux):
                total = total.add(system[T].vector)
            if not E_U.equals(AlgebraElement(model, total)):
                branch_failures.append(_label(U))
        results.append(
            check(
                "branching-sum",
                "branching-sum",
                not branch_failures,
                f"E_U = sum of its extensions for {len(prefixes.elements)} prefixes",
                failures=branch_failures,
            )
        )

    results.append(spectral_separation(params, model.n, model.variant))
    results.extend(rank_checks(model, system))
    return results


def rank_checks(model: AlgebraModel, system: IdempotentSet, limit: int = RANK_CHECK_LIMIT) -> list[CheckResult]:
    """rank(E_T) equals the number of tableaux of the shape of T."""
    if model.dimension > limit:
        return [skipped("rank", "irreducible-rank", f"dimension {model.dimension} above {limit}")]
    by_shape: dict[Any, list[UpDownTableau]] = {}
    for T in system.tableaux():
        by_shape.setdefault(T.level_shape, []).append(T)
    results = []
    for shape, members in by_shape.items():
        ranks = sorted({system.matrix(T).rank() for T in members})
        results.append(
            check(
                f"rank[{shape}]",
                "irreducible-rank",
                ranks == [len(members)],
                f"ranks {ranks}, {len(members)} tableaux",
                ranks=ranks,
                tableaux=len(members),
            )
        )
    return results


def neighbor_contents(U: UpDownTableau, d: int, params: ParamSet, variant: str) -> list[Rational]:
    """Contents of every step allowed out of the last shape of U, in neighbor order."""
    last = U.shape_at(U.n, d)
    found = []
    for box, direction, _ in neighbors(last):
        if direction == REMOVE and variant in QUOTIENT_VARIANTS:
            continue
        value = box_content(box, direction, params, variant)
        if value not in found:
            found.append(value)
    return found


def branching_equivalence(
    model: AlgebraModel, T: UpDownTableau, params: ParamSet | None = None
) -> bool:
    """Both inductive forms of E_T agree with the spectral product."""
    params = _params(model, params)
    if T.n == 0:
        return True
    target = primitive_idempotent(model, T, params)
    U = T.prefix(T.n - 1)
    E_U = primitive_idempotent(model, U, params)
    c_n = contents(T, params, model.variant)[-1]
    word = jm_word(model.variant, T.n)

    vector = E_U.vector
    for other in neighbor_contents(U, model.d, params, model.variant):
        if other == c_n:
            continue
        moved = model.right_word(word, vector).sub(vector.scalarmul(other))
        vector = moved.scalarmul(QQ.one / (c_n - other))
    if not target.equals(AlgebraElement(model, vector)):
        return False

    u = RatFunc.var()
    roots = tuple(content_set(T.n, model.d, T.n, params, model.variant))
    limit = ElementFunction.constant(E_U).apply_all(
        [ScalarFactor(u - c_n), ResolventFactor(word, roots, label=f"(u-X{T.n})^-1")]
    )
    try:
        value = limit.value_at(c_n)
    except PoleError:
        return False
    return value.equals(target)


def branching_checks(model: AlgebraModel, params: ParamSet | None = None) -> list[CheckResult]:
    params = _params(model, params)
    results = []
    for level in range(1, model.n + 1):
        failures = [
            _label(T)
            for T in all_tableaux(model.d, level, model.variant)
            if not branching_equivalence(model, T, params)
        ]
        results.append(
            check(
                f"branching-equivalence[n={level}]",
                "branching-regular-limit",
                not failures,
                "E_T = E_U prod (X_n - b)/(c_n - b) = E_U (u - c_n)/(u - X_n) at u = c_n",
                failures=failures,
            )
        )
    return results
