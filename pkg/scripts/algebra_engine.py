#!/usr/bin/env python3
"""Parameters, genericity, admissibility and faithful matrix models of the algebras."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence

from sympy import solve
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from check_results import CheckResult, check, skipped
from exact_arith import PoleError, Rational, format_rational, is_integer, rational
from multipartitions import variant_family
from presentations import (
    VARIANTS,
    Presentation,
    PresentationScalars,
    Relation,
    build_presentation,
    jm_word,
)
from updown import QUOTIENT_VARIANTS, all_tableaux, contents, dimension_oracle, weight
from vector_enumeration import (
    PolynomialScalars,
    RationalScalars,
    Vector,
    enumerate_module,
)


Word = tuple[str, ...]
DEFAULT_SEED = 7
MAKE_PARAMS_ATTEMPTS = 200
ENUMERATION_BUDGET_FLOOR = 4000
ENUMERATION_BUDGET_FACTOR = 80
FAITHFULNESS_LIMIT = 64


class GenericityError(RuntimeError):
    """Raised when no generic parameter tuple is found within the retry budget."""


class AdmissibilityError(RuntimeError):
    """Raised when the consistency system has no usable rational solution."""


class ModelBuildError(RuntimeError):
    """Raised when an enumerated model disagrees with the tableau-count oracle."""


@dataclass(frozen=True)
class GenericityCertificate:
    variant: str
    n: int
    passed: bool
    reason: str | None
    conditions_checked: int

    def to_json(self) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "n": self.n,
            "passed": self.passed,
            "reason": self.reason,
            "conditions_checked": self.conditions_checked,
            "range": f"|r| < {2 * self.n}",
        }


@dataclass(frozen=True)
class ParamSet:
    variant: str
    d: int
    v: tuple[Rational, ...]
    q: Rational | None = None
    rho: Rational | None = None
    delta: tuple[Rational, ...] = ()
    omega: tuple[Rational, ...] = ()
    c: Rational | None = None
    seed: int | None = None
    certificate: GenericityCertificate | None = field(default=None, compare=False)
    solver: dict[str, Any] | None = field(default=None, compare=False, hash=False)

    @property
    def family(self) -> str:
        return variant_family(self.variant)

    @property
    def is_quotient(self) -> bool:
        return self.variant in QUOTIENT_VARIANTS

    @property
    def rho_inv(self) -> Rational | None:
        return None if self.rho is None else self.rho**-1

    def presentation_scalars(self) -> PresentationScalars:
        return PresentationScalars(
            q=self.q,
            v=self.v,
            rho=self.rho,
            rho_inv=self.rho_inv,
            delta=self.delta,
            omega=self.omega,
        )

    def with_c(self, c: Any) -> "ParamSet":
        c = rational(c)
        if not c:
            raise ValueError("the fusion constant must be nonzero")
        return replace(self, c=c)

    def fused_denominator(self, u: Any, content: Rational) -> Any:
        """(c·u·c_k − ρ), (u + c_k + c) and their quotient analogues."""
        if self.variant == "bmw":
            return u * self.c * content - self.rho
        if self.variant == "hecke":
            return u * self.c * content - 1
        return u + content + self.c

    def to_json(self) -> dict[str, Any]:
        def fmt(value: Rational | None) -> str | None:
            return None if value is None else format_rational(value)

        return {
            "variant": self.variant,
            "d": self.d,
            "q": fmt(self.q),
            "rho": fmt(self.rho),
            "v": [fmt(value) for value in self.v],
            "delta": [fmt(value) for value in self.delta],
            "omega": [fmt(value) for value in self.omega],
            "c": fmt(self.c),
            "seed": self.seed,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "solver": self.solver,
        }


def delta_zero(q: Any, rho: Any, rho_inv: Any) -> Any:
    """δ₀ = (q⁻¹ + ρ⁻¹)(ρq − 1)/(q − q⁻¹); works for rationals and polynomials."""
    return (rho_inv + q**-1) * (rho * q - 1) * (q - q**-1) ** -1


def default_fusion_constant(variant: str, q: Rational | None, omega: Sequence[Rational]) -> Rational:
    if variant == "bmw":
        return -(q**-1)
    if variant == "nw":
        return QQ.one - omega[0] / 2
    return QQ.one


def _exponent_label(sign: int) -> str:
    return "" if sign == 1 else "^-1"


def check_generic(params: ParamSet, n: int) -> GenericityCertificate:
    """Exact check of the genericity conditions over the finite range |r| < 2n."""
    bound = 2 * n
    checked = 0
    v = params.v

    def fail(reason: str) -> GenericityCertificate:
        return GenericityCertificate(params.variant, n, False, reason, checked)

    if params.family == "bmw":
        q = params.q
        if q is None or not q:
            return fail("q must be a nonzero rational")
        if any(not value for value in v):
            return fail("v_i must be nonzero")
        for r in range(1, bound):
            for exponent in (r, -r):
                checked += 1
                if q ** (2 * exponent) == QQ.one:
                    return fail(f"q^{2 * exponent} = 1")
        for i in range(1, len(v) + 1):
            for j in range(1, len(v) + 1):
                if i == j:
                    continue
                for sign in (1, -1):
                    lhs = v[i - 1] * v[j - 1] ** sign
                    for r in range(-bound + 1, bound):
                        checked += 1
                        if lhs == q ** (2 * r):
                            return fail(f"v{i}*v{j}{_exponent_label(sign)} = q^{2 * r}")
        for i in range(1, len(v) + 1):
            for r in range(-bound + 1, bound):
                for sign, label in ((1, "+"), (-1, "-")):
                    checked += 1
                    if v[i - 1] == sign * q**r:
                        return fail(f"v{i} = {label}q^{r}")
        return GenericityCertificate(params.variant, n, True, None, checked)

    def in_range(value: Rational) -> bool:
        return is_integer(value) and abs(int(value.numerator)) < bound

    for i in range(1, len(v) + 1):
        for j in range(i + 1, len(v) + 1):
            for label, value in (("+", v[i - 1] + v[j - 1]), ("-", v[i - 1] - v[j - 1])):
                checked += 1
                if in_range(value):
                    return fail(f"v{i}{label}v{j} = {int(value.numerator)}")
    for i in range(1, len(v) + 1):
        checked += 1
        if in_range(2 * v[i - 1]):
            return fail(f"2*v{i} = {int((2 * v[i - 1]).numerator)}")
    return GenericityCertificate(params.variant, n, True, None, checked)


def evaluation_hazards(params: ParamSet, n: int) -> list[str]:
    """Parameter coincidences that would break spectral separation or a fused step."""
    hazards = []
    seen: dict[tuple[Rational, ...], str] = {}
    for tableau in all_tableaux(params.d, n, params.variant):
        values = tuple(contents(tableau, params, params.variant))
        if values in seen:
            hazards.append(f"{seen[values]} and {tableau} share a content vector")
        seen[values] = str(tableau)
        for k, value in enumerate(values, start=1):
            if params.c is not None and params.fused_denominator(value, value) == QQ.zero:
                hazards.append(f"fused denominator vanishes at step {k} of {tableau}")
        try:
            if weight(tableau, params, params.variant) == QQ.zero:
                hazards.append(f"weight of {tableau} vanishes")
        except PoleError as exc:
            hazards.append(f"weight of {tableau}: {exc}")
    return hazards


def _random_rational(rng: random.Random, low: int, high: int, denominators: Sequence[int]) -> Rational:
    while True:
        numerator = rng.randint(low, high)
        if numerator:
            return QQ(numerator, rng.choice(denominators))


def _draw(variant: str, d: int, rng: random.Random) -> ParamSet:
    if variant_family(variant) == "bmw":
        while True:
            q = QQ(rng.randint(2, 7), rng.randint(1, 5))
            if q != QQ.one:
                break
        v = tuple(_random_rational(rng, -29, 29, (1, 2, 3, 5, 7)) for _ in range(d))
        return ParamSet(variant=variant, d=d, v=v, q=q)
    v = tuple(_random_rational(rng, -60, 60, (3, 5, 7, 11)) for _ in range(d))
    return ParamSet(variant=variant, d=d, v=v)


def complete_params(params: ParamSet, rho_sign: str = "+", c: Any = None) -> ParamSet:
    """Fill ρ, δ, ω and c; d = 1 uses the closed forms, d ≥ 2 the consistency solver."""
    variant = params.variant
    if variant == "bmw":
        if params.d == 1:
            sign = 1 if rho_sign == "+" else -1
            rho = sign * params.v[0]
            params = replace(params, rho=rho, delta=(delta_zero(params.q, rho, rho**-1),))
        else:
            params = solve_admissible(variant, params.d, params, rho_sign=rho_sign)
    elif variant == "nw":
        if params.d == 1:
            params = replace(params, omega=(2 * params.v[0] + 1,))
        else:
            params = solve_admissible(variant, params.d, params)
    if c is not None:
        if not params.is_quotient:
            raise ValueError("the fusion constant is fixed for bmw and nw")
        return params.with_c(c)
    return replace(params, c=default_fusion_constant(variant, params.q, params.omega))


def make_params(
    variant: str,
    d: int,
    seed: int = DEFAULT_SEED,
    n: int = 3,
    rho_sign: str = "+",
    c: Any = None,
) -> ParamSet:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if d < 1:
        raise ValueError(f"level d must be >= 1, got {d}")
    if rho_sign not in ("+", "-"):
        raise ValueError(f"rho sign must be '+' or '-', got {rho_sign!r}")
    rng = random.Random(seed)
    last_reason = None
    for _ in range(MAKE_PARAMS_ATTEMPTS):
        candidate = _draw(variant, d, rng)
        certificate = check_generic(candidate, n)
        if not certificate.passed:
            last_reason = certificate.reason
            continue
        try:
            candidate = complete_params(candidate, rho_sign=rho_sign, c=c)
        except AdmissibilityError as exc:
            last_reason = str(exc)
            continue
        hazards = evaluation_hazards(candidate, n)
        if hazards:
            last_reason = hazards[0]
            continue
        return replace(candidate, seed=seed, certificate=certificate)
    raise GenericityError(
        f"seed {seed} found no generic {variant} parameters for d={d}, n={n} in "
        f"{MAKE_PARAMS_ATTEMPTS} attempts (last reason: {last_reason})"
    )


def _solution_value(value: Any) -> Rational | None:
    if not value.is_Rational:
        return None
    return QQ(int(value.p), int(value.q))


def solve_admissible(
    variant: str, d: int, params: ParamSet, rho_sign: str = "+", n: int = 2
) -> ParamSet:
    """Recover ρ, δ_j (bmw) or ω_j (nw) from the consistency of the n=2 enumeration."""
    if variant in QUOTIENT_VARIANTS:
        return params
    if variant == "bmw":
        names = ["rho", "rho_inv"] + [f"delta{j}" for j in range(1, d)]
    else:
        names = [f"omega{k}" for k in range(d)]
    poly_ring, *gens = ring(names, QQ)
    extra = []
    if variant == "bmw":
        rho, rho_inv = gens[0], gens[1]
        scalars = PresentationScalars(
            q=params.q,
            v=params.v,
            rho=rho,
            rho_inv=rho_inv,
            delta=(delta_zero(params.q, rho, rho_inv),) + tuple(gens[2:]),
        )
        extra.append(rho * rho_inv - 1)
    else:
        scalars = PresentationScalars(v=params.v, omega=tuple(gens))
    presentation = build_presentation(variant, n, d, scalars)
    oracle = dimension_oracle(d, n, variant)
    result = enumerate_module(
        presentation.alphabet,
        presentation.relations,
        PolynomialScalars(poly_ring),
        budget=max(ENUMERATION_BUDGET_FLOOR, ENUMERATION_BUDGET_FACTOR * oracle),
    )
    constraints = {
        coeff.monic() for vector in result.deferred for coeff in vector.values()
    } | set(extra)
    constraints = sorted(constraints, key=str)
    symbols = list(poly_ring.symbols)
    record: dict[str, Any] = {
        "unknowns": names,
        "constraints": [str(constraint.as_expr()) for constraint in constraints],
        "symbolic_dimension": result.dimension,
        "oracle": oracle,
    }
    raw = solve([constraint.as_expr() for constraint in constraints], symbols, dict=True)
    candidates = []
    for solution in raw:
        missing = [str(symbol) for symbol in symbols if symbol not in solution]
        if missing:
            raise AdmissibilityError(
                f"underdetermined {variant} system; free directions: {', '.join(missing)}"
            )
        values = {str(symbol): _solution_value(solution[symbol]) for symbol in symbols}
        if all(value is not None for value in values.values()):
            candidates.append(values)
    record["solutions"] = [
        {name: format_rational(value) for name, value in values.items()} for values in candidates
    ]
    if not candidates:
        raise AdmissibilityError(
            f"no rational solution for {variant} d={d}; constraints: {record['constraints']}"
        )

    def preference(values: dict[str, Rational]) -> tuple[int, str]:
        if variant == "bmw":
            # at d = 1 the sign is relative to v1, matching rho = ±v1
            reference = params.v[0] if d == 1 else QQ.one
            agrees = values["rho"] / reference > 0
            return (0 if agrees == (rho_sign == "+") else 1, str(sorted(values.items())))
        return (0, str(sorted(values.items())))

    for values in sorted(candidates, key=preference):
        if variant == "bmw":
            rho_value = values["rho"]
            delta = (delta_zero(params.q, rho_value, rho_value**-1),) + tuple(
                values[f"delta{j}"] for j in range(1, d)
            )
            completed = replace(params, rho=rho_value, delta=delta)
        else:
            completed = replace(params, omega=tuple(values[f"omega{k}"] for k in range(d)))
        try:
            build_model(variant, d, n, completed)
        except ModelBuildError:
            continue
        record["chosen"] = {name: format_rational(value) for name, value in values.items()}
        return replace(completed, solver=record)
    raise AdmissibilityError(
        f"no solution of the {variant} d={d} system reproduces the dimension oracle {oracle}"
    )


def unit_vector(dim: int, index: int = 0) -> DomainMatrix:
    return DomainMatrix({index: {0: QQ.one}}, (dim, 1), QQ)


def zero_vector(dim: int) -> DomainMatrix:
    return DomainMatrix({}, (dim, 1), QQ)


def matrix_from_columns(columns: Sequence[Vector], dim: int) -> DomainMatrix:
    rows: dict[int, dict[int, Any]] = {}
    for col, column in enumerate(columns):
        for row, value in column.items():
            rows.setdefault(row, {})[col] = value
    return DomainMatrix(rows, (dim, len(columns)), QQ)


def vector_entries(vector: DomainMatrix) -> dict[int, Any]:
    return {row: value for (row, _), value in vector.to_dok().items() if value}


@dataclass(frozen=True, eq=False)
class AlgebraModel:
    """Left-regular model: basis vectors are basis words applied to the unit."""

    variant: str
    d: int
    n: int
    params: ParamSet
    presentation: Presentation
    basis_words: tuple[Word, ...]
    left: dict[str, DomainMatrix]
    right: dict[str, DomainMatrix]
    vectors_defined: int = 0
    word_cache: dict[Word, DomainMatrix] = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis_words)

    @property
    def generator_matrices(self) -> dict[str, DomainMatrix]:
        return self.left

    def unit(self) -> DomainMatrix:
        return unit_vector(self.dimension, 0)

    def zero(self) -> DomainMatrix:
        return zero_vector(self.dimension)

    def identity_matrix(self) -> DomainMatrix:
        return DomainMatrix.eye(self.dimension, QQ)

    def left_word(self, word: Word, vector: DomainMatrix) -> DomainMatrix:
        for letter in reversed(word):
            vector = self.left[letter].matmul(vector)
        return vector

    def right_word(self, word: Word, vector: DomainMatrix) -> DomainMatrix:
        for letter in word:
            vector = self.right[letter].matmul(vector)
        return vector

    def word_element(self, word: Word) -> "AlgebraElement":
        return AlgebraElement(self, self.left_word(word, self.unit()))

    def element(self, vector: DomainMatrix) -> "AlgebraElement":
        return AlgebraElement(self, vector)

    def jm_word(self, k: int) -> Word:
        return jm_word(self.variant, k)

    def word_matrix(self, word: Word) -> DomainMatrix:
        return _word_matrix(self.left, word, self.dimension, self.word_cache)

    def left_matrix(self, vector: DomainMatrix) -> DomainMatrix:
        """Matrix of left multiplication by the element with coordinates `vector`."""
        total = DomainMatrix.zeros((self.dimension, self.dimension), QQ)
        for index, coeff in vector_entries(vector).items():
            total = total.add(self.word_matrix(self.basis_words[index]).scalarmul(coeff))
        return total


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element, stored as its image of 1 in the left-regular model."""

    model: AlgebraModel
    vector: DomainMatrix

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.model, self.vector.add(other.vector))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.model, self.vector.sub(other.vector))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.model, self.vector.neg())

    def scale(self, scalar: Any) -> "AlgebraElement":
        return AlgebraElement(self.model, self.vector.scalarmul(rational(scalar)))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Algebra product self·other, expanded over the basis words of self."""
        total = self.model.zero()
        for index, coeff in vector_entries(self.vector).items():
            word = self.model.basis_words[index]
            total = total.add(self.model.left_word(word, other.vector).scalarmul(coeff))
        return AlgebraElement(self.model, total)

    def left_word(self, word: Word) -> "AlgebraElement":
        return AlgebraElement(self.model, self.model.left_word(word, self.vector))

    def right_word(self, word: Word) -> "AlgebraElement":
        return AlgebraElement(self.model, self.model.right_word(word, self.vector))

    @property
    def is_zero(self) -> bool:
        return self.vector.is_zero_matrix

    def equals(self, other: "AlgebraElement") -> bool:
        return self.vector.sub(other.vector).is_zero_matrix

    def matrix(self) -> DomainMatrix:
        return self.model.left_matrix(self.vector)


def _word_matrix(
    matrices: dict[str, DomainMatrix],
    word: Word,
    dim: int,
    cache: dict[Word, DomainMatrix] | None = None,
) -> DomainMatrix:
    """Product M_{w1} M_{w2} ... M_{wm}; the empty word is the identity."""
    cache = {} if cache is None else cache
    if word in cache:
        return cache[word]
    if not word:
        product = DomainMatrix.eye(dim, QQ)
    elif len(word) == 1:
        product = matrices[word[0]]
    else:
        product = matrices[word[0]].matmul(_word_matrix(matrices, word[1:], dim, cache))
    cache[word] = product
    return product


def _right_matrices(
    alphabet: Sequence[str], words: Sequence[Word], left: dict[str, DomainMatrix], dim: int
) -> dict[str, DomainMatrix]:
    """Column i of R_g is (w_i · g) applied to the unit, built along word suffixes."""
    unit = unit_vector(dim, 0)
    right = {}
    for letter in alphabet:
        memo: dict[Word, DomainMatrix] = {(): left[letter].matmul(unit)}

        def image(word: Word) -> DomainMatrix:
            if word not in memo:
                memo[word] = left[word[0]].matmul(image(word[1:]))
            return memo[word]

        columns = [vector_entries(image(word)) for word in words]
        right[letter] = matrix_from_columns(columns, dim)
    return right


def build_model(
    variant: str,
    d: int,
    n: int,
    params: ParamSet,
    budget: int | None = None,
) -> AlgebraModel:
    presentation = build_presentation(variant, n, d, params.presentation_scalars())
    oracle = dimension_oracle(d, n, variant)
    budget = budget or max(ENUMERATION_BUDGET_FLOOR, ENUMERATION_BUDGET_FACTOR * oracle)
    result = enumerate_module(presentation.alphabet, presentation.relations, RationalScalars(), budget)
    if result.dimension != oracle:
        raise ModelBuildError(
            f"{variant} d={d} n={n}: enumeration closed at dimension {result.dimension}, "
            f"tableau oracle is {oracle}"
        )
    dim = result.dimension
    left = {
        letter: matrix_from_columns(result.images[letter], dim)
        for letter in presentation.alphabet
    }
    right = _right_matrices(presentation.alphabet, result.words, left, dim)
    return AlgebraModel(
        variant=variant,
        d=d,
        n=n,
        params=params,
        presentation=presentation,
        basis_words=tuple(result.words),
        left=left,
        right=right,
        vectors_defined=result.defined,
    )


def jm_elements(model: AlgebraModel) -> list[AlgebraElement]:
    return [model.word_element(model.jm_word(k)) for k in range(1, model.n + 1)]


def relation_matrix(
    matrices: dict[str, DomainMatrix],
    relation: Relation,
    dim: int,
    cache: dict[Word, DomainMatrix],
    reverse: bool = False,
) -> DomainMatrix:
    total = DomainMatrix.zeros((dim, dim), QQ)
    for coeff, word in relation.terms:
        word = tuple(reversed(word)) if reverse else word
        total = total.add(_word_matrix(matrices, word, dim, cache).scalarmul(rational(coeff)))
    return total


def verify_relations(model: AlgebraModel, right_action: bool = False) -> list[CheckResult]:
    """Evaluate every defining relation as a matrix identity."""
    matrices = model.right if right_action else model.left
    cache: dict[Word, DomainMatrix] = {}
    side = "right" if right_action else "left"
    results = []
    for relation in model.presentation.relations:
        residue = relation_matrix(matrices, relation, model.dimension, cache, reverse=right_action)
        nonzero = sum(1 for value in residue.to_dok().values() if value)
        results.append(
            check(
                f"{side}:{relation.name}",
                relation.anchor,
                nonzero == 0,
                "vanishes" if nonzero == 0 else f"{nonzero} nonzero entries",
                nonzero_entries=nonzero,
            )
        )
    return results


def faithfulness_check(model: AlgebraModel, limit: int = FAITHFULNESS_LIMIT) -> CheckResult:
    """Span of the left matrices of the basis words has full dimension."""
    dim = model.dimension
    if dim > limit:
        return skipped("faithfulness", "faithfulness", f"dimension {dim} above {limit}")
    rows = {}
    for index, word in enumerate(model.basis_words):
        flat = {
            row * dim + col: value
            for (row, col), value in model.word_matrix(word).to_dok().items()
            if value
        }
        if flat:
            rows[index] = flat
    rank = DomainMatrix(rows, (dim, dim * dim), QQ).rank()
    return check(
        "faithfulness",
        "faithfulness",
        rank == dim,
        f"left-regular image spans {rank} of {dim}",
        rank=rank,
        dimension=dim,
    )


def dimension_check(model: AlgebraModel) -> CheckResult:
    oracle = dimension_oracle(model.d, model.n, model.variant)
    return check(
        "dimension",
        "dimension-oracle",
        model.dimension == oracle,
        f"dimension {model.dimension}, oracle {oracle}",
        dimension=model.dimension,
        oracle=oracle,
        vectors_defined=model.vectors_defined,
    )


def jm_checks(model: AlgebraModel) -> list[CheckResult]:
    """JM commutation, the E_i X_i X_{i+1} identities and the lemma commutation identity."""
    results = []
    n, variant = model.n, model.variant
    unit = model.word_element(())
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a = unit.left_word(model.jm_word(j)).left_word(model.jm_word(i))
            b = unit.left_word(model.jm_word(i)).left_word(model.jm_word(j))
            results.append(check(f"jm-commute[X{i},X{j}]", "jm-commutation", a.equals(b), "X_iX_j = X_jX_i"))
    if model.params.family == "bmw" and model.d == 1 and model.params.v:
        x1 = model.word_element(("X1",))
        results.append(
            check("jm[X1=v1]", "cyclotomic", x1.equals(unit.scale(model.params.v[0])), "X1 = v1·1")
        )
    if model.presentation.has_tangles:
        for i in range(1, n):
            E = (f"E{i}",)
            xx = model.jm_word(i) + model.jm_word(i + 1)
            e = model.word_element(E)
            if variant == "bmw":
                left = model.word_element(E + xx)
                right = model.word_element(xx + E)
                results.append(
                    check(
                        f"jm-tangle[E{i}]",
                        "jm-tangle",
                        left.equals(e) and right.equals(e),
                        "E_iX_iX_{i+1} = X_iX_{i+1}E_i = E_i",
                    )
                )
            else:
                total = model.word_element(E + model.jm_word(i)) + model.word_element(E + model.jm_word(i + 1))
                results.append(
                    check(f"jm-tangle[E{i}]", "anti-symmetry", total.is_zero, "E_i(X_i + X_{i+1}) = 0")
                )
    if n >= 2:
        k = n - 1
        x_k, x_n = model.jm_word(k), model.jm_word(n)
        if model.params.family == "bmw":
            kappa = model.params.q - model.params.q**-1
            T, E = (f"T{k}",), (f"E{k}",)
            lhs = model.word_element(T + x_k)
            rhs = model.word_element(x_n + T) - model.word_element(x_n).scale(kappa)
            if model.presentation.has_tangles:
                rhs = rhs + model.word_element(x_n + E).scale(kappa)
            label = "T_{n-1}X_{n-1} = X_nT_{n-1} - (q-q^-1)X_n + (q-q^-1)X_nE_{n-1}"
        else:
            S, E = (f"S{k}",), (f"E{k}",)
            lhs = model.word_element(S + x_k)
            rhs = model.word_element(x_n + S) - unit
            if model.presentation.has_tangles:
                rhs = rhs + model.word_element(E)
            label = "S_{n-1}X_{n-1} = X_nS_{n-1} + E_{n-1} - 1"
        results.append(check(f"jm-recursion[X{n}]", "jm-recursion", lhs.equals(rhs), label))
    return results


def model_summary(model: AlgebraModel) -> dict[str, Any]:
    return {
        "variant": model.variant,
        "d": model.d,
        "n": model.n,
        "dimension": model.dimension,
        "vectors_defined": model.vectors_defined,
        "basis_words": [" ".join(word) if word else "1" for word in model.basis_words],
    }


def element_from_terms(model: AlgebraModel, terms: Iterable[tuple[Any, Word]]) -> AlgebraElement:
    total = model.zero()
    for coeff, word in terms:
        total = total.add(model.left_word(word, model.unit()).scalarmul(rational(coeff)))
    return AlgebraElement(model, total)
