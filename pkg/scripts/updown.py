#!/usr/bin/env python3
"""Updown tableaux, contents, diagonal indexes, p-sequences and weights."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable

from sympy.polys.domains import QQ

from exact_arith import PoleError, Rational, format_rational
from multipartitions import (
    ADD,
    REMOVE,
    Box,
    Direction,
    LevelShape,
    MultiPartition,
    box_content,
    enumerate_lambda_plus,
    enumerate_standard_shapes,
    neighbors,
    variant_family,
)


QUOTIENT_VARIANTS = ("hecke", "deg-hecke")


@dataclass(frozen=True)
class UpDownTableau:
    """Path (T_1, ..., T_n) in the branching graph; T_0 is the empty d-partition."""

    steps: tuple[MultiPartition, ...]

    def __post_init__(self) -> None:
        previous = None
        for shape in self.steps:
            if previous is None:
                previous = MultiPartition.empty(shape.d)
            if _step_between(previous, shape) is None:
                raise ValueError(f"{previous} -> {shape} is not a one-box step")
            previous = shape

    @classmethod
    def empty(cls) -> "UpDownTableau":
        return cls(())

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def d(self) -> int:
        return self.steps[0].d if self.steps else 0

    @property
    def shape(self) -> MultiPartition:
        return self.steps[-1]

    @property
    def f(self) -> int:
        return (self.n - self.shape.size) // 2

    @property
    def level_shape(self) -> LevelShape:
        return LevelShape(self.f, self.shape)

    def shape_at(self, k: int, d: int | None = None) -> MultiPartition:
        if k == 0:
            return MultiPartition.empty(d if d is not None else self.d)
        return self.steps[k - 1]

    def prefix(self, k: int) -> "UpDownTableau":
        return UpDownTableau(self.steps[:k])

    def extend(self, shape: MultiPartition) -> "UpDownTableau":
        return UpDownTableau(self.steps + (shape,))

    def step(self, k: int) -> tuple[Box, Direction]:
        """Box and direction of the k-th step, 1-based."""
        step = _step_between(self.shape_at(k - 1), self.steps[k - 1])
        assert step is not None
        return step

    def moves(self) -> list[tuple[Box, Direction]]:
        return [self.step(k) for k in range(1, self.n + 1)]

    def has_removals(self) -> bool:
        return any(direction == REMOVE for _, direction in self.moves())

    def to_json(self) -> list[str]:
        return [str(shape) for shape in self.steps]

    def __str__(self) -> str:
        if not self.steps:
            return "∅"
        return "∅→" + "→".join(str(shape) for shape in self.steps)


def _step_between(
    before: MultiPartition, after: MultiPartition
) -> tuple[Box, Direction] | None:
    for box, direction, shape in neighbors(before):
        if shape == after:
            return box, direction
    return None


@lru_cache(maxsize=None)
def _paths(d: int, n: int, removals: bool) -> tuple[UpDownTableau, ...]:
    if n == 0:
        return (UpDownTableau.empty(),)
    found = []
    for path in _paths(d, n - 1, removals):
        last = path.shape_at(path.n, d)
        for _, direction, shape in neighbors(last):
            if direction == REMOVE and not removals:
                continue
            found.append(path.extend(shape))
    return tuple(found)


def all_tableaux(d: int, n: int, variant: str = "bmw") -> list[UpDownTableau]:
    """Every tableau of length n for the variant, grouped by shape in level order."""
    return [
        tableau
        for shape in level_shapes(d, n, variant)
        for tableau in enumerate_updown(shape, n, d, removals=variant not in QUOTIENT_VARIANTS)
    ]


def level_shapes(d: int, n: int, variant: str = "bmw") -> list[LevelShape]:
    if variant in QUOTIENT_VARIANTS:
        return enumerate_standard_shapes(d, n)
    return enumerate_lambda_plus(d, n)


def enumerate_updown(
    shape: LevelShape, n: int, d: int, removals: bool = True
) -> list[UpDownTableau]:
    if shape not in enumerate_lambda_plus(d, n):
        raise ValueError(f"{shape} is not in the level set for d={d}, n={n}")
    return [
        tableau
        for tableau in _paths(d, n, removals)
        if tableau.shape_at(tableau.n, d) == shape.shape
    ]


def dimension_oracle(d: int, n: int, variant: str = "bmw") -> int:
    """Sum of squared tableau counts over the shapes of the variant."""
    return sum(
        len(enumerate_updown(shape, n, d, removals=variant not in QUOTIENT_VARIANTS)) ** 2
        for shape in level_shapes(d, n, variant)
    )


def contents(T: UpDownTableau, params: Any, variant: str) -> list[Rational]:
    return [box_content(box, direction, params, variant) for box, direction in T.moves()]


def content_set(k: int, d: int, n: int, params: Any, variant: str) -> list[Rational]:
    """R(k) in increasing order."""
    if not 1 <= k <= n:
        raise ValueError(f"step {k} outside 1..{n}")
    found = {
        box_content(*tableau.step(k), params, variant)
        for tableau in all_tableaux(d, n, variant)
    }
    return sorted(found)


@dataclass(frozen=True)
class DiagonalProfile:
    """Per-component counts of additions (d_k) and removals (d̄_k) on diagonal k."""

    d: int
    added: tuple[tuple[tuple[int, int], ...], ...]
    removed: tuple[tuple[tuple[int, int], ...], ...]

    def d_k(self, s: int, k: int) -> int:
        return dict(self.added[s - 1]).get(k, 0)

    def dbar_k(self, s: int, k: int) -> int:
        return dict(self.removed[s - 1]).get(k, 0)

    def net_size(self) -> int:
        return sum(count for comp in self.added for _, count in comp) - sum(
            count for comp in self.removed for _, count in comp
        )


def diagonal_profile(prefix: UpDownTableau, d: int | None = None) -> DiagonalProfile:
    d = d if d is not None else prefix.d
    added = [Counter() for _ in range(d)]
    removed = [Counter() for _ in range(d)]
    for box, direction in prefix.moves():
        target = added if direction == ADD else removed
        target[box.component - 1][box.diagonal] += 1
    return DiagonalProfile(
        d,
        tuple(tuple(sorted(counter.items())) for counter in added),
        tuple(tuple(sorted(counter.items())) for counter in removed),
    )


@dataclass(frozen=True)
class IndexProfile:
    """Nonzero g_k^s and ḡ_k^s per component."""

    g: tuple[dict[int, int], ...]
    gbar: tuple[dict[int, int], ...]

    def g_k(self, s: int, k: int) -> int:
        return self.g[s - 1].get(k, 0)

    def gbar_k(self, s: int, k: int) -> int:
        return self.gbar[s - 1].get(k, 0)


def _second_difference(counts: dict[int, int], bump_zero: bool) -> dict[int, int]:
    support = set(counts) | {k + 1 for k in counts} | {k - 1 for k in counts}
    if bump_zero:
        support.add(0)
    values = {}
    for k in sorted(support):
        value = counts.get(k - 1, 0) + counts.get(k + 1, 0) - 2 * counts.get(k, 0)
        if bump_zero and k == 0:
            value += 1
        if value:
            values[k] = value
    return values


def g_indexes(profile: DiagonalProfile) -> IndexProfile:
    return IndexProfile(
        tuple(_second_difference(dict(comp), True) for comp in profile.added),
        tuple(_second_difference(dict(comp), False) for comp in profile.removed),
    )


def p_sequence(T: UpDownTableau) -> list[int]:
    sequence = []
    for k in range(1, T.n + 1):
        indexes = g_indexes(diagonal_profile(T.prefix(k - 1), T.d))
        box, direction = T.step(k)
        if direction == ADD:
            sequence.append(1 - indexes.g_k(box.component, box.diagonal))
        else:
            sequence.append(1 - indexes.gbar_k(box.component, box.diagonal))
    return sequence


def _power(base: Rational, exponent: int) -> Rational:
    if base == QQ.zero:
        if exponent < 0:
            raise PoleError("zero weight factor raised to a negative power", point=base)
        return QQ.zero
    return base**exponent


def _bmw_step_weight(
    indexes: IndexProfile, box: Box, direction: Direction, params: Any
) -> Rational:
    q, v, d = params.q, params.v, len(params.v)
    s, kn = box.component, box.diagonal
    value = QQ.one
    if direction == ADD:
        lead = v[s - 1] * q ** (2 * kn)
        for t in range(1, d + 1):
            for k, exponent in indexes.g[t - 1].items():
                if (t, k) != (s, kn):
                    value *= _power(lead - v[t - 1] * q ** (2 * k), exponent)
        for r in range(1, d + 1):
            for k, exponent in indexes.gbar[r - 1].items():
                value *= _power(lead - v[r - 1] ** -1 * q ** (-2 * k), exponent)
        return value
    lead = v[s - 1] ** -1 * q ** (-2 * kn)
    for t in range(1, d + 1):
        for k, exponent in indexes.gbar[t - 1].items():
            if (t, k) != (s, kn):
                value *= _power(lead - v[t - 1] ** -1 * q ** (-2 * k), exponent)
    for r in range(1, d + 1):
        for k, exponent in indexes.g[r - 1].items():
            value *= _power(lead - v[r - 1] * q ** (2 * k), exponent)
    return value


def _nw_step_weight(
    indexes: IndexProfile, box: Box, direction: Direction, params: Any
) -> Rational:
    v, d = params.v, len(params.v)
    s, kn = box.component, box.diagonal
    value = QQ.one
    if direction == ADD:
        for k, exponent in indexes.g[s - 1].items():
            if k != kn:
                value *= _power(QQ(kn - k), exponent)
        for t in range(1, d + 1):
            if t == s:
                continue
            for k, exponent in indexes.g[t - 1].items():
                value *= _power(v[s - 1] - v[t - 1] + kn - k, exponent)
        for r in range(1, d + 1):
            for k, exponent in indexes.gbar[r - 1].items():
                value *= _power(v[s - 1] + v[r - 1] + kn + k, exponent)
        return value
    for k, exponent in indexes.gbar[s - 1].items():
        if k != kn:
            value *= _power(QQ(k - kn), exponent)
    for t in range(1, d + 1):
        if t == s:
            continue
        for k, exponent in indexes.gbar[t - 1].items():
            value *= _power(-v[s - 1] + v[t - 1] - kn + k, exponent)
    for r in range(1, d + 1):
        for k, exponent in indexes.g[r - 1].items():
            value *= _power(-v[s - 1] - v[r - 1] - kn - k, exponent)
    return value


def step_weight(
    prefix: UpDownTableau, next_shape: MultiPartition, params: Any, variant: str
) -> Rational:
    d = len(params.v)
    last = prefix.shape_at(prefix.n, d)
    step = _step_between(last, next_shape)
    if step is None:
        raise ValueError(f"{next_shape} is not a neighbor of {last}")
    indexes = g_indexes(diagonal_profile(prefix, d))
    if variant_family(variant) == "bmw":
        return _bmw_step_weight(indexes, *step, params)
    return _nw_step_weight(indexes, *step, params)


def step_weights(T: UpDownTableau, params: Any, variant: str) -> list[Rational]:
    return [
        step_weight(T.prefix(k - 1), T.steps[k - 1], params, variant)
        for k in range(1, T.n + 1)
    ]


def weight(T: UpDownTableau, params: Any, variant: str) -> Rational:
    value = QQ.one
    for factor in step_weights(T, params, variant):
        value *= factor
    return value


def tableau_record(T: UpDownTableau, params: Any, variant: str) -> dict[str, Any]:
    return {
        "tableau": str(T),
        "shape": T.level_shape.to_json(),
        "contents": [format_rational(c) for c in contents(T, params, variant)],
        "p_sequence": p_sequence(T),
        "weight": format_rational(weight(T, params, variant)),
    }


def p_range(tableaux: Iterable[UpDownTableau]) -> tuple[int, int]:
    values = [p for tableau in tableaux for p in p_sequence(tableau)]
    return (min(values), max(values)) if values else (0, 0)
