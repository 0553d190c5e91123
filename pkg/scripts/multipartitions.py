#!/usr/bin/env python3
"""Partitions, d-partitions, boxes and box contents for both algebra families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, Literal

from sympy.utilities.iterables import partitions

from exact_arith import Rational


Partition = tuple[int, ...]
Direction = Literal["add", "remove"]
ADD: Direction = "add"
REMOVE: Direction = "remove"
VARIANT_FAMILIES = {"bmw": "bmw", "hecke": "bmw", "nw": "nw", "deg-hecke": "nw"}
EMPTY_SYMBOL = "∅"


def variant_family(variant: str) -> str:
    try:
        return VARIANT_FAMILIES[variant]
    except KeyError as exc:
        raise ValueError(
            f"unknown variant {variant!r}; expected one of {sorted(VARIANT_FAMILIES)}"
        ) from exc


def validate_partition(parts: Partition) -> Partition:
    parts = tuple(int(part) for part in parts)
    if any(part <= 0 for part in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


def format_partition(parts: Partition) -> str:
    if not parts:
        return EMPTY_SYMBOL
    return "(" + ",".join(str(part) for part in parts) + ")"


@dataclass(frozen=True, order=True)
class Box:
    """A cell of component `component`; ordering is component, row, column."""

    component: int
    row: int
    col: int

    @property
    def diagonal(self) -> int:
        return self.col - self.row

    def to_json(self) -> list[int]:
        return [self.component, self.row, self.col]

    def __str__(self) -> str:
        return f"(({self.row},{self.col}),{self.component})"


@dataclass(frozen=True)
class MultiPartition:
    components: tuple[Partition, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("a d-partition needs at least one component")
        object.__setattr__(
            self,
            "components",
            tuple(validate_partition(parts) for parts in self.components),
        )

    @classmethod
    def empty(cls, d: int) -> "MultiPartition":
        return cls(tuple(() for _ in range(d)))

    @classmethod
    def of(cls, *components: Partition) -> "MultiPartition":
        return cls(tuple(tuple(parts) for parts in components))

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(sum(parts) for parts in self.components)

    def is_empty(self) -> bool:
        return self.size == 0

    def addable_boxes(self) -> list[Box]:
        boxes = []
        for component, parts in enumerate(self.components, start=1):
            padded = parts + (0,)
            for row, length in enumerate(padded, start=1):
                if row == 1 or padded[row - 2] > length:
                    boxes.append(Box(component, row, length + 1))
        return boxes

    def removable_boxes(self) -> list[Box]:
        boxes = []
        for component, parts in enumerate(self.components, start=1):
            padded = parts + (0,)
            for row, length in enumerate(parts, start=1):
                if length > padded[row]:
                    boxes.append(Box(component, row, length))
        return boxes

    def _replace_component(self, box: Box, parts: list[int]) -> "MultiPartition":
        components = list(self.components)
        components[box.component - 1] = tuple(part for part in parts if part)
        return MultiPartition(tuple(components))

    def add_box(self, box: Box) -> "MultiPartition":
        if box not in self.addable_boxes():
            raise ValueError(f"box {box} is not addable to {self}")
        parts = list(self.components[box.component - 1]) + [0]
        parts[box.row - 1] += 1
        return self._replace_component(box, parts)

    def remove_box(self, box: Box) -> "MultiPartition":
        if box not in self.removable_boxes():
            raise ValueError(f"box {box} is not removable from {self}")
        parts = list(self.components[box.component - 1])
        parts[box.row - 1] -= 1
        return self._replace_component(box, parts)

    def to_json(self) -> list[list[int]]:
        return [list(parts) for parts in self.components]

    def __str__(self) -> str:
        if self.d == 1:
            return format_partition(self.components[0])
        return "(" + ",".join(format_partition(parts) for parts in self.components) + ")"


@dataclass(frozen=True)
class LevelShape:
    f: int
    shape: MultiPartition

    def validate(self, n: int) -> None:
        if not 0 <= self.f <= n // 2 or self.shape.size != n - 2 * self.f:
            raise ValueError(f"{self} is not in the level set for n={n}")

    def to_json(self) -> dict[str, Any]:
        return {"f": self.f, "shape": self.shape.to_json(), "label": str(self.shape)}

    def __str__(self) -> str:
        return f"({self.f}, {self.shape})"


@lru_cache(maxsize=None)
def partitions_of(m: int) -> tuple[Partition, ...]:
    """Partitions of m, largest first: (2) before (1,1)."""
    if m == 0:
        return ((),)
    found = []
    for multiplicities in partitions(m):
        parts: list[int] = []
        for part in sorted(multiplicities, reverse=True):
            parts.extend([part] * multiplicities[part])
        found.append(tuple(parts))
    return tuple(sorted(found, reverse=True))


def compositions(m: int, d: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of m into d parts, (m,0,...) first."""
    for sizes in itertools.product(range(m, -1, -1), repeat=d):
        if sum(sizes) == m:
            yield sizes


@lru_cache(maxsize=None)
def multipartitions_of(m: int, d: int) -> tuple[MultiPartition, ...]:
    shapes = []
    for sizes in compositions(m, d):
        for components in itertools.product(*(partitions_of(size) for size in sizes)):
            shapes.append(MultiPartition(tuple(components)))
    return tuple(shapes)


def enumerate_lambda_plus(d: int, n: int) -> list[LevelShape]:
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return [
        LevelShape(f, shape)
        for f in range(n // 2 + 1)
        for shape in multipartitions_of(n - 2 * f, d)
    ]


def enumerate_standard_shapes(d: int, n: int) -> list[LevelShape]:
    """The f = 0 slice, which indexes the Hecke quotients."""
    return [LevelShape(0, shape) for shape in multipartitions_of(n, d)]


def neighbors(mu: MultiPartition) -> list[tuple[Box, Direction, MultiPartition]]:
    """Additions first, then removals, each in box order."""
    adds = [(box, ADD, mu.add_box(box)) for box in sorted(mu.addable_boxes())]
    removes = [(box, REMOVE, mu.remove_box(box)) for box in sorted(mu.removable_boxes())]
    return adds + removes


def box_content(box: Box, direction: Direction, params: Any, variant: str) -> Rational:
    """Eigenvalue label of a step: multiplicative in q for bmw, additive for nw."""
    v = params.v[box.component - 1]
    k = box.diagonal
    if variant_family(variant) == "bmw":
        if direction == ADD:
            return v * params.q ** (2 * k)
        return v**-1 * params.q ** (-2 * k)
    if direction == ADD:
        return v + k
    return -v - k
