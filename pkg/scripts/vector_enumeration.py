#!/usr/bin/env python3
"""Linear vector enumeration of the regular module of a finitely presented algebra.

Starting from the unit vector e0, every generator image is defined as a new
basis vector and every relation is applied at every vector. A nonzero result is
a coincidence: its newest unit-coefficient vector is eliminated and the images
of the eliminated vector are pushed back through the queue. What survives is a
basis of A·1 together with the left action of each generator on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from sympy.polys.domains import QQ

from exact_arith import rational


Word = tuple[str, ...]
Vector = dict[int, Any]


class EnumerationBudgetError(RuntimeError):
    """Raised when an enumeration defines more vectors than its budget allows."""


class RationalScalars:
    """Coefficients in Q; every nonzero coefficient is a pivot candidate."""

    name = "rational"
    zero = QQ.zero
    one = QQ.one

    def convert(self, value: Any) -> Any:
        return rational(value)

    def is_unit(self, value: Any) -> bool:
        return bool(value)

    def inverse(self, value: Any) -> Any:
        return QQ.one / value


class PolynomialScalars:
    """Coefficients in Q[t1, ..., tm]; only nonzero constants are pivots."""

    name = "polynomial"

    def __init__(self, poly_ring: Any) -> None:
        self.ring = poly_ring
        self.zero = poly_ring.zero
        self.one = poly_ring.one

    def convert(self, value: Any) -> Any:
        return self.ring(value)

    def is_unit(self, value: Any) -> bool:
        return bool(value) and value.is_ground

    def inverse(self, value: Any) -> Any:
        return self.ring(QQ.one / value.LC)


@dataclass
class EnumerationResult:
    alphabet: tuple[str, ...]
    words: list[Word]
    images: dict[str, list[Vector]]
    deferred: list[Vector] = field(default_factory=list)
    defined: int = 0

    @property
    def dimension(self) -> int:
        return len(self.words)


class VectorEnumerator:
    def __init__(
        self,
        alphabet: Sequence[str],
        relations: Iterable[Any],
        scalars: Any,
        budget: int,
    ) -> None:
        self.alphabet = tuple(alphabet)
        self.scalars = scalars
        self.budget = budget
        self._relations = [
            [(scalars.convert(coeff), word) for coeff, word in relation.terms]
            for relation in relations
        ]
        self._parent: list[int | None] = []
        self._letter: list[str | None] = []
        self._replacement: dict[int, Vector] = {}
        self._images: dict[str, dict[int, Vector]] = {g: {} for g in self.alphabet}
        self._deferred: list[Vector] = []

    def is_live(self, index: int) -> bool:
        return index not in self._replacement

    def _define(self, parent: int | None, letter: str | None) -> int:
        index = len(self._parent)
        if index >= self.budget:
            raise EnumerationBudgetError(
                f"enumeration defined {index} vectors without closing "
                f"(budget {self.budget})"
            )
        self._parent.append(parent)
        self._letter.append(letter)
        return index

    def _resolve(self, index: int) -> Vector:
        replacement = self._replacement[index]
        if any(key in self._replacement for key in replacement):
            replacement = self._reduce(replacement)
            self._replacement[index] = replacement
        return replacement

    def _reduce(self, vector: Vector) -> Vector:
        zero = self.scalars.zero
        result: Vector = {}
        for index, coeff in vector.items():
            if index in self._replacement:
                for key, value in self._resolve(index).items():
                    result[key] = result.get(key, zero) + coeff * value
            else:
                result[index] = result.get(index, zero) + coeff
        return {key: value for key, value in result.items() if value}

    def _image(self, letter: str, index: int) -> Vector:
        table = self._images[letter]
        image = table.get(index)
        if image is None:
            image = {self._define(index, letter): self.scalars.one}
            table[index] = image
        return image

    def _act(self, letter: str, vector: Vector) -> Vector:
        zero = self.scalars.zero
        result: Vector = {}
        for index, coeff in self._reduce(vector).items():
            for key, value in self._image(letter, index).items():
                result[key] = result.get(key, zero) + coeff * value
        return self._reduce(result)

    def _apply_word(self, word: Word, vector: Vector) -> Vector:
        for letter in reversed(word):
            if not vector:
                break
            vector = self._act(letter, vector)
        return vector

    def _relation_vector(self, terms: list[tuple[Any, Word]], index: int) -> Vector:
        zero = self.scalars.zero
        total: Vector = {}
        for coeff, word in terms:
            for key, value in self._apply_word(word, {index: self.scalars.one}).items():
                total[key] = total.get(key, zero) + coeff * value
        return self._reduce(total)

    def _pivot(self, vector: Vector) -> int | None:
        units = [index for index, coeff in vector.items() if self.scalars.is_unit(coeff)]
        return max(units) if units else None

    def _subtract(self, left: Vector, right: Vector) -> Vector:
        zero = self.scalars.zero
        result = dict(left)
        for key, value in right.items():
            result[key] = result.get(key, zero) - value
        return {key: value for key, value in result.items() if value}

    def _coincidence(self, vector: Vector) -> None:
        queue = [vector]
        while queue:
            current = self._reduce(queue.pop())
            if current:
                pivot = self._pivot(current)
                if pivot is None:
                    self._deferred.append(current)
                else:
                    scale = self.scalars.inverse(current[pivot])
                    self._replacement[pivot] = {
                        key: -(value * scale)
                        for key, value in current.items()
                        if key != pivot
                    }
                    for letter in self.alphabet:
                        image = self._images[letter].pop(pivot, None)
                        if image is not None:
                            moved = self._act(letter, self._replacement[pivot])
                            queue.append(self._subtract(image, moved))
            if not queue and self._deferred:
                pending = []
                for stale in self._deferred:
                    stale = self._reduce(stale)
                    if not stale:
                        continue
                    if self._pivot(stale) is None:
                        pending.append(stale)
                    else:
                        queue.append(stale)
                self._deferred = pending

    def _word(self, index: int) -> Word:
        letters = []
        current: int | None = index
        while current is not None and self._letter[current] is not None:
            letters.append(self._letter[current])
            current = self._parent[current]
        return tuple(letters)

    def run(self) -> EnumerationResult:
        self._define(None, None)
        cursor = 0
        while cursor < len(self._parent):
            index = cursor
            cursor += 1
            for letter in self.alphabet:
                if not self.is_live(index):
                    break
                self._image(letter, index)
            for terms in self._relations:
                if not self.is_live(index):
                    break
                vector = self._relation_vector(terms, index)
                if vector:
                    self._coincidence(vector)
        return self._result()

    def _result(self) -> EnumerationResult:
        live = [index for index in range(len(self._parent)) if self.is_live(index)]
        position = {index: pos for pos, index in enumerate(live)}

        def remap(vector: Vector) -> Vector:
            return {position[key]: value for key, value in self._reduce(vector).items()}

        images = {
            letter: [remap(self._images[letter][index]) for index in live]
            for letter in self.alphabet
        }
        deferred = [vector for vector in (remap(v) for v in self._deferred) if vector]
        return EnumerationResult(
            alphabet=self.alphabet,
            words=[self._word(index) for index in live],
            images=images,
            deferred=deferred,
            defined=len(self._parent),
        )


def enumerate_module(
    alphabet: Sequence[str],
    relations: Iterable[Any],
    scalars: Any | None = None,
    budget: int = 20000,
) -> EnumerationResult:
    return VectorEnumerator(
        alphabet, relations, scalars or RationalScalars(), budget
    ).run()
