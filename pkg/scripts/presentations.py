#!/usr/bin/env python3
"""Generators and defining relations of the cyclotomic BMW / NW algebras and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from exact_arith import poly_coefficients, poly_from_roots


Word = tuple[str, ...]
Term = tuple[Any, Word]
VARIANTS = ("bmw", "nw", "hecke", "deg-hecke")
TANGLE_VARIANTS = ("bmw", "nw")


@dataclass(frozen=True)
class PresentationScalars:
    """Scalars that enter the relations; plain rationals or polynomial unknowns."""

    q: Any = None
    v: tuple[Any, ...] = ()
    rho: Any = None
    rho_inv: Any = None
    delta: tuple[Any, ...] = ()
    omega: tuple[Any, ...] = ()


@dataclass(frozen=True)
class Relation:
    """sum(coeff * word) = 0; a word acts right to left."""

    name: str
    anchor: str
    terms: tuple[Term, ...]

    def words(self) -> list[Word]:
        return [word for _, word in self.terms]


@dataclass(frozen=True)
class Presentation:
    variant: str
    n: int
    d: int
    alphabet: tuple[str, ...]
    relations: tuple[Relation, ...]

    @property
    def has_tangles(self) -> bool:
        return self.variant in TANGLE_VARIANTS

    def relation(self, name: str) -> Relation:
        for relation in self.relations:
            if relation.name == name:
                return relation
        raise KeyError(name)


def braid_letter(variant: str, i: int) -> str:
    return f"T{i}" if variant in ("bmw", "hecke") else f"S{i}"


def tangle_letter(i: int) -> str:
    return f"E{i}"


def jm_word(variant: str, k: int) -> Word:
    """X_k as a word: X_{k+1} = T_k X_k T_k for bmw, a generator for nw."""
    if variant in ("nw", "deg-hecke"):
        return (f"X{k}",)
    word: Word = ("X1",)
    for i in range(1, k):
        word = (f"T{i}",) + word + (f"T{i}",)
    return word


def _times(left: Sequence[Term], right: Sequence[Term]) -> list[Term]:
    return [(a * b, u + w) for a, u in left for b, w in right]


def _power(letter: str, exponent: int) -> Word:
    return (letter,) * exponent


class _RelationList:
    def __init__(self) -> None:
        self.items: list[Relation] = []

    def add(self, name: str, anchor: str, terms: Iterable[Term]) -> None:
        self.items.append(Relation(name, anchor, tuple(terms)))


def _cyclotomic(relations: _RelationList, v: Sequence[Any]) -> None:
    coeffs = poly_coefficients(poly_from_roots(v, "x"))
    relations.add(
        "cyclotomic",
        "cyclotomic",
        [(coeff, _power("X1", power)) for power, coeff in enumerate(coeffs) if coeff],
    )


def _tangle_common(relations: _RelationList, n: int, braid: str) -> None:
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n - 1:
                continue
            Ei, Ej, Bi, Bj = f"E{i}", f"E{j}", f"{braid}{i}", f"{braid}{j}"
            relations.add(f"tangle[E{i}E{j}E{i}]", "tangle", [(1, (Ei, Ej, Ei)), (-1, (Ei,))])
            relations.add(
                f"tangle[{Bi}{Bj}E{i}]", "tangle", [(1, (Bi, Bj, Ei)), (-1, (Ej, Ei))]
            )
            relations.add(
                f"tangle[E{i}{Bj}{Bi}]", "tangle", [(1, (Ei, Bj, Bi)), (-1, (Ei, Ej))]
            )


def _braids(relations: _RelationList, n: int, braid: str) -> None:
    for i in range(1, n - 1):
        a, b = f"{braid}{i}", f"{braid}{i + 1}"
        relations.add(f"braid[{a},{b}]", "braid", [(1, (a, b, a)), (-1, (b, a, b))])
    for i in range(1, n):
        for j in range(i + 2, n):
            a, b = f"{braid}{i}", f"{braid}{j}"
            relations.add(f"commute[{a},{b}]", "braid", [(1, (a, b)), (-1, (b, a))])


def bmw_presentation(n: int, d: int, scalars: PresentationScalars, tangles: bool = True) -> Presentation:
    """Cyclotomic BMW relations; with tangles=False the Hecke quotient (E_i = 0)."""
    q = scalars.q
    kappa = q - q**-1
    letters = ["X1", "X1inv"] + [f"T{i}" for i in range(1, n)] + [f"E{i}" for i in range(1, n)]
    relations = _RelationList()
    relations.add("inverse[X1]", "inverse", [(1, ("X1", "X1inv")), (-1, ())])
    relations.add("inverse[X1]'", "inverse", [(1, ("X1inv", "X1")), (-1, ())])
    for i in range(1, n):
        T, E = f"T{i}", f"E{i}"
        inverse = [(1, (T,)), (-kappa, ())]
        if tangles:
            inverse.append((kappa, (E,)))
        relations.add(f"skein[{T}]", "kauffman-skein", _times([(1, (T,))], inverse) + [(-1, ())])
        relations.add(f"skein[{T}]'", "kauffman-skein", _times(inverse, [(1, (T,))]) + [(-1, ())])
    _braids(relations, n, "T")
    if n >= 2:
        relations.add(
            "type-b-braid",
            "type-b-braid",
            [(1, ("X1", "T1", "X1", "T1")), (-1, ("T1", "X1", "T1", "X1"))],
        )
    for j in range(2, n):
        relations.add(f"commute[X1,T{j}]", "type-b-braid", [(1, ("X1", f"T{j}")), (-1, (f"T{j}", "X1"))])
    _cyclotomic(relations, scalars.v)
    if tangles:
        for i in range(1, n):
            T, E = f"T{i}", f"E{i}"
            relations.add(f"idempotent[{E}]", "idempotent-tangle", [(1, (E, E)), (-scalars.delta[0], (E,))])
            relations.add(f"untwist[{T}{E}]", "untwisting", [(1, (T, E)), (-scalars.rho_inv, (E,))])
            relations.add(f"untwist[{E}{T}]", "untwisting", [(1, (E, T)), (-scalars.rho_inv, (E,))])
        _tangle_common(relations, n, "T")
        if n >= 2:
            relations.add(
                "unwrap[E1X1T1X1]", "unwrapping", [(1, ("E1", "X1", "T1", "X1")), (-scalars.rho, ("E1",))]
            )
            relations.add(
                "unwrap[X1T1X1E1]", "unwrapping", [(1, ("X1", "T1", "X1", "E1")), (-scalars.rho, ("E1",))]
            )
            for j in range(1, d):
                relations.add(
                    f"admissible[{j}]",
                    "admissibility",
                    [(1, ("E1",) + _power("X1", j) + ("E1",)), (-scalars.delta[j], ("E1",))],
                )
    else:
        for i in range(1, n):
            relations.add(f"quotient[E{i}]", "quotient", [(1, (f"E{i}",))])
    variant = "bmw" if tangles else "hecke"
    return Presentation(variant, n, d, tuple(letters), tuple(relations.items))


def nw_presentation(n: int, d: int, scalars: PresentationScalars, tangles: bool = True) -> Presentation:
    """Cyclotomic NW relations; with tangles=False the degenerate Hecke quotient."""
    letters = (
        [f"X{j}" for j in range(1, n + 1)]
        + [f"S{i}" for i in range(1, n)]
        + [f"E{i}" for i in range(1, n)]
    )
    relations = _RelationList()
    for i in range(1, n):
        S = f"S{i}"
        relations.add(f"involution[{S}]", "involution", [(1, (S, S)), (-1, ())])
    _braids(relations, n, "S")
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                relations.add(
                    f"commute[S{i},X{j}]", "commutation", [(1, (f"S{i}", f"X{j}")), (-1, (f"X{j}", f"S{i}"))]
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            relations.add(f"commute[X{i},X{j}]", "commutation", [(1, (f"X{i}", f"X{j}")), (-1, (f"X{j}", f"X{i}"))])
    for i in range(1, n):
        S, E = f"S{i}", f"E{i}"
        skein = [(1, (S, f"X{i}")), (-1, (f"X{i + 1}", S)), (1, ())]
        if tangles:
            skein.append((-1, (E,)))
        relations.add(f"skein[{S}]", "degenerate-skein", skein)
    _cyclotomic(relations, scalars.v)
    if tangles:
        for i in range(1, n):
            S, E = f"S{i}", f"E{i}"
            relations.add(f"idempotent[{E}]", "idempotent-tangle", [(1, (E, E)), (-scalars.omega[0], (E,))])
            relations.add(f"untwist[{S}{E}]", "untwisting", [(1, (S, E)), (-1, (E,))])
            relations.add(f"untwist[{E}{S}]", "untwisting", [(1, (E, S)), (-1, (E,))])
            relations.add(
                f"anti-symmetry[{E}]", "anti-symmetry", [(1, (E, f"X{i}")), (1, (E, f"X{i + 1}"))]
            )
            relations.add(
                f"anti-symmetry[{E}]'", "anti-symmetry", [(1, (f"X{i}", E)), (1, (f"X{i + 1}", E))]
            )
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    relations.add(
                        f"commute[{E},X{j}]", "commutation", [(1, (E, f"X{j}")), (-1, (f"X{j}", E))]
                    )
            for j in range(i + 2, n):
                Sj, Ej = f"S{j}", f"E{j}"
                relations.add(f"commute[{S},{Ej}]", "commutation", [(1, (S, Ej)), (-1, (Ej, S))])
                relations.add(f"commute[{Sj},{E}]", "commutation", [(1, (Sj, E)), (-1, (E, Sj))])
                relations.add(f"commute[{E},{Ej}]", "commutation", [(1, (E, Ej)), (-1, (Ej, E))])
        _tangle_common(relations, n, "S")
        if n >= 2:
            for k in range(1, d):
                relations.add(
                    f"admissible[{k}]",
                    "admissibility",
                    [(1, ("E1",) + _power("X1", k) + ("E1",)), (-scalars.omega[k], ("E1",))],
                )
    else:
        for i in range(1, n):
            relations.add(f"quotient[E{i}]", "quotient", [(1, (f"E{i}",))])
    variant = "nw" if tangles else "deg-hecke"
    return Presentation(variant, n, d, tuple(letters), tuple(relations.items))


def build_presentation(variant: str, n: int, d: int, scalars: PresentationScalars) -> Presentation:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if variant in ("bmw", "hecke"):
        return bmw_presentation(n, d, scalars, tangles=variant == "bmw")
    return nw_presentation(n, d, scalars, tangles=variant == "nw")


def reversed_relation(relation: Relation) -> Relation:
    """The same relation read in the opposite algebra."""
    return Relation(
        relation.name,
        relation.anchor,
        tuple((coeff, tuple(reversed(word))) for coeff, word in relation.terms),
    )
