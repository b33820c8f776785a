from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from typing import *

from sympy import isprime

from ..utils import InvalidInputError

SUPERSCRIPT_DIGITS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")

FACTOR_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes, always stored sorted and deduplicated.

    Composite (or non-positive) members are rejected rather than filtered out.
    Membership of the complement pi' is answered by `in_complement`.

    >>> PrimeSet.of(7, 3, 3)
    {3,7}
    """

    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        elements = tuple(sorted(set(int(p) for p in self.elements)))

        for p in elements:
            if not isprime(p):
                raise InvalidInputError(f"{p} is not a prime")

        object.__setattr__(self, "elements", elements)

    @classmethod
    def of(cls, *primes: int) -> PrimeSet:
        return cls(tuple(primes))

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        """Parse a comma separated list such as "3,5" or "{3, 5}"."""
        body = text.strip().strip("{}").strip()

        if not body:
            return cls()

        try:
            primes = [int(token) for token in body.split(",") if token.strip()]
        except ValueError:
            raise InvalidInputError(f"Malformed prime set: {text!r}")

        return cls(tuple(primes))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self.elements

    def __bool__(self) -> bool:
        return bool(self.elements)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def in_complement(self, p: int) -> bool:
        return p not in self.elements

    def min(self) -> int:
        if not self.elements:
            raise InvalidInputError("min of an empty prime set")
        return self.elements[0]

    def __and__(self, other: Iterable[int]) -> PrimeSet:
        others = set(other)
        return PrimeSet(tuple(p for p in self.elements if p in others))

    def __or__(self, other: Iterable[int]) -> PrimeSet:
        return PrimeSet(self.elements + tuple(other))

    def __sub__(self, other: Iterable[int]) -> PrimeSet:
        others = set(other)
        return PrimeSet(tuple(p for p in self.elements if p not in others))

    def issubset(self, other: Iterable[int]) -> bool:
        others = set(other)
        return all(p in others for p in self.elements)


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer held as its prime factorization.

    `factors` is a sorted tuple of (prime, exponent) pairs with exponent >= 1;
    the empty tuple represents 1.
    """

    factors: tuple[tuple[int, int], ...] = ()

    _value: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}

        for p, e in self.factors:
            if e < 0:
                raise InvalidInputError(f"negative exponent {e} for {p}")
            if e == 0:
                continue
            if not isprime(p):
                raise InvalidInputError(f"{p} is not a prime")
            merged[p] = merged.get(p, 0) + e

        factors = tuple(sorted(merged.items()))

        object.__setattr__(self, "factors", factors)
        object.__setattr__(
            self, "_value", reduce(lambda acc, pe: acc * pe[0] ** pe[1], factors, 1)
        )

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> FactoredInteger:
        return cls(tuple(mapping.items()))

    @classmethod
    def one(cls) -> FactoredInteger:
        return cls()

    @classmethod
    def prime_power(cls, p: int, e: int) -> FactoredInteger:
        return cls(((p, e),))

    @classmethod
    def parse(cls, text: str) -> FactoredInteger:
        """Parse the rendering produced by `render`, e.g. "2^5·3·5^3" or "1"."""
        body = text.strip().translate(SUPERSCRIPT_DIGITS)

        if body == "1":
            return cls()

        factors = []
        for token in re.split(r"[·*]", body):
            match = FACTOR_TOKEN.match(token)
            if match is None:
                raise InvalidInputError(f"Malformed factored integer: {text!r}")

            p, e = int(match.group(1)), int(match.group(2) or 1)
            factors.append((p, e))

        return cls(tuple(factors))

    @property
    def value(self) -> int:
        return self._value

    def __int__(self) -> int:
        return self._value

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for prime, e in self.factors:
            if prime == p:
                return e
        return 0

    def __mul__(self, other: FactoredInteger) -> FactoredInteger:
        return FactoredInteger(self.factors + other.factors)

    def __pow__(self, k: int) -> FactoredInteger:
        if k < 0:
            raise InvalidInputError("negative power of a factored integer")
        return FactoredInteger(tuple((p, e * k) for p, e in self.factors))

    def divides(self, other: FactoredInteger) -> bool:
        return all(other.exponent(p) >= e for p, e in self.factors)

    def __truediv__(self, other: FactoredInteger) -> FactoredInteger:
        if not other.divides(self):
            raise InvalidInputError(f"{other} does not divide {self}")

        return FactoredInteger(
            tuple((p, e - other.exponent(p)) for p, e in self.factors)
        )

    def render(self) -> str:
        if not self.factors:
            return "1"

        return "·".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors)

    def __repr__(self) -> str:
        return self.render()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._value == other
        if isinstance(other, FactoredInteger):
            return self.factors == other.factors
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.factors)
