from __future__ import annotations

import math
import operator
import re
from collections import Counter, deque
from typing import *

from cachetools import LRUCache, cachedmethod
from loguru import logger
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from ..arith import PrimeSet, factor, is_pi_number
from ..utils import (
    DEFAULT_ENUMERATION_BOUND,
    EnumerationBoundError,
    InvalidInputError,
    named_methodkey,
    resolve_bound,
)

# Images of the points 0..degree-1.
Perm = tuple[int, ...]

CYCLE = re.compile(r"\(([^()]*)\)")


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_mul(a: Perm, b: Perm) -> Perm:
    """The product a * b: apply a, then b."""
    return tuple(b[i] for i in a)


def perm_inv(a: Perm) -> Perm:
    inverse = [0] * len(a)
    for i, image in enumerate(a):
        inverse[image] = i
    return tuple(inverse)


def perm_conj(a: Perm, g: Perm) -> Perm:
    """a^g = g^-1 a g."""
    return perm_mul(perm_mul(perm_inv(g), a), g)


def perm_cycles(a: Perm) -> list[tuple[int, ...]]:
    seen, cycles = set(), []
    for start in range(len(a)):
        if start in seen:
            continue
        cycle, point = [start], a[start]
        seen.add(start)
        while point != start:
            cycle.append(point)
            seen.add(point)
            point = a[point]
        cycles.append(tuple(cycle))
    return cycles


def perm_order(a: Perm) -> int:
    return math.lcm(*(len(c) for c in perm_cycles(a)))


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation such as "(1,2,3)(4,5)" or "(1 2 3)"; "()" is the identity.

    Raises:
        InvalidInputError: on stray characters, repeated or out-of-range points.
    """
    text = text.strip()
    if CYCLE.sub("", text).strip():
        raise InvalidInputError(f"malformed cycle notation {text!r}")

    image = list(range(degree))
    used: set[int] = set()

    for body in CYCLE.findall(text):
        tokens = [t for t in re.split(r"[,\s]+", body.strip()) if t]
        try:
            points = [int(t) - 1 for t in tokens]
        except ValueError:
            raise InvalidInputError(f"non-integer point in cycle ({body})")

        for point in points:
            if not 0 <= point < degree:
                raise InvalidInputError(f"point {point + 1} outside 1..{degree}")
            if point in used:
                raise InvalidInputError(f"point {point + 1} repeated in {text!r}")
            used.add(point)

        for i, point in enumerate(points):
            image[point] = points[(i + 1) % len(points)]

    return tuple(image)


def render_cycles(a: Perm) -> str:
    cycles = [c for c in perm_cycles(a) if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


class PermGroup:
    """A permutation group given by generators, with a lazily enumerated element set.

    Two groups compare equal when they have the same elements.
    """

    def __init__(
        self,
        generators: Iterable[Perm],
        degree: int | None = None,
        name: str = "",
        bound: int | None = None,
        elements: Iterable[Perm] | None = None,
    ):
        generators = tuple(dict.fromkeys(generators))

        if degree is None:
            if not generators:
                raise InvalidInputError("degree is required for a group without generators")
            degree = len(generators[0])

        for g in generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InvalidInputError(f"{g} is not a permutation of degree {degree}")

        self.degree = degree
        self.name = name
        self.bound = resolve_bound(bound, DEFAULT_ENUMERATION_BOUND)
        self.identity = identity_perm(degree)
        self.generators = tuple(g for g in generators if g != self.identity)

        self._cache: LRUCache = LRUCache(maxsize=16)
        if elements is not None:
            self._cache[named_methodkey("elements")(self)] = frozenset(elements)

    @classmethod
    def from_cycles(
        cls, cycles: Iterable[str], degree: int, name: str = "", bound: int | None = None
    ) -> PermGroup:
        return cls([parse_cycles(c, degree) for c in cycles], degree, name=name, bound=bound)

    def __repr__(self) -> str:
        label = self.name or "<" + ", ".join(render_cycles(g) for g in self.generators) + ">"
        return f"PermGroup({label}, degree={self.degree})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements() == other.elements()

    def __hash__(self) -> int:
        return hash(self.elements())

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Perm]:
        return iter(sorted(self.elements()))

    def __contains__(self, g: Perm) -> bool:
        return g in self.elements()

    @cachedmethod(operator.attrgetter("_cache"), key=named_methodkey("elements"))
    def elements(self) -> frozenset[Perm]:
        """All elements, by breadth-first closure under right multiplication by generators.

        Raises:
            EnumerationBoundError: when the group has more than `self.bound` elements.
        """
        seen = {self.identity}
        queue = deque([self.identity])

        while queue:
            current = queue.popleft()
            for g in self.generators:
                nxt = perm_mul(current, g)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.bound:
                        raise EnumerationBoundError(
                            f"{self!r} has more than {self.bound} elements"
                        )
                    queue.append(nxt)

        logger.debug(f"{self!r}: enumerated {len(seen)} elements")

        return frozenset(seen)

    @property
    def order(self) -> int:
        return len(self.elements())

    @cachedmethod(operator.attrgetter("_cache"), key=named_methodkey("stabilizer_chain_order"))
    def stabilizer_chain_order(self) -> int:
        """|G| by Schreier-Sims, independent of enumeration."""
        if not self.generators:
            return 1
        group = SympyPermutationGroup([SympyPermutation(list(g)) for g in self.generators])
        return int(group.order())

    @cachedmethod(operator.attrgetter("_cache"), key=named_methodkey("element_orders"))
    def element_orders(self) -> dict[Perm, int]:
        return {g: perm_order(g) for g in self.elements()}

    def pi_elements(self, pi: PrimeSet) -> list[Perm]:
        """Elements whose order is a pi-number, the identity included."""
        return sorted(g for g, n in self.element_orders().items() if is_pi_number(factor(n), pi))

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(perm_mul(a, b) == perm_mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1 :])

    def conjugate(self, g: Perm) -> PermGroup:
        """H^g = g^-1 H g."""
        elements = None
        if named_methodkey("elements")(self) in self._cache:
            elements = [perm_conj(h, g) for h in self.elements()]
        return PermGroup(
            [perm_conj(h, g) for h in self.generators],
            self.degree,
            bound=self.bound,
            elements=elements,
        )

    def is_normal_in(self, other: PermGroup) -> bool:
        elements = self.elements()
        return all(perm_conj(h, g) in elements for g in other.generators for h in self.generators)

    def orbit_lengths(self) -> tuple[int, ...]:
        seen: set[int] = set()
        lengths = []
        for start in range(self.degree):
            if start in seen:
                continue
            orbit, queue = {start}, deque([start])
            while queue:
                point = queue.popleft()
                for g in self.generators:
                    if g[point] not in orbit:
                        orbit.add(g[point])
                        queue.append(g[point])
            seen |= orbit
            lengths.append(len(orbit))
        return tuple(sorted(lengths))

    @cachedmethod(operator.attrgetter("_cache"), key=named_methodkey("signature"))
    def signature(self) -> tuple:
        """A conjugacy invariant: order, multiset of element orders, orbit lengths."""
        orders = Counter(self.element_orders().values())
        return (self.order, tuple(sorted(orders.items())), self.orbit_lengths())

    def join(self, *elements: Perm, cap: int | None = None) -> PermGroup | None:
        """<self, elements>; None when the closure grows beyond `cap` elements."""
        base = self.elements()
        extra = [x for x in elements if x not in base]
        if not extra:
            return self

        generators = self.generators + tuple(extra)
        limit = cap if cap is not None else self.bound

        seen = set(base)
        queue = deque(base)
        while queue:
            current = queue.popleft()
            for g in generators:
                nxt = perm_mul(current, g)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > limit:
                        if cap is not None:
                            return None
                        raise EnumerationBoundError(f"join exceeds {limit} elements")
                    queue.append(nxt)

        return PermGroup(generators, self.degree, bound=self.bound, elements=seen)

    def subgroup(self, generators: Iterable[Perm]) -> PermGroup:
        return PermGroup(generators, self.degree, bound=self.bound)

    def cyclic(self, g: Perm) -> PermGroup:
        powers, current = [self.identity], g
        while current != self.identity:
            powers.append(current)
            current = perm_mul(current, g)
        return PermGroup([g], self.degree, bound=self.bound, elements=powers)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([], degree, elements=[identity_perm(degree)])
