from __future__ import annotations

import itertools
from typing import *

import pytest

from hallpi.arith import PrimeSet
from hallpi.orders import SimpleGroupSpec
from hallpi.utils import InvalidInputError


@pytest.fixture(scope="session")
def a1_7() -> SimpleGroupSpec:
    return SimpleGroupSpec.of("A", 7, rank=1)


@pytest.fixture(scope="session")
def a2_11() -> SimpleGroupSpec:
    return SimpleGroupSpec.of("A", 11, rank=2)


@pytest.fixture(scope="session")
def u3_4() -> SimpleGroupSpec:
    return SimpleGroupSpec.of("2A", 4, rank=2)


@pytest.fixture(scope="session")
def odd_pairs() -> list[PrimeSet]:
    return [PrimeSet.of(a, b) for a, b in itertools.combinations((3, 5, 7, 11, 13), 2)]


@pytest.fixture(scope="session")
def classical_grid() -> list[SimpleGroupSpec]:
    """Small classical groups plus G2 and F4 over tiny fields; non-simple parameters are skipped."""
    specs = []
    qs = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
    for family, ranks in (("A", range(1, 5)), ("2A", range(2, 5)), ("B", (2, 3)), ("C", (3,))):
        for rank, q in itertools.product(ranks, qs):
            try:
                specs.append(SimpleGroupSpec.of(family, q, rank=rank))
            except InvalidInputError:
                continue

    specs.extend(SimpleGroupSpec.of("G2", q) for q in (3, 4, 5))
    specs.append(SimpleGroupSpec.of("F4", 2))

    return specs
