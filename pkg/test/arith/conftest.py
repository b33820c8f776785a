from __future__ import annotations

from typing import *

import pytest
from sympy import primerange


@pytest.fixture(scope="session")
def odd_primes() -> list[int]:
    return [int(r) for r in primerange(3, 38)]


@pytest.fixture(scope="session")
def identity_grid(odd_primes: list[int]) -> list[tuple[int, int]]:
    """(k, r) pairs with 2 <= k <= 50 and r not dividing k."""
    return [(k, r) for r in odd_primes for k in range(2, 51) if k % r]
