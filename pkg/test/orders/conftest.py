from __future__ import annotations

from typing import *

import pytest

from hallpi.orders import GLSpec, SimpleGroupSpec


@pytest.fixture(scope="session")
def gl3_11() -> GLSpec:
    return GLSpec.of(3, "+", 11)


@pytest.fixture(scope="session")
def gu3_4() -> GLSpec:
    return GLSpec.of(3, "-", 4)


@pytest.fixture(scope="session")
def psl2_7() -> SimpleGroupSpec:
    return SimpleGroupSpec.of("A", 7, rank=1)


@pytest.fixture(scope="session")
def order_grid() -> list[GLSpec]:
    qs = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32)
    return [GLSpec.of(n, eta, q) for n in range(1, 10) for q in qs for eta in "+-"]
