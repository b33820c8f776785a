from __future__ import annotations

from typing import *

import pytest

from hallpi.arith import PrimeSet
from hallpi.glhall import MatrixSubgroup, build_TR
from hallpi.orders import GLSpec


@pytest.fixture(scope="session")
def gl3_11() -> GLSpec:
    return GLSpec.of(3, "+", 11)


@pytest.fixture(scope="session")
def gu3_4() -> GLSpec:
    return GLSpec.of(3, "-", 4)


@pytest.fixture(scope="session")
def tr_gl3_11(gl3_11: GLSpec) -> MatrixSubgroup:
    return build_TR(gl3_11, PrimeSet.of(3, 5))


@pytest.fixture(scope="session")
def tr_gu3_4(gu3_4: GLSpec) -> MatrixSubgroup:
    return build_TR(gu3_4, PrimeSet.of(3, 5))
