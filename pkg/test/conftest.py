from __future__ import annotations

from typing import *

import pytest

from hallpi.arith import PrimeSet
from hallpi.utils import BOUND_ENV_VAR


@pytest.fixture(scope="function", autouse=True)
def clean_bound_env(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv(BOUND_ENV_VAR, raising=False)


@pytest.fixture(scope="session")
def pi_35() -> PrimeSet:
    return PrimeSet.of(3, 5)


@pytest.fixture(scope="session")
def pi_37() -> PrimeSet:
    return PrimeSet.of(3, 7)
