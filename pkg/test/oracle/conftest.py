from __future__ import annotations

from typing import *

import pytest

from hallpi.arith import PrimeSet
from hallpi.oracle import CatalogEntry, PermGroup, has_hall, load_catalog


@pytest.fixture(scope="session")
def catalog() -> dict[str, CatalogEntry]:
    return load_catalog()


@pytest.fixture(scope="session")
def psl2_7(catalog: dict[str, CatalogEntry]) -> PermGroup:
    return catalog["PSL2(7)"].group()


@pytest.fixture(scope="session")
def a5(catalog: dict[str, CatalogEntry]) -> PermGroup:
    return catalog["A5"].group()


@pytest.fixture(scope="session")
def s4(catalog: dict[str, CatalogEntry]) -> PermGroup:
    return catalog["S4"].group()


@pytest.fixture(scope="session")
def a4(catalog: dict[str, CatalogEntry]) -> PermGroup:
    return catalog["A4"].group()


@pytest.fixture(scope="session")
def s3() -> PermGroup:
    return PermGroup.from_cycles(["(1,2,3)", "(1,2)"], 3, name="S3")


@pytest.fixture(scope="session")
def f21_in_psl2_7(psl2_7: PermGroup) -> PermGroup:
    H = has_hall(psl2_7, PrimeSet.of(3, 7))
    assert H is not None
    return H


@pytest.fixture(scope="session")
def pi_23() -> PrimeSet:
    return PrimeSet.of(2, 3)
