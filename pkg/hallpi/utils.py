from __future__ import annotations

import os
from typing import *

from loguru import logger

FACTOR_BOUND = 2**63 - 1

DEFAULT_ENUMERATION_BOUND = 200_000  # permutation groups

DEFAULT_MATRIX_ENUMERATION_BOUND = 1_000_000  # matrix subgroups

BOUND_ENV_VAR = "HALLPI_BOUND"

RECORD_SCHEMA_VERSION = "hallpi-verdict/1"

CERTIFICATE_SCHEMA_VERSION = "hallpi-certificate/1"

CROSSCHECK_SCHEMA_VERSION = "hallpi-crosscheck/1"


class HallPiException(Exception):
    pass


class InvalidInputError(HallPiException, ValueError):
    pass


class FactorizationBoundError(InvalidInputError):
    pass


class UndefinedOrderError(InvalidInputError):
    pass


class NonSimpleGroupError(InvalidInputError):
    pass


class RegimeError(HallPiException):
    """An E_pi \\ D_pi regime precondition failed.

    Attributes:
        failures (list[str]): names of the failed sub-conditions, in evaluation order.
    """

    def __init__(self, failures: Sequence[str], message: str | None = None):
        self.failures = list(failures)
        super().__init__(
            message
            if message is not None
            else f"regime precondition failed: {', '.join(self.failures)}"
        )


class EnumerationBoundError(HallPiException):
    pass


class CatalogParseError(InvalidInputError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class RecordParseError(InvalidInputError):
    pass


def raise_for_regime(failures: Sequence[str]) -> None:
    if not failures:
        return

    raise RegimeError(failures)


def get_enumeration_bound(default: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """Enumeration bound: the HALLPI_BOUND environment variable if set, else `default`."""
    value = os.environ.get(BOUND_ENV_VAR, None)

    if value is None or value.strip() == "":
        return default

    try:
        bound = int(value)
    except ValueError:
        raise InvalidInputError(f"{BOUND_ENV_VAR} must be an integer, got {value!r}")

    if bound < 1:
        raise InvalidInputError(f"{BOUND_ENV_VAR} must be positive, got {bound}")

    logger.debug(f"Enumeration bound overridden by {BOUND_ENV_VAR}: {bound}")

    return bound


def resolve_bound(bound: int | None, default: int = DEFAULT_ENUMERATION_BOUND) -> int:
    if bound is not None:
        if bound < 1:
            raise InvalidInputError(f"bound must be positive, got {bound}")
        return bound

    return get_enumeration_bound(default)


def named_methodkey(name: str):
    """Hash key that ignores the first argument of a method, but is named for the method."""

    def _key(self, *args, **kwargs):
        return tuple([name] + list(args) + list(kwargs.values()))

    return _key
