from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import *

from ..arith import PrimeSet
from .perm_group import PermGroup


@dataclass(frozen=True)
class PiSubgroupClasses:
    """Every pi-subgroup of a group up to conjugacy, with the maximal ones marked."""

    pi: PrimeSet
    pi_order: int
    classes: tuple[PermGroup, ...]
    maximal: tuple[PermGroup, ...]

    @property
    def halls(self) -> tuple[PermGroup, ...]:
        return tuple(U for U in self.maximal if U.order == self.pi_order)


@dataclass(frozen=True)
class OvergroupCheck:
    hall_order: int
    overgroup_order: int
    dpi: bool


@dataclass(frozen=True)
class MainTheoremReport:
    group: str
    pi: PrimeSet
    applicable: bool
    checks: tuple[OvergroupCheck, ...] = ()
    reasons: tuple[str, ...] = ()

    @property
    def passes(self) -> bool:
        return self.applicable and all(c.dpi for c in self.checks)


@dataclass(frozen=True)
class StarEquivalenceReport:
    group: str
    pi: PrimeSet
    applicable: bool
    dpi: bool | None = None
    star: bool | None = None
    reasons: tuple[str, ...] = ()

    @property
    def agrees(self) -> bool | None:
        if not self.applicable:
            return None
        return self.dpi == self.star


@dataclass(frozen=True)
class CrosscheckRow:
    group: str
    pi: PrimeSet
    classifier: str
    condition: str | None
    order: int
    order_consistent: bool
    has_hall: bool
    hall_classes: int
    cpi: bool
    dpi: bool
    main_theorem: bool | None = None
    strongly_pronormal: bool | None = None
    star: bool | None = None
    classifier_consistent: bool = True

    @property
    def agrees(self) -> bool | None:
        """Classifier against oracle; None for Undetermined (oracle-only) rows."""
        if not self.classifier_consistent or not self.order_consistent:
            return False
        match self.classifier:
            case "Dpi":
                return self.dpi
            case "EpiNotDpi":
                return self.has_hall and not self.dpi
            case "NotEpi":
                return not self.has_hall
            case _:
                return None

    @property
    def theorems_hold(self) -> bool:
        return all(v is not False for v in (self.main_theorem, self.strongly_pronormal, self.star))

    def to_dict(self) -> dict[str, Any]:
        row = asdict(self)
        row["pi"] = repr(self.pi)
        row["agrees"] = self.agrees
        return row
