from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import *

from ..arith import FactoredInteger, PrimeSet

WitnessValue = int | str | bool


class HallStatus(Enum):
    DPI = "Dpi"
    EPI_NOT_DPI = "EpiNotDpi"
    NOT_EPI = "NotEpi"
    UNDETERMINED = "Undetermined"

    @property
    def determined(self) -> bool:
        return self is not HallStatus.UNDETERMINED

    @property
    def refutes_dpi(self) -> bool:
        return self in (HallStatus.EPI_NOT_DPI, HallStatus.NOT_EPI)


class Citation(Enum):
    """Tags naming the criterion a verdict rests on; never prose."""

    SYLOW_TRIVIAL = "nilpotent-hall"
    DPI_CRITERION = "dpi-criterion"
    EPI_MINUS_DPI = "epi-minus-dpi"
    NN_BOUNDS = "nn-bounds"
    COMPOSITION = "composition-factors"
    DPI_EQUALS_UPI = "dpi-equals-upi"
    SCOPE_TWO_IN_PI = "scope-2-in-pi"
    EXTERNAL_CRITERIA = "external-criteria"
    TWISTED_WEYL = "twisted-weyl-convention"
    LITERAL_UNITARY_ITEMS = "literal-unitary-items"


SYLOW_TRIVIAL_TAG = "sylow-trivial"

COMPOSITION_TAG = "composition"

SCOPE_TAG = "scope-2-in-pi"


@dataclass(frozen=True)
class Witness:
    name: str
    value: WitnessValue

    def render(self) -> str:
        return f"{self.name}={self.value}"


def witnesses(**kwargs: Any) -> tuple[Witness, ...]:
    """Build a witness tuple from keyword arguments; PrimeSets and FactoredIntegers render to text."""
    items = []
    for name, value in kwargs.items():
        if isinstance(value, (PrimeSet, FactoredInteger)):
            value = repr(value)
        items.append(Witness(name, value))
    return tuple(items)


def check_entry(tag: str, holds: bool, failures: Iterable[str] = ()) -> str:
    """Audit entry for one evaluated condition or item: `tag:hit`, `tag:miss` or `tag:miss[a,b]`."""
    entry = f"{tag}:{'hit' if holds else 'miss'}"
    failures = list(failures)
    return f"{entry}[{','.join(failures)}]" if failures else entry


def record_check(
    trail: list[str] | None, tag: str, holds: bool, failures: Iterable[str] = ()
) -> bool:
    """Append the entry for `tag` to `trail` when one is kept; returns `holds`."""
    if trail is not None:
        trail.append(check_entry(tag, holds, failures))
    return holds


@dataclass(frozen=True)
class ConditionHit:
    """A fired condition or E_pi \\ D_pi item, with the sub-conditions it verified."""

    tag: str
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()
    citations: tuple[Citation, ...] = ()


@dataclass(frozen=True)
class PiContext:
    """pi restricted to pi(S), the prime r = min, tau = the rest, and e(q, t) values.

    `orders` carries e(q, t) for every odd t in pi_effective coprime to q.
    """

    pi: PrimeSet
    pi_effective: PrimeSet
    q: int
    p: int
    orders: tuple[tuple[int, int], ...] = ()

    @property
    def r(self) -> int | None:
        return self.pi_effective.min() if self.pi_effective else None

    @property
    def tau(self) -> PrimeSet:
        if not self.pi_effective:
            return PrimeSet()
        return self.pi_effective - (self.pi_effective.min(),)

    def e(self, t: int) -> int | None:
        for prime, order in self.orders:
            if prime == t:
                return order
        return None

    @property
    def a(self) -> int | None:
        """e(q, r), also called c in the uniform-order conditions."""
        r = self.r
        return self.e(r) if r is not None else None


@dataclass(frozen=True)
class HallVerdict:
    """Classifier output for (group, pi).

    The U_pi reading always mirrors the D_pi status, see `upi`.
    `checked` lists every condition and item evaluated, in order, up to and including the one
    that fired.
    """

    group: str
    pi: PrimeSet
    status: HallStatus
    condition_tag: str | None = None
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()
    citations: tuple[str, ...] = ()
    checked: tuple[str, ...] = ()

    @property
    def upi(self) -> bool:
        return self.status is HallStatus.DPI

    @property
    def is_dpi(self) -> bool:
        return self.status is HallStatus.DPI

    def witness(self, name: str) -> WitnessValue | None:
        for w in self.witnesses:
            if w.name == name:
                return w.value
        return None

    def with_notes(self, *notes: str) -> HallVerdict:
        merged = tuple(dict.fromkeys(self.notes + tuple(notes)))
        return replace(self, notes=merged)

    @classmethod
    def from_hit(
        cls,
        group: str,
        pi: PrimeSet,
        status: HallStatus,
        hit: ConditionHit,
        checked: Sequence[str] = (),
    ) -> HallVerdict:
        return cls(
            group=group,
            pi=pi,
            status=status,
            condition_tag=hit.tag,
            witnesses=hit.witnesses,
            notes=hit.notes,
            citations=tuple(c.value for c in hit.citations),
            checked=tuple(checked),
        )


# Orders of the sporadic simple groups, used for the pi(S) gate only.
SPORADIC_ORDERS: dict[str, str] = {
    "M11": "2^4·3^2·5·11",
    "M12": "2^6·3^3·5·11",
    "M22": "2^7·3^2·5·7·11",
    "M23": "2^7·3^2·5·7·11·23",
    "M24": "2^10·3^3·5·7·11·23",
    "J1": "2^3·3·5·7·11·19",
    "J2": "2^7·3^3·5^2·7",
    "J3": "2^7·3^5·5·17·19",
    "J4": "2^21·3^3·5·7·11^3·23·29·31·37·43",
    "HS": "2^9·3^2·5^3·7·11",
    "McL": "2^7·3^6·5^3·7·11",
    "Suz": "2^13·3^7·5^2·7·11·13",
    "Co1": "2^21·3^9·5^4·7^2·11·13·23",
    "Co2": "2^18·3^6·5^3·7·11·23",
    "Co3": "2^10·3^7·5^3·7·11·23",
    "He": "2^10·3^3·5^2·7^3·17",
    "Ru": "2^14·3^3·5^3·7·13·29",
    "ON": "2^9·3^4·5·7^3·11·19·31",
    "Ly": "2^8·3^7·5^6·7·11·31·37·67",
    "HN": "2^14·3^6·5^6·7·11·19",
    "Th": "2^15·3^10·5^3·7^2·13·19·31",
    "Fi22": "2^17·3^9·5^2·7·11·13",
    "Fi23": "2^18·3^13·5^2·7·11·13·17·23",
    "Fi24'": "2^21·3^16·5^2·7^3·11·13·17·23·29",
    "B": "2^41·3^13·5^6·7^2·11·13·17·19·23·31·47",
    "M": "2^46·3^20·5^9·7^6·11^2·13^3·17·19·23·29·31·41·47·59·71",
}

SPORADIC_ALIASES: dict[str, str] = {
    "O'N": "ON",
    "ONAN": "ON",
    "F24'": "Fi24'",
    "MONSTER": "M",
    "BABY": "B",
}
