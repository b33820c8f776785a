from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import *

import pandas as pd
from loguru import logger

from ..arith import PrimeSet, factor, prime_spectrum
from ..classifier import (
    HallVerdict,
    classify_cyclic,
    classify_dpi,
    classify_sporadic,
    dpi_by_composition_factors,
)
from ..orders import SimpleGroupSpec, simple_order
from ..utils import CatalogParseError, InvalidInputError
from .misc import CrosscheckRow
from .oracle import (
    check_Cpi,
    check_Dpi,
    check_star_property,
    hall_subgroups,
    is_strongly_pronormal,
    verify_main_theorem,
)
from .perm_group import PermGroup, parse_cycles

CATALOG_PATH = Path(__file__).parent / "catalog.txt"

CATALOG_KEYS = ("name", "degree", "gens", "lie", "factor", "alias")

DEFAULT_CROSSCHECK_PRIMES = (3, 5, 7, 11, 13)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    generators: tuple[str, ...]
    lie: tuple[SimpleGroupSpec, ...] = ()
    factors: tuple[str, ...] = ()
    aliases: tuple[str, ...] = ()
    line_no: int = 0

    def group(self, bound: int | None = None) -> PermGroup:
        return PermGroup.from_cycles(self.generators, self.degree, name=self.name, bound=bound)

    def expected_order(self) -> int | None:
        """|G| from the recorded Lie descriptors or composition factors; None if neither is given."""
        if self.lie:
            return simple_order(self.lie[0]).value
        if self.factors:
            return math.prod(_factor_order(f) for f in self.factors)
        return None

    def classifier_verdicts(self, pi: PrimeSet) -> list[HallVerdict]:
        """One verdict per Lie descriptor; for composition factors, the combined verdict."""
        if self.lie:
            return [classify_dpi(spec, pi) for spec in self.lie]
        if self.factors:
            return [dpi_by_composition_factors([_factor_verdict(f, pi) for f in self.factors])]
        return []


def _factor_tokens(text: str) -> list[str]:
    tokens = text.split()
    if not tokens:
        raise InvalidInputError("empty composition factor")
    return tokens


def _factor_order(text: str) -> int:
    tokens = _factor_tokens(text)
    match tokens:
        case ["Z", p]:
            return int(p)
        case ["Alt", n]:
            return math.factorial(int(n)) // 2
        case _:
            return simple_order(SimpleGroupSpec.parse(tokens)).value


def _factor_verdict(text: str, pi: PrimeSet) -> HallVerdict:
    tokens = _factor_tokens(text)
    match tokens:
        case ["Z", p]:
            return classify_cyclic(int(p), pi)
        case ["Alt", n]:
            return classify_sporadic(f"Alt({n})", pi)
        case _:
            return classify_dpi(SimpleGroupSpec.parse(tokens), pi)


def _check_factor(text: str) -> None:
    tokens = _factor_tokens(text)
    match tokens:
        case ["Z", p]:
            PrimeSet.of(int(p))
        case ["Alt", n]:
            if int(n) < 5:
                raise InvalidInputError(f"Alt({n}) is not simple")
        case _:
            SimpleGroupSpec.parse(tokens)


def _stanzas(text: str) -> Iterator[list[tuple[int, str, str]]]:
    stanza: list[tuple[int, str, str]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()

        if not line:
            # a comment-only line does not end a stanza
            if not raw.strip() and stanza:
                yield stanza
                stanza = []
            continue

        key, _, value = line.partition(" ")
        value = value.strip()

        if key not in CATALOG_KEYS:
            raise CatalogParseError(line_no, f"unknown key {key!r}")
        if not value:
            raise CatalogParseError(line_no, f"missing value for {key!r}")

        stanza.append((line_no, key, value))

    if stanza:
        yield stanza


def _parse_stanza(stanza: list[tuple[int, str, str]]) -> CatalogEntry:
    start = stanza[0][0]
    values: dict[str, list[tuple[int, str]]] = {}
    for line_no, key, value in stanza:
        values.setdefault(key, []).append((line_no, value))

    for key in ("name", "degree"):
        if key not in values:
            raise CatalogParseError(start, f"stanza has no {key!r}")
        if len(values[key]) > 1:
            raise CatalogParseError(values[key][1][0], f"repeated {key!r}")

    name = values["name"][0][1]

    degree_line, degree_text = values["degree"][0]
    try:
        degree = int(degree_text)
    except ValueError:
        raise CatalogParseError(degree_line, f"degree must be an integer, got {degree_text!r}")
    if degree < 1:
        raise CatalogParseError(degree_line, f"degree must be positive, got {degree}")

    generators = []
    for line_no, text in values.get("gens", []):
        for cycles in text.split(";"):
            try:
                parse_cycles(cycles, degree)
            except InvalidInputError as e:
                raise CatalogParseError(line_no, str(e))
            generators.append(cycles.strip())

    if not generators:
        raise CatalogParseError(start, f"{name}: stanza has no generators")

    lie = []
    for line_no, text in values.get("lie", []):
        try:
            lie.append(SimpleGroupSpec.parse(text))
        except InvalidInputError as e:
            raise CatalogParseError(line_no, str(e))

    factors = []
    for line_no, text in values.get("factor", []):
        try:
            _check_factor(text)
        except (InvalidInputError, ValueError) as e:
            raise CatalogParseError(line_no, f"bad composition factor {text!r}: {e}")
        factors.append(text)

    return CatalogEntry(
        name=name,
        degree=degree,
        generators=tuple(generators),
        lie=tuple(lie),
        factors=tuple(factors),
        aliases=tuple(value for _, value in values.get("alias", [])),
        line_no=start,
    )


def parse_catalog(text: str) -> dict[str, CatalogEntry]:
    """Parse catalog text into a mapping from every name and alias to its entry.

    Raises:
        CatalogParseError: on malformed stanzas, with the offending 1-based line number.
    """
    catalog: dict[str, CatalogEntry] = {}

    for stanza in _stanzas(text):
        entry = _parse_stanza(stanza)
        for name in (entry.name, *entry.aliases):
            if name in catalog:
                raise CatalogParseError(entry.line_no, f"duplicate group name {name!r}")
            catalog[name] = entry

    return catalog


def load_catalog(path: str | Path | None = None) -> dict[str, CatalogEntry]:
    path = Path(path) if path is not None else CATALOG_PATH
    catalog = parse_catalog(path.read_text())

    logger.debug(f"loaded {len(catalog_entries(catalog))} groups from {path}")

    return catalog


def catalog_entries(catalog: Mapping[str, CatalogEntry]) -> list[CatalogEntry]:
    """Distinct entries in file order, aliases collapsed."""
    return sorted({e.name: e for e in catalog.values()}.values(), key=lambda e: e.line_no)


def default_pis(G: PermGroup) -> list[PrimeSet]:
    """2-subsets of the odd primes up to 13 lying inside pi(G)."""
    spectrum = prime_spectrum(factor(G.order))
    return [
        PrimeSet.of(a, b)
        for a, b in itertools.combinations(DEFAULT_CROSSCHECK_PRIMES, 2)
        if a in spectrum and b in spectrum
    ]


def crosscheck_entry(
    entry: CatalogEntry, pi: PrimeSet, bound: int | None = None, G: PermGroup | None = None
) -> CrosscheckRow:
    """Classifier verdict against the definition-level oracle for one (group, pi) pair.

    On D_pi rows, also checks that overgroups of Hall subgroups are D_pi, that Hall subgroups
    are strongly pronormal, and, for a Lie descriptor in characteristic outside pi with 2 not
    in pi, property (*).
    """
    G = G if G is not None else entry.group(bound)

    expected = entry.expected_order()
    order_consistent = G.order == G.stabilizer_chain_order() and (
        expected is None or expected == G.order
    )
    if not order_consistent:
        logger.error(
            f"{entry.name}: enumerated order {G.order}, stabilizer chain "
            f"{G.stabilizer_chain_order()}, expected {expected}"
        )

    verdicts = entry.classifier_verdicts(pi)
    determined = [v for v in verdicts if v.status.determined]
    verdict = determined[0] if determined else (verdicts[0] if verdicts else None)

    halls = hall_subgroups(G, pi)
    dpi = check_Dpi(G, pi)

    main_theorem = strongly_pronormal = star = None
    if dpi:
        main_theorem = verify_main_theorem(G, pi, name=entry.name).passes
        strongly_pronormal = all(is_strongly_pronormal(H, G) for H in halls)
        if 2 not in pi and any(spec.p not in pi for spec in entry.lie):
            star = check_star_property(G, pi)

    row = CrosscheckRow(
        group=entry.name,
        pi=pi,
        classifier=verdict.status.value if verdict is not None else "Undetermined",
        condition=verdict.condition_tag if verdict is not None else None,
        order=G.order,
        order_consistent=order_consistent,
        has_hall=bool(halls),
        hall_classes=len(halls),
        cpi=check_Cpi(G, pi),
        dpi=dpi,
        main_theorem=main_theorem,
        strongly_pronormal=strongly_pronormal,
        star=star,
        classifier_consistent=len({v.status for v in determined}) <= 1,
    )

    if row.agrees is False or not row.theorems_hold:
        logger.error(f"crosscheck disagreement: {row}")
    else:
        logger.info(f"{entry.name} {pi}: classifier {row.classifier}, oracle dpi={dpi}")

    return row


def crosscheck(
    entries: Iterable[CatalogEntry],
    pis: Sequence[PrimeSet] | None = None,
    bound: int | None = None,
) -> list[CrosscheckRow]:
    """Crosscheck rows sorted by group, then pi.

    Without `pis`, each group is checked against `default_pis(G)`. Explicit prime sets are
    used for every group they meet in at least two primes.
    """
    if pis is not None:
        if not pis or any(not pi for pi in pis):
            raise InvalidInputError("crosscheck needs at least one non-empty prime set")

    rows = []
    for entry in entries:
        G = entry.group(bound)
        spectrum = prime_spectrum(factor(G.order))
        group_pis = default_pis(G) if pis is None else [pi for pi in pis if len(pi & spectrum) >= 2]
        for pi in group_pis:
            rows.append(crosscheck_entry(entry, pi, bound=bound, G=G))

    return sorted(rows, key=lambda row: (row.group, row.pi.elements))


def crosscheck_table(rows: Iterable[CrosscheckRow]) -> pd.DataFrame:
    columns = [
        "group",
        "pi",
        "classifier",
        "condition",
        "order",
        "has_hall",
        "hall_classes",
        "cpi",
        "dpi",
        "main_theorem",
        "strongly_pronormal",
        "star",
        "agrees",
    ]
    return pd.DataFrame([row.to_dict() for row in rows], columns=columns)
