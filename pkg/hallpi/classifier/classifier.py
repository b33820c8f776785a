from __future__ import annotations

import re
from dataclasses import replace
from typing import *

from cachetools import LRUCache, cached
from loguru import logger
from sympy import primerange

from ..arith import FactoredInteger, PrimeSet, factor, pi_part, prime_spectrum
from ..orders import GLSpec, SimpleGroupSpec, gl_order, isomorphism_notes
from ..utils import HallPiException, InvalidInputError
from .conditions import (
    condition_I,
    condition_II,
    condition_III,
    condition_IV,
    epi_minus_dpi_item,
    make_context,
    regime_item,
)
from .misc import (
    COMPOSITION_TAG,
    SCOPE_TAG,
    SPORADIC_ALIASES,
    SPORADIC_ORDERS,
    SYLOW_TRIVIAL_TAG,
    Citation,
    HallStatus,
    HallVerdict,
    check_entry,
    record_check,
    witnesses,
)

CONDITIONS = (condition_I, condition_II, condition_III, condition_IV)

ALTERNATING_NAME = re.compile(r"^(?:Alt|A)\(?(\d+)\)?$", re.IGNORECASE)


def _gate_trail(pi: PrimeSet, pi_effective: PrimeSet) -> list[str]:
    """Entries for the Sylow-trivial and 2-in-pi gates, stopping at the first that fires."""
    trail: list[str] = []
    if record_check(trail, SYLOW_TRIVIAL_TAG, len(pi_effective) <= 1):
        return trail
    record_check(trail, SCOPE_TAG, 2 in pi)
    return trail


def _sylow_trivial(group: str, pi: PrimeSet, pi_effective: PrimeSet) -> HallVerdict:
    return HallVerdict(
        group=group,
        pi=pi,
        status=HallStatus.DPI,
        condition_tag=SYLOW_TRIVIAL_TAG,
        witnesses=witnesses(pi_effective=pi_effective),
        citations=(Citation.SYLOW_TRIVIAL.value,),
        checked=(check_entry(SYLOW_TRIVIAL_TAG, True),),
    )


def _out_of_scope(group: str, pi: PrimeSet, pi_effective: PrimeSet) -> HallVerdict:
    return HallVerdict(
        group=group,
        pi=pi,
        status=HallStatus.UNDETERMINED,
        witnesses=witnesses(pi_effective=pi_effective),
        notes=("2 in pi: no D_pi criterion is applied",),
        citations=(Citation.SCOPE_TWO_IN_PI.value,),
        checked=tuple(_gate_trail(pi, pi_effective)),
    )


@cached(cache=LRUCache(maxsize=4096))
def classify_dpi(spec: SimpleGroupSpec, pi: PrimeSet) -> HallVerdict:
    """Decide D_pi for a simple group of Lie type.

    Evaluation order: the Sylow-trivial gate (|pi & pi(S)| <= 1), the 2-in-pi scope gate,
    Conditions I, II, III, IV (first hit wins), then the E_pi \\ D_pi items; if nothing
    fires the group has no pi-Hall subgroup. Every evaluated condition and item lands in
    `checked`, in that order.

    Args:
        spec (SimpleGroupSpec): The simple group.
        pi (PrimeSet): The set of primes.

    Returns:
        HallVerdict: status, the fired condition or item, its witnesses and the audit trail.
    """
    ctx = make_context(spec, pi)
    notes = tuple(isomorphism_notes(spec))

    if len(ctx.pi_effective) <= 1:
        return _sylow_trivial(spec.name, pi, ctx.pi_effective).with_notes(*notes)

    if 2 in pi:
        return _out_of_scope(spec.name, pi, ctx.pi_effective).with_notes(*notes)

    trail = _gate_trail(pi, ctx.pi_effective)

    for condition in CONDITIONS:
        hit = condition(spec, ctx, trail)
        if hit is not None:
            logger.info(f"{spec} {pi}: D_pi by Condition {hit.tag}")
            verdict = HallVerdict.from_hit(spec.name, pi, HallStatus.DPI, hit, trail)
            return verdict.with_notes(*notes)

    hit = epi_minus_dpi_item(spec, pi, trail)
    if hit is not None:
        logger.info(f"{spec} {pi}: E_pi but not D_pi, item {hit.tag}")
        verdict = HallVerdict.from_hit(spec.name, pi, HallStatus.EPI_NOT_DPI, hit, trail)
        return verdict.with_notes(*notes)

    logger.info(f"{spec} {pi}: no condition and no item fires; not E_pi")

    return HallVerdict(
        group=spec.name,
        pi=pi,
        status=HallStatus.NOT_EPI,
        witnesses=witnesses(r=ctx.r, tau=ctx.tau, a=ctx.a if ctx.a is not None else "-"),
        notes=notes,
        citations=(Citation.DPI_CRITERION.value, Citation.EPI_MINUS_DPI.value),
        checked=tuple(trail),
    )


def _with_upi_reading(verdict: HallVerdict) -> HallVerdict:
    citations = tuple(dict.fromkeys(verdict.citations + (Citation.DPI_EQUALS_UPI.value,)))
    verdict = replace(verdict, citations=citations)

    if verdict.status is HallStatus.UNDETERMINED and 2 in verdict.pi:
        verdict = verdict.with_notes("D_pi = U_pi holds for 2 in pi, but D_pi is not decided")

    return verdict


def classify_upi(spec: SimpleGroupSpec, pi: PrimeSet) -> HallVerdict:
    """The U_pi reading of `classify_dpi`: D_pi and U_pi coincide, so the status carries over."""
    return _with_upi_reading(classify_dpi(spec, pi))


def classify_cyclic(p: int, pi: PrimeSet) -> HallVerdict:
    """A cyclic factor Z_p has a nilpotent pi-Hall subgroup, so it is always D_pi."""
    return _sylow_trivial(f"Z{p}", pi, pi & (p,))


def _normalize_sporadic(name: str) -> str | None:
    key = name.strip()
    for candidate in (key, SPORADIC_ALIASES.get(key.upper(), "")):
        if candidate in SPORADIC_ORDERS:
            return candidate
    for sporadic in SPORADIC_ORDERS:
        if sporadic.upper() == key.upper():
            return sporadic
    return None


def _alternating_order_spectrum(n: int) -> PrimeSet:
    if n < 5:
        raise InvalidInputError(f"Alt({n}) is not a non-abelian simple group")
    return PrimeSet(tuple(int(p) for p in primerange(2, n + 1)))


def classify_sporadic(name: str, pi: PrimeSet) -> HallVerdict:
    """Alternating and sporadic groups: the Sylow-trivial gate and the O'N {3,5} entry only.

    Anything else is Undetermined; the criteria for these groups are outside this package.
    """
    match_alt = ALTERNATING_NAME.match(name.strip())

    if match_alt is not None:
        n = int(match_alt.group(1))
        group, spectrum = f"Alt({n})", _alternating_order_spectrum(n)
    else:
        sporadic = _normalize_sporadic(name)
        if sporadic is None:
            raise InvalidInputError(f"Unknown sporadic or alternating group {name!r}")
        group = sporadic
        spectrum = prime_spectrum(FactoredInteger.parse(SPORADIC_ORDERS[sporadic]))

    pi_effective = pi & spectrum

    if len(pi_effective) <= 1:
        return _sylow_trivial(group, pi, pi_effective)
    if 2 in pi:
        return _out_of_scope(group, pi, pi_effective)

    if group == "ON" and pi_effective == PrimeSet.of(3, 5):
        return HallVerdict(
            group=group,
            pi=pi,
            status=HallStatus.EPI_NOT_DPI,
            condition_tag="I",
            witnesses=witnesses(pi_effective=pi_effective),
            citations=(Citation.EPI_MINUS_DPI.value,),
            checked=(*_gate_trail(pi, pi_effective), check_entry("ON-3-5", True)),
        )

    return HallVerdict(
        group=group,
        pi=pi,
        status=HallStatus.UNDETERMINED,
        witnesses=witnesses(pi_effective=pi_effective),
        notes=("D_pi criteria for alternating and sporadic groups are not applied",),
        citations=(Citation.EXTERNAL_CRITERIA.value,),
        checked=tuple(_gate_trail(pi, pi_effective)),
    )


def dpi_by_composition_factors(verdicts: Sequence[HallVerdict]) -> HallVerdict:
    """Combine per-factor verdicts: a group is D_pi iff every composition factor is.

    A NotEpi factor makes the group NotEpi. EpiNotDpi needs every factor to be Dpi or
    EpiNotDpi; a refuting factor next to an Undetermined one gives Undetermined, with the
    refuting factor named and a note that E_pi is unknown. The first refuting factor is named
    in the witnesses.
    """
    if not verdicts:
        raise InvalidInputError("at least one composition factor verdict is required")

    pi = verdicts[0].pi
    group = " / ".join(v.group for v in verdicts)
    indexed = list(enumerate(verdicts, start=1))

    checked = tuple(
        check_entry(f"factor-{i}", v.is_dpi, () if v.is_dpi else (v.status.value,))
        for i, v in indexed
    )

    not_epi = [(i, v) for i, v in indexed if v.status is HallStatus.NOT_EPI]
    refuting = not_epi or [(i, v) for i, v in indexed if v.status.refutes_dpi]
    undetermined = [i for i, v in indexed if not v.status.determined]

    if refuting:
        index, first = refuting[0]
        notes: tuple[str, ...] = ()

        if not_epi:
            status = HallStatus.NOT_EPI
        elif undetermined:
            status = HallStatus.UNDETERMINED
            notes = (
                f"not D_pi by factor {index}; "
                f"E_pi unknown while factor {undetermined[0]} is undetermined",
            )
        else:
            status = HallStatus.EPI_NOT_DPI

        return HallVerdict(
            group=group,
            pi=pi,
            status=status,
            condition_tag=f"{COMPOSITION_TAG}-factor-{index}",
            witnesses=witnesses(
                factor=index, factor_group=first.group, factor_status=first.status.value
            ),
            notes=notes,
            citations=(Citation.COMPOSITION.value,),
            checked=checked,
        )

    if undetermined:
        return HallVerdict(
            group=group,
            pi=pi,
            status=HallStatus.UNDETERMINED,
            witnesses=witnesses(factor=undetermined[0]),
            citations=(Citation.COMPOSITION.value,),
            checked=checked,
        )

    return HallVerdict(
        group=group,
        pi=pi,
        status=HallStatus.DPI,
        condition_tag=COMPOSITION_TAG,
        witnesses=witnesses(factors=len(verdicts)),
        citations=(Citation.COMPOSITION.value,),
        checked=checked,
    )


def gl_hall_pi_order(gl: GLSpec, pi: PrimeSet) -> FactoredInteger:
    """|GL_n^eta(q)|_pi = (q - eta)^n_tau r^[n/r] in the E_pi \\ D_pi regime.

    Raises:
        RegimeError: when PSL_n^eta(q) satisfies none of items (a)-(c) for pi.
    """
    hit = regime_item(gl, pi)

    values = {w.name: w.value for w in hit.witnesses}
    r, d, k = int(values["r"]), int(values["d"]), int(values["k"])
    tau = PrimeSet.parse(str(values["tau"]))

    if not (0 < d + k < r - 1 and gl.n // (r - 1) == d):
        raise HallPiException(f"{gl} {pi}: n = dr + k identity fails (d={d}, k={k}, r={r})")

    order = pi_part(factor(gl.q_minus_eta), tau) ** gl.n
    order = order * FactoredInteger.prime_power(r, d)

    direct = pi_part(gl_order(gl), pi)
    if order != direct:
        raise HallPiException(f"{gl} {pi}: Hall order {order} differs from |G|_pi = {direct}")

    logger.debug(f"|{gl}|_{pi} = {order} via item {hit.tag}")

    return order
