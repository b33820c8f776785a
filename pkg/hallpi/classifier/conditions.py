from __future__ import annotations

from math import gcd
from typing import *

from loguru import logger

from ..arith import PrimeSet, factor, mult_order, pi_part, prime_spectrum, r_part_pow_minus_one
from ..orders import Family, GLSpec, SimpleGroupSpec, Twist, prime_spectrum_of_group, psl_spec, weyl_order
from ..utils import RegimeError, raise_for_regime
from .misc import Citation, ConditionHit, PiContext, record_check, witnesses

CYCLIC_HALL_NOTE = "a pi-Hall subgroup of 2D_n(q) is cyclic"


def make_context(spec: SimpleGroupSpec, pi: PrimeSet) -> PiContext:
    """Restrict pi to pi(S) and record e(q, t) for every odd t in the restriction coprime to q."""
    pi_effective = pi & prime_spectrum_of_group(spec)

    orders = tuple(
        (t, mult_order(spec.q, t)) for t in pi_effective if t != 2 and t != spec.p
    )

    return PiContext(pi=pi, pi_effective=pi_effective, q=spec.q, p=spec.p, orders=orders)


def _twisted_weyl_notes(spec: SimpleGroupSpec) -> tuple[str, ...]:
    if not spec.family.twisted:
        return ()
    return (
        f"Weyl order of {spec.family.value} taken from the untwisted type {spec.family.ambient.value}",
    )


def _twisted_weyl_citations(spec: SimpleGroupSpec) -> tuple[Citation, ...]:
    return (Citation.TWISTED_WEYL,) if spec.family.twisted else ()


def _r_part_is_r(q: int, r: int) -> bool:
    return r_part_pow_minus_one(q, r - 1, r).value == r


def _gate_failures(spec: SimpleGroupSpec, ctx: PiContext) -> list[str]:
    """Why Conditions II and III are skipped outright, if they are."""
    failures = []
    if spec.p in ctx.pi:
        failures.append("characteristic-in-pi")
    if spec.family.suzuki_ree:
        failures.append("suzuki-ree")
    if ctx.r is None or ctx.a is None:
        failures.append("no-order-of-q-mod-r")
    return failures


def condition_I(
    spec: SimpleGroupSpec, ctx: PiContext, trail: list[str] | None = None
) -> ConditionHit | None:
    """p in pi, (pi & pi(S)) \\ {p} inside pi(q - 1), and no prime of pi divides |W(S)|."""
    if spec.p not in ctx.pi:
        record_check(trail, "I", False, ["p-not-in-pi"])
        return None

    tau = ctx.pi_effective - (spec.p,)
    q_minus_one = prime_spectrum(factor(spec.q - 1))
    weyl = weyl_order(spec)

    failures = []
    if not tau.issubset(q_minus_one):
        failures.append("tau-outside-q-1")
    if any(weyl.exponent(t) > 0 for t in ctx.pi):
        failures.append("pi-divides-weyl")

    if not record_check(trail, "I", not failures, failures):
        return None

    return ConditionHit(
        tag="I",
        witnesses=witnesses(p=spec.p, tau=tau, q_minus_1=spec.q - 1, weyl_order=weyl),
        notes=_twisted_weyl_notes(spec),
        citations=(Citation.DPI_CRITERION, *_twisted_weyl_citations(spec)),
    )


def _condition_II_items(
    spec: SimpleGroupSpec, ctx: PiContext, t: int, b: int
) -> Iterator[tuple[str, bool]]:
    """Yield (item, holds) for items (a)-(h) of Condition II, for a fixed t with b = e(q,t) != a."""
    family, n, q = spec.family, spec.n, spec.q
    r, a, tau = ctx.r, ctx.a, ctx.tau
    assert r is not None and a is not None

    def every_s(predicate: Callable[[int], bool]) -> bool:
        return all(predicate(s) for s in tau)

    equal_brackets = n // (r - 1) == n // r
    shifted_brackets = n // (r - 1) == n // r + 1 and n % r == r - 1

    linear = family is Family.A
    unitary = family is Family.TWISTED_A

    if linear and a == r - 1 and b == r and _r_part_is_r(q, r):
        bounded = every_s(lambda s: ctx.e(s) == b and n < b * s)
        yield "II(a)", equal_brackets and bounded
        yield "II(b)", shifted_brackets and bounded

    if unitary and b == 2 * r and _r_part_is_r(q, r):
        uniform = every_s(lambda s: ctx.e(s) == b)
        if r % 4 == 1 and a == r - 1:
            yield "II(c)", equal_brackets and uniform
        if r % 4 == 3 and 2 * a == r - 1:
            yield "II(d)", equal_brackets and uniform
        if r % 4 == 1 and a == r - 1:
            yield "II(e)", shifted_brackets and uniform
        if r % 4 == 3 and 2 * a == r - 1:
            yield "II(f)", shifted_brackets and uniform

    if family is Family.TWISTED_D:
        either = every_s(lambda s: ctx.e(s) in (a, b))
        yield "II(g)", a % 2 == 1 and n == b == 2 * a and either
        yield "II(h)", b % 2 == 1 and n == a == 2 * b and either


def condition_II(
    spec: SimpleGroupSpec, ctx: PiContext, trail: list[str] | None = None
) -> ConditionHit | None:
    """Some t in tau has b = e(q,t) != a = e(q,r), and one of items (a)-(h) holds.

    Every t is tried, so the trail lists each item evaluated as `II(x)@t=..`.
    """
    gate = _gate_failures(spec, ctx)
    if gate:
        record_check(trail, "II", False, gate)
        return None

    a = ctx.a
    assert a is not None
    hits: list[tuple[str, int, int]] = []

    for t in ctx.tau:
        b = ctx.e(t)
        if b is None or b == a:
            record_check(trail, f"II@t={t}", False, ["b-equals-a"])
            continue

        evaluated = False
        for item, holds in _condition_II_items(spec, ctx, t, b):
            logger.trace(f"{spec} Condition {item} with t={t}: {holds}")
            evaluated = True
            if record_check(trail, f"{item}@t={t}", holds):
                hits.append((item, t, b))

        if not evaluated:
            record_check(trail, f"II@t={t}", False, ["no-item-applies"])

    if not hits:
        return None

    item, t, b = min(hits)

    notes: tuple[str, ...] = ()
    citations: tuple[Citation, ...] = (Citation.DPI_CRITERION,)
    if item in ("II(g)", "II(h)"):
        notes = (CYCLIC_HALL_NOTE,)
    elif item in ("II(c)", "II(d)", "II(e)", "II(f)"):
        notes = ("unitary items carry no n < bs bound",)
        citations += (Citation.LITERAL_UNITARY_ITEMS,)

    return ConditionHit(
        tag=item,
        witnesses=witnesses(
            r=ctx.r,
            tau=ctx.tau,
            a=a,
            t=t,
            b=b,
            n=spec.n,
            n_over_r_minus_1=spec.n // (ctx.r - 1),
            n_over_r=spec.n // ctx.r,
        ),
        notes=notes,
        citations=citations,
    )


def _excluded(tau: PrimeSet, *primes: int) -> bool:
    return all(t not in tau for t in primes)


def _condition_III_items(
    spec: SimpleGroupSpec, ctx: PiContext, c: int
) -> Iterator[tuple[str, bool]]:
    """Yield (item, holds) for the items (a)-(o) of Condition III that apply to the family and c."""
    family, n, tau = spec.family, spec.n, ctx.tau
    r = ctx.r
    small_c = c in (1, 2)

    def every_t(predicate: Callable[[int], bool]) -> bool:
        return all(predicate(t) for t in tau)

    match family:
        case Family.A:
            yield "III(a)", every_t(lambda t: n < c * t)
        case Family.TWISTED_A if c % 4 == 0:
            yield "III(b)", every_t(lambda t: n < c * t)
        case Family.TWISTED_A if c % 4 == 2:
            yield "III(c)", every_t(lambda t: 2 * n < c * t)
        case Family.TWISTED_A:
            yield "III(d)", every_t(lambda t: n < 2 * c * t)
        case Family.B | Family.C | Family.TWISTED_D if c % 2 == 0:
            yield "III(e)", every_t(lambda t: 2 * n < c * t)
        case Family.B | Family.C | Family.D if c % 2 == 1:
            yield "III(f)", every_t(lambda t: n < c * t)
        case Family.D:
            yield "III(g)", every_t(lambda t: 2 * n <= c * t)
        case Family.TWISTED_D:
            yield "III(h)", every_t(lambda t: n <= c * t)
        case Family.TRIALITY_D4:
            yield "III(i)", True
        case Family.E6:
            yield "III(j)", not (r == 3 and c == 1) or _excluded(tau, 5, 13)
        case Family.TWISTED_E6:
            yield "III(k)", not (r == 3 and c == 2) or _excluded(tau, 5, 13)
        case Family.E7:
            blocked = small_c and (
                (r == 3 and not _excluded(tau, 5, 7, 13)) or (r == 5 and not _excluded(tau, 7))
            )
            yield "III(l)", not blocked
        case Family.E8:
            blocked = small_c and (
                (r == 3 and not _excluded(tau, 5, 7, 13)) or (r == 5 and not _excluded(tau, 7, 31))
            )
            yield "III(m)", not blocked
        case Family.G2:
            yield "III(n)", True
        case Family.F4:
            yield "III(o)", not (r == 3 and small_c) or _excluded(tau, 13)


def condition_III(
    spec: SimpleGroupSpec, ctx: PiContext, trail: list[str] | None = None
) -> ConditionHit | None:
    """e(q,t) = c = e(q,r) for every t in tau, and one of items (a)-(o) holds."""
    gate = _gate_failures(spec, ctx)
    if gate:
        record_check(trail, "III", False, gate)
        return None

    c = ctx.a
    assert c is not None
    if any(ctx.e(t) != c for t in ctx.tau):
        record_check(trail, "III", False, ["nonuniform-orders"])
        return None

    item, evaluated = None, False
    for candidate, holds in _condition_III_items(spec, ctx, c):
        evaluated = True
        if record_check(trail, candidate, holds):
            item = candidate
            break

    if not evaluated:
        record_check(trail, "III", False, ["no-item-applies"])
    if item is None:
        return None

    return ConditionHit(
        tag=item,
        witnesses=witnesses(r=ctx.r, tau=ctx.tau, c=c, n=spec.n),
        citations=(Citation.DPI_CRITERION,),
    )


def suzuki_ree_torus_sets(spec: SimpleGroupSpec) -> list[tuple[str, PrimeSet]]:
    """The cyclotomic prime sets listed for 2B2, 2G2 and 2F4 with q = p^(2k+1)."""
    q, p = spec.q, spec.p
    k = (spec.m - 1) // 2
    root = p ** (k + 1)

    def spectrum(n: int, drop_two: bool = False) -> PrimeSet:
        primes = prime_spectrum(factor(n))
        return primes - (2,) if drop_two else primes

    match spec.family:
        case Family.SUZUKI:
            return [
                ("q-1", spectrum(q - 1)),
                ("q+r+1", spectrum(q + root + 1)),
                ("q-r+1", spectrum(q - root + 1)),
            ]
        case Family.REE_G2:
            return [
                ("q-1", spectrum(q - 1, drop_two=True)),
                ("q+r+1", spectrum(q + root + 1, drop_two=True)),
                ("q-r+1", spectrum(q - root + 1, drop_two=True)),
            ]
        case Family.REE_F4:
            cube_root = 2 ** (3 * k + 2)
            return [
                ("q^2+1", spectrum(q * q + 1)),
                ("q^2-1", spectrum(q * q - 1)),
                ("q+r+1", spectrum(q + root + 1)),
                ("q-r+1", spectrum(q - root + 1)),
                ("q^2+s-r-1", spectrum(q * q + cube_root - root - 1)),
                ("q^2-s+r-1", spectrum(q * q - cube_root + root - 1)),
                ("q^2+s+q+r+1", spectrum(q * q + cube_root + q + root + 1)),
                ("q^2-s+q-r+1", spectrum(q * q - cube_root + q - root + 1)),
            ]

    return []


def condition_IV(
    spec: SimpleGroupSpec, ctx: PiContext, trail: list[str] | None = None
) -> ConditionHit | None:
    """pi & pi(S) lies inside one of the listed torus prime sets of a Suzuki or Ree group."""
    items = {Family.SUZUKI: "IV(a)", Family.REE_G2: "IV(b)", Family.REE_F4: "IV(c)"}
    if spec.family not in items:
        record_check(trail, "IV", False, ["not-suzuki-ree"])
        return None

    for label, primes in suzuki_ree_torus_sets(spec):
        inside = ctx.pi_effective.issubset(primes)
        if record_check(trail, f"{items[spec.family]}[{label}]", inside):
            return ConditionHit(
                tag=items[spec.family],
                witnesses=witnesses(set=label, primes=primes, pi_effective=ctx.pi_effective),
                citations=(Citation.DPI_CRITERION,),
            )

    return None


def nn_bounds(gl: GLSpec, pi: PrimeSet) -> tuple[bool, tuple]:
    """gcd(n, q - eta)_pi = 1 and r <= n <= r(r - 2), with r = min(pi & pi(PSL_n^eta(q)))."""
    pi_effective = pi & prime_spectrum_of_group(psl_spec(gl))
    if not pi_effective:
        return False, witnesses(pi_effective=pi_effective)

    r, n = pi_effective.min(), gl.n
    g = gcd(n, gl.q_minus_eta)
    gcd_pi = pi_part(factor(g), pi).value

    holds = gcd_pi == 1 and r <= n <= r * (r - 2)

    return holds, witnesses(r=r, n=n, gcd_pi=gcd_pi, upper=r * (r - 2))


LINEAR_UNITARY_TAG = "II-B(a-c)"


def _linear_unitary_item(
    spec: SimpleGroupSpec, ctx: PiContext
) -> tuple[str, list[str], tuple]:
    """Check items (a)-(c) for PSL_n^eta(q); returns (item, failed sub-conditions, witnesses).

    The item holds iff no sub-condition failed. Before r is known the item is `II-B(a-c)`.
    """
    n, q = spec.n, spec.q
    failures: list[str] = []

    if 2 in ctx.pi:
        failures.append("2-in-pi")
    if spec.p in ctx.pi:
        failures.append("characteristic-in-pi")
    if len(ctx.pi_effective) < 2:
        failures.append("pi-spectrum-size")
    if failures:
        return LINEAR_UNITARY_TAG, failures, witnesses(pi_effective=ctx.pi_effective)

    r, tau, e = ctx.r, ctx.tau, ctx.a
    assert r is not None and e is not None

    if spec.family is Family.A:
        item, target_e, tau_order = "II-B(a)", r - 1, 1
    elif r % 4 == 1:
        item, target_e, tau_order = "II-B(b)", r - 1, 2
    else:
        item, target_e, tau_order = "II-B(c)", (r - 1) // 2, 2

    r_part = r_part_pow_minus_one(q, r - 1, r).value

    if e != target_e:
        failures.append("order-of-q-mod-r")
    if r_part != r:
        failures.append("r-part")
    if n // (r - 1) != n // r:
        failures.append("bracket-equality")
    if any(ctx.e(t) != tau_order for t in tau):
        failures.append("tau-orders")
    if any(not n < t for t in tau):
        failures.append("n-below-tau")

    d = n // r
    return (
        item,
        failures,
        witnesses(
            r=r,
            tau=tau,
            e_q_r=e,
            r_part=r_part,
            n=n,
            n_over_r_minus_1=n // (r - 1),
            n_over_r=d,
            d=d,
            k=n - d * r,
        ),
    )


def regime_item(gl: GLSpec, pi: PrimeSet) -> ConditionHit:
    """The E_pi \\ D_pi item (a)-(c) that PSL_n^eta(q) satisfies for pi.

    Raises:
        RegimeError: listing every failed sub-condition when no item applies.
    """
    spec = psl_spec(gl)
    if spec.family is Family.A and gl.eta is Twist.MINUS:
        raise RegimeError(["unitary-rank"], f"{gl}: PSU_2 is treated as PSL_2")

    ctx = make_context(spec, pi)
    item, failures, found = _linear_unitary_item(spec, ctx)

    if not failures:
        nn_holds, nn_witnesses = nn_bounds(gl, pi)
        if not nn_holds:
            failures.append("nn-bounds")
        found = found + nn_witnesses

    raise_for_regime(failures)

    return ConditionHit(
        tag=item,
        witnesses=found,
        citations=(Citation.EPI_MINUS_DPI, Citation.NN_BOUNDS),
    )


def _exceptional_items(
    spec: SimpleGroupSpec, ctx: PiContext
) -> Iterator[tuple[str, list[str]]]:
    """Yield (item, failed sub-conditions) for the items (d)-(i) that apply to the family."""
    family, q, pe = spec.family, spec.q, ctx.pi_effective

    minus = prime_spectrum(factor(q - 1))
    plus = prime_spectrum(factor(q + 1))

    def has(*primes: int) -> bool:
        return all(t in pe for t in primes)

    def lacks(*primes: int) -> bool:
        return all(t not in pe for t in primes)

    def failed(*checks: tuple[str, bool]) -> list[str]:
        return [name for name, ok in checks if not ok]

    in_one = ("outside-q-1-and-q+1", pe.issubset(minus) or pe.issubset(plus))
    has_3_13 = ("lacks-3-13", has(3, 13))

    match family:
        case Family.E6:
            below = ("outside-q-1", pe.issubset(minus))
            yield "II-B(d)", failed(below, has_3_13, ("has-5", lacks(5)))
        case Family.TWISTED_E6:
            above = ("outside-q+1", pe.issubset(plus))
            yield "II-B(e)", failed(above, has_3_13, ("has-5", lacks(5)))
        case Family.E7:
            yield "II-B(f)", failed(in_one, has_3_13, ("has-5-or-7", lacks(5, 7)))
        case Family.E8:
            yield "II-B(g)", failed(in_one, has_3_13, ("has-5-or-7", lacks(5, 7)))
            yield "II-B(h)", failed(in_one, ("lacks-5-31", has(5, 31)), ("has-3-or-7", lacks(3, 7)))
        case Family.F4:
            yield "II-B(i)", failed(in_one, has_3_13)


def _exceptional_item(
    spec: SimpleGroupSpec, ctx: PiContext, trail: list[str] | None = None
) -> ConditionHit | None:
    q = spec.q
    evaluated = False

    for item, failures in _exceptional_items(spec, ctx):
        evaluated = True
        if record_check(trail, item, not failures, failures):
            return ConditionHit(
                tag=item,
                witnesses=witnesses(pi_effective=ctx.pi_effective, q_minus_1=q - 1, q_plus_1=q + 1),
                citations=(Citation.EPI_MINUS_DPI,),
            )

    if not evaluated:
        record_check(trail, "II-B", False, ["no-item-applies"])

    return None


def _characteristic_item(
    spec: SimpleGroupSpec, ctx: PiContext, trail: list[str] | None = None
) -> ConditionHit | None:
    """Item II(A): p in pi divides |W(S)|, and every other prime of pi & pi(S) divides q - 1 but not |W(S)|."""
    p, q = spec.p, spec.q
    if p not in ctx.pi:
        record_check(trail, "II-A", False, ["p-not-in-pi"])
        return None

    weyl = weyl_order(spec)
    rest = ctx.pi_effective - (p,)

    failures = []
    if weyl.exponent(p) == 0:
        failures.append("p-not-in-weyl")
    if any((q - 1) % t != 0 for t in rest):
        failures.append("rest-outside-q-1")
    if any(weyl.exponent(t) > 0 for t in rest):
        failures.append("rest-divides-weyl")

    if not record_check(trail, "II-A", not failures, failures):
        return None

    return ConditionHit(
        tag="II-A",
        witnesses=witnesses(p=p, rest=rest, q_minus_1=q - 1, weyl_order=weyl),
        notes=_twisted_weyl_notes(spec),
        citations=(Citation.EPI_MINUS_DPI, *_twisted_weyl_citations(spec)),
    )


def epi_minus_dpi_item(
    spec: SimpleGroupSpec, pi: PrimeSet, trail: list[str] | None = None
) -> ConditionHit | None:
    """The first E_pi \\ D_pi item for a group of Lie type, or None.

    Items (a)-(c) are filtered by the nn bounds before their arithmetic is checked. When a
    trail is given, each item evaluated is appended to it with its failed sub-conditions.
    """
    if 2 in pi:
        record_check(trail, "E-D", False, ["2-in-pi"])
        return None

    ctx = make_context(spec, pi)

    hit = _characteristic_item(spec, ctx, trail)
    if hit is not None:
        return hit

    if spec.p in pi:
        record_check(trail, "II-B", False, ["characteristic-in-pi"])
        return None

    if spec.family in (Family.A, Family.TWISTED_A) and ctx.r is not None:
        gl = GLSpec(n=spec.n, eta=spec.eta, p=spec.p, m=spec.m)

        nn_holds, _ = nn_bounds(gl, pi)
        if not record_check(trail, "nn-bounds", nn_holds):
            logger.debug(f"{spec} {pi}: nn bounds exclude items (a)-(c)")
            return None

        item, failures, found = _linear_unitary_item(spec, ctx)
        if not record_check(trail, item, not failures, failures):
            return None

        return ConditionHit(
            tag=item,
            witnesses=found,
            citations=(Citation.EPI_MINUS_DPI, Citation.NN_BOUNDS),
        )

    return _exceptional_item(spec, ctx, trail)
