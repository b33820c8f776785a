from __future__ import annotations

from functools import reduce
from math import gcd
from typing import *

from cachetools import LRUCache, cached
from loguru import logger
from sympy import primerange

from ..arith import (
    FactoredInteger,
    PrimeSet,
    factor,
    factor_cyclotomic,
    pow_minus_one,
    pow_minus_sign,
    pow_plus_one,
    prime_spectrum,
    r_part_product,
    r_part_product_alt,
)
from ..utils import InvalidInputError, NonSimpleGroupError
from .misc import Family, GLSpec, SimpleGroupSpec, Twist

EXCEPTIONAL_WEYL_ORDERS: dict[Family, int] = {
    Family.G2: 12,
    Family.F4: 1152,
    Family.E6: 51840,
    Family.E7: 2903040,
    Family.E8: 696729600,
}

# Degrees d with a factor (q^d - 1) in the order of the untwisted exceptional groups.
EXCEPTIONAL_DEGREES: dict[Family, tuple[int, ...]] = {
    Family.G2: (2, 6),
    Family.F4: (2, 6, 8, 12),
    Family.E6: (2, 5, 6, 8, 9, 12),
    Family.E7: (2, 6, 8, 10, 12, 14, 18),
    Family.E8: (2, 8, 12, 14, 18, 20, 24, 30),
}

EXCEPTIONAL_ROOT_COUNTS: dict[Family, int] = {
    Family.G2: 6,
    Family.F4: 24,
    Family.E6: 36,
    Family.E7: 63,
    Family.E8: 120,
}


def _product(factors: Iterable[FactoredInteger]) -> FactoredInteger:
    return reduce(lambda acc, f: acc * f, factors, FactoredInteger.one())


def _p_power(p: int, e: int) -> FactoredInteger:
    return FactoredInteger.prime_power(p, e)


@cached(cache=LRUCache(maxsize=1024))
def gl_order(gl: GLSpec) -> FactoredInteger:
    """|GL_n^eta(q)| = q^{n(n-1)/2} prod_{i=1..n} (q^i - eta^i), built in factored form."""
    q, n = gl.q, gl.n

    order = _p_power(gl.p, gl.m * n * (n - 1) // 2)
    order *= _product(pow_minus_sign(q, i, gl.sign) for i in range(1, n + 1))

    logger.debug(f"|{gl}| = {order}")

    return order


def sl_order(gl: GLSpec) -> FactoredInteger:
    return gl_order(gl) / factor(gl.q_minus_eta)


def psl_order(gl: GLSpec) -> FactoredInteger:
    return sl_order(gl) / factor(gcd(gl.n, gl.q_minus_eta))


def psl_spec(gl: GLSpec) -> SimpleGroupSpec:
    """PSL_n^eta(q) as A_{n-1}(q) or 2A_{n-1}(q); PSU_2(q) is returned as A_1(q)."""
    if gl.n < 2:
        raise NonSimpleGroupError(f"PSL_1 is trivial ({gl})")

    if gl.eta is Twist.PLUS or gl.n == 2:
        return SimpleGroupSpec(Family.A, gl.n - 1, gl.p, gl.m)
    return SimpleGroupSpec(Family.TWISTED_A, gl.n - 1, gl.p, gl.m)


def _classical_order(spec: SimpleGroupSpec) -> FactoredInteger:
    family, l, q, p, m = spec.family, spec.rank, spec.q, spec.p, spec.m

    match family:
        case Family.A | Family.TWISTED_A:
            sign = 1 if family is Family.A else -1
            order = _p_power(p, m * l * (l + 1) // 2)
            order *= _product(pow_minus_sign(q, i, sign) for i in range(2, l + 2))
        case Family.B | Family.C:
            order = _p_power(p, m * l * l)
            order *= _product(pow_minus_one(q, 2 * i) for i in range(1, l + 1))
        case Family.D | Family.TWISTED_D:
            order = _p_power(p, m * l * (l - 1))
            order *= pow_minus_one(q, l) if family is Family.D else pow_plus_one(q, l)
            order *= _product(pow_minus_one(q, 2 * i) for i in range(1, l))
        case _:
            raise InvalidInputError(f"{family} is not a classical family")

    return order


def _exceptional_order(spec: SimpleGroupSpec) -> FactoredInteger:
    family, q, p, m = spec.family, spec.q, spec.p, spec.m

    match family:
        case Family.G2 | Family.F4 | Family.E6 | Family.E7 | Family.E8:
            order = _p_power(p, m * EXCEPTIONAL_ROOT_COUNTS[family])
            order *= _product(pow_minus_one(q, d) for d in EXCEPTIONAL_DEGREES[family])
        case Family.TWISTED_E6:
            order = _p_power(p, m * 36)
            order *= _product(
                pow_minus_sign(q, d, -1) if d in (5, 9) else pow_minus_one(q, d)
                for d in EXCEPTIONAL_DEGREES[Family.E6]
            )
        case Family.TRIALITY_D4:
            # q^8 + q^4 + 1 = Phi_3 Phi_6 Phi_12
            order = _p_power(p, m * 12)
            order *= _product(factor_cyclotomic(d, q) for d in (3, 6, 12))
            order *= pow_minus_one(q, 6) * pow_minus_one(q, 2)
        case Family.SUZUKI:
            order = _p_power(p, m * 2) * pow_plus_one(q, 2) * factor(q - 1)
        case Family.REE_G2:
            order = _p_power(p, m * 3) * pow_plus_one(q, 3) * factor(q - 1)
        case Family.REE_F4:
            order = _p_power(p, m * 12) * pow_plus_one(q, 6) * pow_minus_one(q, 4)
            order *= pow_plus_one(q, 3) * factor(q - 1)
        case _:
            raise InvalidInputError(f"{family} is not an exceptional family")

    return order


@cached(cache=LRUCache(maxsize=1024))
def simple_order(spec: SimpleGroupSpec) -> FactoredInteger:
    """The order of the simple group named by `spec`.

    The order of the adjoint-type group divided by |S^/S| (see `outdiag_order`).
    """
    if spec.family.classical:
        order = _classical_order(spec)
    else:
        order = _exceptional_order(spec)

    order = order / factor(outdiag_order(spec))

    logger.debug(f"|{spec}| = {order}")

    return order


def _factorial_factored(n: int) -> FactoredInteger:
    """n! in factored form by Legendre's formula."""
    factors = []
    for p in primerange(2, n + 1):
        e, power = 0, p
        while power <= n:
            e += n // power
            power *= p
        factors.append((int(p), e))
    return FactoredInteger(tuple(factors))


def weyl_order(spec: SimpleGroupSpec | Family, rank: int | None = None) -> FactoredInteger:
    """|W(S)|; twisted families use the Weyl group of their ambient untwisted type."""
    if isinstance(spec, SimpleGroupSpec):
        family, rank = spec.family, spec.rank
    else:
        family = spec
        rank = rank if rank is not None else family.fixed_rank

    if rank is None:
        raise InvalidInputError(f"{family.value} needs an explicit rank")

    ambient = family.ambient

    if ambient in EXCEPTIONAL_WEYL_ORDERS:
        return factor(EXCEPTIONAL_WEYL_ORDERS[ambient])

    match ambient:
        case Family.A:
            return _factorial_factored(rank + 1)
        case Family.B | Family.C:
            return _p_power(2, rank) * _factorial_factored(rank)
        case Family.D:
            return _p_power(2, rank - 1) * _factorial_factored(rank)
        case _:
            raise InvalidInputError(f"No Weyl group for {family}")


def outdiag_order(spec: SimpleGroupSpec) -> int:
    """|S^/S|, the order of the group of diagonal automorphisms modulo inner ones."""
    q, l = spec.q, spec.rank

    match spec.family:
        case Family.A:
            return gcd(l + 1, q - 1)
        case Family.TWISTED_A:
            return gcd(l + 1, q + 1)
        case Family.B | Family.C | Family.E7:
            return gcd(2, q - 1)
        case Family.D:
            return gcd(4, (pow(q, l, 4) - 1) % 4)
        case Family.TWISTED_D:
            return gcd(4, (pow(q, l, 4) + 1) % 4)
        case Family.E6:
            return gcd(3, q - 1)
        case Family.TWISTED_E6:
            return gcd(3, q + 1)
        case _:
            return 1


def graph_quotient_order(spec: SimpleGroupSpec) -> int:
    """|Aut(S) / S^Phi_S|, the graph-automorphism contribution to Out(S)."""
    family, l = spec.family, spec.rank
    odd_power_of = lambda p: spec.p == p and spec.m % 2 == 1

    if family is Family.A and l >= 2:
        return 2
    if family is Family.D:
        return 6 if l == 4 else 2
    if family is Family.E6:
        return 2
    if family in (Family.B, Family.C) and l == 2 and odd_power_of(2):
        return 2
    if family is Family.F4 and odd_power_of(2):
        return 2
    if family is Family.G2 and odd_power_of(3):
        return 2
    return 1


def field_aut_order(spec: SimpleGroupSpec) -> int:
    """|Phi_S|: m for untwisted and Suzuki-Ree groups, 2m for 2A/2D/2E6, 3m for 3D4."""
    match spec.family:
        case Family.TWISTED_A | Family.TWISTED_D | Family.TWISTED_E6:
            return 2 * spec.m
        case Family.TRIALITY_D4:
            return 3 * spec.m
        case _:
            return spec.m


def out_order(spec: SimpleGroupSpec) -> int:
    return outdiag_order(spec) * field_aut_order(spec) * graph_quotient_order(spec)


def prime_spectrum_of_group(spec: SimpleGroupSpec) -> PrimeSet:
    return prime_spectrum(simple_order(spec))


def isomorphism_notes(spec: SimpleGroupSpec) -> list[str]:
    """Known exceptional isomorphisms involving `spec`, as human-readable notes."""
    notes: list[str] = []
    family, l, q = spec.family, spec.rank, spec.q

    match (family, l, q):
        case (Family.A, 1, 4) | (Family.A, 1, 5):
            notes.append("A1(4) = A1(5) = Alt(5)")
        case (Family.A, 1, 7) | (Family.A, 2, 2):
            notes.append("A1(7) = A2(2)")
        case (Family.A, 1, 9):
            notes.append("A1(9) = Alt(6)")
        case (Family.A, 3, 2):
            notes.append("A3(2) = Alt(8)")
        case (Family.B, 2, 3) | (Family.C, 2, 3) | (Family.TWISTED_A, 3, 2):
            notes.append("B2(3) = 2A3(2)")

    if family in (Family.B, Family.C) and spec.p == 2:
        notes.append(f"B{l}({q}) = C{l}({q}) in characteristic 2")
    if family in (Family.B, Family.C) and l == 2 and spec.p != 2:
        notes.append(f"B2({q}) = C2({q})")
    if family is Family.A and l == 3:
        notes.append(f"A3({q}) = D3({q})")
    if family is Family.TWISTED_A and l == 3:
        notes.append(f"2A3({q}) = 2D3({q})")

    return notes


def gl_r_part_closed_form(gl: GLSpec, r: int) -> FactoredInteger:
    """|GL_n^eta(q)|_r for an odd prime r not dividing q, via the r-part product identities."""
    if gl.q % r == 0:
        raise InvalidInputError(f"{r} divides q = {gl.q}")

    if gl.eta is Twist.PLUS:
        return r_part_product(gl.q, gl.n, r)
    return r_part_product_alt(gl.q, gl.n, r)
