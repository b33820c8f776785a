from __future__ import annotations

from math import gcd
from typing import *

from cachetools import LRUCache, cached
from loguru import logger
from sympy import divisors, factorint, isprime, multiplicity, n_order

from ..utils import (
    FACTOR_BOUND,
    FactorizationBoundError,
    InvalidInputError,
    UndefinedOrderError,
)
from .misc import FactoredInteger, PrimeSet

PrimeSetLike = PrimeSet | Iterable[int]


def _as_prime_set(pi: PrimeSetLike) -> PrimeSet:
    return pi if isinstance(pi, PrimeSet) else PrimeSet(tuple(pi))


def _check_odd_prime(r: int) -> None:
    if r == 2 or not isprime(r):
        raise InvalidInputError(f"{r} is not an odd prime")


@cached(cache=LRUCache(maxsize=4096))
def factor(n: int, bound: int = FACTOR_BOUND) -> FactoredInteger:
    """Factor a positive integer into a FactoredInteger.

    Args:
        n (int): The integer to factor; must satisfy 1 <= n <= bound.
        bound (int, optional): Magnitude bound. Defaults to FACTOR_BOUND.
    """
    if n < 1:
        raise InvalidInputError(f"Cannot factor non-positive integer {n}")
    if n > bound:
        raise FactorizationBoundError(f"{n} exceeds the factorization bound {bound}")

    return FactoredInteger.from_mapping(factorint(n))


def pi_part(n: FactoredInteger, pi: PrimeSetLike) -> FactoredInteger:
    pi = _as_prime_set(pi)
    return FactoredInteger(tuple((p, e) for p, e in n.factors if p in pi))


def pi_prime_part(n: FactoredInteger, pi: PrimeSetLike) -> FactoredInteger:
    pi = _as_prime_set(pi)
    return FactoredInteger(tuple((p, e) for p, e in n.factors if pi.in_complement(p)))


def is_pi_number(n: FactoredInteger, pi: PrimeSetLike) -> bool:
    pi = _as_prime_set(pi)
    return all(p in pi for p in n.primes())


def prime_spectrum(n: FactoredInteger) -> PrimeSet:
    return PrimeSet(n.primes())


def p_adic_valuation(n: int, r: int) -> int:
    """Exponent of the prime r in the nonzero integer n; works for arbitrarily large n."""
    if n == 0:
        raise InvalidInputError("valuation of 0 is undefined")
    if not isprime(r):
        raise InvalidInputError(f"{r} is not a prime")

    return int(multiplicity(r, abs(n)))


def mult_order(k: int, r: int) -> int:
    """e(k, r): the multiplicative order of k modulo the odd prime r."""
    _check_odd_prime(r)

    if k % r == 0:
        raise UndefinedOrderError(f"{r} divides {k}; e({k},{r}) is undefined")

    return int(n_order(k % r, r))


def mult_order_of_power(k: int, a: int, r: int) -> int:
    """e(k^a, r) = e(k, r) / gcd(e(k, r), a)."""
    if a < 1:
        raise InvalidInputError(f"exponent must be positive, got {a}")

    e = mult_order(k, r)
    return e // gcd(e, a)


def e_star(e: int) -> int:
    if e < 1:
        raise InvalidInputError(f"e* is defined for positive integers, got {e}")

    if e % 2 == 1:
        return 2 * e
    elif e % 4 == 0:
        return e
    else:
        return e // 2


def _valuation_of_shifted_power(k: int, e: int, shift: int, r: int) -> int:
    """v_r(k^e - shift), computed with modular powers so k^e is never formed."""
    if abs(k) <= 1:
        raise InvalidInputError(f"r-parts of {k}^m +/- 1 are undefined for |k| <= 1")

    j = 0
    modulus = r

    while (pow(k, e, modulus) - shift) % modulus == 0:
        j += 1
        modulus *= r

    return j


def _factorial_valuation(n: int, r: int) -> int:
    total, power = 0, r
    while power <= n:
        total += n // power
        power *= r
    return total


def _r_part(r: int, v: int) -> FactoredInteger:
    return FactoredInteger.prime_power(r, v)


def r_part_pow_minus_one(k: int, m: int, r: int) -> FactoredInteger:
    """(k^m - 1)_r by the closed form: (k^e - 1)_r (m/e)_r when e = e(k,r) divides m, else 1."""
    if m < 1:
        raise InvalidInputError(f"m must be positive, got {m}")

    e = mult_order(k, r)
    if m % e != 0:
        return FactoredInteger.one()

    v = _valuation_of_shifted_power(k, e, 1, r) + _valuation(m // e, r)
    return _r_part(r, v)


def r_part_pow_alt(k: int, m: int, r: int) -> FactoredInteger:
    """(k^m - (-1)^m)_r by the closed form keyed on e* = e_star(e(k,r))."""
    if m < 1:
        raise InvalidInputError(f"m must be positive, got {m}")

    es = e_star(mult_order(k, r))
    if m % es != 0:
        return FactoredInteger.one()

    v = _valuation_of_shifted_power(k, es, (-1) ** es, r) + _valuation(m // es, r)
    return _r_part(r, v)


def r_part_product(k: int, m: int, r: int) -> FactoredInteger:
    """prod_{i=1..m} (k^i - 1)_r = (k^e - 1)_r^[m/e] ([m/e]!)_r."""
    if m < 0:
        raise InvalidInputError(f"m must be non-negative, got {m}")

    e = mult_order(k, r)
    blocks = m // e

    v = _valuation_of_shifted_power(k, e, 1, r) * blocks
    v += _factorial_valuation(blocks, r)
    return _r_part(r, v)


def r_part_product_alt(k: int, m: int, r: int) -> FactoredInteger:
    """prod_{i=1..m} (k^i - (-1)^i)_r = (k^e* - (-1)^e*)_r^[m/e*] ([m/e*]!)_r."""
    if m < 0:
        raise InvalidInputError(f"m must be non-negative, got {m}")

    es = e_star(mult_order(k, r))
    blocks = m // es

    v = _valuation_of_shifted_power(k, es, (-1) ** es, r) * blocks
    v += _factorial_valuation(blocks, r)
    return _r_part(r, v)


def _valuation(n: int, r: int) -> int:
    return p_adic_valuation(n, r) if n else 0


@cached(cache=LRUCache(maxsize=4096))
def cyclotomic_value(d: int, q: int) -> int:
    """Phi_d(q), by exact division of q^d - 1 by Phi_e(q) over the proper divisors e of d."""
    if d < 1:
        raise InvalidInputError(f"cyclotomic index must be positive, got {d}")

    value = q**d - 1
    for e in divisors(d)[:-1]:
        value //= cyclotomic_value(e, q)

    logger.trace(f"Phi_{d}({q}) = {value}")

    return value


def factor_cyclotomic(d: int, q: int) -> FactoredInteger:
    return factor(cyclotomic_value(d, q))


def pow_minus_one(q: int, i: int) -> FactoredInteger:
    """q^i - 1 as the product of Phi_d(q) over d | i."""
    result = FactoredInteger.one()
    for d in divisors(i):
        result = result * factor_cyclotomic(d, q)
    return result


def pow_plus_one(q: int, i: int) -> FactoredInteger:
    """q^i + 1 as the product of Phi_d(q) over d | 2i with d not dividing i."""
    result = FactoredInteger.one()
    for d in divisors(2 * i):
        if i % d != 0:
            result = result * factor_cyclotomic(d, q)
    return result


def pow_minus_sign(q: int, i: int, sign: int) -> FactoredInteger:
    """q^i - sign^i, the factor of |GL_n^eta(q)| for sign = +1 or -1."""
    if sign == 1 or i % 2 == 0:
        return pow_minus_one(q, i)
    return pow_plus_one(q, i)
