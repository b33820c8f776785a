from __future__ import annotations

from typing import *

import pytest

from hallpi.arith import (
    FactoredInteger,
    PrimeSet,
    cyclotomic_value,
    e_star,
    factor,
    is_pi_number,
    mult_order,
    mult_order_of_power,
    p_adic_valuation,
    pi_part,
    pi_prime_part,
    pow_minus_one,
    pow_minus_sign,
    pow_plus_one,
    prime_spectrum,
    r_part_pow_alt,
    r_part_pow_minus_one,
    r_part_product,
    r_part_product_alt,
)
from hallpi.utils import (
    FactorizationBoundError,
    InvalidInputError,
    UndefinedOrderError,
)


def test_factor():
    assert factor(1) == FactoredInteger()
    assert factor(1).as_dict() == {}
    assert factor(168).as_dict() == {2: 3, 3: 1, 7: 1}
    assert factor(1048575).as_dict() == {3: 1, 5: 2, 11: 1, 31: 1, 41: 1}
    assert factor(2_124_276_000).value == 2_124_276_000


def test_factor_rejects():
    with pytest.raises(InvalidInputError):
        factor(0)
    with pytest.raises(FactorizationBoundError):
        factor(2**63)
    with pytest.raises(FactorizationBoundError):
        factor(1000, bound=999)


def test_factored_integer_render():
    n = factor(2_124_276_000)
    assert n.render() == "2^5·3·5^3·7·11^3·19"
    assert FactoredInteger.parse("2^5·3·5^3·7·11^3·19") == n
    assert FactoredInteger.parse("2⁵·3") == 96
    assert FactoredInteger.parse("1") == FactoredInteger.one()

    with pytest.raises(InvalidInputError):
        FactoredInteger.parse("2^^3")
    with pytest.raises(InvalidInputError):
        FactoredInteger.parse("4^2")


def test_factored_integer_arithmetic():
    a, b = factor(12), factor(18)
    assert a * b == 216
    assert a**3 == 1728
    assert factor(6).divides(a)
    assert not factor(8).divides(a)
    assert (factor(216) / a) == 18

    with pytest.raises(InvalidInputError):
        a / factor(5)


def test_prime_set():
    pi = PrimeSet.of(7, 3, 3)
    assert pi.elements == (3, 7)
    assert repr(pi) == "{3,7}"
    assert PrimeSet.parse("{3, 5}") == PrimeSet.of(3, 5)
    assert PrimeSet.parse("") == PrimeSet()
    assert pi.in_complement(5)
    assert not pi.in_complement(3)
    assert pi.min() == 3
    assert (pi & (2, 3, 5)) == PrimeSet.of(3)
    assert (pi | (5,)) == PrimeSet.of(3, 5, 7)
    assert (pi - (3,)) == PrimeSet.of(7)

    with pytest.raises(InvalidInputError):
        PrimeSet.of(3, 4)
    with pytest.raises(InvalidInputError):
        PrimeSet.parse("3,x")
    with pytest.raises(InvalidInputError):
        PrimeSet().min()


def test_pi_part():
    n = factor(168)
    assert pi_part(n, PrimeSet.of(3, 7)) == 21
    assert pi_part(n, prime_spectrum(n)) == n
    assert pi_part(n, PrimeSet()) == 1
    assert pi_prime_part(n, PrimeSet.of(3, 7)) == 8


def test_pi_part_complement():
    for n in (168, 660, 1092, 62400, 2_124_276_000):
        f = factor(n)
        for pi in (PrimeSet.of(3), PrimeSet.of(3, 5), PrimeSet.of(2, 7, 13)):
            assert (pi_part(f, pi) * pi_prime_part(f, pi)).value == n


def test_is_pi_number():
    assert is_pi_number(factor(75), PrimeSet.of(3, 5))
    assert not is_pi_number(factor(21), PrimeSet.of(3, 5))
    assert is_pi_number(factor(1), PrimeSet())


def test_prime_spectrum():
    assert prime_spectrum(factor(168)) == PrimeSet.of(2, 3, 7)
    assert prime_spectrum(factor(1)) == PrimeSet()
    assert prime_spectrum(factor(13)) == PrimeSet.of(13)


def test_mult_order():
    assert mult_order(4, 3) == 1
    assert mult_order(2, 7) == 3
    assert mult_order(11, 3) == 2
    assert mult_order(-1, 5) == 2

    with pytest.raises(UndefinedOrderError):
        mult_order(6, 3)
    with pytest.raises(InvalidInputError):
        mult_order(3, 2)
    with pytest.raises(InvalidInputError):
        mult_order(2, 9)


def test_mult_order_divides_r_minus_one(odd_primes: list[int]):
    for r in odd_primes:
        for k in range(2, 60):
            if k % r:
                assert (r - 1) % mult_order(k, r) == 0


def test_mult_order_of_power():
    assert mult_order_of_power(2, 3, 7) == 1
    assert mult_order_of_power(3, 2, 7) == 3
    assert mult_order_of_power(2, 1, 5) == 4

    for k, a, r in ((2, 6, 11), (5, 4, 13), (10, 3, 7)):
        assert mult_order_of_power(k, a, r) == mult_order(pow(k, a, r), r)

    with pytest.raises(InvalidInputError):
        mult_order_of_power(2, 0, 5)


def test_e_star():
    assert e_star(1) == 2
    assert e_star(4) == 4
    assert e_star(6) == 3

    for e in range(1, 1001):
        match e % 4:
            case 1 | 3:
                assert e_star(e) == 2 * e
            case 0:
                assert e_star(e) == e
            case 2:
                assert e_star(e) == e // 2

    with pytest.raises(InvalidInputError):
        e_star(0)


def test_p_adic_valuation():
    assert p_adic_valuation(1048575, 5) == 2
    assert p_adic_valuation(-45, 3) == 2
    assert p_adic_valuation(7, 3) == 0
    assert p_adic_valuation(3**200 * 2, 3) == 200

    with pytest.raises(InvalidInputError):
        p_adic_valuation(0, 3)


def test_r_part_examples():
    assert r_part_pow_minus_one(2, 20, 5) == 25
    assert r_part_pow_minus_one(2, 3, 5) == 1
    assert r_part_pow_minus_one(11, 2, 3) == 3

    assert r_part_pow_alt(4, 1, 5) == 5
    assert r_part_pow_alt(2, 2, 7) == 1

    assert r_part_product(2, 5, 3) == 9
    assert r_part_product(11, 3, 3) == 3
    assert r_part_product(7, 0, 5) == 1
    assert r_part_product_alt(7, 0, 5) == 1

    with pytest.raises(UndefinedOrderError):
        r_part_pow_minus_one(6, 2, 3)


def test_r_part_identities(identity_grid: list[tuple[int, int]]):
    for k, r in identity_grid:
        product = product_alt = 0
        for m in range(1, 61):
            minus = p_adic_valuation(k**m - 1, r)
            alt = p_adic_valuation(k**m - (-1) ** m, r)
            product += minus
            product_alt += alt

            assert r_part_pow_minus_one(k, m, r).exponent(r) == minus, (k, m, r)
            assert r_part_pow_alt(k, m, r).exponent(r) == alt, (k, m, r)
            assert r_part_product(k, m, r).exponent(r) == product, (k, m, r)
            assert r_part_product_alt(k, m, r).exponent(r) == product_alt, (k, m, r)


def test_cyclotomic_values():
    assert cyclotomic_value(1, 11) == 10
    assert cyclotomic_value(3, 2) == 7
    assert cyclotomic_value(6, 2) == 3
    assert cyclotomic_value(4, 5) == 26

    assert pow_minus_one(11, 3) == 1330
    assert pow_plus_one(4, 3) == 65
    assert pow_minus_sign(4, 3, -1) == 65
    assert pow_minus_sign(4, 2, -1) == 15
    assert pow_minus_sign(11, 2, 1) == 120
