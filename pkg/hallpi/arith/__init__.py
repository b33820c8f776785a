from .arith import (
    cyclotomic_value,
    e_star,
    factor,
    factor_cyclotomic,
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
from .misc import FactoredInteger, PrimeSet
