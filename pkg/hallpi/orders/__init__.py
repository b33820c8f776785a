from .misc import Family, GLSpec, SimpleGroupSpec, Twist, parse_prime_power
from .orders import (
    field_aut_order,
    gl_order,
    gl_r_part_closed_form,
    graph_quotient_order,
    isomorphism_notes,
    out_order,
    outdiag_order,
    prime_spectrum_of_group,
    psl_order,
    psl_spec,
    simple_order,
    sl_order,
    weyl_order,
)
