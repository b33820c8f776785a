from __future__ import annotations

from typing import *

import pytest

from hallpi.arith import PrimeSet
from hallpi.oracle import (
    PermGroup,
    enumerate_elements,
    parse_cycles,
    perm_conj,
    perm_inv,
    perm_mul,
    perm_order,
    render_cycles,
    trivial_group,
)
from hallpi.utils import EnumerationBoundError, InvalidInputError


def test_perm_arithmetic():
    a, b = (1, 2, 0), (1, 0, 2)
    # apply a, then b
    assert perm_mul(a, b) == (0, 2, 1)
    assert perm_mul(a, perm_inv(a)) == (0, 1, 2)
    assert perm_conj(a, a) == a
    assert perm_order((1, 2, 0, 4, 3)) == 6


def test_parse_cycles():
    assert parse_cycles("(1,2,3)(4,5)", 5) == (1, 2, 0, 4, 3)
    assert parse_cycles("(1 2 3)", 3) == (1, 2, 0)
    assert parse_cycles("()", 4) == (0, 1, 2, 3)

    for bad in ("(1,2)(2,3)", "(1,6)", "(1,a)", "1,2", "(1,2"):
        with pytest.raises(InvalidInputError):
            parse_cycles(bad, 5)


def test_render_cycles():
    assert render_cycles((1, 2, 0, 4, 3)) == "(1,2,3)(4,5)"
    assert render_cycles((0, 1, 2)) == "()"
    assert parse_cycles(render_cycles((3, 0, 1, 2)), 4) == (3, 0, 1, 2)


def test_orders(catalog: dict):
    for entry in (catalog["A5"], catalog["PSL2(7)"], catalog["A7"], catalog["F21"]):
        G = entry.group()
        assert G.order == entry.expected_order()
        assert G.stabilizer_chain_order() == G.order

    assert len(enumerate_elements(catalog["A5"].group())) == 60
    assert trivial_group(5).order == 1
    assert trivial_group(5).stabilizer_chain_order() == 1


def test_perm_group_errors():
    with pytest.raises(InvalidInputError):
        PermGroup([(0, 0, 1)])
    with pytest.raises(InvalidInputError):
        PermGroup([])

    A7 = PermGroup.from_cycles(["(1,2,3,4,5,6,7)", "(1,2,3)"], 7, bound=100)
    with pytest.raises(EnumerationBoundError):
        A7.elements()


def test_subgroup_relations(s4: PermGroup, a4: PermGroup):
    assert a4.is_subgroup_of(s4)
    assert a4.is_normal_in(s4)
    assert not s4.is_subgroup_of(a4)

    x = parse_cycles("(1,4)", 4)
    C = s4.cyclic(parse_cycles("(1,2,3)", 4))
    assert not C.is_normal_in(s4)
    assert C.conjugate(x).signature() == C.signature()
    assert C.conjugate(x) != C
    assert C.order == 3
    assert C.is_abelian()


def test_pi_elements(s4: PermGroup):
    assert len(s4.pi_elements(PrimeSet.of(3))) == 9
    assert len(s4.pi_elements(PrimeSet.of(2))) == 16
    assert s4.pi_elements(PrimeSet()) == [s4.identity]


def test_join(s4: PermGroup):
    C = s4.cyclic(parse_cycles("(1,2,3)", 4))
    assert C.join(parse_cycles("(1,2)", 4)).order == 6
    assert C.join(parse_cycles("(1,2)(3,4)", 4)).order == 12
    assert C.join(parse_cycles("(1,4)", 4), cap=12) is None
    assert C.join(C.identity) is C
