from __future__ import annotations

from typing import *

import pytest

from hallpi.arith import PrimeSet
from hallpi.oracle import (
    PermGroup,
    check_Cpi,
    check_Dpi,
    check_Dpi_by_definition,
    check_Dpi_by_maximal,
    check_dpi_star_equivalence,
    check_star_property,
    check_Upi,
    conjugating_element,
    contained_in_conjugate,
    hall_subgroups,
    has_hall,
    is_pronormal,
    is_strongly_pronormal,
    maximal_pi_subgroups,
    normal_abelian_hall,
    overgroups,
    parse_cycles,
    pi_order,
    pi_subgroup_classes,
    subgroup_classes,
    subgroups,
    verify_main_theorem,
)
from hallpi.orders import SimpleGroupSpec
from hallpi.utils import InvalidInputError


def test_pi_order(psl2_7: PermGroup, a5: PermGroup):
    assert pi_order(psl2_7, PrimeSet.of(3, 7)) == 21
    assert pi_order(psl2_7, PrimeSet.of(2)) == 8
    assert pi_order(a5, PrimeSet.of(7)) == 1


def test_hall_psl2_7_37(psl2_7: PermGroup, f21_in_psl2_7: PermGroup):
    pi = PrimeSet.of(3, 7)

    assert f21_in_psl2_7.order == 21
    assert not f21_in_psl2_7.is_abelian()
    assert len(hall_subgroups(psl2_7, pi)) == 1
    assert [M.order for M in maximal_pi_subgroups(psl2_7, pi)] == [21]

    assert check_Cpi(psl2_7, pi)
    assert check_Dpi_by_definition(psl2_7, pi)
    assert check_Dpi_by_maximal(psl2_7, pi)
    assert check_Dpi(psl2_7, pi)


def test_hall_psl2_7_23(psl2_7: PermGroup, pi_23: PrimeSet):
    lattice = pi_subgroup_classes(psl2_7, pi_23)
    assert lattice.pi_order == 24
    assert [H.order for H in lattice.halls] == [24, 24]
    assert [M.order for M in lattice.maximal] == [24, 24]

    # the two classes of S4 are not conjugate
    H, K = lattice.halls
    assert conjugating_element(H, K, psl2_7) is None

    assert has_hall(psl2_7, pi_23) is not None
    assert not check_Cpi(psl2_7, pi_23)
    assert not check_Dpi(psl2_7, pi_23)


def test_hall_a5(a5: PermGroup, pi_23: PrimeSet):
    pi = PrimeSet.of(3, 5)
    assert has_hall(a5, pi) is None
    assert not check_Cpi(a5, pi)
    assert not check_Dpi(a5, pi)
    assert [M.order for M in maximal_pi_subgroups(a5, pi)] == [3, 5]

    # A4 is a {2,3}-Hall subgroup, all of them conjugate, but S3 is maximal
    assert [H.order for H in hall_subgroups(a5, pi_23)] == [12]
    assert check_Cpi(a5, pi_23)
    assert not check_Dpi(a5, pi_23)
    assert [M.order for M in maximal_pi_subgroups(a5, pi_23)] == [6, 12]


def test_sylow_is_dpi(a5: PermGroup, psl2_7: PermGroup):
    # Sylow's theorem
    for G in (a5, psl2_7):
        for p in (2, 3):
            assert check_Dpi(G, PrimeSet.of(p))


def test_hall_classes_complete(s4: PermGroup):
    lattice = pi_subgroup_classes(s4, PrimeSet.of(2))
    # 1, two classes of C2, C4, two classes of V4, D8
    assert sorted(U.order for U in lattice.classes) == [1, 2, 2, 4, 4, 4, 8]
    assert [M.order for M in lattice.maximal] == [8]


def test_contained_in_conjugate(s4: PermGroup):
    D8 = has_hall(s4, PrimeSet.of(2))
    assert D8 is not None

    C = s4.cyclic(parse_cycles("(1,2)", 4))
    g = contained_in_conjugate(C, D8, s4)
    assert g is not None
    assert C.conjugate(g).is_subgroup_of(D8)

    C3 = s4.cyclic(parse_cycles("(1,2,3)", 4))
    assert contained_in_conjugate(C3, D8, s4) is None


def test_subgroups(s3: PermGroup, a4: PermGroup):
    assert len(subgroups(s3)) == 6
    assert [U.order for U in subgroups(a4)] == [1, 2, 2, 2, 3, 3, 3, 3, 4, 12]
    assert sorted(U.order for U in subgroup_classes(subgroups(a4), under=a4)) == [1, 2, 3, 4, 12]


def test_pronormal(psl2_7: PermGroup, f21_in_psl2_7: PermGroup, s4: PermGroup, a4: PermGroup):
    assert is_pronormal(f21_in_psl2_7, psl2_7)
    assert is_pronormal(a4, s4)

    C = s4.cyclic(parse_cycles("(1,2)(3,4)", 4))
    assert not is_pronormal(C, s4)

    with pytest.raises(InvalidInputError):
        is_pronormal(s4, a4)


def test_strongly_pronormal(psl2_7: PermGroup, f21_in_psl2_7: PermGroup, s4: PermGroup):
    assert is_strongly_pronormal(f21_in_psl2_7, psl2_7)
    assert is_strongly_pronormal(s4, s4)

    C = s4.cyclic(parse_cycles("(1,2)(3,4)", 4))
    assert not is_strongly_pronormal(C, s4)


def test_overgroups(a5: PermGroup, psl2_7: PermGroup, f21_in_psl2_7: PermGroup):
    C5 = a5.cyclic(parse_cycles("(1,2,3,4,5)", 5))
    assert [M.order for M in overgroups(C5, a5)] == [5, 10, 60]
    assert [M.order for M in overgroups(f21_in_psl2_7, psl2_7)] == [21, 168]


def test_verify_main_theorem(psl2_7: PermGroup, a5: PermGroup, s4: PermGroup):
    report = verify_main_theorem(psl2_7, PrimeSet.of(3, 7))
    assert report.applicable
    assert report.passes
    assert sorted(c.overgroup_order for c in report.checks) == [21, 168]

    report = verify_main_theorem(a5, PrimeSet.of(3, 5))
    assert not report.applicable
    assert report.reasons == ("not-dpi",)

    # C3 <= S3, A4, S4
    report = verify_main_theorem(s4, PrimeSet.of(3))
    assert report.passes
    assert len(report.checks) == 4

    assert check_Upi(psl2_7, PrimeSet.of(3, 7))
    assert not check_Upi(a5, PrimeSet.of(3, 5))


def test_normal_abelian_hall(f21_in_psl2_7: PermGroup, s3: PermGroup):
    N = normal_abelian_hall(f21_in_psl2_7, PrimeSet.of(7))
    assert N is not None
    assert N.order == 7
    assert N.is_normal_in(f21_in_psl2_7)

    assert normal_abelian_hall(s3, PrimeSet.of(3)).order == 3
    assert normal_abelian_hall(s3, PrimeSet.of(2)) is None


def test_star_property(psl2_7: PermGroup, pi_23: PrimeSet):
    assert check_star_property(psl2_7, PrimeSet.of(3, 7))
    assert not check_star_property(psl2_7, pi_23)


def test_dpi_star_equivalence(psl2_7: PermGroup):
    report = check_dpi_star_equivalence(psl2_7, PrimeSet.of(3, 5), SimpleGroupSpec.parse("A 1 7"))
    assert report.applicable
    assert report.dpi
    assert report.star
    assert report.agrees

    report = check_dpi_star_equivalence(psl2_7, PrimeSet.of(3, 7), SimpleGroupSpec.parse("A 2 2"))
    assert not report.applicable
    assert report.reasons == ("unequal-orders",)
    assert report.agrees is None

    report = check_dpi_star_equivalence(psl2_7, PrimeSet.of(3, 7), SimpleGroupSpec.parse("A 1 7"))
    assert report.reasons == ("characteristic-in-pi",)

    report = check_dpi_star_equivalence(psl2_7, PrimeSet.of(2, 3), SimpleGroupSpec.parse("A 1 7"))
    assert report.reasons == ("2-in-pi",)


def test_odd_pi_epi_implies_cpi(catalog: dict):
    for name in ("A5", "PSL2(7)", "PSL2(11)"):
        G = catalog[name].group()
        for pi in (PrimeSet.of(3), PrimeSet.of(5), PrimeSet.of(3, 5), PrimeSet.of(3, 7)):
            if has_hall(G, pi) is not None:
                assert check_Cpi(G, pi), (name, pi)
