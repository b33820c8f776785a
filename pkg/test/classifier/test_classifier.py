from __future__ import annotations

import itertools
from typing import *

import pytest

from hallpi.arith import PrimeSet, pi_part
from hallpi.classifier import (
    HallStatus,
    HallVerdict,
    PiContext,
    check_entry,
    classify_cyclic,
    classify_dpi,
    classify_sporadic,
    classify_upi,
    condition_I,
    condition_II,
    condition_III,
    condition_IV,
    dpi_by_composition_factors,
    epi_minus_dpi_item,
    gl_hall_pi_order,
    make_context,
    nn_bounds,
    parse_records,
    regime_item,
    render_records,
    render_verdict,
    suzuki_ree_torus_sets,
)
from hallpi.orders import GLSpec, SimpleGroupSpec, gl_order
from hallpi.utils import InvalidInputError, RecordParseError, RegimeError


def spec(family: str, q: int, rank: int | None = None) -> SimpleGroupSpec:
    return SimpleGroupSpec.of(family, q, rank=rank)


def test_make_context(a1_7: SimpleGroupSpec, a2_11: SimpleGroupSpec):
    ctx = make_context(a1_7, PrimeSet.of(3, 7))
    assert ctx.pi_effective == PrimeSet.of(3, 7)
    assert ctx.r == 3
    assert ctx.tau == PrimeSet.of(7)

    ctx = make_context(a1_7, PrimeSet.of(5, 11))
    assert not ctx.pi_effective
    assert ctx.r is None
    assert not ctx.tau

    ctx = make_context(a2_11, PrimeSet.of(3, 5))
    assert ctx.r == 3
    assert ctx.tau == PrimeSet.of(5)
    assert ctx.e(3) == 2
    assert ctx.e(5) == 1
    assert ctx.a == 2


def test_condition_I(a1_7: SimpleGroupSpec):
    hit = condition_I(a1_7, make_context(a1_7, PrimeSet.of(3, 7)))
    assert hit is not None
    assert hit.tag == "I"

    a2_3 = spec("A", 3, rank=2)
    assert condition_I(a2_3, make_context(a2_3, PrimeSet.of(3, 13))) is None

    # p outside pi
    a1_11 = spec("A", 11, rank=1)
    assert condition_I(a1_11, make_context(a1_11, PrimeSet.of(3, 5))) is None


def test_condition_II():
    a4_2 = spec("A", 2, rank=4)
    hit = condition_II(a4_2, make_context(a4_2, PrimeSet.of(5, 31)))
    assert hit is not None
    assert hit.tag == "II(a)"

    twisted_d6 = spec("2D", 3, rank=6)
    hit = condition_II(twisted_d6, make_context(twisted_d6, PrimeSet.of(7, 13)))
    assert hit is not None
    assert hit.tag == "II(h)"
    assert "a pi-Hall subgroup of 2D_n(q) is cyclic" in hit.notes

    a1_11 = spec("A", 11, rank=1)
    assert condition_II(a1_11, make_context(a1_11, PrimeSet.of(3, 5))) is None


def test_condition_III():
    a1_31 = spec("A", 31, rank=1)
    hit = condition_III(a1_31, make_context(a1_31, PrimeSet.of(3, 5)))
    assert hit is not None
    assert hit.tag == "III(a)"

    a2_11 = spec("A", 11, rank=2)
    assert condition_III(a2_11, make_context(a2_11, PrimeSet.of(3, 5))) is None

    d4_7 = spec("3D4", 7)
    hit = condition_III(d4_7, make_context(d4_7, PrimeSet.of(13, 181)))
    assert hit is not None
    assert hit.tag == "III(i)"


def test_condition_III_f4_exclusion():
    f4 = spec("F4", 233)
    pi = PrimeSet.of(3, 13)

    for c in (1, 2):
        ctx = PiContext(pi=pi, pi_effective=pi, q=233, p=233, orders=((3, c), (13, c)))
        assert condition_III(f4, ctx) is None

    pi = PrimeSet.of(5, 13)
    ctx = PiContext(pi=pi, pi_effective=pi, q=233, p=233, orders=((5, 4), (13, 4)))
    hit = condition_III(f4, ctx)
    assert hit is not None
    assert hit.tag == "III(o)"


def test_condition_IV():
    sz8 = spec("2B2", 8)
    labels = dict(suzuki_ree_torus_sets(sz8))
    assert labels["q-1"] == PrimeSet.of(7)
    assert labels["q+r+1"] == PrimeSet.of(13)
    assert labels["q-r+1"] == PrimeSet.of(5)

    assert condition_IV(sz8, make_context(sz8, PrimeSet.of(5, 13))) is None
    assert condition_IV(sz8, make_context(sz8, PrimeSet.of(5, 7))) is None

    sz128 = spec("2B2", 128)
    hit = condition_IV(sz128, make_context(sz128, PrimeSet.of(5, 29)))
    assert hit is not None
    assert hit.tag == "IV(a)"

    assert condition_IV(spec("A", 7, rank=1), make_context(spec("A", 7, rank=1), PrimeSet.of(3, 7))) is None


def test_ree_f4_torus_sets():
    f4_8 = spec("2F4", 8)
    labels = dict(suzuki_ree_torus_sets(f4_8))
    assert len(labels) == 8
    assert labels["q^2+1"] == PrimeSet.of(5, 13)
    assert labels["q+r+1"] == PrimeSet.of(13)
    assert labels["q-r+1"] == PrimeSet.of(5)

    # the two long factors of q^4 - q^2 + 1 = 4033 end in +1
    assert labels["q^2+s+q+r+1"] == PrimeSet.of(109)
    assert labels["q^2-s+q-r+1"] == PrimeSet.of(37)
    assert 109 * 37 == 8**4 - 8**2 + 1

    hit = condition_IV(f4_8, make_context(f4_8, PrimeSet.of(37, 109)))
    assert hit is None
    hit = condition_IV(f4_8, make_context(f4_8, PrimeSet.of(5, 13)))
    assert hit is not None
    assert hit.tag == "IV(c)"
    assert hit.witnesses[0].value == "q^2+1"


def test_classify_dpi(a1_7: SimpleGroupSpec, a2_11: SimpleGroupSpec, u3_4: SimpleGroupSpec):
    verdict = classify_dpi(a1_7, PrimeSet.of(3, 7))
    assert verdict.status is HallStatus.DPI
    assert verdict.condition_tag == "I"
    assert verdict.group == "A1(7)"
    assert "A1(7) = A2(2)" in verdict.notes

    verdict = classify_dpi(a2_11, PrimeSet.of(3, 5))
    assert verdict.status is HallStatus.EPI_NOT_DPI
    assert verdict.condition_tag == "II-B(a)"
    assert verdict.witness("r") == 3
    assert verdict.witness("e_q_r") == 2
    assert verdict.witness("d") == 1
    assert verdict.witness("k") == 0

    verdict = classify_dpi(u3_4, PrimeSet.of(3, 5))
    assert verdict.status is HallStatus.EPI_NOT_DPI
    assert verdict.condition_tag == "II-B(c)"

    verdict = classify_dpi(spec("A", 11, rank=1), PrimeSet.of(3, 5))
    assert verdict.status is HallStatus.NOT_EPI
    assert verdict.condition_tag is None

    assert classify_dpi(spec("A", 2, rank=2), PrimeSet.of(3, 7)).status is HallStatus.DPI
    assert classify_dpi(spec("A", 2, rank=4), PrimeSet.of(5, 31)).condition_tag == "II(a)"
    assert classify_dpi(spec("2B2", 128), PrimeSet.of(5, 29)).condition_tag == "IV(a)"
    assert classify_dpi(spec("2B2", 8), PrimeSet.of(5, 13)).status is HallStatus.NOT_EPI


def test_classify_dpi_gates(a1_7: SimpleGroupSpec):
    verdict = classify_dpi(a1_7, PrimeSet.of(5, 11))
    assert verdict.status is HallStatus.DPI
    assert verdict.condition_tag == "sylow-trivial"

    verdict = classify_dpi(a1_7, PrimeSet.of(3, 5))
    assert verdict.condition_tag == "sylow-trivial"

    verdict = classify_dpi(a1_7, PrimeSet.of(2, 7))
    assert verdict.status is HallStatus.UNDETERMINED
    assert "scope-2-in-pi" in verdict.citations

    # one prime inside pi(S), even with 2 in pi
    assert classify_dpi(a1_7, PrimeSet.of(2, 5)).status is HallStatus.DPI


def test_classify_dpi_checked(a1_7: SimpleGroupSpec, a2_11: SimpleGroupSpec):
    verdict = classify_dpi(a1_7, PrimeSet.of(3, 7))
    assert verdict.checked == ("sylow-trivial:miss", "scope-2-in-pi:miss", "I:hit")

    verdict = classify_dpi(spec("A", 11, rank=1), PrimeSet.of(3, 5))
    assert verdict.status is HallStatus.NOT_EPI
    assert verdict.checked == (
        "sylow-trivial:miss",
        "scope-2-in-pi:miss",
        "I:miss[p-not-in-pi]",
        "II@t=5:miss[no-item-applies]",
        "III:miss[nonuniform-orders]",
        "IV:miss[not-suzuki-ree]",
        "II-A:miss[p-not-in-pi]",
        "nn-bounds:miss",
    )

    verdict = classify_dpi(a2_11, PrimeSet.of(3, 5))
    assert verdict.checked[-3:] == ("II-A:miss[p-not-in-pi]", "nn-bounds:hit", "II-B(a):hit")


def test_classify_dpi_checked_gates(a1_7: SimpleGroupSpec):
    assert classify_dpi(a1_7, PrimeSet.of(5, 11)).checked == ("sylow-trivial:hit",)
    assert classify_dpi(a1_7, PrimeSet.of(2, 7)).checked == (
        "sylow-trivial:miss",
        "scope-2-in-pi:hit",
    )

    verdict = classify_upi(a1_7, PrimeSet.of(3, 7))
    assert verdict.checked == classify_dpi(a1_7, PrimeSet.of(3, 7)).checked


def test_checked_items():
    sz8 = spec("2B2", 8)
    trail: list[str] = []
    assert condition_IV(sz8, make_context(sz8, PrimeSet.of(5, 13)), trail) is None
    assert trail == ["IV(a)[q-1]:miss", "IV(a)[q+r+1]:miss", "IV(a)[q-r+1]:miss"]

    a1_31 = spec("A", 31, rank=1)
    trail = []
    assert condition_III(a1_31, make_context(a1_31, PrimeSet.of(3, 5)), trail) is not None
    assert trail == ["III(a):hit"]

    trail = []
    assert epi_minus_dpi_item(spec("A", 11, rank=2), PrimeSet.of(5, 7), trail) is None
    assert trail == ["II-A:miss[p-not-in-pi]", "nn-bounds:miss"]

    entry = check_entry("II-B(a)", False, ["r-part", "tau-orders"])
    assert entry == "II-B(a):miss[r-part,tau-orders]"


def test_characteristic_item():
    a2_27 = spec("A", 27, rank=2)
    verdict = classify_dpi(a2_27, PrimeSet.of(3, 13))
    assert verdict.status is HallStatus.EPI_NOT_DPI
    assert verdict.condition_tag == "II-A"

    a2_3 = spec("A", 3, rank=2)
    assert epi_minus_dpi_item(a2_3, PrimeSet.of(3, 13)) is None
    assert classify_dpi(a2_3, PrimeSet.of(3, 13)).status is HallStatus.NOT_EPI


def test_epi_minus_dpi_item(a2_11: SimpleGroupSpec, u3_4: SimpleGroupSpec):
    hit = epi_minus_dpi_item(u3_4, PrimeSet.of(3, 5))
    assert hit is not None
    assert hit.tag == "II-B(c)"

    # r = 5 > n = 3
    assert epi_minus_dpi_item(a2_11, PrimeSet.of(5, 7)) is None

    assert epi_minus_dpi_item(a2_11, PrimeSet.of(2, 3, 5)) is None


def test_classify_upi(a1_7: SimpleGroupSpec, a2_11: SimpleGroupSpec):
    for s, pi in ((a1_7, PrimeSet.of(3, 7)), (a2_11, PrimeSet.of(3, 5)), (a1_7, PrimeSet.of(2, 7))):
        dpi, upi = classify_dpi(s, pi), classify_upi(s, pi)
        assert upi.status is dpi.status
        assert upi.upi == dpi.is_dpi
        assert "dpi-equals-upi" in upi.citations

    upi = classify_upi(a1_7, PrimeSet.of(2, 7))
    assert any("U_pi" in note for note in upi.notes)


def test_classify_sporadic():
    verdict = classify_sporadic("O'N", PrimeSet.of(3, 5))
    assert verdict.group == "ON"
    assert verdict.status is HallStatus.EPI_NOT_DPI
    assert verdict.condition_tag == "I"

    assert classify_sporadic("ON", PrimeSet.of(3, 5, 17)).status is HallStatus.EPI_NOT_DPI
    assert classify_sporadic("ON", PrimeSet.of(3, 7)).status is HallStatus.UNDETERMINED
    assert classify_sporadic("M11", PrimeSet.of(3, 5)).status is HallStatus.UNDETERMINED
    assert classify_sporadic("M11", PrimeSet.of(3, 7)).condition_tag == "sylow-trivial"

    verdict = classify_sporadic("Alt(7)", PrimeSet.of(3, 5))
    assert verdict.group == "Alt(7)"
    assert verdict.status is HallStatus.UNDETERMINED

    assert classify_sporadic("A5", PrimeSet.of(7, 11)).status is HallStatus.DPI

    with pytest.raises(InvalidInputError):
        classify_sporadic("Foo", PrimeSet.of(3, 5))
    with pytest.raises(InvalidInputError):
        classify_sporadic("Alt(4)", PrimeSet.of(3, 5))


def test_classify_cyclic():
    verdict = classify_cyclic(7, PrimeSet.of(3, 7))
    assert verdict.group == "Z7"
    assert verdict.status is HallStatus.DPI
    assert verdict.condition_tag == "sylow-trivial"


def test_dpi_by_composition_factors(pi_35: PrimeSet):
    dpi = HallVerdict(group="Z3", pi=pi_35, status=HallStatus.DPI)
    not_epi = HallVerdict(group="A1(11)", pi=pi_35, status=HallStatus.NOT_EPI)
    epi_not_dpi = HallVerdict(group="A2(11)", pi=pi_35, status=HallStatus.EPI_NOT_DPI)
    undetermined = HallVerdict(group="Alt(7)", pi=pi_35, status=HallStatus.UNDETERMINED)

    verdict = dpi_by_composition_factors([dpi, dpi])
    assert verdict.status is HallStatus.DPI
    assert verdict.condition_tag == "composition"

    verdict = dpi_by_composition_factors([dpi, not_epi])
    assert verdict.status is HallStatus.NOT_EPI
    assert verdict.witness("factor") == 2
    assert verdict.witness("factor_group") == "A1(11)"
    assert verdict.condition_tag == "composition-factor-2"

    verdict = dpi_by_composition_factors([epi_not_dpi, dpi])
    assert verdict.status is HallStatus.EPI_NOT_DPI
    assert verdict.witness("factor") == 1
    assert verdict.checked == ("factor-1:miss[EpiNotDpi]", "factor-2:hit")

    # not D_pi, but the undetermined factor may lack a pi-Hall subgroup
    verdict = dpi_by_composition_factors([epi_not_dpi, undetermined])
    assert verdict.status is HallStatus.UNDETERMINED
    assert verdict.condition_tag == "composition-factor-1"
    assert verdict.witness("factor_status") == "EpiNotDpi"
    assert any("E_pi unknown" in note for note in verdict.notes)

    verdict = dpi_by_composition_factors([epi_not_dpi, undetermined, not_epi])
    assert verdict.status is HallStatus.NOT_EPI
    assert verdict.witness("factor") == 3

    verdict = dpi_by_composition_factors([dpi, undetermined])
    assert verdict.status is HallStatus.UNDETERMINED
    assert verdict.witness("factor") == 2

    with pytest.raises(InvalidInputError):
        dpi_by_composition_factors([])


def test_gl_hall_pi_order(pi_35: PrimeSet):
    assert gl_hall_pi_order(GLSpec.of(3, "+", 11), pi_35) == 375
    assert gl_hall_pi_order(GLSpec.of(3, "-", 4), pi_35) == 375
    assert gl_hall_pi_order(GLSpec.of(3, "+", 11), pi_35).render() == "3·5^3"

    with pytest.raises(RegimeError) as e:
        gl_hall_pi_order(GLSpec.of(2, "+", 11), pi_35)
    assert e.value.failures == ["bracket-equality"]


def test_gl_hall_pi_order_grid(odd_pairs: list[PrimeSet], pi_35: PrimeSet):
    qs = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32)
    hits = []

    for n, q, eta in itertools.product(range(2, 10), qs, "+-"):
        gl = GLSpec.of(n, eta, q)
        for pi in odd_pairs:
            try:
                order = gl_hall_pi_order(gl, pi)
            except (RegimeError, InvalidInputError):
                continue
            assert order == pi_part(gl_order(gl), pi)
            hits.append((gl.name, pi))

    assert len(hits) >= 2
    assert (GLSpec.of(3, "+", 11).name, pi_35) in hits
    assert (GLSpec.of(3, "-", 4).name, pi_35) in hits


def test_regime_item(pi_35: PrimeSet):
    hit = regime_item(GLSpec.of(3, "+", 11), pi_35)
    assert hit.tag == "II-B(a)"

    hit = regime_item(GLSpec.of(3, "-", 4), pi_35)
    assert hit.tag == "II-B(c)"
    values = {w.name: w.value for w in hit.witnesses}
    assert values["d"] == 1
    assert values["k"] == 0
    assert values["upper"] == 3

    with pytest.raises(RegimeError) as e:
        regime_item(GLSpec.of(2, "-", 4), pi_35)
    assert e.value.failures == ["unitary-rank"]

    with pytest.raises(RegimeError) as e:
        regime_item(GLSpec.of(3, "+", 11), PrimeSet.of(2, 3, 5))
    assert "2-in-pi" in e.value.failures

    with pytest.raises(RegimeError) as e:
        regime_item(GLSpec.of(3, "+", 11), PrimeSet.of(3, 11))
    assert "characteristic-in-pi" in e.value.failures


def test_nn_bounds(pi_35: PrimeSet):
    holds, _ = nn_bounds(GLSpec.of(3, "+", 11), pi_35)
    assert holds

    holds, found = nn_bounds(GLSpec.of(2, "+", 11), pi_35)
    assert not holds
    assert {w.name: w.value for w in found}["n"] == 2

    # gcd(3, 7 - 1) = 3 lies in pi
    holds, found = nn_bounds(GLSpec.of(3, "+", 7), PrimeSet.of(3, 19))
    assert not holds
    assert {w.name: w.value for w in found}["gcd_pi"] == 3


def test_exclusivity(classical_grid: list[SimpleGroupSpec], odd_pairs: list[PrimeSet]):
    for s, pi in itertools.product(classical_grid, odd_pairs):
        verdict = classify_dpi(s, pi)
        if verdict.status is HallStatus.DPI and verdict.condition_tag != "sylow-trivial":
            assert epi_minus_dpi_item(s, pi) is None, (s, pi)
        if verdict.status is HallStatus.EPI_NOT_DPI:
            ctx = make_context(s, pi)
            for condition in (condition_I, condition_II, condition_III, condition_IV):
                assert condition(s, ctx) is None, (s, pi)


def test_records_round_trip(a1_7: SimpleGroupSpec, a2_11: SimpleGroupSpec):
    verdicts = [
        classify_dpi(a1_7, PrimeSet.of(3, 7)),
        classify_dpi(a2_11, PrimeSet.of(3, 5)),
        classify_dpi(a1_7, PrimeSet.of(2, 7)),
    ]
    text = render_records(verdicts)
    assert text.startswith("# schema: hallpi-verdict/1\n")
    assert parse_records(text) == verdicts
    assert [v.checked for v in parse_records(text)] == [v.checked for v in verdicts]
    assert '"checked": ["sylow-trivial:miss", "scope-2-in-pi:miss", "I:hit"]' in text


def test_records_errors(a1_7: SimpleGroupSpec):
    with pytest.raises(RecordParseError):
        parse_records("")
    with pytest.raises(RecordParseError):
        parse_records("# schema: other/1\n{}")
    with pytest.raises(RecordParseError):
        parse_records("# schema: hallpi-verdict/1\nnot json")

    text = render_records([classify_dpi(a1_7, PrimeSet.of(3, 7))])
    with pytest.raises(RecordParseError):
        parse_records(text.replace('"upi": true', '"upi": false'))


def test_render_verdict(a2_11: SimpleGroupSpec):
    text = render_verdict(classify_dpi(a2_11, PrimeSet.of(3, 5)), upi=True)
    assert text.splitlines()[0] == "A2(11)  pi={3,5}  EpiNotDpi (U_pi: no)"
    assert "  condition: II-B(a)" in text
    assert "r=3" in text
    checked = text.splitlines()[-1]
    gates = "sylow-trivial:miss scope-2-in-pi:miss"
    assert checked.startswith(f"  checked: {gates} I:miss[p-not-in-pi]")
    assert text.endswith("nn-bounds:hit II-B(a):hit")
