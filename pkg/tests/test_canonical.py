from __future__ import annotations

import pytest

from hitomezashi.canonical import (CROSS, RUG, CanonicalKind, closed_form_metrics, construct_loop,
                                   family, kind_canonical, kind_loop, make_comb, make_cross,
                                   make_rug, make_wand, parse_preset)
from hitomezashi.errors import DomainError
from hitomezashi.extremal import enumerate_loops
from hitomezashi.loops import loop_metrics

SIZES = [(w, h) for w in range(1, 14, 2) for h in range(1, 14, 2)]


@pytest.mark.parametrize("w,h", SIZES)
def test_family_members_trace_and_match_closed_forms(w, h):
    for kind in family(w, h):
        m = loop_metrics(kind_loop(kind))
        assert m == closed_form_metrics(kind), kind.preset()


@pytest.mark.parametrize("w,h", [(w, h) for w, h in SIZES if w + h <= 16])
def test_family_members_appear_in_census(w, h):
    loops = set(enumerate_loops(w, h).loops)
    for kind in family(w, h):
        assert kind_canonical(kind) in loops, kind.preset()


def test_rug_11x13_length():
    # [DERIVED] 4(w + h - 3)
    assert loop_metrics(construct_loop(make_rug(11, 13), 11, 13)).length == 84


def test_rug_1x1_is_unit_square():
    assert loop_metrics(construct_loop(make_rug(1, 1), 1, 1)).area == 1


def test_cross_area_is_minimal_value():
    m = loop_metrics(construct_loop(make_cross(9, 7, 3, 5), 9, 7))
    assert m.area == 2 * (9 + 7) - 7


def test_comb_and_wand_lengths():
    assert loop_metrics(construct_loop(make_comb("horizontal", 7, 9, 3), 7, 9)).length == 6 * 8 + 4
    assert loop_metrics(construct_loop(make_wand("horizontal", 11, (0, 1, 0, 1)), 5, 11)).length == 44


@pytest.mark.parametrize("bad", [
    lambda: make_rug(4, 5),
    lambda: make_rug(1, 3),
    lambda: make_cross(7, 7, 2, 3),
    lambda: make_comb("horizontal", 7, 7, 3),
    lambda: make_wand("horizontal", 9, (1, 1, 1)),
    lambda: make_wand("diagonal", 9, (0, 1, 0)),
])
def test_constructor_preconditions(bad):
    with pytest.raises(DomainError):
        bad()


@pytest.mark.parametrize("text", ["rug:7x9", "cross:7x9:3:5", "hcomb:7x9:5", "vcomb:9x7:3",
                                  "wand:W5:9:010", "wand:H5:11:0110"])
def test_preset_round_trip(text):
    assert parse_preset(text).preset() == text


@pytest.mark.parametrize("text", ["rug", "rug:7", "cross:7x9:3", "blob:3x3", "wand:Q5:9:010"])
def test_bad_presets(text):
    with pytest.raises(DomainError):
        parse_preset(text)


def test_kind_equality_and_tags():
    assert CanonicalKind(RUG, 3, 3) == parse_preset("rug:3x3")
    assert CanonicalKind(CROSS, 5, 5, 3, 3).labeling().params == (1, 1, 1, 1)
