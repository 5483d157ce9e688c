from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from hitomezashi.errors import DomainError, PreconditionError, ResourceError, TheoremViolation
from hitomezashi.extremal import (HORIZONTAL_READING, VERTICAL_READING, Check, classify_loop,
                                  dyck_code, dyck_height, enumerate_loops, extremal_report,
                                  loop_from_dyck, max_length_equality_expected, search_open_case)
from hitomezashi.loops import loop_metrics

from oracles import catalan, census, dyck_height_exact, dyck_words, height

# [DERIVED] loop counts per (w, h), odd w + h <= 16; (7, 9) = 27 also appears as a figure caption
CENSUS = {
    (1, 1): 1, (3, 3): 1, (3, 5): 1, (3, 7): 1, (3, 9): 1, (3, 11): 1, (3, 13): 1,
    (5, 5): 2, (5, 7): 4, (5, 9): 8, (5, 11): 16, (7, 7): 11, (7, 9): 27,
}
for (_w, _h), _n in list(CENSUS.items()):
    CENSUS[(_h, _w)] = _n
NO_LOOPS = [(1, h) for h in range(3, 16, 2)] + [(w, 1) for w in range(3, 16, 2)]


@pytest.mark.parametrize("w,h", sorted(CENSUS))
def test_census_counts(w, h):
    assert enumerate_loops(w, h).count == CENSUS[(w, h)]


@pytest.mark.parametrize("w,h", NO_LOOPS)
def test_thin_sizes_have_no_loops(w, h):
    assert enumerate_loops(w, h).count == 0


@pytest.mark.parametrize("w,h", [(1, 1), (3, 3), (3, 5), (5, 3), (5, 5), (7, 3)])
def test_census_matches_brute_force_oracle(w, h):
    ours = {frozenset(c.vertices) for c in enumerate_loops(w, h).loops}
    assert ours == census(w, h)


@pytest.mark.parametrize("w,h", [(3, 5), (5, 5), (7, 3), (5, 7)])
def test_kernel_and_trace_methods_agree(w, h):
    assert enumerate_loops(w, h, method="trace").loops == enumerate_loops(w, h).loops


@pytest.mark.parametrize("w,h", [(5, 7), (7, 7)])
def test_orders_jobs_and_jit_do_not_change_result(w, h):
    base = enumerate_loops(w, h)
    assert enumerate_loops(w, h, order="gray").loops == base.loops
    assert enumerate_loops(w, h, jobs=2).loops == base.loops
    assert enumerate_loops(w, h, use_jit=False).loops == base.loops


def test_resource_guard():
    with pytest.raises(ResourceError):
        enumerate_loops(15, 15, max_bits=28)


@pytest.mark.parametrize("bad", [(0, 3), (2, 3), (-1, 1)])
def test_bad_dimensions(bad):
    with pytest.raises(DomainError):
        enumerate_loops(*bad)


def test_bad_options():
    with pytest.raises(DomainError):
        enumerate_loops(3, 3, order="random")
    with pytest.raises(DomainError):
        enumerate_loops(3, 3, method="magic")


@pytest.mark.parametrize("w,h", [(w, s - w) for s in range(2, 15, 2) for w in range(1, s, 2)])
def test_extremal_report_passes_strictly(w, h):
    rep = extremal_report(w, h, strict=True)
    assert rep.ok
    if CENSUS.get((w, h)):
        assert rep.count == CENSUS[(w, h)]


def test_report_shapes():
    rep = extremal_report(7, 9)
    names = [c.name for c in rep.checks]
    assert "max_non_rug_length" in names and "max_non_rug_length_witnesses" in names
    rep77 = extremal_report(7, 7)
    assert "max_non_rug_length_open_case" in [c.name for c in rep77.checks]
    assert extremal_report(1, 3).skipped


def test_open_case_is_strictly_below_bound():
    # [DERIVED] the longest non-rug 7x7 loop has length 36, bound 40
    rep = search_open_case(7, 7)
    assert rep.max_non_rug_length == 36 and rep.bound == 40
    with pytest.raises(PreconditionError):
        search_open_case(7, 9)


def test_equality_expected_rule():
    assert max_length_equality_expected(5, 7)
    assert max_length_equality_expected(9, 7)
    assert not max_length_equality_expected(7, 7)
    assert not max_length_equality_expected(11, 7)
    assert not max_length_equality_expected(3, 9)


def test_strict_report_raises_on_violation():
    from dataclasses import replace
    base = enumerate_loops(5, 7)
    loop = base.loops[0]
    bad_metrics = dict(base.metrics)
    bad_metrics[loop] = replace(base.metrics[loop], length=4)
    broken = replace(base, metrics=bad_metrics)
    with pytest.raises(TheoremViolation):
        extremal_report(5, 7, result=broken, strict=True)
    rep = extremal_report(5, 7, result=broken, strict=False)
    assert not rep.ok


def test_check_json():
    assert Check("x", 1, 2, False).to_json()["status"] == "FAIL"


# ---------------------------------------------------------------- Dyck structure

def _dyck_min_count(w, h):
    res = enumerate_loops(w, h)
    reading = HORIZONTAL_READING if w >= h else VERTICAL_READING
    return sum(reading in classify_loop(c).dyck_readings for c in res.loops)


@pytest.mark.parametrize("w,h", [(w, h) for w in range(3, 14, 2) for h in range(1, w + 1, 2)
                                 if w + h <= 16])
def test_dyck_min_counts_match_height_oracle(w, h):
    # loops of minimum length 4w with w >= h <-> Dyck paths of semilength (w-1)/2, height (h-1)/2
    n, k = (w - 1) // 2, (h - 1) // 2
    assert _dyck_min_count(w, h) == dyck_height_exact(n, k)


@pytest.mark.parametrize("w", [5, 7, 9])
def test_dyck_min_counts_sum_to_catalan(w):
    total = sum(_dyck_min_count(w, h) for h in range(3, w + 1, 2))
    assert total == catalan((w - 1) // 2) == len(dyck_words((w - 1) // 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_dyck_round_trip(n):
    for word in dyck_words(n):
        loop = loop_from_dyck(word)
        m = loop_metrics(loop.as_loop())
        assert (m.width, m.height) == (2 * n + 1, 2 * height(word) + 1)
        assert m.length == 4 * (2 * n + 1)
        assert dyck_code(loop, HORIZONTAL_READING) == word
        assert dyck_height(word) == height(word)
        vert = loop_from_dyck(word, VERTICAL_READING)
        assert dyck_code(vert, VERTICAL_READING) == word


def test_census_dyck_codes_are_all_words():
    res = enumerate_loops(9, 5)
    words = {dyck_code(c) for c in res.loops if HORIZONTAL_READING in classify_loop(c).dyck_readings}
    assert words == {w for w in dyck_words(4) if height(w) == 2}


def test_dyck_rejections():
    with pytest.raises(DomainError):
        loop_from_dyck("DU")
    with pytest.raises(DomainError):
        loop_from_dyck("UXD")
    rug = [c for c in enumerate_loops(7, 9).loops if classify_loop(c).tag == "Rug"][0]
    with pytest.raises(DomainError):
        dyck_code(rug, HORIZONTAL_READING)


@given(st.integers(1, 6).flatmap(lambda n: st.sampled_from(dyck_words(n))))
def test_dyck_loop_is_in_census_class(word):
    loop = loop_from_dyck(word)
    assert HORIZONTAL_READING in classify_loop(loop).dyck_readings
