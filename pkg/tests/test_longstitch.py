from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from hitomezashi.core import Window, generate_window, transpose, validate_compatibility
from hitomezashi.errors import DomainError
from hitomezashi.longstitch import (AB_CASE, ACCORDION_H, ACCORDION_V, DEGENERATE, FIG4_PARAMS,
                                    FIG4_SIGMA, NEGATIVE, NO_PATTERNS, POSITIVE, RECTANGLE,
                                    RECTANGLES_ONLY, RECTANGLES_OR_ZIGZAGS, ZIGZAG_NEG,
                                    ZIGZAG_POS, ZIGZAGS_ONLY, ABCode, RectangleCode,
                                    brute_force_count, class_tally, count_patterns,
                                    derive_params, dilate_overlay, fig4_inputs, fig6_labeling,
                                    is_valid_pattern, parse_quad, phi_decode, phi_encode,
                                    psi_decode, random_ab_code, random_rectangle_code,
                                    rectangle_codes, tilde, torus_solutions, zigzag_pattern)

from oracles import torus_count

# quadruples with a + b = c + d and M <= 6, excluding common factors and (1,1,1,1)
FINITE = [q for q in ((a, b, c, d) for M in range(2, 7) for a in range(1, M) for c in range(1, M)
                      for b in [M - a] for d in [M - c])
          if derive_params(*q).case not in (DEGENERATE, AB_CASE)]


def test_cases():
    assert derive_params(3, 1, 3, 1).case == RECTANGLES_OR_ZIGZAGS
    assert derive_params(2, 1, 2, 1).case == ZIGZAGS_ONLY
    assert derive_params(2, 4, 5, 1).case == NO_PATTERNS
    assert derive_params(2, 2, 3, 1).case == AB_CASE
    assert derive_params(2, 2, 2, 2).case == DEGENERATE
    assert derive_params(1, 1, 1, 1).case == DEGENERATE
    assert derive_params(1, 2, 2, 2).case == NO_PATTERNS


@pytest.mark.parametrize("quad,count", [((3, 1, 3, 1), 16), ((2, 1, 2, 1), 6), ((1, 2, 1, 2), 6),
                                        ((2, 4, 5, 1), 0), ((1, 5, 1, 5), 36),
                                        ((3, 5, 2, 6), 192), ((1, 7, 2, 6), 192)])
def test_known_counts(quad, count):
    # [DERIVED] formula, torus backtracking and (for M <= 6) plain torus enumeration agree
    p = derive_params(*quad)
    assert count_patterns(p).value == count
    if p.M <= 6:
        assert brute_force_count(p) == count
        assert torus_count(*quad) == count


@pytest.mark.parametrize("quad", FINITE)
def test_formula_matches_independent_oracle(quad):
    p = derive_params(*quad)
    assert count_patterns(p).value == torus_count(*quad)


@pytest.mark.parametrize("quad", [(2, 1, 2, 1), (3, 1, 3, 1), (1, 5, 1, 5)])
def test_oracle_jobs_independent(quad):
    p = derive_params(*quad)
    assert brute_force_count(p, jobs=2) == brute_force_count(p)


def test_degenerate_and_continuum():
    with pytest.raises(DomainError):
        count_patterns(derive_params(2, 2, 2, 2))
    res = count_patterns(derive_params(2, 2, 3, 1))
    assert res.kind == "continuum" and res.to_json()["value"] == "continuum"
    with pytest.raises(DomainError):
        brute_force_count(derive_params(2, 2, 3, 1))


@pytest.mark.parametrize("text", ["1,2,3", "a,b,c,d", "1,2,3,4,5"])
def test_parse_quad_errors(text):
    with pytest.raises(DomainError):
        parse_quad(text)


def test_tilde_values():
    assert tilde((0,), 3, 4) == (1, 3)
    assert tilde((1,), 3, 4) == (0, 2)


def test_torus_solutions_are_valid_and_classified():
    p = derive_params(3, 1, 3, 1)
    sols = list(torus_solutions(p))
    assert len(sols) == 16
    from hitomezashi.longstitch import periodic_labeling
    kinds = set()
    for eps, eta in sols:
        lab = periodic_labeling(p, eps, eta)
        assert is_valid_pattern(lab)
        tally = class_tally(generate_window(lab), p)
        assert len(tally) == 1
        kinds |= set(tally)
    assert kinds == {RECTANGLE, ZIGZAG_POS, ZIGZAG_NEG}


def test_phi_round_trip_all_codes():
    p = derive_params(3, 1, 3, 1)
    codes = list(rectangle_codes(p))
    assert len(codes) == count_patterns(p).value - 2 * p.M
    labs = set()
    for code in codes:
        lab = phi_decode(code, p)
        pattern = generate_window(lab)
        assert not validate_compatibility(pattern)
        assert set(class_tally(pattern, p)) == {RECTANGLE}
        assert phi_encode(pattern, p) == code
        labs.add((lab.eps, lab.eta))
    assert len(labs) == len(codes)


@given(st.integers(0, 10_000), st.sampled_from([(3, 5, 2, 6), (1, 7, 2, 6), (5, 1, 5, 1)]))
def test_phi_round_trip_random(seed, quad):
    p = derive_params(*quad)
    code = random_rectangle_code(p, random.Random(seed))
    pattern = generate_window(phi_decode(code, p))
    assert not validate_compatibility(pattern)
    assert phi_encode(pattern, p) == code


def test_phi_rejects_bad_codes():
    p = derive_params(3, 1, 3, 1)
    with pytest.raises(DomainError):
        phi_decode(RectangleCode((0, 0), (0,), (1, 2)), p)
    with pytest.raises(DomainError):
        phi_decode(RectangleCode((0,), (0,), (1, 1)), p)
    with pytest.raises(DomainError):
        phi_decode(RectangleCode((0,), (0,), (1, 2)), derive_params(2, 1, 2, 1))
    with pytest.raises(DomainError):
        RectangleCode.parse("0:1")
    assert RectangleCode.parse("0:1:2,1") == RectangleCode((0,), (1,), (2, 1))


@pytest.mark.parametrize("quad", [(2, 1, 2, 1), (3, 1, 3, 1), (1, 4, 2, 3), (5, 2, 3, 4)])
@pytest.mark.parametrize("sign", [POSITIVE, NEGATIVE])
def test_zigzags(quad, sign):
    p = derive_params(*quad)
    want = ZIGZAG_POS if sign == POSITIVE else ZIGZAG_NEG
    seen = set()
    for t in range(p.M):
        lab = zigzag_pattern(p, t, sign)
        pattern = generate_window(lab)
        assert not validate_compatibility(pattern)
        assert set(class_tally(pattern, p)) == {want}
        seen.add((lab.eps, lab.eta))
    assert len(seen) == p.M


def test_zigzag_preconditions():
    with pytest.raises(DomainError):
        zigzag_pattern(derive_params(3, 1, 3, 1), 0, "*")
    with pytest.raises(DomainError):
        zigzag_pattern(derive_params(2, 2, 3, 1), 0, POSITIVE)


@given(st.integers(0, 10_000))
def test_psi_outputs(seed):
    p = derive_params(2, 2, 3, 1)
    window = Window(-6, 14, -6, 14)
    lab = psi_decode(random_ab_code(p, window, random.Random(seed)), 2, 3, 1, window)
    assert all(lab.eta_at(j) == lab.eta_at(j + 2) for j in range(window.x0, window.x1 - 1))
    pattern = generate_window(lab)
    assert not validate_compatibility(pattern)
    assert set(class_tally(pattern, p)) <= {RECTANGLE, ACCORDION_H}


@given(st.integers(0, 10_000))
def test_transposed_ab_case(seed):
    p = derive_params(3, 1, 2, 2)
    window = Window(-6, 14, -6, 14)
    from hitomezashi.longstitch import ab_labeling
    lab = ab_labeling(p, random_ab_code(p, window, random.Random(seed)), window)
    pattern = generate_window(lab)
    assert not validate_compatibility(pattern)
    assert set(class_tally(pattern, p)) <= {RECTANGLE, ACCORDION_V}


def test_psi_preconditions():
    window = Window(0, 8, 0, 8)
    code = ABCode((0,), (0,) * 9, (1, 2))
    with pytest.raises(DomainError):
        psi_decode(code, 2, 2, 2, window)  # degenerate
    with pytest.raises(DomainError):
        psi_decode(code, 3, 1, 5, window)  # order of 1 mod 6 is odd
    with pytest.raises(DomainError):
        psi_decode(ABCode((0,), (0,) * 3, (1, 2)), 2, 3, 1, window)  # v too short


def test_fig6_mixes_rectangles_and_accordions():
    tally = class_tally(generate_window(fig6_labeling()), derive_params(2, 2, 3, 1))
    assert set(tally) == {RECTANGLE, ACCORDION_H}


def test_dilation_of_fig4_inputs():
    inputs = fig4_inputs()
    assert all(lab.params == FIG4_PARAMS and is_valid_pattern(lab) for lab in inputs)
    out = dilate_overlay(inputs, 3, FIG4_SIGMA)
    assert out.params == (9, 3, 6, 6)
    assert is_valid_pattern(out)


@given(st.integers(0, 10_000), st.permutations([1, 2, 3]))
def test_dilation_of_random_inputs(seed, sigma):
    p = derive_params(2, 1, 2, 1)
    rng = random.Random(seed)
    window = Window(-6, 6, -6, 6)
    inputs = [zigzag_pattern(p, rng.randrange(3), rng.choice([POSITIVE, NEGATIVE]), window)
              for _ in range(3)]
    out = dilate_overlay(inputs, 3, sigma)
    assert out.params == (6, 3, 6, 3)
    assert is_valid_pattern(out)


def test_dilation_identity():
    lab = zigzag_pattern(derive_params(2, 1, 2, 1), 1, POSITIVE)
    assert dilate_overlay([lab], 1, (1,)) == lab


def test_dilation_preconditions():
    lab = zigzag_pattern(derive_params(2, 1, 2, 1), 1, POSITIVE)
    with pytest.raises(DomainError):
        dilate_overlay([lab, lab], 3, (1, 2, 3))
    with pytest.raises(DomainError):
        dilate_overlay([lab, lab], 2, (1, 1))
    with pytest.raises(DomainError):
        dilate_overlay([lab, transpose(phi_decode(RectangleCode((0,), (0,), (1, 2)),
                                                  derive_params(3, 1, 3, 1)))], 2, (1, 2))
