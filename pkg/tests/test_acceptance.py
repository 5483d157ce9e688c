"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

from __future__ import annotations

import json
import random
import time

import pytest

from hitomezashi.cli import main
from hitomezashi.core import Window, generate_window, random_labeling, validate_compatibility
from hitomezashi.extremal import enumerate_loops, loop_congruence_failures
from hitomezashi.longstitch import (ACCORDION_H, FIG4_SIGMA, RECTANGLE, brute_force_count,
                                    class_tally, count_patterns, derive_params, dilate_overlay,
                                    fig4_inputs, phi_decode, phi_encode, psi_decode,
                                    random_ab_code, rectangle_codes)
from hitomezashi.loops import loops_in
from hitomezashi.multigrid import (FIG8_DIRS, TRIANGULAR, ab_triangular_sat, all_translates,
                                   check_divisibility_16, search_finite_components)

from oracles import catalan, dyck_height_exact, dyck_words, height


def report(n: int, passed: bool, detail: str) -> None:
    print(f"\nCRITERION {n:2d} {'PASS' if passed else 'FAIL'}: {detail}")


def _cli_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)["result"]


def test_criterion_01_census_7x9():
    t = time.perf_counter()
    res = enumerate_loops(7, 9)
    dt = time.perf_counter() - t
    ok = res.count == 27 and res.labels_scanned == 1 << 18 and dt < 60
    report(1, ok, f"{res.count} loops of size 7x9 from {res.labels_scanned} labelings in {dt:.2f}s")
    assert ok


def test_criterion_02_bounds(capsys):
    code, res = _cli_json(capsys, "extremal", "--max-sum", "16")
    failing = [(r["width"], r["height"], c["name"]) for r in res["reports"] for c in r["checks"]
               if c["status"] != "pass"]
    sizes = len(res["reports"])
    open_cases = [(r["width"], r["height"]) for r in res["reports"]
                  if any(c["name"] == "max_non_rug_length_open_case" for c in r["checks"])]
    ok = code == 0 and not failing and res["all_checks_pass"]
    report(2, ok, f"{sizes} sizes checked, exit code {code}, failures {failing}; "
                  f"no comb or wand exists at {open_cases}, where the bound is strict")
    assert ok


def test_criterion_03_congruences():
    checked = bad = 0
    for s in range(2, 17, 2):
        for w in range(1, s, 2):
            for c in enumerate_loops(w, s - w).loops:
                checked += 1
                bad += bool(loop_congruence_failures(c))
    census_loops = checked
    for seed in range(10_000):
        lab = random_labeling(1, 1, 1, 1, Window(0, 12, 0, 12), random.Random(seed))
        for lp in loops_in(generate_window(lab)):
            checked += 1
            bad += bool(loop_congruence_failures(lp))
    ok = bad == 0
    report(3, ok, f"{census_loops} census loops and {checked - census_loops} loops from 10^4 "
                  f"random windows, {bad} congruence failures")
    assert ok


def _min_length_count(w, h):
    res = enumerate_loops(w, h)
    return sum(res.metrics[c].length == 4 * max(w, h) for c in res.loops)


@pytest.mark.xfail(strict=True, reason="the literal per-size counts 5 and 14 are Catalan totals "
                                       "summed over heights; see the corrected check below")
def test_criterion_04_dyck_counts_literal():
    t = time.perf_counter()
    n75, n79 = _min_length_count(7, 5), _min_length_count(7, 9)
    oracle = (len(dyck_words(3)), len(dyck_words(4)))
    dt = time.perf_counter() - t
    ok = (n75, n79) == (5, 14) == oracle and dt < 60
    report(4, ok, f"min-length loops at (7,5) = {n75}, at (7,9) = {n79}; expected 5 and 14; "
                  f"Dyck oracle {oracle}; per-size oracle {dyck_height_exact(3, 2)} and "
                  f"{dyck_height_exact(4, 3)}")
    assert ok


def test_criterion_04_dyck_counts_corrected():
    # min-length loops of size w x h (w >= h) <-> Dyck paths of semilength (w-1)/2 and height (h-1)/2
    per_size = {(w, h): _min_length_count(w, h) for w in (7, 9) for h in range(3, w + 1, 2)}
    by_height = all(per_size[(w, h)] == sum(height(x) == (h - 1) // 2
                                            for x in dyck_words((w - 1) // 2))
                    for w, h in per_size)
    t7 = sum(per_size[(7, h)] for h in (3, 5, 7))
    t9 = sum(per_size[(9, h)] for h in (3, 5, 7, 9))
    # the (7,9) and (9,7) counts are transposes of each other
    same = _min_length_count(7, 9) == per_size[(9, 7)]
    ok = by_height and same and (t7, t9) == (5, 14) == (catalan(3), catalan(4))
    print(f"\n  corrected check {'PASS' if ok else 'FAIL'}: widths 7 and 9 summed over heights give "
          f"{t7} and {t9}; per size {per_size}")
    assert ok


def test_criterion_05_long_stitch_counts():
    cases = {(3, 1, 3, 1): 16, (2, 1, 2, 1): 6, (1, 2, 1, 2): 6, (2, 4, 5, 1): 0}
    rows, ok = [], True
    for quad, want in cases.items():
        p = derive_params(*quad)
        t = time.perf_counter()
        oracle = brute_force_count(p)
        dt = time.perf_counter() - t
        formula = count_patterns(p).value
        limit = 1.0 if p.M <= 4 else 600.0
        good = formula == oracle == want and dt <= limit
        ok &= good
        rows.append(f"{quad}: formula {formula}, oracle {oracle} ({dt:.3f}s)")
    report(5, ok, "; ".join(rows))
    assert ok


def test_criterion_06_phi_psi():
    p = derive_params(3, 1, 3, 1)
    codes = list(rectangle_codes(p))
    phi_ok = all(not validate_compatibility(generate_window(phi_decode(c, p)))
                 and phi_encode(generate_window(phi_decode(c, p)), p) == c for c in codes)
    q = derive_params(2, 2, 3, 1)
    window = Window(-8, 16, -8, 16)
    rng = random.Random(2024)
    psi_ok, n_psi = True, 200
    for _ in range(n_psi):
        lab = psi_decode(random_ab_code(q, window, rng), 2, 3, 1, window)
        period = all(lab.eta_at(j) == lab.eta_at(j + 2) for j in range(window.x0, window.x1 - 1))
        pattern = generate_window(lab)
        classes = set(class_tally(pattern, q)) <= {RECTANGLE, ACCORDION_H}
        psi_ok &= period and classes and not validate_compatibility(pattern)
    ok = phi_ok and psi_ok
    report(6, ok, f"phi: {len(codes)} codes at (3,1,3,1) valid and inverted: {phi_ok}; "
                  f"psi: {n_psi} seeded (2,2,3,1) codes periodic with allowed classes: {psi_ok}")
    assert ok


def test_criterion_07_dilation():
    inputs = fig4_inputs()
    inputs_ok = all(not validate_compatibility(generate_window(lab)) for lab in inputs)
    out = dilate_overlay(inputs, 3, FIG4_SIGMA)
    bad = validate_compatibility(generate_window(out))
    ok = inputs_ok and out.params == (9, 3, 6, 6) and not bad
    report(7, ok, f"three valid (3,1,2,2) inputs, overlay {out.params} on {out.window.as_list()} "
                  f"with {len(bad)} violations")
    assert ok


def test_criterion_08_triangular():
    rows, ok = [], True
    for side in (12, 15, 18):
        t = time.perf_counter()
        res = ab_triangular_sat(2, 1, side)
        dt = time.perf_counter() - t
        good = len(res.solutions) == 3 and all_translates(res.solutions, res.core) and dt < 60
        ok &= good
        rows.append(f"(2,1) side {side}: {len(res.solutions)} translates ({dt:.2f}s)")
    for ab in [(3, 1), (3, 2), (5, 2), (4, 3)]:
        t = time.perf_counter()
        res = ab_triangular_sat(*ab)
        dt = time.perf_counter() - t
        good = res.status == "UNSAT" and dt < 60
        ok &= good
        rows.append(f"{ab}: {res.status} after {res.nodes} nodes ({dt:.2f}s)")
    report(8, ok, "; ".join(rows))
    assert ok


def test_criterion_09_divisibility_evidence():
    res = search_finite_components(TRIANGULAR, seed=2022, budget=100_000, window=48)
    reports = [check_divisibility_16(c) for c in res.components]
    counter = [r.order for r in reports if not r.ok]
    orders = sorted({r.order for r in reports})
    ok = len(reports) >= 3 and not counter
    report(9, ok, f"{len(reports)} finite components in {res.examined} labelings "
                  f"({res.distinct_shapes()} shapes, vertex counts {orders}); "
                  f"counterexamples: {counter or 'none'}")
    assert ok


def test_criterion_10_four_directions():
    res = search_finite_components(FIG8_DIRS, seed=0, budget=1_000_000, strategy="closure")
    sizes = sorted(len(c) for c in res.components)
    ok = bool(res.findings) and all(c.finite for c in res.components)
    report(10, ok, f"{len(sizes)} finite components with vertex counts {sizes} "
                   f"after {res.examined} solver calls")
    assert ok


def test_criterion_11_determinism(tmp_path):
    runs = [
        ["enumerate", "--width", "7", "--height", "9"],
        ["phi", "search", "--seed", "11", "--budget", "300", "--window", "32"],
        ["phi", "search", "--dirs", "1,0;0,1;1,1;-1,1", "--strategy", "closure",
         "--budget", "10", "--max-radius", "5"],
        ["longstitch", "count", "-p", "3,1,3,1", "--oracle"],
        ["generate", "--random", "--seed", "9", "-p", "1,1,1,1"],
        ["tri", "unique"],
    ]
    same = True
    for k, argv in enumerate(runs):
        outs = []
        for jobs in ("1", "2", "1"):
            path = tmp_path / f"r{k}_{len(outs)}.json"
            extra = ["--jobs", jobs] if argv[0] in ("enumerate", "phi", "longstitch") else []
            assert main(argv + extra + ["--out", str(path)]) == 0
            outs.append(path.read_bytes())
        same &= len(set(outs)) == 1
    svgs = []
    for k in range(2):
        path = tmp_path / f"s{k}.svg"
        assert main(["render", "--preset", "fig6", "--out", str(path)]) == 0
        svgs.append(path.read_bytes())
        path = tmp_path / f"t{k}.svg"
        assert main(["tri", "unique", "--render", str(path), "--out", str(tmp_path / "x.json")]) == 0
        svgs.append(path.read_bytes())
    svg_same = svgs[0] == svgs[2] and svgs[1] == svgs[3]
    ok = same and svg_same
    report(11, ok, f"{len(runs)} JSON invocations byte-identical across runs and --jobs: {same}; "
                   f"SVG artifacts byte-identical: {svg_same}")
    assert ok
