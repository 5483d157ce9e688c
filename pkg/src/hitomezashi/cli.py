"""Command-line interface: ``hitoz <subcommand> ...``.

Exit codes: 0 success, 1 usage or domain error, 2 a verified claim failed on
a concrete instance. JSON goes to stdout (or ``--out``) with sorted keys, a
``schema`` number and a metadata block; nothing time-dependent is written.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .canonical import kind_canonical, parse_preset
from .core import SquareLabeling, Window, generate_window, random_labeling, validate_compatibility
from .errors import HitomezashiError, TheoremViolation
from .extremal import (DEFAULT_MAX_BITS, ORDERS, classify_loop, enumerate_loops,
                       extremal_report, resolve_jobs, search_open_case)
from .loops import loop_from_json, loop_metrics, trace_strands, Loop
from .longstitch import (FIG4_PARAMS, FIG4_SIGMA, RectangleCode, brute_force_count,
                         class_tally, count_patterns, derive_params, dilate_overlay,
                         fig4_inputs, fig6_labeling, parse_quad, phi_decode, phi_encode,
                         strand_classes)
from .multigrid import (TRIANGULAR, DirectionSet, ab_triangular_sat, check_divisibility_16,
                        hexagons_21, make_21_triangular, search_finite_components,
                        vertex_histogram)
from .render import RenderStyle, parse_palette, render_classified, render_svg

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2
# worker counts and output destinations do not change results, so they stay out of metadata
_NOT_PARAMETERS = {"handler", "jobs", "out", "render", "figure"}


class UsageError(HitomezashiError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- helpers

def _window(text: str) -> Window:
    try:
        x0, x1, y0, y1 = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"window looks like x0,x1,y0,y1, got {text!r}") from exc
    return Window(x0, x1, y0, y1)


def _digits(text: str | None):
    if text is None:
        return None
    try:
        return [int(ch) for ch in text.strip()]
    except ValueError as exc:
        raise UsageError(f"labels are digit strings, got {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _parameters(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in _NOT_PARAMETERS:
            continue
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _document(args, result: dict, seed=None) -> str:
    doc = {"schema": SCHEMA,
           "metadata": {"version": __version__, "seed": seed, "parameters": _parameters(args)},
           "result": result}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(args, result: dict, seed=None) -> None:
    text = _document(args, result, seed)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_svg(path: str, text: str) -> None:
    Path(path).write_text(text)


def _style(args) -> RenderStyle:
    kw = {}
    if getattr(args, "unit", None) is not None:
        kw["unit"] = args.unit
    if getattr(args, "grid", False):
        kw["grid"] = True
    if getattr(args, "palette", None):
        kw["palette"] = parse_palette(args.palette)
    return RenderStyle(**kw)


def _add_style(p) -> None:
    p.add_argument("--unit", type=float, help="pixels per lattice unit (default 20)")
    p.add_argument("--palette", help="overrides like Rectangle=#00f,AccordionH=#0a0")
    p.add_argument("--grid", action="store_true", help="draw the lattice grid")


def _add_jobs(p) -> None:
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $HITOZ_JOBS or 1); never changes results")


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _labeling_from_doc(doc: dict) -> SquareLabeling:
    """Accept a bare labeling or any document whose result carries one."""
    if "result" in doc:
        doc = doc["result"]
    if "labeling" in doc:
        doc = doc["labeling"]
    return SquareLabeling.from_json(doc)


def _labeling_from_args(args) -> tuple[SquareLabeling, int | None]:
    if getattr(args, "input", None):
        return _labeling_from_doc(_load_json(args.input)), None
    if getattr(args, "preset", None):
        return parse_preset(args.preset).labeling(), None
    a, b, c, d = parse_quad(args.params)
    window = _window(args.window)
    if args.random:
        return random_labeling(a, b, c, d, window, random.Random(args.seed)), args.seed
    return SquareLabeling.build(a, b, c, d, window, _digits(args.eps), _digits(args.eta)), None


def _add_labeling(p) -> None:
    p.add_argument("-p", "--params", default="1,1,1,1", help="a,b,c,d (default 1,1,1,1)")
    p.add_argument("--window", default="0,10,0,10", help="x0,x1,y0,y1")
    p.add_argument("--eps", help="latitude labels as a digit string, from y0 upward")
    p.add_argument("--eta", help="longitude labels as a digit string, from x0 eastward")
    p.add_argument("--random", action="store_true", help="draw labels uniformly")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--preset", help="a named loop's labeling, e.g. rug:7x9 or cross:7x9:3:5")
    p.add_argument("--input", help="labeling JSON (as written by 'generate')")


def _pattern_json(labeling: SquareLabeling) -> dict:
    pattern = generate_window(labeling)
    bad = validate_compatibility(pattern)
    return {"labeling": labeling.to_json(), "stitches": pattern.stitches_json(),
            "stitch_count": len(pattern), "valid": not bad, "violations": len(bad)}


def _strand_json(strand, cls=None) -> dict:
    out = {"stitches": len(strand), "closed": strand.closed,
           "touches_boundary": strand.touches_boundary}
    if strand.closed:
        out.update(loop_metrics(Loop.from_strand(strand)).to_json())
        out["vertices"] = [list(v) for v in strand.vertices()]
    if cls is not None:
        out["class"] = cls
    return out


# ---------------------------------------------------------------- subcommands

def cmd_generate(args) -> int:
    labeling, seed = _labeling_from_args(args)
    result = _pattern_json(labeling)
    _emit(args, result, seed)
    return EXIT_OK


def cmd_trace(args) -> int:
    labeling, seed = _labeling_from_args(args)
    pattern = generate_window(labeling)
    if labeling.params == (1, 1, 1, 1):
        rows = [_strand_json(s) for s in trace_strands(pattern)]
    else:
        params = derive_params(*labeling.params)
        rows = [_strand_json(s, c) for s, c in strand_classes(pattern, params)]
    loops = [r for r in rows if r["closed"]]
    _emit(args, {"strands": len(rows), "loops": len(loops), "strand_list": rows}, seed)
    return EXIT_OK


def _class_tally(result) -> dict:
    tally: dict[str, int] = {}
    for c in result.loops:
        tag = classify_loop(c).tag
        tally[tag] = tally.get(tag, 0) + 1
    return dict(sorted(tally.items()))


def cmd_enumerate(args) -> int:
    result = enumerate_loops(args.width, args.height, order=args.order, jobs=resolve_jobs(args.jobs),
                             max_bits=args.max_bits, allow_large=args.allow_large)
    doc = result.to_json(include_loops=True)
    doc["class_tally"] = _class_tally(result)
    if args.format == "svg-dir":
        if not args.out:
            raise UsageError("--format svg-dir needs --out DIR")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        style = _style(args)
        for k, c in enumerate(result.loops):
            _write_svg(str(out / f"loop_{k:04d}.svg"), render_svg(c, style))
        (out / "index.json").write_text(_document(args, doc))
        return EXIT_OK
    _emit(args, doc)
    return EXIT_OK


def cmd_extremal(args) -> int:
    if args.max_sum is not None:
        sizes = [(w, h) for w in range(1, args.max_sum) for h in range(1, args.max_sum)
                 if w % 2 and h % 2 and w + h <= args.max_sum]
    elif args.width is not None and args.height is not None:
        sizes = [(args.width, args.height)]
    else:
        raise UsageError("give --width and --height, or --max-sum")
    jobs = resolve_jobs(args.jobs)
    reports = []
    ok = True
    for w, h in sizes:
        result = enumerate_loops(w, h, jobs=jobs, max_bits=args.max_bits,
                                 allow_large=args.allow_large)
        rep = extremal_report(w, h, result=result, strict=False)
        ok &= rep.ok
        body = rep.to_json()
        if args.open_case and w % 4 == 3 and h % 4 == 3 and min(w, h) > 3:
            body["open_case"] = search_open_case(w, h, jobs=jobs).to_json()
        reports.append(body)
        if args.figure and len(sizes) == 1:
            from .plotting import extremal_figure_svg
            _write_svg(args.figure, extremal_figure_svg(result))
    _emit(args, {"reports": reports, "all_checks_pass": ok})
    if not ok:
        print("theorem check failed; see FAIL entries in the report", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_ls_count(args) -> int:
    params = derive_params(*parse_quad(args.params))
    res = count_patterns(params)
    out = {"case": res.case, "expression": res.expression, "params": params.to_json(),
           "formula": res.to_json()["value"], "value": res.to_json()["value"]}
    code = EXIT_OK
    if args.oracle:
        oracle = brute_force_count(params, jobs=resolve_jobs(args.jobs))
        out["oracle"] = oracle
        if oracle != res.value:
            print(f"formula {res.value} and oracle {oracle} disagree", file=sys.stderr)
            code = EXIT_VIOLATION
    _emit(args, out)
    return code


def cmd_ls_classify(args) -> int:
    labeling = _labeling_from_doc(_load_json(args.input))
    params = derive_params(*labeling.params)
    pattern = generate_window(labeling)
    rows = [_strand_json(s, c) for s, c in strand_classes(pattern, params)]
    _emit(args, {"params": params.to_json(), "tally": class_tally(pattern, params),
                 "strands": rows})
    return EXIT_OK


def cmd_ls_phi(args) -> int:
    params = derive_params(*parse_quad(args.params))
    code = RectangleCode.parse(args.code)
    labeling = phi_decode(code, params, _window(args.window) if args.window else None)
    result = _pattern_json(labeling)
    back = phi_encode(generate_window(labeling), params)
    result["code"] = code.to_text()
    result["round_trip"] = back == code
    _emit(args, result)
    if not result["valid"] or not result["round_trip"]:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_ls_dilate(args) -> int:
    if args.inputs:
        labelings = [_labeling_from_doc(_load_json(p)) for p in args.inputs]
        sigma = _ints(args.sigma)
    else:
        labelings = fig4_inputs()
        sigma = _ints(args.sigma) if args.sigma else FIG4_SIGMA
    out = dilate_overlay(labelings, args.g, sigma)
    result = _pattern_json(out)
    result["inputs_valid"] = [not validate_compatibility(generate_window(l)) for l in labelings]
    result["sigma"] = list(sigma)
    if args.render:
        _write_svg(args.render, render_svg(generate_window(out), _style(args)))
    _emit(args, result)
    return EXIT_OK if result["valid"] or not all(result["inputs_valid"]) else EXIT_VIOLATION


def cmd_tri_sat(args) -> int:
    res = ab_triangular_sat(args.a, args.b, args.side)
    _emit(args, res.to_json())
    return EXIT_OK


def cmd_tri_unique(args) -> int:
    pattern = make_21_triangular(((0, 0), (2, 0)), args.window)
    complete, checked = hexagons_21(pattern)
    result = {"a": 2, "b": 1, "window": pattern.window.as_list(),
              "stitches": [[list(p), list(q)] for p, q in pattern.stitches()],
              "violations": len(pattern.violations()),
              "hexagons_complete": complete, "hexagons_checked": checked}
    if args.render:
        _write_svg(args.render, render_svg(pattern, _style(args)))
    _emit(args, result)
    return EXIT_OK if not result["violations"] and complete == checked else EXIT_VIOLATION


def cmd_phi_search(args) -> int:
    dirs = DirectionSet.parse(args.dirs)
    res = search_finite_components(dirs, args.seed, args.budget, args.window,
                                   strategy=args.strategy, limit=args.limit,
                                   jobs=resolve_jobs(args.jobs), max_radius=args.max_radius)
    body = res.to_json()
    code = EXIT_OK
    if dirs.dirs == TRIANGULAR:
        reports = [check_divisibility_16(c) for c in res.components]
        body["divisibility_16"] = [r.to_json() for r in reports]
        body["vertex_histograms"] = [vertex_histogram(c).to_json()["counts"] for c in res.components]
        bad = [r for r in reports if not r.ok]
        if bad:
            print(f"COUNTEREXAMPLE: finite component with {bad[0].order} vertices", file=sys.stderr)
            code = EXIT_VIOLATION
    _emit(args, body, args.seed)
    return code


def cmd_render(args) -> int:
    style = _style(args)
    if args.preset:
        name = args.preset.lower()
        if name == "fig6":
            text = render_classified(generate_window(fig6_labeling()), derive_params(2, 2, 3, 1), style)
        elif name == "fig4":
            out = dilate_overlay(fig4_inputs(), 3, FIG4_SIGMA)
            text = render_svg(generate_window(out), style)
        elif name == "tri21":
            text = render_svg(make_21_triangular(((0, 0), (2, 0)), 24), style)
        else:
            text = render_svg(kind_canonical(parse_preset(args.preset)), style)
    elif args.input:
        doc = _load_json(args.input)
        body = doc.get("result", doc)
        if "vertices" in body:
            text = render_svg(loop_from_json(body), style)
        else:
            labeling = _labeling_from_doc(doc)
            pattern = generate_window(labeling)
            if args.classes and labeling.params != (1, 1, 1, 1):
                text = render_classified(pattern, derive_params(*labeling.params), style)
            else:
                text = render_svg(pattern, style)
    else:
        raise UsageError("give --input FILE or --preset NAME")
    if args.out:
        _write_svg(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hitoz", description="Hitomezashi pattern toolkit")
    p.add_argument("--version", action="version", version=f"hitoz {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="stitches of a labeled window")
    _add_labeling(g)
    g.add_argument("--out")
    g.set_defaults(handler=cmd_generate)

    t = sub.add_parser("trace", help="strands and loops of a labeled window")
    _add_labeling(t)
    t.add_argument("--out")
    t.set_defaults(handler=cmd_trace)

    e = sub.add_parser("enumerate", help="all loops of given width and height")
    e.add_argument("--width", type=int, required=True)
    e.add_argument("--height", type=int, required=True)
    e.add_argument("--format", choices=("json", "svg-dir"), default="json")
    e.add_argument("--order", choices=ORDERS, default="lex")
    e.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS)
    e.add_argument("--allow-large", action="store_true")
    e.add_argument("--out")
    _add_jobs(e)
    _add_style(e)
    e.set_defaults(handler=cmd_enumerate)

    x = sub.add_parser("extremal", help="check length and area bounds over complete censuses")
    x.add_argument("--width", type=int)
    x.add_argument("--height", type=int)
    x.add_argument("--max-sum", type=int, help="every odd w, h with w + h <= this")
    x.add_argument("--open-case", action="store_true",
                   help="also report the longest non-rug loops when both sides are 3 mod 4")
    x.add_argument("--figure", help="write a length/area scatter SVG (single size only)")
    x.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS)
    x.add_argument("--allow-large", action="store_true")
    x.add_argument("--out")
    _add_jobs(x)
    x.set_defaults(handler=cmd_extremal)

    ls = sub.add_parser("longstitch", help="(a,b,c,d) long-stitch patterns")
    lsub = ls.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = lsub.add_parser("count", help="number of patterns, by formula and optionally by oracle")
    c.add_argument("-p", "--params", required=True)
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--out")
    _add_jobs(c)
    c.set_defaults(handler=cmd_ls_count)
    k = lsub.add_parser("classify", help="strand classes of a labeled window")
    k.add_argument("--input", required=True)
    k.add_argument("--out")
    k.set_defaults(handler=cmd_ls_classify)
    f = lsub.add_parser("phi", help="decode a rectangle code u:v:sigma")
    f.add_argument("--code", required=True)
    f.add_argument("-p", "--params", required=True)
    f.add_argument("--window")
    f.add_argument("--out")
    f.set_defaults(handler=cmd_ls_phi)
    dl = lsub.add_parser("dilate", help="overlay g dilated patterns")
    dl.add_argument("-g", type=int, default=3)
    dl.add_argument("--sigma", help="permutation like 2,3,1")
    dl.add_argument("inputs", nargs="*", help="labeling JSON files (default: built-in demo inputs)")
    dl.add_argument("--render")
    dl.add_argument("--out")
    _add_style(dl)
    dl.set_defaults(handler=cmd_ls_dilate)

    tr = sub.add_parser("tri", help="triangular long-stitch patterns")
    tsub = tr.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = tsub.add_parser("sat", help="all (a,b)-triangular patterns on a window")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--side", type=int)
    s.add_argument("--out")
    s.set_defaults(handler=cmd_tri_sat)
    u = tsub.add_parser("unique", help="the (2,1) pattern, grown from one stitch")
    u.add_argument("--window", type=int, default=24)
    u.add_argument("--render")
    u.add_argument("--out")
    _add_style(u)
    u.set_defaults(handler=cmd_tri_unique)

    ph = sub.add_parser("phi", help="patterns of type Phi")
    psub = ph.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = psub.add_parser("search", help="seeded search for finite components")
    q.add_argument("--dirs", default="1,0;0,1;1,1")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--budget", type=int, default=10_000)
    q.add_argument("--window", type=int, default=48, help="side of the square window")
    q.add_argument("--strategy", choices=("sample", "closure"), default="sample")
    q.add_argument("--limit", type=int, help="stop after this many findings")
    q.add_argument("--max-radius", type=int, default=8, help="largest box for 'closure'")
    q.add_argument("--out")
    _add_jobs(q)
    q.set_defaults(handler=cmd_phi_search)

    r = sub.add_parser("render", help="SVG for a labeling, loop or named preset")
    r.add_argument("--input")
    r.add_argument("--preset", help="rug:WxH, cross:..., fig4, fig6 or tri21")
    r.add_argument("--classes", action="store_true", help="color long-stitch strands by class")
    r.add_argument("--out")
    _add_style(r)
    r.set_defaults(handler=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (HitomezashiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
