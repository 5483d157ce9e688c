from __future__ import annotations

import re
import xml.etree.ElementTree as ET

import pytest

from hitomezashi.canonical import construct_loop, make_rug
from hitomezashi.core import Window, generate_window, ordinary_labeling
from hitomezashi.errors import DomainError
from hitomezashi.longstitch import derive_params, fig6_labeling
from hitomezashi.multigrid import TRIANGULAR, make_21_triangular, search_finite_components
from hitomezashi.render import (DEFAULT_PALETTE, RenderStyle, parse_palette, render_classified,
                                render_component, render_svg)

NS = "{http://www.w3.org/2000/svg}"


def _stitch_lines(svg):
    root = ET.fromstring(svg)
    return [e for e in root.iter(NS + "line") if e.get("class") == "stitch"]


def test_rug_11x13_has_84_lines():
    svg = render_svg(construct_loop(make_rug(11, 13), 11, 13))
    assert len(_stitch_lines(svg)) == 84


def test_empty_pattern():
    svg = render_svg(generate_window(ordinary_labeling(Window(0, -1, 0, -1))))
    root = ET.fromstring(svg)
    assert list(root.iter(NS + "line")) == []


def test_one_line_per_stitch():
    pattern = generate_window(fig6_labeling(Window(0, 12, 0, 12)))
    assert len(_stitch_lines(render_svg(pattern))) == len(pattern)


def test_fig6_colors():
    svg = render_classified(generate_window(fig6_labeling()), derive_params(2, 2, 3, 1))
    pal = dict(DEFAULT_PALETTE)
    colors = {e.get("stroke") for e in _stitch_lines(svg)}
    assert {pal["Rectangle"], pal["AccordionH"]} <= colors


def test_deterministic_and_y_flipped():
    loop = construct_loop(make_rug(3, 3), 3, 3)
    a, b = render_svg(loop), render_svg(loop)
    assert a == b
    # the lowest lattice row is drawn at the largest SVG y
    ys = [float(v) for v in re.findall(r'y1="([-\d.]+)"', a)]
    style = RenderStyle()
    assert max(ys) == pytest.approx(3 * style.unit + style.margin)


def test_grid_option():
    pattern = generate_window(ordinary_labeling(Window(0, 2, 0, 2)))
    svg = render_svg(pattern, RenderStyle(grid=True))
    assert len([e for e in ET.fromstring(svg).iter(NS + "line") if e.get("class") == "grid"]) == 6


def test_triangular_geometry():
    svg = render_svg(make_21_triangular(((0, 0), (2, 0)), 8))
    lines = _stitch_lines(svg)
    assert lines
    lengths = {round(((float(e.get("x2")) - float(e.get("x1"))) ** 2
                      + (float(e.get("y2")) - float(e.get("y1"))) ** 2) ** 0.5, 2) for e in lines}
    assert lengths == {40.0}  # every stitch is two units long in equilateral geometry


def test_component_render():
    res = search_finite_components(TRIANGULAR, 7, 200, 48, limit=1)
    svg = render_component(res.findings[0].component, TRIANGULAR)
    assert len(_stitch_lines(svg)) == len(res.findings[0].component.edges)


def test_palette_parsing():
    pal = dict(parse_palette("Rectangle=#000000"))
    assert pal["Rectangle"] == "#000000"
    with pytest.raises(DomainError):
        parse_palette("Blob=#fff")
    with pytest.raises(DomainError):
        RenderStyle(palette=(("Rectangle", "#fff"),))
    with pytest.raises(DomainError):
        RenderStyle(unit=0)
