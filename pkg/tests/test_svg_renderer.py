"""SVG rendering."""
import xml.etree.ElementTree as ET
from fractions import Fraction

from data.models.schemas import Family, Halfplane
from analysis.enumeration import enumerate_realized, realize_witness
from output.svg_renderer import auto_viewport, clip_to_halfplane, render_spec, render_svg
from conftest import point


def _elements(svg: str, tag: str):
    return [el for el in ET.fromstring(svg).iter() if el.tag.endswith(tag)]


def test_render_is_deterministic(three_disjoint):
    spec = render_spec(three_disjoint.family)
    assert render_svg(spec) == render_svg(spec)


def test_bodies_and_witnesses_drawn(three_disjoint):
    family = three_disjoint.family
    witnesses = [realize_witness(family, e) for e in enumerate_realized(family)]
    svg = render_svg(render_spec(family, witnesses))
    paths = _elements(svg, "path")
    assert len([p for p in paths if p.get("fill-opacity") == "0.35"]) == 3
    assert len([p for p in paths if p.get("stroke-dasharray")]) == 8
    assert [t.text for t in _elements(svg, "text")] == ["0", "1", "2"]


def test_segments_are_strokes(four_one):
    svg = render_svg(render_spec(four_one.family))
    strokes = [p for p in _elements(svg, "path") if p.get("fill") == "none"]
    assert len(strokes) == 4


def test_points_are_circles(convex_quad):
    assert len(_elements(render_svg(render_spec(convex_quad)), "circle")) == 4


def test_empty_family():
    svg = render_svg(render_spec(Family(())))
    assert _elements(svg, "path") == []
    assert svg.endswith("</svg>\n") or svg.endswith("/>\n")


def test_auto_viewport_padding(convex_quad):
    low, high = auto_viewport(render_spec(convex_quad))
    assert low == point(Fraction(-3, 2), Fraction(-3, 2))
    assert high == point(Fraction(13, 2), Fraction(13, 2))


def test_clip_to_halfplane():
    square = [point(0, 0), point(2, 0), point(2, 2), point(0, 2)]
    clipped = clip_to_halfplane(square, Halfplane(1, 0, 1))
    assert set(clipped) == {point(0, 0), point(1, 0), point(1, 2), point(0, 2)}
    assert clip_to_halfplane(square, Halfplane(1, 0, -1)) == []
