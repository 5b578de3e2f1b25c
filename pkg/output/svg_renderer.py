"""
SVG rendering of families and witness halfplanes.
Output is byte-identical for identical input; the y axis points up.
"""
from fractions import Fraction
from typing import List, Optional, Tuple
import xml.etree.ElementTree as ET
import structlog

from config.settings import get_settings
from data.documents import parse_rational
from data.models.schemas import ConvexBody, Halfplane, Rational2, RenderSpec
from geometry.predicates import bounding_box

logger = structlog.get_logger()
settings = get_settings()

Box = Tuple[Rational2, Rational2]

BODY_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]


def auto_viewport(spec: RenderSpec) -> Box:
    """Bounding box of every vertex padded by a tenth of its size (at least 3/2)."""
    box = bounding_box(spec.family)
    if box is None:
        return Rational2(-1, -1), Rational2(1, 1)
    low, high = box
    pad = max((high.x - low.x) / 10, (high.y - low.y) / 10, Fraction(3, 2))
    return Rational2(low.x - pad, low.y - pad), Rational2(high.x + pad, high.y + pad)


def clip_to_halfplane(polygon: List[Rational2], h: Halfplane) -> List[Rational2]:
    """Part of a convex polygon inside h (one Sutherland-Hodgman pass)."""
    out: List[Rational2] = []
    for i, current in enumerate(polygon):
        previous = polygon[i - 1]
        current_in = h.value(current) <= 0
        previous_in = h.value(previous) <= 0
        if current_in != previous_in:
            a, b = h.value(previous), h.value(current)
            t = a / (a - b)
            out.append(Rational2(previous.x + t * (current.x - previous.x),
                                 previous.y + t * (current.y - previous.y)))
        if current_in:
            out.append(current)
    return out


class _Canvas:
    """Maps world coordinates into a square pixel canvas, y flipped."""

    def __init__(self, viewport: Box, size: int):
        self.low, self.high = viewport
        self.size = size
        self.span = max(self.high.x - self.low.x, self.high.y - self.low.y)

    def x(self, value: Fraction) -> str:
        return _number((value - self.low.x) / self.span * self.size)

    def y(self, value: Fraction) -> str:
        return _number((self.high.y - value) / self.span * self.size)

    def length(self, value: Fraction) -> str:
        return _number(value / self.span * self.size)

    def path(self, points: List[Rational2], closed: bool) -> str:
        parts = [f"{'M' if i == 0 else 'L'}{self.x(p.x)} {self.y(p.y)}" for i, p in enumerate(points)]
        return "".join(parts) + ("z" if closed else "")


def _number(value: Fraction) -> str:
    return f"{float(value):.3f}"


def _draw_body(group: ET.Element, canvas: _Canvas, body: ConvexBody, stroke: str) -> None:
    color = BODY_COLORS[body.id % len(BODY_COLORS)]
    vertices = list(body.vertices)
    if len(vertices) == 1:
        ET.SubElement(group, "circle", cx=canvas.x(vertices[0].x), cy=canvas.y(vertices[0].y),
                      r=stroke, fill=color)
    elif len(vertices) == 2:
        element = ET.SubElement(group, "path", d=canvas.path(vertices, closed=False),
                                stroke=color, fill="none")
        element.set("stroke-width", stroke)
    else:
        element = ET.SubElement(group, "path", d=canvas.path(vertices, closed=True),
                                stroke=color, fill=color)
        element.set("fill-opacity", "0.35")
        element.set("stroke-width", stroke)

    cx = sum((v.x for v in vertices), Fraction(0)) / len(vertices)
    cy = sum((v.y for v in vertices), Fraction(0)) / len(vertices)
    label = ET.SubElement(group, "text", x=canvas.x(cx), y=canvas.y(cy), fill="#000000")
    label.set("font-size", "12")
    label.text = str(body.id)


def _draw_witness(group: ET.Element, canvas: _Canvas, box: List[Rational2],
                  h: Halfplane, stroke: str) -> None:
    inside = clip_to_halfplane(box, h)
    if len(inside) >= 3:
        shade = ET.SubElement(group, "path", d=canvas.path(inside, closed=True), fill="#7f7f7f")
        shade.set("fill-opacity", "0.08")
    boundary = list(dict.fromkeys(p for p in inside if h.value(p) == 0))
    if len(boundary) >= 2:
        line = ET.SubElement(group, "path", d=canvas.path(boundary[:2], closed=False),
                             stroke="#555555", fill="none")
        line.set("stroke-width", stroke)
        line.set("stroke-dasharray", "4 2")


def render_svg(spec: RenderSpec) -> str:
    """Render bodies as filled polygons or strokes and witnesses as shaded halfplanes.

    Args:
        spec: Family, witnesses, viewport (None = auto) and stroke width

    Returns:
        SVG 1.1 document text
    """
    viewport = spec.viewport or auto_viewport(spec)
    size = settings.svg_canvas_size
    canvas = _Canvas(viewport, size)
    stroke = canvas.length(Fraction(spec.stroke_width))

    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width=f"{size}px", height=f"{size}px", viewBox=f"0 0 {size} {size}")
    low, high = viewport
    box = [low, Rational2(high.x, low.y), high, Rational2(low.x, high.y)]

    witnesses = ET.SubElement(root, "g", id="witnesses")
    for witness in spec.witnesses:
        _draw_witness(witnesses, canvas, box, witness.halfplane, stroke)

    bodies = ET.SubElement(root, "g", id="bodies")
    for body in spec.family.bodies:
        _draw_body(bodies, canvas, body, stroke)

    logger.debug("svg_rendered", bodies=spec.family.n, witnesses=len(spec.witnesses))
    return ET.tostring(root, encoding="unicode") + "\n"


def default_stroke_width() -> Fraction:
    return parse_rational(settings.svg_stroke_width)


def render_spec(family, witnesses=(), viewport: Optional[Box] = None) -> RenderSpec:
    """RenderSpec with the configured stroke width."""
    return RenderSpec(family, tuple(witnesses), viewport, default_stroke_width())
