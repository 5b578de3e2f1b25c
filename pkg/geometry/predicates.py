"""
Exact rational predicates: orientation, hulls, containment, intersection.
Every comparison is done on Fractions or scaled integers, never floats.
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import structlog

from config.settings import get_settings
from data.models.errors import AmbientError
from data.models.schemas import (
    ConvexBody, Family, GeneralPositionReport, Halfplane, Rational2, RationalLike
)

logger = structlog.get_logger()
settings = get_settings()

IntPoint = Tuple[int, int]


def cross(o: Rational2, a: Rational2, b: Rational2) -> Fraction:
    """Cross product (a - o) x (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orientation(p: Rational2, q: Rational2, r: Rational2) -> int:
    """Sign of (q - p) x (r - p); +1 when r is strictly left of p -> q."""
    value = cross(p, q, r)
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def convex_hull(points: Iterable[Rational2]) -> List[Rational2]:
    """Hull vertices in CCW order starting from the smallest (x, y).

    Collinear points are dropped, so an all-collinear input collapses to its
    two extremes (or a single point).

    Args:
        points: Nonempty collection of points, duplicates allowed

    Returns:
        Hull vertex list
    """
    pts = sorted(set(points))
    if len(pts) <= 1:
        return pts

    def chain(seq: Iterable[Rational2]) -> List[Rational2]:
        out: List[Rational2] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def make_body(body_id: int, points: Iterable[Rational2]) -> ConvexBody:
    """Build the body equal to the convex hull of the given points."""
    return ConvexBody(body_id, tuple(convex_hull(points)))


def is_canonical_polygon(vertices: Sequence[Rational2]) -> bool:
    """True when the vertex list equals its own hull up to rotation."""
    hull = convex_hull(vertices)
    if len(hull) != len(vertices):
        return False
    if len(vertices) <= 2:
        return set(hull) == set(vertices)
    start = list(vertices).index(hull[0]) if hull[0] in vertices else -1
    if start < 0:
        return False
    rotated = list(vertices[start:]) + list(vertices[:start])
    return rotated == hull


def body_in_halfplane(body: ConvexBody, h: Halfplane) -> bool:
    """Closed containment; checking the vertices suffices by convexity."""
    return all(h.contains(v) for v in body.vertices)


def _axes(body: ConvexBody) -> List[Tuple[Fraction, Fraction]]:
    axes = []
    for p, q in body.edges():
        dx, dy = q.x - p.x, q.y - p.y
        axes.append((-dy, dx))
        if len(body.vertices) == 2:
            axes.append((dx, dy))
    return axes


def bodies_intersect(a: ConvexBody, b: ConvexBody) -> bool:
    """True iff the closed bodies share a point (separating-axis test).

    Candidate axes are the edge normals of both bodies, plus the direction
    of every segment (collinear segments) and the difference of two points.
    """
    if len(a.vertices) == 1 and len(b.vertices) == 1:
        return a.vertices[0] == b.vertices[0]

    for ax, ay in _axes(a) + _axes(b):
        proj_a = [ax * v.x + ay * v.y for v in a.vertices]
        proj_b = [ax * v.x + ay * v.y for v in b.vertices]
        if max(proj_a) < min(proj_b) or max(proj_b) < min(proj_a):
            return False
    return True


def circle_point(t: RationalLike) -> Rational2:
    """Rational point ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)) on the unit circle."""
    t = Fraction(t)
    denominator = 1 + t * t
    return Rational2((1 - t * t) / denominator, 2 * t / denominator)


def scale_to_integers(points: Sequence[Rational2]) -> Tuple[int, List[IntPoint]]:
    """Multiply by the common denominator so every coordinate is an integer.

    Returns:
        (scale, integer coordinates) with scale * p == integer point
    """
    scale = 1
    for p in points:
        scale = lcm(scale, p.x.denominator, p.y.denominator)
    coords = [
        (p.x.numerator * (scale // p.x.denominator), p.y.numerator * (scale // p.y.denominator))
        for p in points
    ]
    return scale, coords


def direction_key(dx: int, dy: int) -> IntPoint:
    """Primitive direction with a canonical sign, shared by opposite vectors."""
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def require_planar(family: Family, operation: str) -> None:
    if not family.is_planar:
        raise AmbientError(
            f"{operation} needs a planar family", operation=operation, ambient=family.ambient.value
        )


def check_general_position(
    family: Family,
    allow_shared_vertices: bool = False
) -> GeneralPositionReport:
    """Check that vertices are pairwise distinct and no three are collinear.

    Args:
        family: Planar family
        allow_shared_vertices: Treat identical vertices of different bodies
            as one point instead of reporting a duplicate

    Returns:
        Report with ok flag, or the first violation found
    """
    require_planar(family, "check_general_position")
    vertices = family.vertices()

    if not allow_shared_vertices:
        seen = set()
        for v in vertices:
            if v in seen:
                return GeneralPositionReport(False, "duplicate", (v,))
            seen.add(v)

    points = list(dict.fromkeys(vertices))
    _, coords = scale_to_integers(points)

    for i, (px, py) in enumerate(coords):
        directions: Dict[IntPoint, int] = {}
        for j, (qx, qy) in enumerate(coords):
            if j == i:
                continue
            key = direction_key(qx - px, qy - py)
            if key in directions:
                k = directions[key]
                return GeneralPositionReport(False, "collinear", (points[i], points[k], points[j]))
            directions[key] = j

    return GeneralPositionReport(True)


def bounding_box(family: Family) -> Optional[Tuple[Rational2, Rational2]]:
    """Axis-aligned box (min corner, max corner) of all vertices."""
    vertices = family.vertices()
    if not vertices:
        return None
    xs = [v.x for v in vertices]
    ys = [v.y for v in vertices]
    return Rational2(min(xs), min(ys)), Rational2(max(xs), max(ys))


def _min_chebyshev_distance(vertices: Sequence[Rational2]) -> Optional[Fraction]:
    best: Optional[Fraction] = None
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            d = max(abs(vertices[i].x - vertices[j].x), abs(vertices[i].y - vertices[j].y))
            if d > 0 and (best is None or d < best):
                best = d
    return best


def _shifted(family: Family, delta: Fraction, quadratic: bool) -> Family:
    bodies = []
    index = 0
    for body in family.bodies:
        moved = []
        for v in body.vertices:
            if quadratic:
                moved.append(Rational2(v.x, v.y + index * index * delta))
            else:
                moved.append(Rational2(v.x + index * delta, v.y))
            index += 1
        bodies.append(make_body(body.id, moved))
    return Family(tuple(bodies), family.ambient, family.levels)


def perturb_family(family: Family, exponent: Optional[int] = None) -> Family:
    """Deterministic rational perturbation toward general position.

    The i-th vertex in global order moves by i * delta along x, where delta
    is the smallest nonzero Chebyshev distance between vertices divided by
    2^exponent. Collinear triples on a horizontal line survive an x shift,
    so a second pass moves vertex i by i^2 * delta along y when needed.

    Args:
        family: Planar family
        exponent: Power of two dividing the minimum distance

    Returns:
        Perturbed family (hulls recomputed)
    """
    require_planar(family, "perturb_family")
    exponent = settings.perturb_exponent if exponent is None else exponent
    distance = _min_chebyshev_distance(family.vertices())
    if distance is None:
        return family

    delta = distance / (2 ** exponent)
    perturbed = _shifted(family, delta, quadratic=False)
    report = check_general_position(perturbed)
    if not report.ok:
        perturbed = _shifted(perturbed, delta, quadratic=True)
        logger.debug("perturbation_second_pass", kind=report.kind)

    logger.info("family_perturbed", n=family.n, delta=str(delta))
    return perturbed


def lift_point(p: Rational2, level: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Map (x, y) to (x, y, level)."""
    return p.x, p.y, Fraction(level)


def body_in_vertical_halfspace(body: ConvexBody, level: int, h: Halfplane) -> bool:
    """Containment of a lifted body in the vertical halfspace a*x + b*y + 0*z <= c."""
    normal = (h.a, h.b, Fraction(0))
    for v in body.vertices:
        x, y, z = lift_point(v, level)
        if normal[0] * x + normal[1] * y + normal[2] * z > h.c:
            return False
    return True
