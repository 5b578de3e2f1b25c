"""
Seeded random families on the rational grid.
Every generator returns a family in general position (strict: no shared
vertices, no three vertices collinear).
"""
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple, Union
import numpy as np
import structlog

from config.constants import BodyClass
from config.settings import get_settings
from data.models.errors import InvalidParameter, SamplingExhausted
from data.models.schemas import ConvexBody, Family, Rational2
from geometry.predicates import IntPoint, bodies_intersect, direction_key, make_body
from data.documents import parse_rational

logger = structlog.get_logger()
settings = get_settings()

Seed = Union[int, np.random.Generator]


class GridPoints:
    """Accepted grid points (numerators over one denominator) kept in general position."""

    def __init__(self, denominator: int):
        self.denominator = denominator
        self.points: List[IntPoint] = []
        self._taken = set()

    def fits(self, candidates: Sequence[IntPoint]) -> bool:
        """True if all candidates can join without a duplicate or collinear triple."""
        trial = list(self.points)
        taken = set(self._taken)
        for p in candidates:
            if p in taken:
                return False
            directions = set()
            for q in trial:
                key = direction_key(q[0] - p[0], q[1] - p[1])
                if key in directions:
                    return False
                directions.add(key)
            trial.append(p)
            taken.add(p)
        return True

    def add(self, candidates: Sequence[IntPoint]) -> None:
        for p in candidates:
            self.points.append(p)
            self._taken.add(p)

    def to_point(self, p: IntPoint) -> Rational2:
        return Rational2(Fraction(p[0], self.denominator), Fraction(p[1], self.denominator))


def default_extent(n: int) -> int:
    """Grid half-width; grows with n so disjoint bodies keep fitting."""
    return max(settings.search_extent, 2 * (isqrt(n) + 1))


def _coordinate(rng: np.random.Generator, limit: int) -> int:
    return int(rng.integers(-limit, limit + 1))


def draw_vertices(
    rng: np.random.Generator,
    body_class: BodyClass,
    extent: int,
    denominator: int,
    radius: Fraction,
    sides: int = 3,
) -> List[IntPoint]:
    """Raw vertex numerators of one body of the given class.

    Segments take two free grid points; polygons take `sides` points within
    radius (Chebyshev) of a random center.
    """
    limit = extent * denominator
    if body_class == BodyClass.SEGMENTS:
        return [(_coordinate(rng, limit), _coordinate(rng, limit)) for _ in range(2)]

    reach = max(1, int(radius * denominator))
    cx = _coordinate(rng, limit - reach)
    cy = _coordinate(rng, limit - reach)
    return [(cx + _coordinate(rng, reach), cy + _coordinate(rng, reach)) for _ in range(sides)]


def _expected_vertices(body_class: BodyClass, sides: int) -> int:
    return 2 if body_class == BodyClass.SEGMENTS else sides


def random_family(
    n: int,
    body_class: BodyClass,
    seed: Seed,
    extent: Optional[int] = None,
    denominator: Optional[int] = None,
    max_sides: int = 3,
) -> Family:
    """Random general-position family of n bodies of one class.

    Args:
        n: Number of bodies
        body_class: segments, disjoint-convex (pairwise disjoint polygons) or convex
        seed: Integer seed or an existing numpy Generator
        extent: Grid half-width (default grows with n)
        denominator: Grid denominator (default settings.search_grid_denominator)
        max_sides: Polygons get between 3 and max_sides vertices

    Returns:
        Family with body ids 0..n-1

    Raises:
        SamplingExhausted: no body could be placed within settings.max_attempts
    """
    if n < 0:
        raise InvalidParameter("n must be nonnegative", n=n)
    rng = np.random.default_rng(seed)
    extent = default_extent(n) if extent is None else extent
    denominator = denominator or settings.search_grid_denominator
    radius = parse_rational(settings.search_body_radius)
    grid = GridPoints(denominator)
    bodies: List[ConvexBody] = []

    for body_id in range(n):
        for attempt in range(settings.max_attempts):
            sides = int(rng.integers(3, max_sides + 1)) if max_sides > 3 else 3
            raw = draw_vertices(rng, body_class, extent, denominator, radius, sides)
            if not grid.fits(raw):
                continue
            body = make_body(body_id, [grid.to_point(p) for p in raw])
            if len(body.vertices) != _expected_vertices(body_class, sides):
                continue
            if body_class == BodyClass.DISJOINT_CONVEX and any(
                bodies_intersect(body, other) for other in bodies
            ):
                continue
            grid.add(raw)
            bodies.append(body)
            break
        else:
            raise SamplingExhausted(
                "could not place a body in general position",
                body=body_id, attempts=settings.max_attempts,
            )

    return Family(tuple(bodies))


def random_segment_family(n: int, seed: Seed, **kwargs) -> Family:
    return random_family(n, BodyClass.SEGMENTS, seed, **kwargs)


def random_disjoint_convex_family(n: int, seed: Seed, **kwargs) -> Family:
    return random_family(n, BodyClass.DISJOINT_CONVEX, seed, **kwargs)


def random_convex_family(n: int, seed: Seed, **kwargs) -> Family:
    return random_family(n, BodyClass.CONVEX, seed, **kwargs)


def random_points_family(n: int, seed: Seed, extent: Optional[int] = None,
                         denominator: Optional[int] = None) -> Family:
    """n single-point bodies in general position."""
    rng = np.random.default_rng(seed)
    extent = default_extent(n) if extent is None else extent
    denominator = denominator or settings.search_grid_denominator
    grid = GridPoints(denominator)
    bodies = []
    limit = extent * denominator
    for body_id in range(n):
        for _ in range(settings.max_attempts):
            p = (_coordinate(rng, limit), _coordinate(rng, limit))
            if grid.fits([p]):
                grid.add([p])
                bodies.append(ConvexBody(body_id, (grid.to_point(p),)))
                break
        else:
            raise SamplingExhausted("could not place a point in general position", body=body_id)
    return Family(tuple(bodies))


def with_interior_body(family: Family, seed: Seed) -> Family:
    """Append a point body strictly inside the hull of the others' vertices.

    The point is a rational convex combination of three vertices with
    positive weights, nudged until general position holds.
    """
    rng = np.random.default_rng(seed)
    vertices = family.vertices()
    if len(vertices) < 3:
        raise InvalidParameter("need at least three vertices", vertices=len(vertices))

    existing = set(vertices)
    for _ in range(settings.max_attempts):
        picks = [vertices[int(i)] for i in rng.choice(len(vertices), size=3, replace=False)]
        weights = [int(w) for w in rng.integers(1, 17, size=3)]
        total = sum(weights)
        p = Rational2(
            sum(Fraction(w) * v.x for w, v in zip(weights, picks)) / total,
            sum(Fraction(w) * v.y for w, v in zip(weights, picks)) / total,
        )
        if p in existing or _collinear_with_any(p, vertices):
            continue
        bodies = family.bodies + (ConvexBody(family.n, (p,)),)
        return Family(bodies)
    raise SamplingExhausted("no interior point in general position", attempts=settings.max_attempts)


def _collinear_with_any(p: Rational2, vertices: Sequence[Rational2]) -> bool:
    directions = set()
    for q in vertices:
        dx, dy = q.x - p.x, q.y - p.y
        scale = dx.denominator * dy.denominator
        key = direction_key(int(dx * scale), int(dy * scale))
        if key in directions:
            return True
        directions.add(key)
    return False
