"""
Realized-subset enumeration by rotating a line around every vertex.
Also builds exact witness halfplanes and a sampled cross-check oracle.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple
import numpy as np
import structlog

from config.constants import BodyKind
from config.settings import get_settings
from data.cache import get_cache
from data.documents import family_digest
from data.models.errors import GeneralPositionViolation, InvariantViolation
from data.models.schemas import (
    Configuration, EdgeSet, Family, Halfplane, Rational2, Witness
)
from geometry.predicates import (
    IntPoint, body_in_halfplane, bounding_box, check_general_position,
    require_planar, scale_to_integers
)

logger = structlog.get_logger()
settings = get_settings()

# (tail index, head index, tail pushed out, head pushed out)
RawConfiguration = Tuple[int, int, bool, bool]


@dataclass(frozen=True)
class PointTable:
    """Distinct vertices of a family, scaled to integers, with owning bodies."""
    points: Tuple[Rational2, ...]
    coords: Tuple[IntPoint, ...]
    owners: Tuple[int, ...]
    scale: int

    def owner_ids(self, index: int) -> List[int]:
        mask = self.owners[index]
        return [i for i in range(mask.bit_length()) if mask >> i & 1]


@lru_cache(maxsize=256)
def point_table(family: Family) -> PointTable:
    owners: Dict[Rational2, int] = {}
    for body in family.bodies:
        for v in body.vertices:
            owners[v] = owners.get(v, 0) | (1 << body.id)
    points = tuple(owners)
    scale, coords = scale_to_integers(points)
    return PointTable(points, tuple(coords), tuple(owners[p] for p in points), scale)


def pseudo_angle(dx: int, dy: int) -> Fraction:
    """Exact value in [0, 4) increasing with the angle of (dx, dy)."""
    if dy >= 0:
        if dx >= 0:
            return Fraction(dy, dx + dy)
        return 1 + Fraction(-dx, -dx + dy)
    if dx < 0:
        return 2 + Fraction(-dy, -dx - dy)
    return 3 + Fraction(dx, dx - dy)


def tangent_bound(n: int) -> int:
    """Upper bound 2n(n-1) + 2 on realized subsets of n segments."""
    return 2 * n * (n - 1) + 2


def _sweep(family: Family) -> Dict[int, RawConfiguration]:
    """First terminal configuration for every subset met by the sweep.

    For each head vertex the other points are sorted by angle. The points
    strictly left of the directed line head -> tail form a contiguous
    cyclic window after the tail in that order; they are exactly the points
    strictly right of tail -> head, i.e. the excluded side. The window is
    advanced with two pointers while per-body counts keep the mask of
    bodies with an excluded vertex.
    """
    table = point_table(family)
    full = family.full_mask
    coords = table.coords
    owners = table.owners
    owner_ids = [table.owner_ids(i) for i in range(len(coords))]
    found: Dict[int, RawConfiguration] = {}

    for head, (hx, hy) in enumerate(coords):
        others = [j for j in range(len(coords)) if j != head]
        others.sort(key=lambda j: pseudo_angle(coords[j][0] - hx, coords[j][1] - hy))
        size = len(others)
        counts = [0] * family.n
        blocked = 0
        end = 0

        for i in range(size):
            tail = others[i]
            tx, ty = coords[tail][0] - hx, coords[tail][1] - hy
            if end < i + 1:
                end = i + 1
            while end < i + size:
                w = others[end % size]
                wx, wy = coords[w][0] - hx, coords[w][1] - hy
                if tx * wy - ty * wx <= 0:
                    break
                for b in owner_ids[w]:
                    if counts[b] == 0:
                        blocked |= 1 << b
                    counts[b] += 1
                end += 1

            for tail_out in (False, True):
                for head_out in (False, True):
                    mask = blocked
                    if tail_out:
                        mask |= owners[tail]
                    if head_out:
                        mask |= owners[head]
                    subset = full & ~mask
                    if subset not in found:
                        found[subset] = (tail, head, tail_out, head_out)

            if end > i + 1:
                w = others[(i + 1) % size]
                for b in owner_ids[w]:
                    counts[b] -= 1
                    if counts[b] == 0:
                        blocked &= ~(1 << b)

    return found


@lru_cache(maxsize=256)
def _cached_sweep(family: Family) -> Mapping[int, RawConfiguration]:
    return MappingProxyType(_sweep(family))


def _require_enumerable(family: Family) -> None:
    require_planar(family, "enumerate_realized")
    report = check_general_position(family, allow_shared_vertices=True)
    if not report.ok:
        raise GeneralPositionViolation(report.kind, report.points)


def _strict_segment_family(family: Family) -> bool:
    vertices = family.vertices()
    return (
        all(body.kind == BodyKind.SEGMENT for body in family.bodies)
        and len(set(vertices)) == len(vertices)
    )


def _compute_edges(family: Family) -> Tuple[int, ...]:
    if not settings.cache_enabled:
        return EdgeSet.from_masks(family.n, _cached_sweep(family)).edges

    cache = get_cache()
    digest = family_digest(family)
    cached = cache.get_edges(digest)
    if cached is not None:
        return cached
    edges = EdgeSet.from_masks(family.n, _cached_sweep(family)).edges
    cache.cache_edges(digest, edges)
    return edges


def enumerate_realized(family: Family) -> EdgeSet:
    """Exact set of subfamilies realized by closed halfplanes.

    Args:
        family: Planar family; no three distinct vertices collinear
            (identical vertices shared between bodies are allowed)

    Returns:
        EdgeSet sorted ascending, always holding 0 and the full mask

    Raises:
        GeneralPositionViolation: with the offending triple
    """
    _require_enumerable(family)
    edges = EdgeSet(family.n, _compute_edges(family))

    if _strict_segment_family(family) and len(edges) > tangent_bound(family.n):
        raise InvariantViolation(
            "segment family exceeds the tangent bound",
            n=family.n, edges=len(edges), bound=tangent_bound(family.n),
        )

    logger.debug("enumerated_edges", n=family.n, points=len(point_table(family).points),
                 edges=len(edges))
    return edges


def edge_configurations(family: Family) -> Dict[int, Configuration]:
    """Terminal configuration behind every nontrivial realized subset."""
    _require_enumerable(family)
    table = point_table(family)
    configurations = {}
    for subset, (tail, head, tail_out, head_out) in _cached_sweep(family).items():
        if subset in (0, family.full_mask):
            continue
        configurations[subset] = Configuration(
            table.points[tail], table.points[head], tail_out, head_out
        )
    return configurations


def _classifies(family: Family, h: Halfplane, subset: int) -> bool:
    return all(body_in_halfplane(body, h) == bool(subset >> body.id & 1)
               for body in family.bodies)


def _trivial_witness(family: Family, subset: int) -> Witness:
    box = bounding_box(family)
    if box is None:
        return Witness(subset, Halfplane(0, 1, 0))
    if subset == 0:
        return Witness(subset, Halfplane(0, 1, box[0].y - 1))
    return Witness(subset, Halfplane(0, 1, box[1].y + 1))


def _configuration_witness(family: Family, subset: int, raw: RawConfiguration) -> Witness:
    table = point_table(family)
    tail, head, tail_out, head_out = raw
    (ux, uy), (vx, vy) = table.coords[tail], table.coords[head]
    dx, dy = vx - ux, vy - uy
    nx, ny = -dy, dx  # left normal of tail -> head

    span = max(abs(x) + abs(y) for x, y in table.coords)
    reach = abs(dx) + abs(dy)
    eta = Fraction(1, 2 * reach * (reach + 2 * span) + 2)

    for _ in range(settings.witness_max_halvings):
        # Pushing an endpoint along the left normal tips it to the excluded side
        tx = ux + eta * nx * tail_out
        ty = uy + eta * ny * tail_out
        hx = vx + eta * nx * head_out
        hy = vy + eta * ny * head_out
        ex, ey = hx - tx, hy - ty
        halfplane = Halfplane(ey * table.scale, -ex * table.scale, ey * tx - ex * ty)
        if _classifies(family, halfplane, subset):
            return Witness(subset, halfplane, (table.points[tail], table.points[head]))
        eta /= 2

    raise InvariantViolation("no witness after rotation halving", subset=subset)


def realize_witness(family: Family, subset: int) -> Optional[Witness]:
    """Exact halfplane containing exactly the bodies of subset.

    Returns:
        Witness re-verified through body_in_halfplane, or None when subset
        is not realized
    """
    edges = enumerate_realized(family)
    if subset not in edges:
        return None

    if subset in (0, family.full_mask):
        witness = _trivial_witness(family, subset)
    else:
        witness = _configuration_witness(family, subset, _cached_sweep(family)[subset])

    if not _classifies(family, witness.halfplane, subset):
        raise InvariantViolation("witness failed re-classification", subset=subset)
    return witness


def sampled_oracle(family: Family, trials: Optional[int] = None, seed: int = 0) -> EdgeSet:
    """Subsets cut out by randomly drawn halfplanes (independent cross-check).

    Half of the trials take the line through two random vertices, tilt it by
    a small integer rotation and move it by at most half a unit; the rest
    use a random integer direction through a random point of the bounding
    box. Only observed subsets are returned.
    Trials default to settings.oracle_trials.
    """
    require_planar(family, "sampled_oracle")
    if trials is None:
        trials = settings.oracle_trials
    table = point_table(family)
    rng = np.random.default_rng(seed)
    found = set()
    coords = table.coords
    m = len(coords)
    full = family.full_mask

    if trials <= 0 or m == 0:
        return EdgeSet.from_masks(family.n, found, include_trivial=False)

    span = 2 * max(abs(x) + abs(y) for x, y in coords)
    rotation = settings.oracle_rotation_scale * (2 * span + 1)
    xs = [x for x, _ in coords]
    ys = [y for _, y in coords]

    for _ in range(trials):
        offset = int(rng.integers(-1, 2))
        if m >= 2 and rng.random() < 0.5:
            i, j = (int(k) for k in rng.choice(m, size=2, replace=False))
            (px, py), (qx, qy) = coords[i], coords[j]
            sign = 1 if rng.random() < 0.5 else -1
            tilt_a, tilt_b = (int(k) for k in rng.integers(-1, 2, size=2))
            a = sign * -(qy - py) * rotation + tilt_a
            b = sign * (qx - px) * rotation + tilt_b
            x0, y0 = px, py
        else:
            a, b = (int(k) for k in rng.integers(-16, 17, size=2))
            if a == 0 and b == 0:
                a = 1
            x0 = int(rng.integers(min(xs), max(xs) + 1))
            y0 = int(rng.integers(min(ys), max(ys) + 1))

        # Doubled so the half-unit offset stays integral
        threshold = 2 * (a * x0 + b * y0) + offset
        blocked = 0
        for index, (x, y) in enumerate(coords):
            if 2 * (a * x + b * y) > threshold:
                blocked |= table.owners[index]
        found.add(full & ~blocked)

    logger.debug("sampled_oracle_done", trials=trials, seed=seed, subsets=len(found))
    return EdgeSet.from_masks(family.n, found, include_trivial=False)