"""
Verified generators for the fixed shattered families.
Each result carries a certificate recomputed from the family itself.
"""
from fractions import Fraction
from math import ceil
from typing import Any, Callable, Dict, List, Optional, Tuple
import structlog

from config.constants import (
    CONSTRUCTION_FIVE_SEGMENTS, CONSTRUCTION_FOUR_ONE_INTERSECTION,
    CONSTRUCTION_THREE_DISJOINT, CONSTRUCTION_UNBOUNDED,
    FIVE_SEGMENTS_ENDPOINTS, FIVE_SEGMENTS_INTERSECTIONS, FIVE_SEGMENTS_SCALE,
    FOUR_ONE_INTERSECTION_ENDPOINTS, FOUR_ONE_INTERSECTIONS, THREE_DISJOINT_PARAMETERS,
    Ambient,
)
from config.settings import get_settings
from data.models.errors import CapExceeded, InvalidParameter, InvariantViolation
from data.models.schemas import (
    Certificate, ConstructionResult, Family, LiftReport, Provenance, Rational2
)
from geometry.predicates import body_in_halfplane, body_in_vertical_halfspace, circle_point, make_body
from analysis.enumeration import enumerate_realized, realize_witness
from analysis.shattering import is_shattered, vc_dimension
from analysis.validation.invariants import (
    count_intersecting_pairs, hull_lemma_check, turan_lower_bound
)

logger = structlog.get_logger()
settings = get_settings()


def certify(family: Family) -> Certificate:
    """Recompute the certificate fields from scratch."""
    edges = enumerate_realized(family)
    shattered = is_shattered(family, family.full_mask)
    vc = vc_dimension(family, family.n)
    return Certificate(
        shattered=family.full_mask if shattered.shattered else vc.witness,
        edge_count=len(edges),
        intersections=count_intersecting_pairs(family),
        vc_dimension=vc.dim,
    )


def build_result(
    family: Family,
    name: str,
    params: Dict[str, Any],
    expected_intersections: Optional[int] = None,
) -> ConstructionResult:
    """Certify a family that must be fully shattered.

    Raises:
        InvariantViolation: the family fails shattering, the hull lemma,
            the intersection lower bound or the expected intersection count
    """
    certificate = certify(family)
    if certificate.shattered != family.full_mask:
        raise InvariantViolation(f"{name} is not shattered", vc=certificate.vc_dimension)

    hull = hull_lemma_check(family)
    if not hull.ok:
        raise InvariantViolation(f"{name} breaks the hull lemma", offender=hull.offender)

    if certificate.intersections < ceil(turan_lower_bound(family.n)):
        raise InvariantViolation(
            f"{name} has fewer intersections than a shattered family allows",
            intersections=certificate.intersections,
        )

    if expected_intersections is not None and certificate.intersections != expected_intersections:
        raise InvariantViolation(
            f"{name} has an unexpected number of intersecting pairs",
            expected=expected_intersections, found=certificate.intersections,
        )

    logger.info("construction_verified", name=name, n=family.n,
                edges=certificate.edge_count, intersections=certificate.intersections)
    return ConstructionResult(family, certificate, Provenance(name, dict(params)))


def unbounded_family(n: int) -> Family:
    """Bodies C_j = hull{p_I : j in I}, p_I on the unit circle for proper nonempty I."""
    points = {index: circle_point(index) for index in range(1, (1 << n) - 1)}
    bodies = []
    for j in range(n):
        members = [p for index, p in points.items() if index >> j & 1]
        bodies.append(make_body(j, members))
    return Family(tuple(bodies))


def gen_unbounded(n: int) -> ConstructionResult:
    """Family of n convex bodies shattered by halfplanes.

    Args:
        n: Number of bodies, 2 <= n <= settings.unbounded_cap

    Raises:
        CapExceeded: n outside the admissible range
    """
    if n < 2 or n > settings.unbounded_cap:
        raise CapExceeded(
            f"unbounded construction needs 2 <= n <= {settings.unbounded_cap}",
            n=n, cap=settings.unbounded_cap,
        )
    return build_result(unbounded_family(n), CONSTRUCTION_UNBOUNDED, {"n": n})


def lift_to_3d(result: ConstructionResult) -> Tuple[Family, LiftReport]:
    """Stack body i at height i and compare vertical halfspaces with halfplanes.

    Returns:
        (lifted family, report) where shattered is the full mask when the
        vertical halfspaces built from the planar witnesses realize every
        subset, else 0
    """
    planar = result.family
    levels = tuple(range(planar.n))
    lifted = Family(planar.bodies, Ambient.LIFTED_3D, levels)

    pairwise_disjoint = len(set(levels)) == planar.n
    matches = True
    realized = set()
    for subset in enumerate_realized(planar):
        witness = realize_witness(planar, subset)
        contained = 0
        for body, level in zip(planar.bodies, levels):
            inside = body_in_vertical_halfspace(body, level, witness.halfplane)
            if inside != body_in_halfplane(body, witness.halfplane):
                matches = False
            if inside:
                contained |= 1 << body.id
        realized.add(contained)

    shattered = planar.full_mask if len(realized) == 1 << planar.n else 0
    report = LiftReport(pairwise_disjoint, matches, shattered)
    logger.info("family_lifted", n=planar.n, disjoint=pairwise_disjoint,
                matches=matches, shattered=shattered)
    return lifted, report


def gen_three_disjoint() -> ConstructionResult:
    """Three pairwise-disjoint triangles on separate arcs of the unit circle."""
    bodies = [
        make_body(i, [circle_point(t) for t in params])
        for i, params in enumerate(THREE_DISJOINT_PARAMETERS)
    ]
    return build_result(Family(tuple(bodies)), CONSTRUCTION_THREE_DISJOINT, {},
                        expected_intersections=0)


def _segments(endpoints: List[Tuple[Tuple[int, int], Tuple[int, int]]], scale: int) -> Family:
    bodies = []
    for i, (p, q) in enumerate(endpoints):
        a = Rational2(Fraction(p[0], scale), Fraction(p[1], scale))
        b = Rational2(Fraction(q[0], scale), Fraction(q[1], scale))
        bodies.append(make_body(i, [a, b]))
    return Family(tuple(bodies))


def gen_five_segments() -> ConstructionResult:
    """Five shattered segments arranged as a shortened pentagram."""
    family = _segments(FIVE_SEGMENTS_ENDPOINTS, FIVE_SEGMENTS_SCALE)
    return build_result(family, CONSTRUCTION_FIVE_SEGMENTS, {},
                        expected_intersections=FIVE_SEGMENTS_INTERSECTIONS)


def gen_four_one_intersection() -> ConstructionResult:
    """Four shattered segments with a single crossing pair."""
    family = _segments(FOUR_ONE_INTERSECTION_ENDPOINTS, 1)
    return build_result(family, CONSTRUCTION_FOUR_ONE_INTERSECTION, {},
                        expected_intersections=FOUR_ONE_INTERSECTIONS)


CONSTRUCTIONS: Dict[str, Callable[..., ConstructionResult]] = {
    CONSTRUCTION_UNBOUNDED: gen_unbounded,
    CONSTRUCTION_THREE_DISJOINT: gen_three_disjoint,
    CONSTRUCTION_FIVE_SEGMENTS: gen_five_segments,
    CONSTRUCTION_FOUR_ONE_INTERSECTION: gen_four_one_intersection,
}


def construction_by_name(name: str, **params: Any) -> ConstructionResult:
    """Run a named generator; only `unbounded` takes a parameter (n)."""
    if name not in CONSTRUCTIONS:
        raise InvalidParameter(f"unknown construction {name!r}", known=sorted(CONSTRUCTIONS))
    if name == CONSTRUCTION_UNBOUNDED:
        return gen_unbounded(int(params.get("n") or 3))
    return CONSTRUCTIONS[name]()
