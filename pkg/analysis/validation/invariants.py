"""
Combinatorial invariants that every shattered family has to satisfy.
Used as hard checks by the constructions and by the check-bounds command.
"""
from fractions import Fraction
from math import ceil
from typing import List, Optional
import structlog

from config.constants import BodyKind, DISJOINT_CONVEX_VC_DIM
from data.models.schemas import BoundsReport, Family, HullReport, Rational2
from geometry.predicates import bodies_intersect, convex_hull, orientation, require_planar
from analysis.enumeration import enumerate_realized, tangent_bound
from analysis.shattering import is_shattered

logger = structlog.get_logger()


def count_intersecting_pairs(family: Family) -> int:
    """Number of unordered body pairs sharing at least one point."""
    require_planar(family, "count_intersecting_pairs")
    bodies = family.bodies
    count = 0
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            if bodies_intersect(bodies[i], bodies[j]):
                count += 1
    return count


def turan_lower_bound(n: int) -> Fraction:
    """Minimum intersecting pairs of a shattered family of n bodies: n(n-3)/6."""
    return Fraction(n * (n - 3), 6)


def _on_boundary(p: Rational2, hull: List[Rational2]) -> bool:
    if len(hull) <= 2:
        return True
    for i, a in enumerate(hull):
        b = hull[(i + 1) % len(hull)]
        if orientation(a, b, p) != 0:
            continue
        if min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y):
            return True
    return False


def hull_lemma_check(family: Family) -> HullReport:
    """Every body of a shattered family touches the boundary of the overall hull.

    Returns:
        HullReport ok, or the smallest id of a body lying strictly inside
    """
    require_planar(family, "hull_lemma_check")
    vertices = family.vertices()
    if not vertices:
        return HullReport(True)

    hull = convex_hull(vertices)
    for body in family.bodies:
        if not any(_on_boundary(v, hull) for v in body.vertices):
            return HullReport(False, body.id)
    return HullReport(True)


def check_bounds(family: Family, shattered: Optional[bool] = None) -> BoundsReport:
    """Run the invariant battery over one family.

    Args:
        family: Planar family in general position
        shattered: Known shattering of the full family; computed when None

    Returns:
        BoundsReport whose ok flag is the conjunction of every check
    """
    n = family.n
    edges = enumerate_realized(family)
    segments = n > 0 and all(body.kind == BodyKind.SEGMENT for body in family.bodies)

    bound = tangent_bound(n) if segments else None
    within = bound is None or len(edges) <= bound

    if shattered is None:
        shattered = is_shattered(family, family.full_mask).shattered

    intersections = count_intersecting_pairs(family)
    turan = turan_lower_bound(n)
    turan_ok = not shattered or intersections >= ceil(turan)
    hull = hull_lemma_check(family)

    # 2^n above the tangent bound leaves too few edges to shatter
    counting_excludes = segments and 2 ** n > tangent_bound(n)
    pairwise_disjoint = intersections == 0

    ok = (
        within
        and turan_ok
        and (hull.ok or not shattered)
        and not (counting_excludes and shattered)
        and not (pairwise_disjoint and n > DISJOINT_CONVEX_VC_DIM and shattered)
    )

    report = BoundsReport(
        n=n,
        edge_count=len(edges),
        tangent_bound=bound,
        within_tangent_bound=within,
        intersections=intersections,
        turan_bound=turan,
        shattered=shattered,
        turan_ok=turan_ok,
        hull=hull,
        counting_excludes_shattering=counting_excludes,
        pairwise_disjoint=pairwise_disjoint,
        ok=ok,
    )
    logger.info("bounds_checked", n=n, edges=len(edges), shattered=shattered, ok=ok)
    return report
