"""
Randomized search for shattered families on the rational grid.
Random restarts followed by local vertex moves with a halving step.
"""
from fractions import Fraction
from math import pi, tan
from typing import List, Optional, Tuple
import numpy as np
import structlog
from tqdm import tqdm

from config.constants import BodyClass
from config.settings import get_settings
from data.models.errors import (
    GeneralPositionViolation, InvalidParameter, InvariantViolation, SamplingExhausted
)
from data.models.schemas import (
    ConstructionResult, ConvexBody, Family, Rational2, SearchConstraints
)
from geometry.predicates import check_general_position, circle_point, make_body
from analysis.shattering import trace_count
from analysis.validation.invariants import count_intersecting_pairs
from constructions.generators import build_result
from constructions.random_families import default_extent, random_family

logger = structlog.get_logger()
settings = get_settings()

Rotation = Tuple[Fraction, Fraction]  # (cos, sin), exactly on the unit circle


def symmetry_rotation(s: int) -> Rotation:
    """Rational rotation by roughly 2*pi/s.

    Built as a circle point from a rational approximation of tan(pi/s), so
    it is always an exact isometry; the angle is exact for s in {1, 2, 4}.
    """
    if s < 1:
        raise InvalidParameter("symmetry order must be positive", symmetry=s)
    if s == 1:
        return Fraction(1), Fraction(0)
    if s == 2:
        return Fraction(-1), Fraction(0)
    t = Fraction(tan(pi / s)).limit_denominator(settings.search_grid_denominator)
    p = circle_point(t)
    return p.x, p.y


def _rotate(p: Rational2, rotation: Rotation) -> Rational2:
    c, s = rotation
    return Rational2(c * p.x - s * p.y, s * p.x + c * p.y)


def symmetric_family(base: List[ConvexBody], s: int) -> Family:
    """Copies of the base bodies under the s rotations, ids in copy-major order."""
    rotation = symmetry_rotation(s)
    bodies = []
    layer = [list(body.vertices) for body in base]
    for _ in range(s):
        for vertices in layer:
            bodies.append(make_body(len(bodies), vertices))
        layer = [[_rotate(v, rotation) for v in vertices] for vertices in layer]
    return Family(tuple(bodies))


def _valid(family: Family, body_class: BodyClass, constraints: SearchConstraints,
           expected_sizes: List[int]) -> bool:
    if [len(b.vertices) for b in family.bodies] != expected_sizes:
        return False
    if not check_general_position(family).ok:
        return False
    if body_class == BodyClass.DISJOINT_CONVEX and count_intersecting_pairs(family) > 0:
        return False
    if constraints.max_intersections is not None:
        if count_intersecting_pairs(family) > constraints.max_intersections:
            return False
    return True


def _clamp(value: Fraction, limit: int) -> Fraction:
    return max(Fraction(-limit), min(Fraction(limit), value))


def _score(family: Family) -> int:
    try:
        return trace_count(family, family.full_mask)
    except GeneralPositionViolation:
        return -1


class _Search:
    """Mutable search state; every evaluated family counts against the budget."""

    def __init__(self, n: int, body_class: BodyClass, constraints: SearchConstraints,
                 rng: np.random.Generator, budget: int, progress: bool):
        self.n = n
        self.body_class = body_class
        self.constraints = constraints
        self.rng = rng
        self.budget = budget
        self.evaluated = 0
        self.symmetry = constraints.symmetry or 1
        self.base_count = n // self.symmetry
        self.floor = Fraction(1, settings.search_grid_denominator)
        self.extent = default_extent(self.base_count)
        self.bar = tqdm(total=budget, desc=f"search n={n}", disable=not progress)

    @property
    def exhausted(self) -> bool:
        return self.evaluated >= self.budget

    def assemble(self, base: List[ConvexBody]) -> Family:
        if self.symmetry == 1:
            return Family(tuple(base))
        return symmetric_family(base, self.symmetry)

    def evaluate(self, family: Family, sizes: List[int]) -> int:
        self.evaluated += 1
        self.bar.update(1)
        if not _valid(family, self.body_class, self.constraints, sizes):
            return -1
        return _score(family)

    def restart(self) -> Optional[List[ConvexBody]]:
        try:
            base = random_family(self.base_count, self.body_class, self.rng)
        except SamplingExhausted:
            return None
        return list(base.bodies)

    def move(self, base: List[ConvexBody], step: Fraction) -> List[ConvexBody]:
        index = int(self.rng.integers(len(base)))
        body = base[index]
        corner = int(self.rng.integers(len(body.vertices)))
        dx, dy = (int(k) for k in self.rng.integers(-1, 2, size=2))
        vertices = list(body.vertices)
        v = vertices[corner]
        vertices[corner] = Rational2(_clamp(v.x + dx * step, self.extent),
                                     _clamp(v.y + dy * step, self.extent))
        moved = list(base)
        moved[index] = make_body(body.id, vertices)
        return moved

    def close(self) -> None:
        self.bar.close()


def search_shattered(
    n: int,
    body_class: BodyClass,
    constraints: Optional[SearchConstraints] = None,
    seed: int = 0,
    budget: int = 1000,
    progress: bool = False,
) -> Optional[ConstructionResult]:
    """Look for a fully shattered family of n bodies.

    Args:
        n: Family size
        body_class: segments, disjoint-convex or convex
        constraints: Optional intersection cap and rotational symmetry order
            (symmetry must divide n)
        seed: Seed for the numpy generator
        budget: Maximum number of evaluated candidate families
        progress: Show a tqdm progress bar

    Returns:
        Verified ConstructionResult, or None when the budget runs out
    """
    if n < 1 or budget < 1:
        raise InvalidParameter("search needs n >= 1 and budget >= 1", n=n, budget=budget)
    constraints = constraints or SearchConstraints()
    if constraints.symmetry is not None and (constraints.symmetry < 1 or n % constraints.symmetry):
        raise InvalidParameter("symmetry order must divide n", n=n, symmetry=constraints.symmetry)

    state = _Search(n, body_class, constraints, np.random.default_rng(seed), budget, progress)
    target = 1 << n
    try:
        while not state.exhausted:
            base = state.restart()
            if base is None:
                state.evaluated += 1
                continue
            family = state.assemble(base)
            sizes = [len(b.vertices) for b in family.bodies]
            score = state.evaluate(family, sizes)
            step = Fraction(1)

            for _ in range(settings.search_local_steps):
                if score == target or state.exhausted:
                    break
                candidate_base = state.move(base, step)
                candidate = state.assemble(candidate_base)
                candidate_score = state.evaluate(candidate, sizes)
                if candidate_score > score:
                    base, family, score = candidate_base, candidate, candidate_score
                elif step > state.floor:
                    step /= 2

            if score == target:
                result = _accept(family, body_class, constraints, seed)
                if result is not None:
                    logger.info("search_found", n=n, body_class=body_class.value,
                                evaluated=state.evaluated)
                    return result
    finally:
        state.close()

    logger.info("search_absent", n=n, body_class=body_class.value, evaluated=state.evaluated)
    return None


def _accept(family: Family, body_class: BodyClass, constraints: SearchConstraints,
            seed: int) -> Optional[ConstructionResult]:
    params = {
        "body_class": body_class.value,
        "seed": seed,
        "max_intersections": constraints.max_intersections,
        "symmetry": constraints.symmetry,
    }
    try:
        result = build_result(family, "search", params)
    except InvariantViolation as e:
        logger.warning("search_candidate_rejected", reason=e.message)
        return None
    if constraints.max_intersections is not None:
        if result.certificate.intersections > constraints.max_intersections:
            return None
    return result
