"""
Constants and enumerations for the halfplane containment toolkit.
"""
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple


class Ambient(Enum):
    """Space a family lives in."""
    PLANAR = "planar"
    LIFTED_3D = "lifted-3d"


class BodyKind(Enum):
    """Shape of a convex body, by vertex count."""
    POINT = "point"
    SEGMENT = "segment"
    POLYGON = "polygon"


class BodyClass(Enum):
    """Family classes understood by the search and the random generators."""
    SEGMENTS = "segments"
    DISJOINT_CONVEX = "disjoint-convex"
    CONVEX = "convex"


# CLI exit codes
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_ABSENT = 3

TOOL_NAME = "halfplane-hypergraph"

# Known VC-dimension bounds per family class
DISJOINT_CONVEX_VC_DIM = 3
SEGMENT_VC_DIM = 5

# Default dimension handed to the epsilon-net sampler per class
DIMENSION_BY_CLASS: Dict[BodyClass, int] = {
    BodyClass.DISJOINT_CONVEX: DISJOINT_CONVEX_VC_DIM,
    BodyClass.SEGMENTS: SEGMENT_VC_DIM,
}

# Construction names accepted by `gen --name`
CONSTRUCTION_UNBOUNDED = "unbounded"
CONSTRUCTION_THREE_DISJOINT = "three-disjoint"
CONSTRUCTION_FIVE_SEGMENTS = "five-segments"
CONSTRUCTION_FOUR_ONE_INTERSECTION = "four-one-intersection"

CONSTRUCTION_NAMES = [
    CONSTRUCTION_UNBOUNDED,
    CONSTRUCTION_THREE_DISJOINT,
    CONSTRUCTION_FIVE_SEGMENTS,
    CONSTRUCTION_FOUR_ONE_INTERSECTION,
]

# Circle parameters of the three triangles; each block sits on its own arc
THREE_DISJOINT_PARAMETERS: List[Tuple[Fraction, Fraction, Fraction]] = [
    (Fraction(-1, 8), Fraction(0), Fraction(1, 8)),
    (Fraction(3, 2), Fraction(7, 4), Fraction(2)),
    (Fraction(-2), Fraction(-7, 4), Fraction(-3, 2)),
]

# Shortened pentagram, in thousandths. Segment i runs from the outer point
# at angle 72*i degrees to the point at radius 9/10 two steps further on.
FIVE_SEGMENTS_SCALE = 1000
FIVE_SEGMENTS_ENDPOINTS: List[Tuple[Tuple[int, int], Tuple[int, int]]] = [
    ((1000, 0), (-728, 529)),
    ((309, 951), (-728, -529)),
    ((-809, 588), (278, -856)),
    ((-809, -588), (900, 0)),
    ((309, -951), (278, 856)),
]

# Crossing diagonals of a square with one leg hanging below each side
FOUR_ONE_INTERSECTION_ENDPOINTS: List[Tuple[Tuple[int, int], Tuple[int, int]]] = [
    ((-1, -1), (1, 1)),
    ((-3, 0), (-2, -3)),
    ((-1, 1), (1, -1)),
    ((3, 0), (2, -3)),
]

# Expected intersecting pairs of the fixed constructions
FIVE_SEGMENTS_INTERSECTIONS = 5
FOUR_ONE_INTERSECTIONS = 1
