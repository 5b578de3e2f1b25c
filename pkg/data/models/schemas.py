"""
Data models/schemas for the halfplane containment toolkit.
Uses frozen dataclasses so every value is immutable and hashable.
"""
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from config.constants import Ambient, BodyKind
from data.models.errors import FamilyValidationError, InvalidParameter

RationalLike = Union[Fraction, int, str]


@dataclass(frozen=True, order=True)
class Rational2:
    """Exact planar point with rational coordinates."""
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __sub__(self, other: "Rational2") -> "Rational2":
        return Rational2(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Rational2") -> "Rational2":
        return Rational2(self.x + other.x, self.y + other.y)


@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane a*x + b*y <= c, stored in canonical scaling."""
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = Fraction(self.a), Fraction(self.b), Fraction(self.c)
        if a == 0 and b == 0:
            raise InvalidParameter("halfplane normal must be nonzero", a=str(a), b=str(b))
        # First nonzero of (a, b) gets absolute value 1
        scale = abs(a) if a != 0 else abs(b)
        object.__setattr__(self, "a", a / scale)
        object.__setattr__(self, "b", b / scale)
        object.__setattr__(self, "c", c / scale)

    def value(self, p: Rational2) -> Fraction:
        """Signed slack a*x + b*y - c (nonpositive inside)."""
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Rational2) -> bool:
        return self.value(p) <= 0


@dataclass(frozen=True)
class ConvexBody:
    """A point, segment or strictly convex CCW polygon given by its vertices."""
    id: int
    vertices: Tuple[Rational2, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise FamilyValidationError("nonempty", f"body {self.id} has no vertices", body=self.id)

    @property
    def kind(self) -> BodyKind:
        if len(self.vertices) == 1:
            return BodyKind.POINT
        if len(self.vertices) == 2:
            return BodyKind.SEGMENT
        return BodyKind.POLYGON

    def edges(self) -> List[Tuple[Rational2, Rational2]]:
        """Boundary edges in CCW order (one edge for a segment, none for a point)."""
        if len(self.vertices) == 1:
            return []
        if len(self.vertices) == 2:
            return [(self.vertices[0], self.vertices[1])]
        count = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % count]) for i in range(count)]


@dataclass(frozen=True)
class Family:
    """Ordered bodies with ids 0..n-1, the vertex set of the hypergraph."""
    bodies: Tuple[ConvexBody, ...]
    ambient: Ambient = Ambient.PLANAR
    levels: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "bodies", tuple(self.bodies))
        if self.levels is not None:
            object.__setattr__(self, "levels", tuple(self.levels))
        for index, body in enumerate(self.bodies):
            if body.id != index:
                raise FamilyValidationError(
                    "ids", f"body at position {index} has id {body.id}", position=index
                )
        if self.ambient == Ambient.LIFTED_3D:
            if self.levels is None or len(self.levels) != len(self.bodies):
                raise FamilyValidationError("levels", "lifted family needs one level per body")

    @property
    def n(self) -> int:
        return len(self.bodies)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.bodies)) - 1

    @property
    def is_planar(self) -> bool:
        return self.ambient == Ambient.PLANAR

    def vertices(self) -> List[Rational2]:
        """All vertices in body order, duplicates kept."""
        return [v for body in self.bodies for v in body.vertices]

    def subfamily(self, mask: int) -> "Family":
        """Bodies selected by mask, renumbered from 0."""
        chosen = [b for b in self.bodies if mask >> b.id & 1]
        bodies = tuple(ConvexBody(i, b.vertices) for i, b in enumerate(chosen))
        levels = None
        if self.levels is not None:
            levels = tuple(self.levels[b.id] for b in chosen)
        return Family(bodies, self.ambient, levels)


@dataclass(frozen=True)
class EdgeSet:
    """Sorted, deduplicated realized subsets as bitmasks over body ids."""
    n: int
    edges: Tuple[int, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], include_trivial: bool = True) -> "EdgeSet":
        found = set(masks)
        if include_trivial:
            found.update((0, (1 << n) - 1))
        return cls(n, tuple(sorted(found)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.edges)

    def __contains__(self, mask: object) -> bool:
        if not isinstance(mask, int):
            return False
        index = bisect_left(self.edges, mask)
        return index < len(self.edges) and self.edges[index] == mask

    def as_set(self) -> frozenset:
        return frozenset(self.edges)


@dataclass(frozen=True)
class Configuration:
    """Terminal configuration: boundary line through tail u and head v.

    The included side is the closed left side of the directed line u -> v.
    The flags record which of the two touching vertices is pushed out.
    """
    tail: Rational2
    head: Rational2
    tail_out: bool
    head_out: bool

    @property
    def case(self) -> str:
        head = "head-out" if self.head_out else "head-in"
        tail = "tail-out" if self.tail_out else "tail-in"
        return f"{head}/{tail}"


@dataclass(frozen=True)
class Witness:
    """Exact halfplane certifying that subset is realized."""
    subset: int
    halfplane: Halfplane
    anchor: Optional[Tuple[Rational2, Rational2]] = None  # (tail u, head v)


@dataclass(frozen=True)
class GeneralPositionReport:
    """Result of the general-position check; violations are data."""
    ok: bool
    kind: Optional[str] = None  # "collinear" | "duplicate"
    points: Tuple[Rational2, ...] = ()


@dataclass(frozen=True)
class ShatterResult:
    shattered: bool
    missing: Optional[int] = None


@dataclass(frozen=True)
class VCResult:
    dim: int
    witness: int


@dataclass(frozen=True)
class HullReport:
    ok: bool
    offender: Optional[int] = None


@dataclass(frozen=True)
class BoundsReport:
    """Invariant battery over one family."""
    n: int
    edge_count: int
    tangent_bound: Optional[int]
    within_tangent_bound: bool
    intersections: int
    turan_bound: Fraction
    shattered: bool
    turan_ok: bool
    hull: HullReport
    counting_excludes_shattering: bool
    pairwise_disjoint: bool
    ok: bool


@dataclass(frozen=True)
class Certificate:
    """Recomputed facts attached to a construction."""
    shattered: int
    edge_count: int
    intersections: int
    vc_dimension: int


@dataclass(frozen=True)
class Provenance:
    name: str
    params: Dict[str, Any] = field(default_factory=dict, hash=False, compare=False)


@dataclass(frozen=True)
class ConstructionResult:
    family: Family
    certificate: Certificate
    provenance: Provenance


@dataclass(frozen=True)
class LiftReport:
    """Checks behind the vertical-halfspace lift."""
    pairwise_disjoint: bool
    containment_matches: bool
    shattered: int


@dataclass(frozen=True)
class SearchConstraints:
    max_intersections: Optional[int] = None
    symmetry: Optional[int] = None


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative rational weights, one per body."""
    weights: Tuple[Fraction, ...]
    total: Fraction = Fraction(0)

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if any(w < 0 for w in weights):
            raise InvalidParameter("weights must be nonnegative")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "total", sum(weights, Fraction(0)))

    @classmethod
    def uniform(cls, n: int) -> "WeightVector":
        return cls(tuple(Fraction(1) for _ in range(n)))

    def of(self, mask: int) -> Fraction:
        """Total weight of the bodies in mask."""
        total = Fraction(0)
        index = 0
        while mask:
            if mask & 1:
                total += self.weights[index]
            mask >>= 1
            index += 1
        return total

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) <= 1


@dataclass(frozen=True)
class NetResult:
    net: int
    m: int
    attempts: int
    eps: Fraction
    d: int


@dataclass(frozen=True)
class ApproximationResult:
    sample: int
    m: int
    discrepancy: Fraction
    attempts: int


@dataclass(frozen=True)
class HittingInstance:
    """Segments and the halfplanes that must each contain one of them."""
    segments: Family
    halfplanes: Tuple[Halfplane, ...]
    ranges: Tuple[int, ...] = ()  # mask of segments inside each halfplane


@dataclass
class SolverTrace:
    final_k: int
    rounds_per_k: List[int]
    doublings: int
    solution: int
    optimum: Optional[int] = None
    net_attempts: int = 0

    @property
    def size(self) -> int:
        return bin(self.solution).count("1")

    @property
    def ratio(self) -> Optional[Fraction]:
        if not self.optimum:
            return None
        return Fraction(self.size, self.optimum)


@dataclass(frozen=True)
class RangeCount:
    n: int
    r: Fraction


@dataclass(frozen=True)
class RenderSpec:
    family: Family
    witnesses: Tuple[Witness, ...] = ()
    viewport: Optional[Tuple[Rational2, Rational2]] = None  # None = auto
    stroke_width: Fraction = Fraction(1, 100)
