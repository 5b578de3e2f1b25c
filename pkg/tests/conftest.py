"""Shared families for the test suite."""
from fractions import Fraction
from typing import Sequence, Tuple

import pytest

from data.models.schemas import ConvexBody, Family, Rational2
from geometry.predicates import make_body
from constructions.generators import (
    gen_five_segments, gen_four_one_intersection, gen_three_disjoint, gen_unbounded
)


def point(x, y) -> Rational2:
    return Rational2(Fraction(x), Fraction(y))


def family_of(*vertex_lists: Sequence[Tuple]) -> Family:
    """Family whose i-th body is the hull of the i-th list of (x, y) pairs."""
    return Family(tuple(
        make_body(i, [point(*xy) for xy in vertices]) for i, vertices in enumerate(vertex_lists)
    ))


def points_family(*coords: Tuple) -> Family:
    return Family(tuple(ConvexBody(i, (point(*xy),)) for i, xy in enumerate(coords)))


@pytest.fixture(scope="session")
def five_segments():
    return gen_five_segments()


@pytest.fixture(scope="session")
def four_one():
    return gen_four_one_intersection()


@pytest.fixture(scope="session")
def three_disjoint():
    return gen_three_disjoint()


@pytest.fixture(scope="session")
def unbounded_three():
    return gen_unbounded(3)


@pytest.fixture
def single_segment() -> Family:
    return family_of([(0, 0), (1, 2)])


@pytest.fixture
def two_vertical_segments() -> Family:
    return family_of([(0, 0), (0, 1)], [(3, 0), (3, 1)])


@pytest.fixture
def convex_quad() -> Family:
    """Four points in convex position, CCW in id order; diagonals {0,2} and {1,3}."""
    return points_family((0, 0), (4, 1), (5, 5), (1, 4))


@pytest.fixture
def collinear_points() -> Family:
    return points_family((0, 0), (1, 1), (2, 2))
