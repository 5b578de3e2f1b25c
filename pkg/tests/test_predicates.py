"""Exact geometric predicates."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from config.constants import Ambient, BodyKind
from data.models.errors import AmbientError
from data.models.schemas import ConvexBody, Family, Halfplane, Rational2
from geometry.predicates import (
    body_in_halfplane, body_in_vertical_halfspace, bodies_intersect, bounding_box,
    check_general_position, circle_point, convex_hull, is_canonical_polygon, make_body,
    orientation, perturb_family, scale_to_integers
)
from conftest import family_of, point, points_family

coordinate = st.fractions(min_value=-20, max_value=20, max_denominator=12)
points = st.builds(Rational2, coordinate, coordinate)


@given(points, points, points)
def test_orientation_flips_with_swapped_arguments(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)
    assert orientation(p, q, r) == orientation(q, r, p)


@given(points, points, points, points)
def test_orientation_is_translation_invariant(p, q, r, shift):
    assert orientation(p, q, r) == orientation(p + shift, q + shift, r + shift)


@given(st.lists(points, min_size=1, max_size=12))
def test_hull_contains_every_input_point(pts):
    hull = convex_hull(pts)
    assert is_canonical_polygon(hull)
    if len(hull) >= 3:
        for i, a in enumerate(hull):
            b = hull[(i + 1) % len(hull)]
            assert all(orientation(a, b, p) >= 0 for p in pts)


def test_hull_drops_collinear_and_starts_lowest():
    hull = convex_hull([point(2, 2), point(0, 0), point(1, 1), point(2, 0), point(0, 2)])
    assert hull == [point(0, 0), point(2, 0), point(2, 2), point(0, 2)]
    assert convex_hull([point(0, 0), point(1, 1), point(2, 2)]) == [point(0, 0), point(2, 2)]


def test_make_body_kinds():
    assert make_body(0, [point(1, 1)]).kind == BodyKind.POINT
    assert make_body(0, [point(1, 1), point(0, 0)]).kind == BodyKind.SEGMENT
    assert make_body(0, [point(0, 0), point(1, 0), point(0, 1)]).kind == BodyKind.POLYGON


def test_reflex_polygon_is_not_canonical():
    assert not is_canonical_polygon([point(0, 0), point(4, 0), point(1, 1), point(0, 4)])
    assert not is_canonical_polygon([point(0, 0), point(0, 1), point(1, 0)])  # clockwise
    assert is_canonical_polygon([point(1, 0), point(0, 1), point(0, 0)])


def test_body_in_halfplane_is_closed():
    segment = make_body(0, [point(0, 0), point(2, 0)])
    assert body_in_halfplane(segment, Halfplane(1, 0, 2))
    assert not body_in_halfplane(segment, Halfplane(1, 0, Fraction(3, 2)))


@given(st.integers(min_value=-5, max_value=5), st.integers(min_value=0, max_value=5))
def test_containment_is_monotone_in_offset(c, extra):
    body = make_body(0, [point(0, 0), point(1, 3), point(-2, 1)])
    if body_in_halfplane(body, Halfplane(1, 1, c)):
        assert body_in_halfplane(body, Halfplane(1, 1, c + extra))


def test_bodies_intersect_cases():
    cross_a = make_body(0, [point(-1, -1), point(1, 1)])
    cross_b = make_body(1, [point(-1, 1), point(1, -1)])
    far = make_body(2, [point(5, 5), point(6, 7)])
    triangle = make_body(3, [point(0, 0), point(4, 0), point(0, 4)])
    assert bodies_intersect(cross_a, cross_b)
    assert not bodies_intersect(cross_a, far)
    assert bodies_intersect(triangle, make_body(4, [point(1, 1)]))
    assert bodies_intersect(cross_a, make_body(5, [point(0, 0)]))
    assert not bodies_intersect(make_body(6, [point(0, 0)]), make_body(7, [point(0, 1)]))


def test_collinear_disjoint_segments_do_not_intersect():
    a = make_body(0, [point(0, 0), point(1, 1)])
    b = make_body(1, [point(2, 2), point(3, 3)])
    assert not bodies_intersect(a, b)


@given(st.fractions(min_value=-10, max_value=10, max_denominator=50))
def test_circle_point_is_on_unit_circle(t):
    p = circle_point(t)
    assert p.x * p.x + p.y * p.y == 1


def test_scale_to_integers():
    scale, coords = scale_to_integers([point(Fraction(1, 2), 3), point(Fraction(-1, 3), 0)])
    assert scale == 6
    assert coords == [(3, 18), (-2, 0)]


def test_general_position_reports(collinear_points, convex_quad):
    assert check_general_position(convex_quad).ok
    report = check_general_position(collinear_points)
    assert not report.ok and report.kind == "collinear"
    assert set(report.points) == {point(0, 0), point(1, 1), point(2, 2)}

    shared = family_of([(0, 0), (4, 0), (0, 4)], [(0, 0), (-4, 1), (-1, -4)])
    assert check_general_position(shared).kind == "duplicate"
    assert check_general_position(shared, allow_shared_vertices=True).ok


def test_perturbation_restores_general_position(collinear_points):
    perturbed = perturb_family(collinear_points)
    assert check_general_position(perturbed).ok
    assert perturbed.n == collinear_points.n


def test_perturbation_handles_horizontal_lines():
    family = points_family((0, 0), (1, 0), (2, 0), (3, 0))
    assert check_general_position(perturb_family(family)).ok


def test_bounding_box(convex_quad):
    assert bounding_box(convex_quad) == (point(0, 0), point(5, 5))
    assert bounding_box(Family(())) is None


def test_vertical_halfspace_matches_planar_containment():
    body = make_body(0, [point(0, 0), point(2, 1)])
    for h in [Halfplane(1, 0, 2), Halfplane(0, 1, 0), Halfplane(-1, 1, 0)]:
        for level in range(3):
            assert body_in_vertical_halfspace(body, level, h) == body_in_halfplane(body, h)


def test_lifted_family_is_rejected():
    lifted = Family((ConvexBody(0, (point(0, 0),)),), Ambient.LIFTED_3D, (0,))
    with pytest.raises(AmbientError):
        check_general_position(lifted)
