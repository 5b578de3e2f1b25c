"""Shattering and VC-dimension."""
import pytest

from data.models.errors import InvalidParameter
from data.models.schemas import VCResult
from analysis.shattering import (
    is_shattered, masks_of_size, popcount, submasks_ascending, trace_count, vc_dimension
)
from constructions.random_families import random_convex_family
from conftest import points_family


def test_masks_of_size_ascending():
    assert list(masks_of_size(4, 2)) == [3, 5, 6, 9, 10, 12]
    assert list(masks_of_size(3, 0)) == [0]
    assert list(masks_of_size(2, 3)) == []
    assert len(list(masks_of_size(6, 3))) == 20


def test_submasks_ascending():
    assert list(submasks_ascending(0b1010)) == [0, 2, 8, 10]
    assert list(submasks_ascending(0)) == [0]


def test_popcount():
    assert popcount(0) == 0
    assert popcount(0b10110) == 3


def test_convex_quad_not_shattered(convex_quad):
    result = is_shattered(convex_quad, 0b1111)
    assert not result.shattered
    assert result.missing == 0b0101


def test_any_triple_of_convex_quad_is_shattered(convex_quad):
    for mask in masks_of_size(4, 3):
        assert is_shattered(convex_quad, mask).shattered


def test_trace_count(convex_quad):
    assert trace_count(convex_quad, convex_quad.full_mask) == 14
    assert trace_count(convex_quad, 0b0101) == 4


def test_vc_dimension_of_convex_quad(convex_quad):
    assert vc_dimension(convex_quad, cap=6) == VCResult(3, 0b0111)
    assert vc_dimension(convex_quad, cap=2).dim == 2
    assert vc_dimension(convex_quad, cap=0).dim == 0


def test_single_point_has_dimension_one():
    assert vc_dimension(points_family((0, 0)), cap=6) == VCResult(1, 1)


def test_five_segments_dimension(five_segments):
    assert vc_dimension(five_segments.family, cap=6).dim == 5
    assert is_shattered(five_segments.family, 0b11111).shattered


def test_subset_outside_family(convex_quad):
    with pytest.raises(InvalidParameter):
        is_shattered(convex_quad, 1 << 4)
    with pytest.raises(InvalidParameter):
        vc_dimension(convex_quad, cap=-1)


@pytest.mark.parametrize("seed", range(3))
def test_removing_a_body_never_raises_dimension(seed):
    family = random_convex_family(5, seed)
    dim = vc_dimension(family, cap=6).dim
    for drop in range(family.n):
        sub = family.subfamily(family.full_mask & ~(1 << drop))
        assert vc_dimension(sub, cap=6).dim <= dim
