"""Fixed constructions, their certificates and the 3D lift."""
import pytest

from config.constants import Ambient, BodyKind
from data.models.errors import CapExceeded, InvalidParameter
from data.models.schemas import ConstructionResult, Provenance
from analysis.enumeration import enumerate_realized, realize_witness
from constructions.generators import (
    certify, construction_by_name, gen_unbounded, lift_to_3d, unbounded_family
)
from conftest import points_family


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unbounded_family_is_shattered(n):
    result = gen_unbounded(n)
    family = result.family
    assert family.n == n
    assert result.certificate.shattered == family.full_mask
    assert result.certificate.vc_dimension == n
    assert result.certificate.edge_count == 1 << n
    assert result.provenance == Provenance("unbounded")
    assert result.provenance.params == {"n": n}


def test_unbounded_body_sizes():
    assert [len(b.vertices) for b in unbounded_family(3).bodies] == [3, 3, 3]
    assert [len(b.vertices) for b in unbounded_family(4).bodies] == [7, 7, 7, 7]
    assert all(b.kind == BodyKind.POINT for b in unbounded_family(2).bodies)


def test_unbounded_witnesses(unbounded_three):
    family = unbounded_three.family
    for subset in range(1, family.full_mask):
        witness = realize_witness(family, subset)
        assert witness is not None and witness.subset == subset


@pytest.mark.parametrize("n", [0, 1, 6])
def test_unbounded_cap(n):
    with pytest.raises(CapExceeded):
        gen_unbounded(n)


def test_three_disjoint(three_disjoint):
    certificate = three_disjoint.certificate
    assert certificate.intersections == 0
    assert certificate.vc_dimension == 3
    assert certificate.edge_count == 8
    assert all(b.kind == BodyKind.POLYGON for b in three_disjoint.family.bodies)


def test_five_segments(five_segments):
    certificate = five_segments.certificate
    assert certificate.vc_dimension == 5
    assert certificate.edge_count == 32
    assert certificate.intersections == 5
    assert all(b.kind == BodyKind.SEGMENT for b in five_segments.family.bodies)


def test_four_one_intersection(four_one):
    assert four_one.certificate.intersections == 1
    assert four_one.certificate.shattered == 0b1111


def test_certify_on_unshattered_family(convex_quad):
    certificate = certify(convex_quad)
    assert certificate.vc_dimension == 3
    assert certificate.shattered == 0b0111
    assert certificate.edge_count == 14


def test_lift_preserves_shattering(unbounded_three):
    lifted, report = lift_to_3d(unbounded_three)
    assert lifted.ambient == Ambient.LIFTED_3D
    assert lifted.levels == (0, 1, 2)
    assert report.pairwise_disjoint
    assert report.containment_matches
    assert report.shattered == 0b111


def test_lift_single_point():
    family = points_family((1, 1))
    result = ConstructionResult(family, certify(family), Provenance("single"))
    lifted, report = lift_to_3d(result)
    assert report.shattered == 1
    assert len(enumerate_realized(family)) == 2


def test_construction_by_name():
    assert construction_by_name("unbounded", n=2).family.n == 2
    assert construction_by_name("unbounded").family.n == 3
    assert construction_by_name("five-segments").family.n == 5
    with pytest.raises(InvalidParameter):
        construction_by_name("pentagon")
