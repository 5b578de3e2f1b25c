"""Weighted epsilon-nets."""
from fractions import Fraction

import pytest

from data.models.errors import InvalidEps, InvalidParameter, ZeroTotalWeight
from data.models.schemas import WeightVector
from analysis.enumeration import enumerate_realized
from analysis.shattering import popcount
from nets.epsilon_net import (
    as_eps, epsilon_net, heavy_edges, net_sample_size, verify_epsilon_net
)
from constructions.random_families import random_disjoint_convex_family


def test_sample_size():
    assert net_sample_size(Fraction(1, 10), 3) == 1219
    assert net_sample_size(Fraction(1, 2), 1) == 56
    with pytest.raises(InvalidParameter):
        net_sample_size(Fraction(1, 2), 0)


@pytest.mark.parametrize("eps", [0, 1, Fraction(3, 2), -1])
def test_eps_range(eps):
    with pytest.raises(InvalidEps):
        as_eps(eps)


def test_eps_from_string():
    assert as_eps("1/4") == Fraction(1, 4)


def test_heavy_edges_uniform_and_weighted(five_segments):
    edges = enumerate_realized(five_segments.family)
    heavy = heavy_edges(edges, Fraction(1, 2), WeightVector.uniform(5))
    assert heavy == [e for e in range(32) if popcount(e) >= 3]
    skewed = WeightVector((10, 0, 0, 0, 0))
    assert heavy_edges(edges, Fraction(1, 2), skewed) == [e for e in range(32) if e & 1]


def test_verify_reports_smallest_violation(five_segments):
    family = five_segments.family
    w = WeightVector.uniform(5)
    assert verify_epsilon_net(family, Fraction(1, 2), w, 0) == 0b00111
    assert verify_epsilon_net(family, Fraction(1, 2), w, family.full_mask) is None


def test_verify_is_monotone(five_segments):
    family = five_segments.family
    w = WeightVector.uniform(5)
    eps = Fraction(1, 2)
    # every 3-subset meets every other 3-subset of five
    assert verify_epsilon_net(family, eps, w, 0b00111) is None
    assert verify_epsilon_net(family, eps, w, 0b01111) is None


def test_verify_rejects_bits_outside_family(five_segments):
    family = five_segments.family
    w = WeightVector.uniform(5)
    with pytest.raises(InvalidParameter):
        verify_epsilon_net(family, Fraction(1, 2), w, 0b100111)
    with pytest.raises(InvalidParameter):
        verify_epsilon_net(family, Fraction(1, 2), w, -1)


def test_zero_weight_rejected(five_segments):
    with pytest.raises(ZeroTotalWeight):
        epsilon_net(five_segments.family, Fraction(1, 2), WeightVector((0,) * 5), 5, seed=0)
    with pytest.raises(InvalidParameter):
        epsilon_net(five_segments.family, Fraction(1, 2), WeightVector.uniform(4), 5, seed=0)


def test_net_is_verified_and_seeded():
    family = random_disjoint_convex_family(12, 3)
    w = WeightVector.uniform(12)
    eps = Fraction(1, 3)
    result = epsilon_net(family, eps, w, 3, seed=9)
    assert verify_epsilon_net(family, eps, w, result.net) is None
    assert result.m == net_sample_size(eps, 3)
    assert popcount(result.net) <= result.m
    assert result.attempts >= 1
    assert epsilon_net(family, eps, w, 3, seed=9) == result


def test_weighted_net_hits_heavy_body():
    family = random_disjoint_convex_family(6, 1)
    w = WeightVector((100, 1, 1, 1, 1, 1))
    result = epsilon_net(family, Fraction(1, 2), w, 3, seed=0)
    assert result.net & 1
