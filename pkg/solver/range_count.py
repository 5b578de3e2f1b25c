"""
Exact range counting: how many bodies a halfplane fully contains.
"""
from fractions import Fraction

from data.models.errors import EmptyFamily
from data.models.schemas import Family, Halfplane, RangeCount
from geometry.predicates import body_in_halfplane


def contained_mask(family: Family, h: Halfplane) -> int:
    """Mask of the bodies inside h."""
    mask = 0
    for body in family.bodies:
        if body_in_halfplane(body, h):
            mask |= 1 << body.id
    return mask


def range_count(family: Family, h: Halfplane) -> RangeCount:
    """Count and fraction of bodies fully inside h."""
    if family.n == 0:
        raise EmptyFamily("range count needs at least one body")
    count = bin(contained_mask(family, h)).count("1")
    return RangeCount(count, Fraction(count, family.n))
