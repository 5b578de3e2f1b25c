"""
Shattering tests and VC-dimension over the realized edge set.
"""
from typing import Iterator, List, Set
import structlog

from config.settings import get_settings
from data.models.errors import InvalidParameter
from data.models.schemas import EdgeSet, Family, ShatterResult, VCResult
from analysis.enumeration import enumerate_realized

logger = structlog.get_logger()
settings = get_settings()


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _bit_positions(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def submasks_ascending(mask: int) -> Iterator[int]:
    """Every submask of mask in increasing numeric order."""
    positions = _bit_positions(mask)
    for counter in range(1 << len(positions)):
        sub = 0
        for bit, position in enumerate(positions):
            if counter >> bit & 1:
                sub |= 1 << position
        yield sub


def masks_of_size(n: int, k: int) -> Iterator[int]:
    """k-subsets of {0..n-1} as masks in increasing order (Gosper's hack)."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def _traces(edges: EdgeSet, subset: int) -> Set[int]:
    return {edge & subset for edge in edges}


def _check_subset(family: Family, subset: int) -> None:
    if subset < 0 or subset & ~family.full_mask:
        raise InvalidParameter(
            "subset mask names bodies outside the family", subset=subset, n=family.n
        )


def trace_count(family: Family, subset: int) -> int:
    """Number of distinct traces of realized subsets on subset."""
    _check_subset(family, subset)
    return len(_traces(enumerate_realized(family), subset))


def is_shattered(family: Family, subset: int) -> ShatterResult:
    """Check whether every submask of subset occurs as a trace.

    Args:
        family: Planar family in general position
        subset: Bitmask over body ids

    Returns:
        ShatterResult; when not shattered, missing is the numerically
        smallest submask that never occurs
    """
    _check_subset(family, subset)
    traces = _traces(enumerate_realized(family), subset)
    if len(traces) == 1 << popcount(subset):
        return ShatterResult(True)

    for candidate in submasks_ascending(subset):
        if candidate not in traces:
            return ShatterResult(False, candidate)
    raise AssertionError("trace count below 2^k but no submask missing")


def vc_dimension(family: Family, cap: int) -> VCResult:
    """Largest shattered subset of size at most cap.

    Sizes are tried from min(cap, n, floor(log2 |E|)) downward since a
    shattered k-set needs at least 2^k edges. Within one size the smallest
    shattered mask wins.
    """
    if cap < 0:
        raise InvalidParameter("cap must be nonnegative", cap=cap)
    edges = enumerate_realized(family)
    top = min(cap, family.n, len(edges).bit_length() - 1)

    for k in range(top, 0, -1):
        for mask in masks_of_size(family.n, k):
            if len(_traces(edges, mask)) == 1 << k:
                logger.debug("vc_dimension_found", dim=k, witness=mask, edges=len(edges))
                return VCResult(k, mask)

    return VCResult(0, 0)
