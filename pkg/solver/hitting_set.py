"""
Halfplane-segment hitting set by iterative reweighting.

Every halfplane must fully contain a chosen segment. Weighted nets over the
finite range list are drawn, the first unhit range has its members' weights
doubled, and the guess k for the optimum doubles when a round budget runs out.
"""
from itertools import combinations
from math import ceil, log, log2
from typing import List, Optional, Sequence, Tuple
import numpy as np
import structlog
from tenacity import RetryError, Retrying, retry_if_result, stop_after_attempt

from config.constants import BodyKind
from config.settings import get_settings
from data.models.errors import (
    InfeasibleInstance, InvalidParameter, InvariantViolation, SamplingExhausted
)
from data.models.schemas import Family, Halfplane, HittingInstance, SolverTrace
from geometry.predicates import body_in_halfplane, require_planar

logger = structlog.get_logger()
settings = get_settings()


def build_instance(segments: Family, halfplanes: Sequence[Halfplane]) -> HittingInstance:
    """Validate the segments and precompute the range of every halfplane.

    Raises:
        InvalidParameter: a body is not a segment
        InfeasibleInstance: a halfplane contains no segment
    """
    require_planar(segments, "build_instance")
    for body in segments.bodies:
        if body.kind != BodyKind.SEGMENT:
            raise InvalidParameter(f"body {body.id} is not a segment", body=body.id)

    ranges = []
    for index, h in enumerate(halfplanes):
        mask = 0
        for body in segments.bodies:
            if body_in_halfplane(body, h):
                mask |= 1 << body.id
        if mask == 0:
            raise InfeasibleInstance(f"halfplane {index} contains no segment", index=index)
        ranges.append(mask)

    return HittingInstance(segments, tuple(halfplanes), tuple(ranges))


def verify_hitting_set(instance: HittingInstance, solution: int) -> Optional[int]:
    """Smallest index of a halfplane containing no segment of solution, or None."""
    for index, mask in enumerate(instance.ranges):
        if mask & solution == 0:
            return index
    return None


def exact_min_hitting_set(instance: HittingInstance, cap: int) -> Optional[Tuple[int, int]]:
    """Minimum hitting set by exhaustive search over sizes 0..cap.

    Returns:
        (mask, size) of the lexicographically first optimum, or None if the
        optimum is larger than cap
    """
    if cap < 0:
        raise InvalidParameter("cap must be nonnegative", cap=cap)
    n = instance.segments.n
    for size in range(min(cap, n) + 1):
        for chosen in combinations(range(n), size):
            mask = 0
            for i in chosen:
                mask |= 1 << i
            if verify_hitting_set(instance, mask) is None:
                return mask, size
    return None


def round_budget(k: int, n: int) -> int:
    """ceil(4k * log2(max(2, n / k))) with the configured constant."""
    return ceil(settings.solver_round_constant * k * log2(max(2, n / k)))


def weighted_net_size(k: int, ranges: int) -> int:
    """Draws needed so every range of weight >= W/(2k) is hit with probability >= 1/2."""
    return ceil(2 * k * log(2 * max(1, ranges)))


def _weighted_net(instance: HittingInstance, weights: List[int], k: int,
                  rng: np.random.Generator) -> Tuple[int, int]:
    total = sum(weights)
    heavy = [mask for mask in instance.ranges if 2 * k * _weight(mask, weights) >= total]
    m = weighted_net_size(k, len(instance.ranges))
    probabilities = np.array(weights, dtype=float) / total
    attempts = 0

    def draw() -> int:
        nonlocal attempts
        attempts += 1
        net = 0
        for index in rng.choice(len(weights), size=m, replace=True, p=probabilities):
            net |= 1 << int(index)
        return net

    retrying = Retrying(
        stop=stop_after_attempt(settings.max_attempts),
        retry=retry_if_result(lambda net: any(mask & net == 0 for mask in heavy)),
        reraise=True,
    )
    try:
        return retrying(draw), attempts
    except RetryError:
        raise SamplingExhausted("no weighted net within the attempt budget", k=k, attempts=attempts)


def _weight(mask: int, weights: List[int]) -> int:
    return sum(w for i, w in enumerate(weights) if mask >> i & 1)


def bg_hitting_set(instance: HittingInstance, seed: int,
                   exact_cap: Optional[int] = None) -> SolverTrace:
    """Approximate a minimum hitting set.

    Args:
        instance: Feasible instance from build_instance
        seed: numpy seed; a fixed seed gives an identical trace
        exact_cap: Also compute the exact optimum up to this size and log the ratio

    Returns:
        SolverTrace whose solution passed verify_hitting_set

    Raises:
        InvariantViolation: a doubled range was heavy, k outgrew its bound,
            or the result failed verification
    """
    n = instance.segments.n
    rng = np.random.default_rng(seed)
    trace = SolverTrace(final_k=1, rounds_per_k=[], doublings=0, solution=0)

    if not instance.ranges:
        return _finish(instance, trace, exact_cap)

    k_limit = 1 << max(0, ceil(log2(n)))
    k = 1
    while True:
        if k > k_limit:
            raise InvariantViolation("k exceeded its bound on a feasible instance", k=k, n=n)

        weights = [1] * n
        budget = round_budget(k, n)
        for round_index in range(1, budget + 1):
            net, attempts = _weighted_net(instance, weights, k, rng)
            trace.net_attempts += attempts
            unhit = verify_hitting_set(instance, net)
            if unhit is None:
                trace.final_k = k
                trace.rounds_per_k.append(round_index)
                trace.solution = net
                return _finish(instance, trace, exact_cap)

            members = instance.ranges[unhit]
            total = sum(weights)
            if 2 * k * _weight(members, weights) >= total:
                raise InvariantViolation("doubled range was not light", k=k, range=unhit)
            for i in range(n):
                if members >> i & 1:
                    weights[i] *= 2
            trace.doublings += 1
            logger.debug("range_doubled", k=k, round=round_index, range=unhit, total=total)

        trace.rounds_per_k.append(budget)
        logger.debug("k_doubled", k=k, rounds=budget)
        k *= 2


def _finish(instance: HittingInstance, trace: SolverTrace,
            exact_cap: Optional[int]) -> SolverTrace:
    unhit = verify_hitting_set(instance, trace.solution)
    if unhit is not None:
        raise InvariantViolation("solver output misses a halfplane", unhit=unhit)

    if exact_cap is not None:
        optimum = exact_min_hitting_set(instance, exact_cap)
        if optimum is not None:
            trace.optimum = optimum[1]
            if trace.size < trace.optimum:
                raise InvariantViolation("solution smaller than the optimum",
                                         size=trace.size, optimum=trace.optimum)

    logger.info("hitting_set_found", n=instance.segments.n, halfplanes=len(instance.ranges),
                size=trace.size, k=trace.final_k, doublings=trace.doublings,
                optimum=trace.optimum, ratio=str(trace.ratio) if trace.ratio else None)
    return trace
