"""
Weighted epsilon-nets by sampling, verified exactly against the edge set.
"""
from fractions import Fraction
from math import ceil, log
from typing import List, Optional, Union
import numpy as np
import structlog
from tenacity import RetryError, Retrying, retry_if_result, stop_after_attempt

from config.settings import get_settings
from data.models.errors import InvalidEps, InvalidParameter, SamplingExhausted, ZeroTotalWeight
from data.models.schemas import EdgeSet, Family, NetResult, WeightVector
from analysis.enumeration import enumerate_realized
from analysis.shattering import popcount

logger = structlog.get_logger()
settings = get_settings()


def as_eps(value: Union[Fraction, int, str]) -> Fraction:
    """Exact eps with 0 < eps < 1."""
    eps = Fraction(value)
    if not 0 < eps < 1:
        raise InvalidEps("eps must satisfy 0 < eps < 1", eps=str(eps))
    return eps


def net_sample_size(eps: Fraction, d: int) -> int:
    """m = ceil((8d / eps) * ln(16 / eps)) with the configured constants."""
    eps = as_eps(eps)
    if d < 1:
        raise InvalidParameter("dimension must be at least 1", d=d)
    return ceil(settings.net_constant * d / float(eps) * log(settings.net_log_constant / float(eps)))


def _check_weights(family: Family, w: WeightVector) -> None:
    if len(w.weights) != family.n:
        raise InvalidParameter("one weight per body is required",
                               weights=len(w.weights), n=family.n)
    if w.total <= 0:
        raise ZeroTotalWeight("total weight must be positive")


def heavy_edges(edges: EdgeSet, eps: Fraction, w: WeightVector) -> List[int]:
    """Edges of weight at least eps * total, ascending."""
    threshold = eps * w.total
    if w.is_uniform and w.weights:
        unit = w.weights[0]
        return [e for e in edges if popcount(e) * unit >= threshold]
    return [e for e in edges if w.of(e) >= threshold]


def verify_epsilon_net(family: Family, eps: Fraction, w: WeightVector, net: int) -> Optional[int]:
    """Check that net meets every heavy realized subset.

    Returns:
        None when the net is valid, else the smallest violating edge
    """
    eps = as_eps(eps)
    _check_weights(family, w)
    if net < 0 or net & ~family.full_mask:
        raise InvalidParameter("net mask names bodies outside the family", net=net, n=family.n)
    for edge in heavy_edges(enumerate_realized(family), eps, w):
        if edge & net == 0:
            return edge
    return None


def sample_by_weight(rng: np.random.Generator, w: WeightVector, m: int) -> int:
    """m i.i.d. draws proportional to w (with replacement), as a mask."""
    probabilities = np.array([float(x) for x in w.weights]) / float(w.total)
    mask = 0
    for index in rng.choice(len(w.weights), size=m, replace=True, p=probabilities):
        mask |= 1 << int(index)
    return mask


def epsilon_net(family: Family, eps: Fraction, w: WeightVector, d: int, seed: int) -> NetResult:
    """Sample-verify-resample until the sample is an eps-net.

    Args:
        family: Planar family in general position
        eps: 0 < eps < 1
        w: Body weights with positive total
        d: Dimension used for the sample size
        seed: numpy seed; identical seeds give identical nets and attempts

    Returns:
        NetResult with the verified net

    Raises:
        InvalidEps, ZeroTotalWeight, SamplingExhausted
    """
    eps = as_eps(eps)
    _check_weights(family, w)
    m = net_sample_size(eps, d)
    heavy = heavy_edges(enumerate_realized(family), eps, w)
    rng = np.random.default_rng(seed)
    attempts = 0

    def draw() -> int:
        nonlocal attempts
        attempts += 1
        return sample_by_weight(rng, w, m)

    def misses(net: int) -> bool:
        return any(edge & net == 0 for edge in heavy)

    retrying = Retrying(
        stop=stop_after_attempt(settings.max_attempts),
        retry=retry_if_result(misses),
        reraise=True,
    )
    try:
        net = retrying(draw)
    except RetryError:
        raise SamplingExhausted("no valid eps-net within the attempt budget", attempts=attempts)

    logger.info("epsilon_net_found", n=family.n, eps=str(eps), m=m,
                size=popcount(net), attempts=attempts, heavy=len(heavy))
    return NetResult(net=net, m=m, attempts=attempts, eps=eps, d=d)
