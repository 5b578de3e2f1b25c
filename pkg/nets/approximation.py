"""
Epsilon-approximations: uniform samples whose relative containment counts
stay within eps of the whole family for every halfplane.
"""
from fractions import Fraction
from math import ceil
import numpy as np
import structlog
from tenacity import RetryError, Retrying, retry_if_result, stop_after_attempt

from config.settings import get_settings
from data.models.errors import EmptyFamily, EmptySample, InvalidParameter, SamplingExhausted
from data.models.schemas import ApproximationResult, Family
from analysis.enumeration import enumerate_realized
from analysis.shattering import popcount
from nets.epsilon_net import as_eps

logger = structlog.get_logger()
settings = get_settings()


def approximation_sample_size(n: int, eps: Fraction) -> int:
    """m = min(n, ceil(4 / eps^2)) with the configured constant."""
    eps = as_eps(eps)
    return min(n, ceil(Fraction(settings.approx_constant) / (eps * eps)))


def max_discrepancy(family: Family, sample: int) -> Fraction:
    """Largest | |e|/n - |e & P|/|P| | over realized subsets e.

    The supremum over all halfplanes is attained on a realized subset.
    """
    if sample == 0:
        raise EmptySample("discrepancy needs a nonempty sample")
    if sample < 0 or sample & ~family.full_mask:
        raise InvalidParameter("sample mask names bodies outside the family",
                               sample=sample, n=family.n)
    n = family.n
    k = popcount(sample)
    worst = 0
    for edge in enumerate_realized(family):
        gap = abs(popcount(edge) * k - popcount(edge & sample) * n)
        if gap > worst:
            worst = gap
    return Fraction(worst, n * k)


def epsilon_approximation(family: Family, eps: Fraction, seed: int) -> ApproximationResult:
    """Draw uniform samples of distinct bodies until the discrepancy is below eps.

    Raises:
        InvalidEps, EmptyFamily, SamplingExhausted
    """
    eps = as_eps(eps)
    if family.n == 0:
        raise EmptyFamily("approximation needs at least one body")
    m = approximation_sample_size(family.n, eps)
    rng = np.random.default_rng(seed)
    attempts = 0

    def draw():
        nonlocal attempts
        attempts += 1
        sample = 0
        for index in rng.choice(family.n, size=m, replace=False):
            sample |= 1 << int(index)
        return sample, max_discrepancy(family, sample)

    retrying = Retrying(
        stop=stop_after_attempt(settings.max_attempts),
        retry=retry_if_result(lambda outcome: outcome[1] >= eps),
        reraise=True,
    )
    try:
        sample, discrepancy = retrying(draw)
    except RetryError:
        raise SamplingExhausted("no eps-approximation within the attempt budget",
                                attempts=attempts)

    logger.info("epsilon_approximation_found", n=family.n, eps=str(eps), m=m,
                discrepancy=str(discrepancy), attempts=attempts)
    return ApproximationResult(sample=sample, m=m, discrepancy=discrepancy, attempts=attempts)
