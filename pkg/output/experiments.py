"""
Seeded experiment batteries summarized as pandas DataFrames.
"""
from fractions import Fraction
from typing import Dict, List, Sequence
import pandas as pd
import structlog
from tqdm import tqdm

from config.constants import DISJOINT_CONVEX_VC_DIM
from config.settings import get_settings
from data.models.schemas import WeightVector
from analysis.enumeration import enumerate_realized, tangent_bound
from analysis.shattering import is_shattered, popcount
from constructions.random_families import random_disjoint_convex_family, random_segment_family
from nets.approximation import epsilon_approximation, max_discrepancy
from nets.epsilon_net import epsilon_net, net_sample_size, verify_epsilon_net

logger = structlog.get_logger()
settings = get_settings()

BATTERIES = ["tangent-bound", "disjoint-falsification", "net", "approx"]


def tangent_bound_battery(families: int, seed: int, sizes: Sequence[int] = range(2, 9),
                          progress: bool = False) -> pd.DataFrame:
    """Edge counts of random segment families against 2n(n-1)+2.

    Family i uses seed + i and size sizes[i % len(sizes)].
    """
    sizes = list(sizes)
    rows: List[Dict] = []
    for i in tqdm(range(families), desc="tangent bound", disable=not progress):
        n = sizes[i % len(sizes)]
        family = random_segment_family(n, seed + i)
        edges = len(enumerate_realized(family))
        rows.append({"seed": seed + i, "n": n, "edges": edges, "bound": tangent_bound(n),
                     "within_bound": edges <= tangent_bound(n)})

    df = pd.DataFrame(rows, columns=["seed", "n", "edges", "bound", "within_bound"])
    if not df.empty:
        observed = df.groupby("n")["edges"].max()
        logger.info("tangent_bound_battery_done", families=families,
                    max_observed={int(k): int(v) for k, v in observed.items()},
                    violations=int((~df["within_bound"]).sum()))
    return df


def disjoint_falsification_battery(families: int, seed: int,
                                   progress: bool = False) -> pd.DataFrame:
    """Random families of four pairwise-disjoint polygons; none may be shattered."""
    n = DISJOINT_CONVEX_VC_DIM + 1
    rows: List[Dict] = []
    for i in tqdm(range(families), desc="disjoint falsification", disable=not progress):
        family = random_disjoint_convex_family(n, seed + i)
        result = is_shattered(family, family.full_mask)
        rows.append({"seed": seed + i, "shattered": result.shattered, "missing": result.missing})

    df = pd.DataFrame(rows, columns=["seed", "shattered", "missing"])
    logger.info("disjoint_falsification_battery_done", families=families,
                shattered=int(df["shattered"].sum()) if not df.empty else 0)
    return df


def net_battery(runs: int, n: int, eps: Fraction, d: int, seed: int,
                progress: bool = False) -> pd.DataFrame:
    """Attempts and net sizes of epsilon_net on random disjoint convex families."""
    rows: List[Dict] = []
    m = net_sample_size(eps, d)
    for i in tqdm(range(runs), desc="epsilon net", disable=not progress):
        family = random_disjoint_convex_family(n, seed + i)
        w = WeightVector.uniform(n)
        result = epsilon_net(family, eps, w, d, seed + i)
        rows.append({
            "seed": seed + i,
            "attempts": result.attempts,
            "size": popcount(result.net),
            "m": m,
            "verified": verify_epsilon_net(family, eps, w, result.net) is None,
        })
    return pd.DataFrame(rows, columns=["seed", "attempts", "size", "m", "verified"])


def approximation_battery(runs: int, n: int, eps: Fraction, seed: int,
                          progress: bool = False) -> pd.DataFrame:
    """Seeded epsilon_approximation runs on one shared random disjoint convex family.

    The family comes from seed and its edge set is enumerated once; run i
    samples with seed + i.
    """
    family = random_disjoint_convex_family(n, seed)
    edges = len(enumerate_realized(family))
    rows: List[Dict] = []
    for i in tqdm(range(runs), desc="epsilon approximation", disable=not progress):
        result = epsilon_approximation(family, eps, seed + i)
        rows.append({
            "seed": seed + i,
            "attempts": result.attempts,
            "m": result.m,
            "discrepancy": float(result.discrepancy),
            "below_eps": max_discrepancy(family, result.sample) < eps,
        })

    df = pd.DataFrame(rows, columns=["seed", "attempts", "m", "discrepancy", "below_eps"])
    logger.info("approximation_battery_done", runs=runs, n=n, edges=edges,
                median_attempts=float(df["attempts"].median()) if not df.empty else None)
    return df


def summarize(df: pd.DataFrame) -> List[Dict]:
    """Per-column count, mean, min and max of the numeric and boolean columns."""
    records = []
    for column in df.columns:
        series = df[column]
        if series.dtype == bool:
            series = series.astype(int)
        if not pd.api.types.is_numeric_dtype(series) or series.empty:
            continue
        records.append({
            "column": column,
            "count": int(series.count()),
            "mean": round(float(series.mean()), 6),
            "min": series.min().item(),
            "max": series.max().item(),
        })
    return records
