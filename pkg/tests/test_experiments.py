"""Experiment batteries."""
from fractions import Fraction

from output.experiments import (
    approximation_battery, disjoint_falsification_battery, net_battery, summarize,
    tangent_bound_battery
)


def test_tangent_bound_battery():
    df = tangent_bound_battery(4, seed=0, sizes=[2, 3])
    assert list(df["n"]) == [2, 3, 2, 3]
    assert df["within_bound"].all()
    assert (df["edges"] <= df["bound"]).all()


def test_disjoint_falsification_battery():
    df = disjoint_falsification_battery(2, seed=0)
    assert len(df) == 2
    assert not df["shattered"].any()


def test_net_battery():
    df = net_battery(2, n=8, eps=Fraction(1, 2), d=3, seed=0)
    assert df["verified"].all()
    assert (df["attempts"] >= 1).all()


def test_approximation_battery_shares_one_family():
    df = approximation_battery(3, n=20, eps=Fraction(1, 2), seed=0)
    assert list(df["seed"]) == [0, 1, 2]
    assert (df["m"] == 16).all()
    assert df["below_eps"].all()
    assert (df["discrepancy"] < 0.5).all()


def test_summarize():
    df = tangent_bound_battery(3, seed=1, sizes=[2])
    records = {r["column"]: r for r in summarize(df)}
    assert records["n"]["min"] == 2 and records["n"]["max"] == 2
    assert records["within_bound"]["mean"] == 1.0
    assert records["edges"]["count"] == 3
