"""Data models for the halfplane containment toolkit."""
from .schemas import (
    Rational2, Halfplane, ConvexBody, Family, EdgeSet, Configuration,
    Witness, GeneralPositionReport, ShatterResult, VCResult, HullReport,
    BoundsReport, Certificate, Provenance, ConstructionResult, LiftReport,
    SearchConstraints, WeightVector, NetResult, ApproximationResult,
    HittingInstance, SolverTrace, RangeCount, RenderSpec
)
