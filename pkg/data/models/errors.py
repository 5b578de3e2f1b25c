"""
Exception hierarchy for the toolkit.
Every error carries a stable code and a JSON-ready detail payload.
"""
from typing import Any, Dict, Optional


class HypergraphError(Exception):
    """Base class for all toolkit errors."""

    code = "hypergraph_error"

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = detail

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form written to the error stream by the CLI."""
        return {"error": self.code, "message": self.message, "detail": self.detail}


class GeneralPositionViolation(HypergraphError):
    """A collinear triple or duplicated vertex blocks exact enumeration."""

    code = "general_position_violation"

    def __init__(self, kind: str, points: tuple):
        self.kind = kind
        self.points = points
        super().__init__(
            f"family is not in general position ({kind})",
            kind=kind,
            points=[[str(p.x), str(p.y)] for p in points],
        )


class AmbientError(HypergraphError):
    """Operation needs a planar family but got a lifted one (or vice versa)."""

    code = "ambient_error"


class CapExceeded(HypergraphError):
    """Requested size is outside the configured construction cap."""

    code = "cap_exceeded"


class InvalidParameter(HypergraphError):
    """A numeric argument is outside its admissible range."""

    code = "invalid_parameter"


class InvalidEps(InvalidParameter):
    """eps must satisfy 0 < eps < 1."""

    code = "invalid_eps"


class ZeroTotalWeight(HypergraphError):
    """Sampling by weight needs a positive total."""

    code = "zero_total_weight"


class EmptySample(HypergraphError):
    """A discrepancy was requested for an empty sample."""

    code = "empty_sample"


class EmptyFamily(HypergraphError):
    """Relative counts are undefined on an empty family."""

    code = "empty_family"


class InfeasibleInstance(HypergraphError):
    """Some halfplane of a hitting instance contains no segment."""

    code = "infeasible_instance"


class SamplingExhausted(HypergraphError):
    """A Las Vegas loop ran out of attempts without a verified sample."""

    code = "sampling_exhausted"


class InvariantViolation(HypergraphError):
    """An internal hard assertion failed; results must not be trusted."""

    code = "invariant_violation"


class FamilyValidationError(HypergraphError):
    """A domain value violates one of its structural invariants."""

    code = "validation_error"

    def __init__(self, invariant: str, message: str, **detail: Any):
        self.invariant = invariant
        super().__init__(message, invariant=invariant, **detail)


class DocumentValidationError(FamilyValidationError):
    """A parsed document is well-formed JSON but describes an invalid family."""

    code = "document_validation_error"


class DocumentSyntaxError(HypergraphError):
    """A document could not be parsed at all."""

    code = "document_syntax_error"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        super().__init__(message, line=line, column=column)
