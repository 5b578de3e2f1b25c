"""
Output formatting for CLI results.
Text edge lists, JSON envelopes and dict forms of every result type.
"""
import json
from typing import Any, Dict, List, Optional
import structlog

from config.constants import TOOL_NAME
from config.settings import get_settings
from data.documents import content_digest, format_rational, halfplane_to_dict
from data.models.schemas import (
    ApproximationResult, BoundsReport, Certificate, Configuration, EdgeSet, LiftReport,
    NetResult, Rational2, ShatterResult, SolverTrace, VCResult, Witness
)

logger = structlog.get_logger()
settings = get_settings()


def mask_to_bits(mask: int, n: int) -> str:
    """Binary string of length n, body 0 rightmost."""
    if n == 0:
        return ""
    return format(mask, f"0{n}b")


def format_edges_text(edges: EdgeSet) -> str:
    """One binary string per realized subset, ascending."""
    return "".join(mask_to_bits(edge, edges.n) + "\n" for edge in edges)


def dump_json(payload: Dict[str, Any]) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def envelope(command: str, result: Dict[str, Any], input_text: Optional[str] = None) -> Dict[str, Any]:
    """Wrap a result with tool name, version and input digest.

    Args:
        command: Subcommand name
        result: JSON-ready result payload
        input_text: Raw input document, if the command read one

    Returns:
        Envelope dict
    """
    return {
        "tool": TOOL_NAME,
        "version": settings.tool_version,
        "input_digest": content_digest(input_text) if input_text is not None else None,
        "command": command,
        "result": result,
    }


def _point(p: Rational2) -> list:
    return [format_rational(p.x), format_rational(p.y)]


def certificate_to_dict(certificate: Certificate, n: int) -> Dict[str, Any]:
    return {
        "shattered": mask_to_bits(certificate.shattered, n),
        "edge_count": certificate.edge_count,
        "intersections": certificate.intersections,
        "vc_dimension": certificate.vc_dimension,
    }


def configuration_to_dict(configuration: Configuration) -> Dict[str, Any]:
    return {
        "tail": _point(configuration.tail),
        "head": _point(configuration.head),
        "case": configuration.case,
    }


def edge_configurations_to_dict(edges: EdgeSet, configurations: Dict[int, Configuration],
                                n: int) -> List[Dict[str, Any]]:
    """One record per edge; trivial edges carry no configuration."""
    records = []
    for edge in edges:
        configuration = configurations.get(edge)
        records.append({
            "subset": mask_to_bits(edge, n),
            "configuration": configuration_to_dict(configuration) if configuration is not None else None,
        })
    return records


def witness_to_dict(witness: Witness, n: int) -> Dict[str, Any]:
    anchor = None
    if witness.anchor is not None:
        anchor = [_point(witness.anchor[0]), _point(witness.anchor[1])]
    return {
        "subset": mask_to_bits(witness.subset, n),
        "halfplane": halfplane_to_dict(witness.halfplane),
        "anchor": anchor,
    }


def shatter_result_to_dict(result: ShatterResult, n: int) -> Dict[str, Any]:
    missing = None if result.missing is None else mask_to_bits(result.missing, n)
    return {"shattered": result.shattered, "missing": missing}


def vc_result_to_dict(result: VCResult, n: int) -> Dict[str, Any]:
    return {"dim": result.dim, "witness": mask_to_bits(result.witness, n)}


def net_result_to_dict(result: NetResult, n: int) -> Dict[str, Any]:
    return {
        "net": mask_to_bits(result.net, n),
        "size": bin(result.net).count("1"),
        "m": result.m,
        "attempts": result.attempts,
        "eps": format_rational(result.eps),
        "d": result.d,
    }


def approximation_to_dict(result: ApproximationResult, n: int) -> Dict[str, Any]:
    return {
        "sample": mask_to_bits(result.sample, n),
        "m": result.m,
        "discrepancy": format_rational(result.discrepancy),
        "attempts": result.attempts,
    }


def trace_to_dict(trace: SolverTrace, n: int) -> Dict[str, Any]:
    return {
        "final_k": trace.final_k,
        "rounds_per_k": list(trace.rounds_per_k),
        "doublings": trace.doublings,
        "net_attempts": trace.net_attempts,
        "solution": mask_to_bits(trace.solution, n),
        "size": trace.size,
        "optimum": trace.optimum,
        "ratio": format_rational(trace.ratio) if trace.ratio is not None else None,
    }


def bounds_report_to_dict(report: BoundsReport) -> Dict[str, Any]:
    return {
        "n": report.n,
        "edge_count": report.edge_count,
        "tangent_bound": report.tangent_bound,
        "within_tangent_bound": report.within_tangent_bound,
        "intersections": report.intersections,
        "turan_bound": format_rational(report.turan_bound),
        "turan_ok": report.turan_ok,
        "shattered": report.shattered,
        "hull_ok": report.hull.ok,
        "hull_offender": report.hull.offender,
        "counting_excludes_shattering": report.counting_excludes_shattering,
        "pairwise_disjoint": report.pairwise_disjoint,
        "ok": report.ok,
    }


def lift_report_to_dict(report: LiftReport, n: int) -> Dict[str, Any]:
    return {
        "pairwise_disjoint": report.pairwise_disjoint,
        "containment_matches": report.containment_matches,
        "shattered": mask_to_bits(report.shattered, n),
    }
