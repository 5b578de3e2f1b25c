"""
Halfplane Containment Hypergraph Toolkit - Main Entry Point

Subcommands map one-to-one onto library operations:
    enumerate      realized subsets, one binary string per line (or JSON with configurations)
    vc             VC-dimension with a witness subset
    shatter        shattering test for one subset
    gen            verified construction (optionally lifted to 3D)
    search         randomized search for a shattered family
    net            weighted epsilon-net
    approx         epsilon-approximation
    hitset         halfplane-segment hitting set
    render         SVG figure
    check-bounds   invariant battery on one family
    battery        seeded experiment battery summary

Usage:
    python main.py gen --name five-segments
    python main.py vc --input family.json
    python main.py enumerate --input family.json --perturb

Exit codes: 0 success, 1 internal invariant failure, 2 invalid input, 3 absent result.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional
import structlog

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from config.constants import (
    BodyClass, BodyKind, DIMENSION_BY_CLASS, CONSTRUCTION_NAMES,
    EXIT_ABSENT, EXIT_INTERNAL, EXIT_OK, EXIT_VALIDATION, TOOL_NAME,
)
from config.settings import get_settings
from data.documents import (
    parse_family, parse_hitting_document, parse_rational, read_certificate, serialize_family
)
from data.models.errors import (
    HypergraphError, InvalidParameter, InvariantViolation, SamplingExhausted
)
from data.models.schemas import ConstructionResult, Family, SearchConstraints, WeightVector
from geometry.predicates import check_general_position, perturb_family
from analysis.enumeration import edge_configurations, enumerate_realized, realize_witness
from analysis.shattering import is_shattered, vc_dimension
from analysis.validation.invariants import check_bounds, count_intersecting_pairs
from constructions.generators import construction_by_name, lift_to_3d
from constructions.search import search_shattered
from nets.epsilon_net import epsilon_net
from nets.approximation import epsilon_approximation
from solver.hitting_set import bg_hitting_set, build_instance
from output.formatter import (
    approximation_to_dict, bounds_report_to_dict, certificate_to_dict, dump_json,
    edge_configurations_to_dict, envelope,
    format_edges_text, lift_report_to_dict, net_result_to_dict, shatter_result_to_dict,
    trace_to_dict, vc_result_to_dict,
)
from output.svg_renderer import render_spec, render_svg
from output import experiments

settings = get_settings()


def configure_logging() -> None:
    """Route structlog through stdlib logging to stderr (or settings.log_file)."""
    if settings.log_file:
        handler: logging.Handler = logging.FileHandler(settings.log_file)
    else:
        handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(settings.log_level.upper())

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer()
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
    )


configure_logging()
logger = structlog.get_logger()

# Errors that mean "no result exists" rather than "bad input"
ABSENT_ERRORS = (SamplingExhausted,)


class CommandResult:
    """Text to write plus the exit code."""

    def __init__(self, text: str, code: int = EXIT_OK):
        self.text = text
        self.code = code


def _read_input(args: argparse.Namespace) -> str:
    if args.input is None or args.input == "-":
        return sys.stdin.read()
    try:
        return Path(args.input).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidParameter(f"cannot read {args.input}", error=str(e))


def _load_family(args: argparse.Namespace, text: str) -> Family:
    family = parse_family(text)
    if args.perturb and family.is_planar:
        if not check_general_position(family, allow_shared_vertices=True).ok:
            family = perturb_family(family)
            logger.warning("perturbation_applied", n=family.n)
    return family


def _parse_subset(bits: Optional[str], family: Family) -> int:
    if bits is None:
        return family.full_mask
    if len(bits) != family.n or any(c not in "01" for c in bits):
        raise InvalidParameter("subset must be a binary string of length n", subset=bits, n=family.n)
    return int(bits, 2) if bits else 0


def _parse_eps(args: argparse.Namespace):
    if args.eps is None:
        raise InvalidParameter("--eps is required for this command")
    return parse_rational(args.eps)


def _parse_weights(text: Optional[str], n: int) -> WeightVector:
    if text is None:
        return WeightVector.uniform(n)
    weights = [parse_rational(part) for part in text.split(",") if part.strip()]
    if len(weights) != n:
        raise InvalidParameter("one weight per body is required", weights=len(weights), n=n)
    return WeightVector(tuple(weights))


def _default_dimension(family: Family) -> int:
    if family.n and all(body.kind == BodyKind.SEGMENT for body in family.bodies):
        return DIMENSION_BY_CLASS[BodyClass.SEGMENTS]
    if count_intersecting_pairs(family) == 0:
        return DIMENSION_BY_CLASS[BodyClass.DISJOINT_CONVEX]
    return max(1, family.n)


def cmd_enumerate(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    family = _load_family(args, text)
    edges = enumerate_realized(family)
    if not args.configurations:
        return CommandResult(format_edges_text(edges))
    records = edge_configurations_to_dict(edges, edge_configurations(family), family.n)
    return CommandResult(dump_json(envelope("enumerate", {"edges": records}, text)))


def cmd_vc(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    family = _load_family(args, text)
    cap = settings.vc_default_cap if args.cap is None else args.cap
    result = vc_dimension(family, cap)
    return CommandResult(dump_json(envelope("vc", vc_result_to_dict(result, family.n), text)))


def cmd_shatter(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    family = _load_family(args, text)
    result = is_shattered(family, _parse_subset(args.subset, family))
    return CommandResult(dump_json(envelope("shatter", shatter_result_to_dict(result, family.n), text)))


def _certificate_payload(result: ConstructionResult) -> Dict:
    payload = certificate_to_dict(result.certificate, result.family.n)
    payload.update({
        "tool": TOOL_NAME,
        "version": settings.tool_version,
        "provenance": {"name": result.provenance.name, "params": result.provenance.params},
    })
    return payload


def cmd_gen(args: argparse.Namespace) -> CommandResult:
    result = construction_by_name(args.name, n=args.n)
    certificate = _certificate_payload(result)
    family = result.family
    if args.lift:
        family, report = lift_to_3d(result)
        certificate["lift"] = lift_report_to_dict(report, family.n)
    return CommandResult(serialize_family(family, certificate))


def cmd_search(args: argparse.Namespace) -> CommandResult:
    if args.n is None:
        raise InvalidParameter("--n is required for search")
    constraints = SearchConstraints(args.max_intersections, args.symmetry)
    result = search_shattered(args.n, BodyClass(args.kind), constraints, args.seed, args.budget)
    if result is None:
        payload = envelope("search", {"found": False, "n": args.n, "kind": args.kind})
        return CommandResult(dump_json(payload), EXIT_ABSENT)
    return CommandResult(serialize_family(result.family, _certificate_payload(result)))


def cmd_net(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    family = _load_family(args, text)
    d = args.dim or _default_dimension(family)
    result = epsilon_net(family, _parse_eps(args), _parse_weights(args.weights, family.n), d, args.seed)
    return CommandResult(dump_json(envelope("net", net_result_to_dict(result, family.n), text)))


def cmd_approx(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    family = _load_family(args, text)
    result = epsilon_approximation(family, _parse_eps(args), args.seed)
    return CommandResult(dump_json(envelope("approx", approximation_to_dict(result, family.n), text)))


def cmd_hitset(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    segments, halfplanes = parse_hitting_document(text)
    instance = build_instance(segments, halfplanes)
    trace = bg_hitting_set(instance, args.seed, exact_cap=args.exact_cap)
    payload = dump_json(envelope("hitset", trace_to_dict(trace, segments.n), text))
    if args.exact_cap is not None and trace.optimum is None:
        logger.info("exact_optimum_absent", cap=args.exact_cap)
        return CommandResult(payload, EXIT_ABSENT)
    return CommandResult(payload)


def cmd_render(args: argparse.Namespace) -> CommandResult:
    family = _load_family(args, _read_input(args))
    witnesses = []
    if args.witnesses:
        witnesses = [realize_witness(family, edge) for edge in enumerate_realized(family)]
    return CommandResult(render_svg(render_spec(family, witnesses)))


def cmd_check_bounds(args: argparse.Namespace) -> CommandResult:
    text = _read_input(args)
    family = _load_family(args, text)
    certificate = read_certificate(text) or {}
    shattered = None
    if "shattered" in certificate and isinstance(certificate["shattered"], str):
        shattered = certificate["shattered"] == "1" * family.n
    report = check_bounds(family, shattered)
    return CommandResult(dump_json(envelope("check-bounds", bounds_report_to_dict(report), text)))


def cmd_battery(args: argparse.Namespace) -> CommandResult:
    trials = args.trials or 10
    if args.kind == "tangent-bound":
        df = experiments.tangent_bound_battery(trials, args.seed)
    elif args.kind == "disjoint-falsification":
        df = experiments.disjoint_falsification_battery(trials, args.seed)
    elif args.kind == "net":
        eps = parse_rational(args.eps) if args.eps else parse_rational("1/10")
        df = experiments.net_battery(trials, args.n or 50, eps, args.dim or 3, args.seed)
    elif args.kind == "approx":
        eps = parse_rational(args.eps) if args.eps else parse_rational("1/10")
        df = experiments.approximation_battery(trials, args.n or 50, eps, args.seed)
    else:
        raise InvalidParameter(f"unknown battery {args.kind!r}", known=experiments.BATTERIES)
    payload = {"kind": args.kind, "rows": len(df), "summary": experiments.summarize(df)}
    return CommandResult(dump_json(envelope("battery", payload)))


COMMANDS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "enumerate": cmd_enumerate,
    "vc": cmd_vc,
    "shatter": cmd_shatter,
    "gen": cmd_gen,
    "search": cmd_search,
    "net": cmd_net,
    "approx": cmd_approx,
    "hitset": cmd_hitset,
    "render": cmd_render,
    "check-bounds": cmd_check_bounds,
    "battery": cmd_battery,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the shared flags on every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=str, help="Input document (default stdin)")
    common.add_argument("--output", type=str, help="Output file (default stdout)")
    common.add_argument("--seed", type=int, default=0, help="Random seed")
    common.add_argument("--eps", type=str, help="Rational eps such as 1/10")
    common.add_argument("--perturb", action="store_true",
                        help="Perturb the family when it is not in general position")
    common.add_argument("--exact-cap", type=int, default=settings.exact_cap_default or None,
                        help="Also compute the exact hitting set up to this size (0 = skip)")

    parser = argparse.ArgumentParser(
        description="Halfplane containment hypergraphs of convex bodies"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enumerate_cmd = sub.add_parser("enumerate", parents=[common], help="List realized subsets")
    enumerate_cmd.add_argument("--configurations", action="store_true",
                               help="JSON output with the terminal configuration of each subset")

    vc = sub.add_parser("vc", parents=[common], help="VC-dimension")
    vc.add_argument("--cap", type=int, help="Largest subset size to try")

    shatter = sub.add_parser("shatter", parents=[common], help="Shattering test")
    shatter.add_argument("--subset", type=str, help="Binary string, body 0 rightmost")

    gen = sub.add_parser("gen", parents=[common], help="Verified construction")
    gen.add_argument("--name", choices=CONSTRUCTION_NAMES, required=True)
    gen.add_argument("--n", type=int, help="Size for the unbounded construction")
    gen.add_argument("--lift", action="store_true", help="Stack bodies at heights 0..n-1")

    search = sub.add_parser("search", parents=[common], help="Search for a shattered family")
    search.add_argument("--n", type=int)
    search.add_argument("--kind", choices=[c.value for c in BodyClass], default="segments")
    search.add_argument("--budget", type=int, default=1000)
    search.add_argument("--max-intersections", type=int)
    search.add_argument("--symmetry", type=int)

    net = sub.add_parser("net", parents=[common], help="Weighted epsilon-net")
    net.add_argument("--weights", type=str, help="Comma-separated rational weights")
    net.add_argument("--dim", type=int, help="Dimension used for the sample size")

    sub.add_parser("approx", parents=[common], help="Epsilon-approximation")
    sub.add_parser("hitset", parents=[common], help="Hitting set for a halfplane instance")

    render = sub.add_parser("render", parents=[common], help="SVG figure")
    render.add_argument("--witnesses", action="store_true", help="Draw a witness per edge")

    sub.add_parser("check-bounds", parents=[common], help="Invariant battery")

    battery = sub.add_parser("battery", parents=[common], help="Experiment battery")
    battery.add_argument("--kind", choices=experiments.BATTERIES, default="tangent-bound")
    battery.add_argument("--trials", type=int)
    battery.add_argument("--n", type=int)
    battery.add_argument("--dim", type=int)

    return parser


def _exit_code(error: HypergraphError) -> int:
    if isinstance(error, ABSENT_ERRORS):
        return EXIT_ABSENT
    if isinstance(error, InvariantViolation):
        return EXIT_INTERNAL
    return EXIT_VALIDATION


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one subcommand and write its output.

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except HypergraphError as e:
        logger.error("command_failed", command=args.command, error=e.code, message=e.message)
        sys.stderr.write(dump_json(e.to_dict()))
        return _exit_code(e)

    if args.output:
        Path(args.output).write_text(result.text, encoding="utf-8")
    else:
        sys.stdout.write(result.text)
    return result.code


def main():
    """CLI entry point."""
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
