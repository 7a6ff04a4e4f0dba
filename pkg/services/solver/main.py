"""Entry point for the stable marriage solver command line."""

import argparse
import sys
from pathlib import Path

from matching_common import (
    GuardExceededError,
    InstanceValidationError,
    UnsupportedInputError,
    setup_logging,
)
from pydantic import ValidationError

from dependencies import (
    get_fuzz_handler,
    get_instance_codec,
    get_reduction_handler,
    get_solve_handler,
    get_structure_handler,
)
from domain import Method, Problem
from exceptions import (
    DecompositionMismatchError,
    MatchingStructureError,
    NotClosedError,
    ReductionInputError,
    ReductionParameterError,
    TreeDecompositionError,
    UnknownAgentError,
)
from handlers import ReductionRequest, SolveRequest
from reductions import ReductionKind
from response_models import SolveResponse

logger = setup_logging()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_GUARD = 3

LOG_LEVELS = ["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"]

REDUCTION_EPILOG = (
    "SAT reductions predict the exact agent count 4n + 8a + 2h + 2, with a the "
    "total number of block assignments and h the happy pairs including the pool. "
    "The coarser closed form 4(n + 2q*2^(pd)) + alpha + 1 is reported separately "
    "as extras.printed_agents and can differ from it."
)

VALIDATION_ERRORS = (
    InstanceValidationError,
    UnsupportedInputError,
    MatchingStructureError,
    TreeDecompositionError,
    DecompositionMismatchError,
    ReductionInputError,
    ReductionParameterError,
    UnknownAgentError,
    NotClosedError,
    ValidationError,
    OSError,
)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _add_reduction_arguments(parser: argparse.ArgumentParser) -> None:
    parser.epilog = REDUCTION_EPILOG
    parser.add_argument(
        "--kind", required=True, choices=[k.value for k in ReductionKind]
    )
    parser.add_argument(
        "--input", required=True, help="Clique graph or DIMACS CNF file"
    )
    parser.add_argument(
        "--relaxed",
        action="store_true",
        help="Use the configured spacer multipliers instead of input powers",
    )
    parser.add_argument("--block-size", type=int, default=1, help="SAT block size")
    parser.add_argument("--sparsity", type=int, default=None, help="SAT sparsity")
    parser.add_argument(
        "--spacer-scale", type=int, default=1, help="SAT relaxed spacer multiplier"
    )


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog="stablematch",
        description="Treewidth-parameterized stable marriage solvers",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--log-level", dest="log_level", choices=LOG_LEVELS, default=None
    )
    commands = parser.add_subparsers(dest="command", required=True)

    parse = commands.add_parser("parse", help="Validate and echo an instance")
    parse.add_argument("--instance", required=True)

    solve = commands.add_parser("solve", help="Solve one objective")
    solve.add_argument("--problem", required=True, choices=[p.value for p in Problem])
    solve.add_argument("--method", required=True, choices=[m.value for m in Method])
    solve.add_argument("--instance", required=True)
    solve.add_argument("--td", default=None, help="PACE .td decomposition file")
    solve.add_argument("--graph", choices=["primal", "rotation"], default=None)
    solve.add_argument("--witness", action="store_true")
    solve.add_argument("--seed", type=int, default=0, help="Tie-break seed for gs")

    rotations = commands.add_parser("rotations", help="List rotations")
    rotations.add_argument("--instance", required=True)
    rotations.add_argument("--dot", action="store_true", help="Emit DOT")

    decompose = commands.add_parser("decompose", help="Min-fill decomposition")
    decompose.add_argument("--instance", required=True)
    decompose.add_argument("--graph", choices=["primal", "rotation"], required=True)
    decompose.add_argument("--nice", action="store_true")
    decompose.add_argument("--out", default=None, help="Output .td file")

    generate = commands.add_parser("generate", help="Build a hardness instance")
    _add_reduction_arguments(generate)
    generate.add_argument("--out", required=True, help="Output path prefix")

    verify = commands.add_parser(
        "verify-reduction", help="Build a hardness instance and check its structure"
    )
    _add_reduction_arguments(verify)

    fuzz = commands.add_parser("fuzz", help="Random oracle-equivalence trials")
    fuzz.add_argument("--n", type=int, default=5, help="Agents per side, at most")
    fuzz.add_argument("--trials", type=int, default=100)
    fuzz.add_argument("--seed", type=int, default=0)

    return parser


def _reduction_request(args: argparse.Namespace) -> ReductionRequest:
    return ReductionRequest(
        kind=args.kind,
        input_text=_read(args.input),
        relaxed=args.relaxed,
        block_size=args.block_size,
        sparsity=args.sparsity,
        spacer_scale=args.spacer_scale,
    )


def _run(args: argparse.Namespace) -> int:
    match args.command:
        case "parse":
            codec = get_instance_codec()
            print(codec.render(codec.parse(_read(args.instance))), end="")
        case "solve":
            request = SolveRequest(
                instance_text=_read(args.instance),
                problem=args.problem,
                method=args.method,
                td_text=_read(args.td) if args.td else None,
                graph=args.graph,
                seed=args.seed,
            )
            report = get_solve_handler().process(request)
            response = SolveResponse.from_report(report, args.witness)
            print(response.model_dump_json(indent=2))
        case "rotations":
            handler = get_structure_handler()
            text = _read(args.instance)
            if args.dot:
                print(handler.rotations_dot(text), end="")
            else:
                print(handler.rotations(text).model_dump_json(indent=2))
        case "decompose":
            td = get_structure_handler().decompose(
                _read(args.instance), args.graph, args.nice
            )
            if args.out:
                Path(args.out).write_text(td, encoding="utf-8")
            else:
                print(td, end="")
        case "generate":
            files = get_reduction_handler().generate(
                _reduction_request(args), Path(args.out)
            )
            print(files.model_dump_json(indent=2))
        case "verify-reduction":
            report = get_reduction_handler().verify(_reduction_request(args))
            print(report.model_dump_json(indent=2))
            if not report.passed:
                return EXIT_FAILED
        case "fuzz":
            result = get_fuzz_handler().process(args.n, args.trials, args.seed)
            print(result.model_dump_json(indent=2))
            if result.mismatches:
                return EXIT_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """
    Runs one command.

    Returns:
        0 on success, 1 when a verification or fuzz batch found a failure,
        2 on invalid input and 3 when a size guard was exceeded.
    """
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logging(args.log_level)
    logger.info("Running command", extra={"command": args.command})
    try:
        return _run(args)
    except GuardExceededError as e:
        logger.exception("Size guard exceeded", extra={"guard": e.guard})
        return EXIT_GUARD
    except VALIDATION_ERRORS as e:
        logger.exception("Invalid input", extra={"error": str(e)})
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
