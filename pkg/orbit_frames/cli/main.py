"""
Command line front-end: `orbit-frames <command> [options]`.

Exit codes: 0 on success, 1 when the command could not run, 2 when `--strict` is set
and the verdict of the command is negative.

author: Aaron Gobeyn
"""

import argparse
import logging
import sys

from ..errors import DocumentDecodeError, OrbitFrameError
from ..writer import ReportWriter
from .commands import COMMANDS, CommandResult
from .config import ExperimentConfig
from .generate import KINDS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"


class ReportArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1, code 2 is reserved for
    negative verdicts."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=None, help="JSON document: path, '-' for stdin, or inline '{...}'")
    common.add_argument("--out", default=None, help="report path, stdout when omitted")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol-rank", type=float, default=None, help="relative rank threshold")
    common.add_argument("--tol-res", type=float, default=None, help="residual acceptance threshold")
    common.add_argument("--tol-eq", type=float, default=None, help="equality threshold")
    common.add_argument("--depth", type=int, default=None, help="orbit truncation depth")
    common.add_argument("--tail", type=float, default=1e-10, help="tail bound for certified depths")
    common.add_argument("--strict", action="store_true", help="exit with code 2 on a negative verdict")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--workers", type=int, default=1)
    return common


def _model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=2.0, help="lambda_k = 1 - alpha^-k")
    parser.add_argument("--dim", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    """The parser of all subcommands."""
    parser = ReportArgumentParser(prog="orbit-frames", description="Frames of the form {T^n phi}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ReportArgumentParser)
    common = _common_options()

    sub.add_parser("analyze", parents=[common], help="frame bounds of a family")

    represent = sub.add_parser("represent", parents=[common], help="is the family an orbit {T^n f_1}")
    represent.add_argument("--dual", action="append", default=None, help="alternate dual family, at most twice")

    carleson = sub.add_parser("carleson", parents=[common], help="Carleson products of a model")
    _model_options(carleson)
    carleson.add_argument("--delta", type=float, default=1e-6)

    spectral = sub.add_parser("spectral", parents=[common], help="certified orbit of a diagonal model")
    _model_options(spectral)
    spectral.add_argument("--rotate", action="store_true", help="also report a random unitary basis change")

    structure = sub.add_parser("structure", parents=[common], help="image/null chains and tail spaces")
    structure.add_argument("--shifts", type=int, default=2, help="number of tail shifts compared")

    swap = sub.add_parser("swap", parents=[common], help="interchange two elements and re-decide")
    swap.add_argument("--first", type=int, default=None)
    swap.add_argument("--second", type=int, default=None)

    perturb = sub.add_parser("perturb", parents=[common], help="perturb the generator inside V")
    _model_options(perturb)
    perturb.add_argument("--block", type=int, default=1, help="V = span{e_1, ..., e_block}")
    perturb.add_argument("--scale", type=float, default=0.5, help="perturbation norm as a fraction of the radius")

    trend = sub.add_parser("trend", parents=[common], help="union orbits as the dimension grows")
    trend.add_argument("--J", type=int, default=None, dest="J", help="number of random generators (default 1)")
    trend.add_argument("--dims", type=int, nargs="+", default=[4, 8, 16, 32])
    trend.add_argument("--ratio", type=float, default=0.5, help="lambda_k = ratio^k")
    trend.add_argument("--generators", choices=["random", "basis"], default="random")

    generate = sub.add_parser("generate", parents=[common], help="write a test family")
    generate.add_argument("--kind", choices=list(KINDS), default="onb")
    generate.add_argument("--dim", type=int, default=4)
    generate.add_argument("--alpha", type=float, default=2.0)
    generate.add_argument("--block", type=int, default=2)
    return parser


def setup_logging(verbosity: int) -> None:
    """Log to stderr: WARNING by default, INFO with -v, DEBUG with -vv."""
    match verbosity:
        case 0:
            level = logging.WARNING
        case 1:
            level = logging.INFO
        case _:
            level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT)


def write_result(result: CommandResult, config: ExperimentConfig) -> None:
    """Write the report to `--out` or stdout in the requested format."""
    if config.out is None:
        _write(ReportWriter(sys.stdout), result, config)
        return
    ReportWriter.create(config.out)
    with open(config.out, "w", encoding="utf-8", newline="") as handle:
        _write(ReportWriter(handle), result, config)


def _write(writer: ReportWriter, result: CommandResult, config: ExperimentConfig) -> None:
    match config.output_format:
        case "csv":
            writer.write_csv(result.columns, result.rows)
        case _:
            writer.write_json(result.payload)


def main(argv: list[str] | None = None) -> int:
    """Entry point, returns the exit code.

    :param argv: Arguments without the program name, `sys.argv[1:]` when omitted.
    :type argv: list[str] | None (default=None)
    """
    namespace = build_parser().parse_args(argv)
    setup_logging(namespace.verbose)
    try:
        config = ExperimentConfig.from_namespace(namespace)
        result = COMMANDS[config.command](config)
        write_result(result, config)
    except DocumentDecodeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    except OrbitFrameError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        # report values the writer cannot serialize
        print(f"ValueError: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"IOError: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if config.strict and result.negative:
        logger.warning("%s: negative verdict, exiting with code %d", config.command, EXIT_NEGATIVE)
        return EXIT_NEGATIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
