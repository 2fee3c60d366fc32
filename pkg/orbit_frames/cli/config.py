"""
Run configuration of the command line front-end and loading of input documents.

author: Aaron Gobeyn
"""

import json
import sys
from argparse import Namespace
from dataclasses import dataclass, field

import numpy as np

from ..errors import DocumentDecodeError, InvalidInput
from ..linalg.core import Tolerance


@dataclass(frozen=True)
class ExperimentConfig(object):
    """Everything a command needs, built once from the parsed arguments.

    :param command: Subcommand name.
    :type command: str
    :param input_path: Path, `-` for stdin, or an inline JSON document.
    :type input_path: str | None
    :param out: Report path, `None` for stdout.
    :type out: str | None
    :param output_format: "json" or "csv".
    :type output_format: str
    :param seed: Seed of the single random number generator.
    :type seed: int
    :param tolerance: Tolerances with the command line overrides applied.
    :type tolerance: Tolerance
    :param depth: Orbit truncation depth, overrides certified depths where supported.
    :type depth: int | None
    :param tail_tol: Tail bound for certified depths.
    :type tail_tol: float
    :param strict: Exit with code 2 on a negative verdict.
    :type strict: bool
    :param workers: Thread count for commands that fan out.
    :type workers: int
    :param params: Command specific options, e.g. `alpha` or `dim`.
    :type params: dict
    """

    command: str
    input_path: str | None = None
    out: str | None = None
    output_format: str = "json"
    seed: int = 0
    tolerance: Tolerance = Tolerance.DEFAULT
    depth: int | None = None
    tail_tol: float = 1e-10
    strict: bool = False
    workers: int = 1
    params: dict = field(default_factory=dict)

    # argparse destinations that are not command specific
    COMMON = (
        "command", "input", "out", "format", "seed", "tol_rank", "tol_res", "tol_eq",
        "depth", "tail", "strict", "verbose", "workers",
    )

    @classmethod
    def from_namespace(cls, namespace: Namespace) -> "ExperimentConfig":
        """Build the configuration from the parsed command line.

        :param namespace: Result of `ArgumentParser.parse_args`.
        :type namespace: Namespace
        :raises InvalidInput: If a numerical option is out of range.
        """
        args = vars(namespace)
        seed = args.get("seed", 0)
        if not (0 <= seed < 2 ** 64):
            raise InvalidInput(f"--seed {seed} is not an unsigned 64-bit integer.")
        tolerance = Tolerance.DEFAULT.with_overrides(
            rank_rtol=args.get("tol_rank"),
            residual_atol=args.get("tol_res"),
            equality_atol=args.get("tol_eq"),
        )
        depth = args.get("depth")
        if depth is not None and depth < 1:
            raise InvalidInput(f"--depth must be positive, got {depth}.")
        tail = args.get("tail", 1e-10)
        if not (tail > 0.0):
            raise InvalidInput(f"--tail must be positive, got {tail}.")
        workers = args.get("workers", 1)
        if workers < 1:
            raise InvalidInput(f"--workers must be positive, got {workers}.")
        return cls(
            command=args["command"],
            input_path=args.get("input"),
            out=args.get("out"),
            output_format=args.get("format", "json"),
            seed=seed,
            tolerance=tolerance,
            depth=depth,
            tail_tol=tail,
            strict=bool(args.get("strict", False)),
            workers=workers,
            params={k: v for k, v in args.items() if k not in cls.COMMON},
        )

    def rng(self) -> np.random.Generator:
        """The random number generator all randomness of a run is drawn from."""
        return np.random.default_rng(self.seed)

    def param(self, name: str, default=None):
        value = self.params.get(name)
        return default if value is None else value


def _decode(name: str, data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - data.rfind(b"\n", 0, exc.start)
        raise DocumentDecodeError(name, line, column, f"Invalid UTF-8 ({exc.reason})") from exc


def read_source(source: str) -> tuple[str, str]:
    """Return `(name, text)` for a path, `-` (stdin) or an inline JSON document.

    :raises DocumentDecodeError: If the input is not UTF-8, positioned at the first
        offending byte.
    """
    if source == "-":
        try:
            return "<stdin>", sys.stdin.read()
        except UnicodeDecodeError as exc:
            raise DocumentDecodeError("<stdin>", 1, 1, f"Invalid UTF-8 ({exc.reason})") from exc
    if source.lstrip().startswith("{"):
        return "<inline>", source
    with open(source, "rb") as handle:
        return source, _decode(source, handle.read())


def load_document(source: str | None) -> dict:
    """Parse the JSON document named by `source`.

    :param source: Path, `-` or inline JSON.
    :type source: str | None
    :raises InvalidInput: If no input was given.
    :raises DocumentDecodeError: If the text is not valid UTF-8 JSON.
    """
    if source is None:
        raise InvalidInput("This command needs --input.")
    name, text = read_source(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentDecodeError(name, exc.lineno, exc.colno, exc.msg) from exc
