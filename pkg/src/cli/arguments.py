"""Command-line arguments and the resolved run configuration."""

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.bounds.linear import DEFAULT_EPSILONS
from src.operators.laplacian import SignChoice

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERTIFICATE = 2
EXIT_SIZE_LIMIT = 3

COMMANDS = ("generate", "spectrum", "curvature", "frustration", "cheeger", "nodal", "bounds", "sign-scan")


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1; status 2 is reserved for certificate failures."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_dimension(text: str) -> float:
    """N in (0, inf]; ``inf`` is accepted."""
    try:
        value = math.inf if text.strip().lower() in ("inf", "infinity") else float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid dimension {text!r}") from None
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"dimension must be positive, got {text!r}")
    return value


def parse_positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not (value > 0.0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"value must be positive and finite, got {text!r}")
    return value


def parse_exponent(text: str) -> float:
    value = parse_positive(text)
    if value <= 1.0:
        raise argparse.ArgumentTypeError(f"exponent p must exceed 1, got {text!r}")
    return value


def parse_limit(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"limit must be positive, got {text!r}")
    return value


@dataclass(frozen=True)
class RunConfig:
    """
    One CLI invocation after parsing.

    Size limits, restarts and the seed are None when not given on the command line; the configuration layer
    then supplies its defaults.
    """

    command: str
    input_path: Optional[str] = None
    generator: Optional[str] = None
    sign_choice: SignChoice = SignChoice.SIGMA
    n_values: Tuple[float, ...] = (math.inf,)
    p_values: Tuple[float, ...] = ()
    epsilons: Tuple[float, ...] = DEFAULT_EPSILONS
    alphas: Optional[Tuple[float, ...]] = None
    p_curvature: Optional[float] = None
    function_path: Optional[str] = None
    output_format: str = "json"
    output_path: Optional[str] = None
    seed: Optional[int] = None
    frustration_limit: Optional[int] = None
    cheeger_limit: Optional[int] = None
    edge_limit: Optional[int] = None
    restarts: Optional[int] = None
    progress: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if (self.input_path is None) == (self.generator is None):
            raise ValueError("exactly one of --input and --gen is required")
        if self.output_format not in ("json", "table"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        for name in ("frustration_limit", "cheeger_limit", "edge_limit", "restarts"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")

    def overrides(self) -> Dict[str, object]:
        """Configuration keys set by this run; None entries leave the configured value in place."""
        return {
            "RANDOM_SEED": self.seed,
            "FRUSTRATION_SIZE_LIMIT": self.frustration_limit,
            "CHEEGER_SIZE_LIMIT": self.cheeger_limit,
            "SIGN_SCAN_EDGE_LIMIT": self.edge_limit,
            "P_RESTARTS": self.restarts,
        }


def build_parser() -> CliArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH", help="Signed edge-list (.sg) file")
    source.add_argument("--gen", metavar="SPEC", help="Generator spec, e.g. cycle:5:unbalanced or hypercube1neg:3")
    common.add_argument(
        "--sign-choice",
        choices=[choice.value for choice in SignChoice],
        default=SignChoice.SIGMA.value,
        help="Use the graph's signs, or replace them by all +1 / all -1",
    )
    common.add_argument("--N", dest="n_values", type=parse_dimension, action="append", help="Dimension N (repeatable)")
    common.add_argument("--p", dest="p_values", type=parse_exponent, action="append", help="Exponent p (repeatable)")
    common.add_argument("--epsilon", type=parse_positive, action="append", help="Epsilon of the eigenvalue estimate")
    common.add_argument("--alpha", type=parse_positive, action="append", help="Alpha of the Harnack inequality")
    common.add_argument("--p-curvature", type=float, help="Supplied K_p for the p-Lichnerowicz bound")
    common.add_argument("--format", dest="output_format", choices=["json", "table"], default="json")
    common.add_argument("--output", metavar="PATH", help="Write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="Random seed for every randomized search")
    common.add_argument("--frustration-limit", type=parse_limit)
    common.add_argument("--cheeger-limit", type=parse_limit)
    common.add_argument("--edge-limit", type=parse_limit)
    common.add_argument("--restarts", type=parse_limit, help="Restarts of the p-eigenvalue solver")
    common.add_argument("--progress", action="store_true", help="Show progress bars on stderr")

    parser = CliArgumentParser(
        prog="signed-geometry",
        description="Spectral and curvature geometry of signed graphs",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)
    helps = {
        "generate": "Write a generated graph as canonical .sg text",
        "spectrum": "Eigenvalues of the signed Laplacian (and lambda_p for each --p)",
        "curvature": "Bakry-Emery curvature at every vertex for each --N",
        "frustration": "Exact frustration index",
        "cheeger": "Exact signed Cheeger constant",
        "nodal": "Strong nodal domains of a vertex function",
        "bounds": "Evaluate every applicable theorem inequality",
        "sign-scan": "Compare diameter bounds over all switching classes",
    }
    for name in COMMANDS:
        sub = commands.add_parser(name, parents=[common], help=helps[name])
        if name == "nodal":
            sub.add_argument("--function", dest="function_path", metavar="PATH", help="Vertex function file")
    return parser


def _tuple(values: Optional[List[float]], default: Tuple[float, ...]) -> Tuple[float, ...]:
    return tuple(values) if values else default


def parse_run_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return RunConfig(
            command=args.command,
            input_path=args.input,
            generator=args.gen,
            sign_choice=SignChoice(args.sign_choice),
            n_values=_tuple(args.n_values, (math.inf,)),
            p_values=_tuple(args.p_values, ()),
            epsilons=_tuple(args.epsilon, DEFAULT_EPSILONS),
            alphas=tuple(args.alpha) if args.alpha else None,
            p_curvature=args.p_curvature,
            function_path=getattr(args, "function_path", None),
            output_format=args.output_format,
            output_path=args.output,
            seed=args.seed,
            frustration_limit=args.frustration_limit,
            cheeger_limit=args.cheeger_limit,
            edge_limit=args.edge_limit,
            restarts=args.restarts,
            progress=args.progress,
        )
    except ValueError as e:
        parser.error(str(e))
