"""
Command implementations.

Each ``cmd_*`` takes the parsed run, the resolved configuration and a logger, and returns a CommandResult holding
the JSON report tree, flat rows for table output, and the exit status.
"""

import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.bounds.invariants import GraphInvariants
from src.bounds.suite import SuiteOptions, TheoremSuite, certificate_failures
from src.cli.arguments import EXIT_CERTIFICATE, EXIT_OK, EXIT_SIZE_LIMIT, EXIT_USAGE, RunConfig, parse_run_config
from src.combinatorics.cheeger import cheeger_constant
from src.combinatorics.frustration import frustration_index
from src.combinatorics.nodal import strong_nodal_decomposition
from src.combinatorics.sign_classes import SignClassScanner
from src.curvature.curvature_matrix import curvature_profile, sharpness_check
from src.curvature.psd_pencil import cd_check_psd
from src.graph.catalog import from_spec
from src.graph.edge_list_io import read_edge_list, read_vertex_function, write_edge_list
from src.graph.signed_graph import SignedGraph, small_cycles_positive
from src.operators.laplacian import SignChoice, apply_sign_choice
from src.spectral.p_eigen import PEigenSolver
from src.spectral.spectrum import all_negative_spectrum_relation, first_nonzero_eigenvalue, spectrum
from src.utils.config import Config
from src.utils.errors import BracketError, ConvergenceError, GraphValidationError, HypothesisError, SizeLimitError
from src.utils.pipeline_logger import get_pipeline_logger
from src.utils.report_format import build_report, to_json, to_table
from src.utils.shared_config import get_default_config


@dataclass
class CommandResult:
    report: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    exit_code: int = EXIT_OK
    text: Optional[str] = None


def load_graph(run: RunConfig) -> SignedGraph:
    """Read ``--input`` or build ``--gen``, then apply ``--sign-choice``."""
    if run.input_path is not None:
        graph = read_edge_list(Path(run.input_path))
    else:
        try:
            graph = from_spec(run.generator)
        except ValueError as e:
            raise GraphValidationError(str(e)) from e
    return apply_sign_choice(graph, run.sign_choice)


def _labels(graph: SignedGraph, vertices: Sequence[int]) -> List[str]:
    return [graph.label(x) for x in vertices]


def _edge_labels(graph: SignedGraph, edges) -> List[List[str]]:
    return [[graph.label(x), graph.label(y)] for x, y, _ in edges]


def cmd_generate(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    text = write_edge_list(graph)
    logger.info(f"Generated {graph!r}")
    return CommandResult(report=build_report("generate", graph, {"edge_list": text}), text=text)


def cmd_spectrum(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    spec = spectrum(graph, zero_tolerance=config.zero_tolerance)
    first = first_nonzero_eigenvalue(graph, spec=spec)
    logger.info(f"Computed spectrum for {graph.n} vertices")
    payload: Dict[str, Any] = {
        "eigenvalues": spec.eigenvalues,
        "multiplicities": [{"value": value, "multiplicity": count} for value, count in spec.multiplicities()],
        "first_nonzero": {"value": first.value, "multiplicity": first.multiplicity, "index": first.index + 1},
        "max_residual": spec.max_residual,
        "in_range": spec.in_range(),
    }
    rows = [{"index": i + 1, "eigenvalue": value} for i, value in enumerate(spec.eigenvalues)]

    if run.sign_choice is SignChoice.ALL_NEGATIVE:
        relation = all_negative_spectrum_relation(graph)
        payload["all_negative_relation"] = {
            "holds": relation.holds,
            "max_deviation": relation.max_deviation,
            "bipartite": relation.bipartite,
        }

    if run.p_values:
        solver = PEigenSolver(config, logger)
        payload["p_eigenvalues"] = []
        for p in run.p_values:
            result = solver.solve(graph, p, progress=run.progress)
            payload["p_eigenvalues"].append(
                {
                    "p": p,
                    "lambda_p": result.lambda_p,
                    "converged": result.converged,
                    "eigen_residual": result.eigen_residual,
                    "constraint_residual": result.constraint_residual,
                    "restarts": result.restarts_used,
                }
            )
            rows.append({"index": None, "eigenvalue": result.lambda_p, "p": p})
    return CommandResult(report=build_report("spectrum", graph, payload), rows=rows)


def cmd_curvature(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    profile = curvature_profile(graph, run.n_values)
    sharpness = sharpness_check(graph, tolerance=config.bound_tolerance)
    payload: Dict[str, Any] = {
        "small_cycles_positive": small_cycles_positive(graph),
        "sharpness": {"lower_bound": sharpness.lower_bound, "holds": sharpness.holds},
        "dimensions": [],
    }
    rows = []
    for N in profile.n_values:
        psd: List[Optional[float]] = []
        notes: List[str] = []
        for x in range(graph.n):
            try:
                psd.append(cd_check_psd(graph, x, N))
            except BracketError as e:
                logger.warning(f"Pencil route skipped at vertex {graph.label(x)}: {e}")
                psd.append(None)
                notes.append(str(e))
        per_vertex = profile.per_vertex[N]
        deviations = [abs(per_vertex[x] - psd[x]) for x in range(graph.n) if psd[x] is not None]
        payload["dimensions"].append(
            {
                "N": N,
                "per_vertex": {graph.label(x): per_vertex[x] for x in range(graph.n)},
                "pencil_per_vertex": {graph.label(x): psd[x] for x in range(graph.n)},
                "route_deviation": float(max(deviations)) if deviations else None,
                "pencil_notes": notes,
                "minimum": profile.minimum(N),
                "argmin": graph.label(profile.argmin(N)),
            }
        )
        rows += [
            {"vertex": graph.label(x), "N": N, "K_matrix": per_vertex[x], "K_pencil": psd[x]} for x in range(graph.n)
        ]
        logger.info(f"Curvature at N={N}: minimum {profile.minimum(N):.12g}")
    return CommandResult(report=build_report("curvature", graph, payload), rows=rows)


def cmd_frustration(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    result = frustration_index(
        graph, limit=config.frustration_size_limit, workers=config.workers, progress=run.progress
    )
    logger.info(f"Frustration index {result.iota}")
    payload = {
        "iota": result.iota,
        "optimal_tau": {graph.label(x): result.optimal_tau(x) for x in range(graph.n)},
        "residual_negative_edges": _edge_labels(graph, result.residual_negative_edges),
        "switchings_checked": result.switchings_checked,
    }
    return CommandResult(report=build_report("frustration", graph, payload), rows=[{"iota": result.iota}])


def cmd_cheeger(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    result = cheeger_constant(graph, limit=config.cheeger_size_limit, workers=config.workers, progress=run.progress)
    logger.info(f"Cheeger constant {result.ratio}")
    payload = {
        "h": result.h,
        "ratio": result.ratio,
        "witness": _labels(graph, result.witness),
        "witness_signs": list(result.witness_signs),
        "iota": result.iota,
        "boundary": result.boundary,
        "volume": result.volume,
        "consistent": result.consistent,
    }
    row = {"h": result.h, "ratio": result.ratio, "witness": _labels(graph, result.witness)}
    return CommandResult(report=build_report("cheeger", graph, payload), rows=[row])


def cmd_nodal(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    if run.function_path is not None:
        f = read_vertex_function(graph, Path(run.function_path))
        source = "supplied"
    else:
        f = first_nonzero_eigenvalue(graph, zero_tolerance=config.zero_tolerance).eigenfunction
        source = "first_eigenfunction"
    decomposition = strong_nodal_decomposition(graph, f)
    blocked = [(x, y, s) for x, y, s in graph.edges if not f[x] * s * f[y] > 0]
    logger.info(f"Found {len(decomposition)} strong nodal domains")
    payload = {
        "function_source": source,
        "function": {graph.label(x): f[x] for x in range(graph.n)},
        "support": _labels(graph, decomposition.support),
        "domains": [_labels(graph, domain) for domain in decomposition.domains],
        "non_strong_edges": _edge_labels(graph, blocked),
    }
    rows = [{"domain": i + 1, "vertices": _labels(graph, domain)} for i, domain in enumerate(decomposition.domains)]
    return CommandResult(report=build_report("nodal", graph, payload), rows=rows)


def cmd_bounds(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    options = SuiteOptions(
        n_values=run.n_values,
        epsilons=run.epsilons,
        alphas=run.alphas,
        p_values=run.p_values,
        p_curvature=run.p_curvature,
    )
    reports = TheoremSuite(config, logger).run(graph, options, GraphInvariants(graph, config))
    failures = certificate_failures(reports)
    payload = {
        "reports": [report.as_dict() for report in reports],
        "certificate_failures": len(failures),
    }
    rows = [
        {
            "theorem": report.theorem,
            "status": report.status,
            "hypothesis": report.hypothesis,
            "lhs": report.lhs,
            "rhs": report.rhs,
            "margin": report.margin,
            "parameters": report.parameters,
        }
        for report in reports
    ]
    return CommandResult(
        report=build_report("bounds", graph, payload),
        rows=rows,
        exit_code=EXIT_CERTIFICATE if failures else EXIT_OK,
    )


def cmd_sign_scan(run: RunConfig, graph: SignedGraph, config: Config, logger: logging.Logger) -> CommandResult:
    result = SignClassScanner(config, logger).scan(graph, progress=run.progress)
    classes = []
    for evaluation in result.classes:
        negative = [[graph.label(x), graph.label(y)] for (x, y, _), s in zip(graph.edges, evaluation.signs) if s < 0]
        classes.append(
            {
                "negative_edges": negative,
                "balanced": evaluation.balanced,
                "eigenvalue": evaluation.eigenvalue,
                "multiplicity": evaluation.multiplicity,
                "curvature": evaluation.curvature,
                "diameter_bound": evaluation.bound,
                "improved": evaluation.improved,
            }
        )
    payload = {"diameter": result.diameter, "classes": classes, "best": result.best}
    return CommandResult(report=build_report("sign-scan", graph, payload), rows=classes)


COMMAND_TABLE: Dict[str, Callable[[RunConfig, SignedGraph, Config, logging.Logger], CommandResult]] = {
    "generate": cmd_generate,
    "spectrum": cmd_spectrum,
    "curvature": cmd_curvature,
    "frustration": cmd_frustration,
    "cheeger": cmd_cheeger,
    "nodal": cmd_nodal,
    "bounds": cmd_bounds,
    "sign-scan": cmd_sign_scan,
}


def render(run: RunConfig, result: CommandResult) -> str:
    if result.text is not None:
        return result.text
    if run.output_format == "table":
        return to_table(result.rows) + "\n"
    return to_json(result.report) + "\n"


def execute(run: RunConfig, config: Config, logger: logging.Logger) -> CommandResult:
    graph = load_graph(run)
    return COMMAND_TABLE[run.command](run, graph, config, logger)


def main(argv: Optional[Sequence[str]] = None) -> int:
    run = parse_run_config(argv)
    try:
        config = get_default_config().with_overrides(run.overrides())
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger = get_pipeline_logger("cli", config)

    try:
        result = execute(run, config, logger)
    except SizeLimitError as e:
        logger.error(f"Size limit exceeded: {e}")
        return EXIT_SIZE_LIMIT
    except (ConvergenceError, BracketError) as e:
        logger.error(f"Numerical failure: {e}")
        return EXIT_CERTIFICATE
    except (GraphValidationError, HypothesisError, ValueError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE

    output = render(run, result)
    if run.output_path is not None:
        Path(run.output_path).write_text(output, encoding="utf-8")
        logger.info(f"Wrote {run.command} report to {run.output_path}")
    else:
        sys.stdout.write(output)
    return result.exit_code
