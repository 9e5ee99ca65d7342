import math
from typing import Any, Dict, List, Optional, Sequence

from prefect import flow, task, unmapped
from prefect.cache_policies import NO_CACHE

from src.bounds.invariants import GraphInvariants
from src.bounds.report import BoundReport
from src.bounds.suite import SuiteOptions, TheoremSuite, certificate_failures
from src.curvature.curvature_matrix import CurvatureMatrixBundle, curvature_matrix_bundle
from src.graph.catalog import from_spec
from src.graph.edge_list_io import read_edge_list
from src.graph.signed_graph import SignedGraph
from src.utils.config import Config
from src.utils.pipeline_logger import get_pipeline_logger
from src.utils.report_format import build_report, save_report
from src.utils.shared_config import get_default_config


@task
def setup_certificate_config() -> Config:
    """Setup configuration for certificate pipeline"""
    return get_default_config()


@task(cache_policy=NO_CACHE)
def setup_certificate_logger(config: Config):
    """Setup logger for certificate pipeline"""
    return get_pipeline_logger("certificate_pipeline", config)


@task(cache_policy=NO_CACHE)
def load_signed_graph(spec: Optional[str], input_path: Optional[str], logger) -> SignedGraph:
    """Build the graph from a generator spec or read it from an edge-list file"""
    try:
        graph = read_edge_list(input_path) if input_path is not None else from_spec(spec)
    except Exception as e:
        logger.error(f"Failed to load graph: {e}")
        raise
    logger.info(f"Loaded {graph!r}")
    return graph


@task(cache_policy=NO_CACHE)
def compute_curvature_bundle(graph: SignedGraph, x: int) -> CurvatureMatrixBundle:
    """Curvature matrix of one vertex; N-independent, so every dimension reuses it"""
    return curvature_matrix_bundle(graph, x)


@task(cache_policy=NO_CACHE)
def run_theorem_suite(
    graph: SignedGraph, bundles: List[CurvatureMatrixBundle], options: SuiteOptions, config: Config, logger
) -> List[BoundReport]:
    """Evaluate every applicable theorem inequality"""
    invariants = GraphInvariants(graph, config, bundles=bundles)
    try:
        return TheoremSuite(config, logger).run(graph, options, invariants)
    except Exception as e:
        logger.error(f"Theorem suite failed: {e}")
        raise


@task(cache_policy=NO_CACHE)
def save_certificate_report(
    graph: SignedGraph, reports: List[BoundReport], name: str, config: Config, logger
) -> Dict[str, Any]:
    """Save the bound reports as a JSON certificate"""
    failures = certificate_failures(reports)
    report = build_report(
        "bounds",
        graph,
        {"reports": [item.as_dict() for item in reports], "certificate_failures": len(failures)},
    )
    save_report(report, config.report_dir, name, logger)
    return report


@flow(name="Certificate Pipeline")
def run_certificate_pipeline(
    spec: Optional[str] = "cycle:5:unbalanced",
    input_path: Optional[str] = None,
    n_values: Sequence[float] = (math.inf,),
    p_values: Sequence[float] = (),
    report_name: Optional[str] = None,
) -> Dict[str, Any]:
    """
    Main certificate pipeline flow: load a graph, compute the per-vertex curvature matrices in parallel,
    run the theorem suite and save the report
    """
    config = setup_certificate_config()
    logger = setup_certificate_logger(config)

    graph = load_signed_graph(spec, input_path, logger)

    # Step 1: Curvature matrices, one task per vertex
    futures = compute_curvature_bundle.map(unmapped(graph), list(range(graph.n)))
    bundles = [future.result() for future in futures]

    # Step 2: Theorem suite on the shared invariants
    options = SuiteOptions(n_values=tuple(n_values), p_values=tuple(p_values))
    reports = run_theorem_suite(graph, bundles, options, config, logger)

    # Step 3: Save the certificate
    name = report_name or (spec or "input").replace(":", "_")
    return save_certificate_report(graph, reports, f"bounds_{name}", config, logger)
