from typing import Any, Dict, List

from prefect import flow, task
from prefect.cache_policies import NO_CACHE

from src.combinatorics.sign_classes import (
    ClassEvaluation,
    best_class_index,
    evaluate_switching_class,
    switching_classes,
)
from src.graph.catalog import from_spec
from src.graph.signed_graph import SignedGraph, diameter
from src.utils.config import Config
from src.utils.pipeline_logger import get_pipeline_logger
from src.utils.report_format import build_report, save_report
from src.utils.shared_config import get_default_config


@task
def setup_sign_scan_config() -> Config:
    """Setup configuration for sign-scan pipeline"""
    return get_default_config()


@task(cache_policy=NO_CACHE)
def setup_sign_scan_logger(config: Config):
    """Setup logger for sign-scan pipeline"""
    return get_pipeline_logger("sign_scan_pipeline", config)


@task(cache_policy=NO_CACHE)
def enumerate_switching_classes(graph: SignedGraph, config: Config, logger) -> List[SignedGraph]:
    """Canonical representative of every switching class on the underlying graph"""
    try:
        representatives = switching_classes(graph, config.sign_scan_edge_limit)
    except Exception as e:
        logger.error(f"Switching-class enumeration failed: {e}")
        raise
    logger.info(f"Enumerated {len(representatives)} switching classes")
    return representatives


@task(cache_policy=NO_CACHE)
def evaluate_class(representative: SignedGraph) -> ClassEvaluation:
    """Eigenvalue, curvature and diameter bound of one switching class"""
    return evaluate_switching_class(representative)


@task(cache_policy=NO_CACHE)
def save_sign_scan_report(
    graph: SignedGraph, evaluations: List[ClassEvaluation], name: str, config: Config, logger
) -> Dict[str, Any]:
    """Save the scan as a JSON report"""
    best = best_class_index(evaluations)
    if best is None:
        logger.warning("Every switching class has a vacuous diameter bound")
    classes = [
        {
            "negative_edges": [
                [graph.label(x), graph.label(y)] for (x, y, _), s in zip(graph.edges, evaluation.signs) if s < 0
            ],
            "balanced": evaluation.balanced,
            "eigenvalue": evaluation.eigenvalue,
            "multiplicity": evaluation.multiplicity,
            "curvature": evaluation.curvature,
            "diameter_bound": evaluation.bound,
            "improved": evaluation.improved,
        }
        for evaluation in evaluations
    ]
    report = build_report("sign-scan", graph, {"diameter": diameter(graph), "classes": classes, "best": best})
    save_report(report, config.report_dir, name, logger)
    return report


@flow(name="Sign Scan Pipeline")
def run_sign_scan_pipeline(spec: str = "chorded-heptagon") -> Dict[str, Any]:
    """
    Main sign-scan pipeline flow that evaluates the diameter lower bound over every switching class,
    one task per class
    """
    config = setup_sign_scan_config()
    logger = setup_sign_scan_logger(config)

    graph = from_spec(spec)
    representatives = enumerate_switching_classes(graph, config, logger)

    futures = evaluate_class.map(representatives)
    evaluations = [future.result() for future in futures]

    return save_sign_scan_report(graph, evaluations, f"sign_scan_{spec.replace(':', '_')}", config, logger)
