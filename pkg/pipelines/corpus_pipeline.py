import math
from typing import Any, Dict, List, Sequence

from prefect import flow, task
from prefect.cache_policies import NO_CACHE

from pipelines.certificate_pipeline import run_certificate_pipeline
from src.bounds.linear import hypercube_exclusion_check, hypercube_exclusion_dimension
from src.bounds.nonlinear import DEFAULT_P_VALUES
from src.curvature.curvature_matrix import curvature_profile
from src.curvature.psd_pencil import cd_check_psd
from src.graph.catalog import CORPUS_SPECS, from_spec
from src.spectral.p_eigen import PEigenSolver
from src.spectral.spectrum import first_nonzero_eigenvalue
from src.utils.config import Config
from src.utils.pipeline_logger import get_pipeline_logger
from src.utils.report_format import save_report
from src.utils.shared_config import get_default_config

ROUTE_TOLERANCE = 1e-6
ORACLE_TOLERANCE = 1e-6


@task
def setup_corpus_config() -> Config:
    """Setup configuration for corpus pipeline"""
    return get_default_config()


@task(cache_policy=NO_CACHE)
def setup_corpus_logger(config: Config):
    """Setup logger for corpus pipeline"""
    return get_pipeline_logger("corpus_pipeline", config)


@task(cache_policy=NO_CACHE)
def check_curvature_routes(spec: str, n_values: Sequence[float], logger) -> Dict[str, Any]:
    """Compare the curvature-matrix route with the PSD-pencil route at every vertex"""
    graph = from_spec(spec)
    profile = curvature_profile(graph, n_values)
    deviation = 0.0
    for N in profile.n_values:
        for x in range(graph.n):
            deviation = max(deviation, abs(profile.at(x, N) - cd_check_psd(graph, x, N)))
    agree = deviation <= ROUTE_TOLERANCE
    if not agree:
        logger.warning(f"{spec}: curvature routes differ by {deviation:.3e}")
    return {"spec": spec, "max_deviation": deviation, "agree": agree}


@task(cache_policy=NO_CACHE)
def check_p2_oracle(spec: str, config: Config, logger) -> Dict[str, Any]:
    """The p-eigenvalue solver at p = 2 must reproduce the linear first eigenvalue"""
    graph = from_spec(spec)
    linear = first_nonzero_eigenvalue(graph, zero_tolerance=config.zero_tolerance).value
    estimate = PEigenSolver(config, logger).solve(graph, 2.0).lambda_p
    deviation = abs(estimate - linear)
    agree = deviation <= ORACLE_TOLERANCE * max(1.0, linear)
    if not agree:
        logger.warning(f"{spec}: lambda_2 estimate {estimate:.12g} differs from lambda {linear:.12g}")
    return {"spec": spec, "lambda": linear, "lambda_2": estimate, "agree": agree}


@task(cache_policy=NO_CACHE)
def check_hypercube_exclusion(logger) -> Dict[str, Any]:
    """Smallest hypercube dimension excluded from CD(0, inf) by the volume bound, checked on the built graphs"""
    n = hypercube_exclusion_dimension()
    at_n = hypercube_exclusion_check(n)
    below = hypercube_exclusion_check(n - 1)
    logger.info(f"Volume bound excludes nonnegative curvature on one-negative-edge hypercubes from n={n}")
    return {
        "dimension": n,
        "excluded_at_dimension": at_n.excluded,
        "excluded_below": below.excluded,
        "volume": at_n.volume,
        "rhs": at_n.rhs,
    }


@flow(name="Corpus Pipeline")
def run_corpus_pipeline(
    specs: Sequence[str] = tuple(CORPUS_SPECS),
    n_values: Sequence[float] = (math.inf, 2.0),
    p_values: Sequence[float] = DEFAULT_P_VALUES,
) -> Dict[str, Any]:
    """
    Main corpus pipeline flow: a certificate for every corpus graph over the ε and p grids, the two curvature
    routes and the p = 2 oracle side by side, and the hypercube volume exclusion
    """
    config = setup_corpus_config()
    logger = setup_corpus_logger(config)

    certificates: List[Dict[str, Any]] = []
    for spec in specs:
        report = run_certificate_pipeline(spec=spec, n_values=n_values, p_values=p_values)
        certificates.append({"spec": spec, "certificate_failures": report["result"]["certificate_failures"]})

    routes = [check_curvature_routes(spec, n_values, logger) for spec in specs]
    oracles = [check_p2_oracle(spec, config, logger) for spec in specs]
    exclusion = check_hypercube_exclusion(logger)

    summary = {
        "certificates": certificates,
        "curvature_routes": routes,
        "p2_oracle": oracles,
        "hypercube_exclusion": exclusion,
        "certificate_failures": sum(item["certificate_failures"] for item in certificates),
    }
    save_report(summary, config.report_dir, "corpus_summary", logger)
    return summary
