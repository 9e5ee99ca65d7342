"""Fixed-order run of every theorem check that applies to a graph, with per-check failures recorded as reports."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from src.bounds import linear, nonlinear
from src.bounds.invariants import GraphInvariants
from src.bounds.report import NOT_APPLICABLE, SKIPPED, BoundReport, unevaluated
from src.graph.signed_graph import SignedGraph, is_triangle_free
from src.utils.config import Config
from src.utils.errors import BracketError, ConvergenceError, DomainError, HypothesisError, SizeLimitError

RECOVERABLE = (HypothesisError, SizeLimitError, ConvergenceError, BracketError, DomainError)


@dataclass(frozen=True)
class SuiteOptions:
    """
    Parameters of a theorem-suite run.

    Attributes:
        n_values: Dimensions N for every N-dependent check.
        epsilons: ε values of the eigenvalue estimate.
        gradient_epsilons: ε values of the gradient estimate.
        alphas: α grid of the Harnack inequality; None picks threshold + (0.5, 1, 3).
        p_values: Exponents for the p-Laplacian bounds and the monotonicity chain.
        p_curvature: Supplied K_p for the p-Lichnerowicz bound at p != 2.
    """

    n_values: Tuple[float, ...] = (math.inf,)
    epsilons: Tuple[float, ...] = linear.DEFAULT_EPSILONS
    gradient_epsilons: Tuple[float, ...] = linear.DEFAULT_EPSILONS
    alphas: Optional[Tuple[float, ...]] = None
    p_values: Tuple[float, ...] = ()
    p_curvature: Optional[float] = None


def certificate_failures(reports: Sequence[BoundReport]) -> List[BoundReport]:
    return [report for report in reports if report.certificate_failure]


class TheoremSuite:
    """Runs every applicable theorem check on a graph in a fixed order."""

    def __init__(self, config: Config, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)
        self.logger.debug("Theorem suite ready")

    def _guarded(self, theorem: str, check: Callable[[], object]) -> List[BoundReport]:
        try:
            result = check()
        except RECOVERABLE as e:
            self.logger.warning(f"Skipping {theorem}: {e}")
            return [unevaluated(theorem, SKIPPED, str(e))]
        return list(result) if isinstance(result, list) else [result]

    def run(
        self,
        graph: SignedGraph,
        options: Optional[SuiteOptions] = None,
        invariants: Optional[GraphInvariants] = None,
    ) -> List[BoundReport]:
        options = options or SuiteOptions()
        inv = invariants if invariants is not None else GraphInvariants(graph, self.config)
        self.logger.info(f"Running theorem suite on {graph!r}")

        reports: List[BoundReport] = []
        for N in options.n_values:
            reports += self._guarded(
                "harnack", lambda: linear.harnack_check(graph, alphas=options.alphas, N=N, invariants=inv)
            )
            reports += self._guarded(
                "gradient_estimate",
                lambda: linear.gradient_estimate_check(graph, epsilons=options.gradient_epsilons, N=N, invariants=inv),
            )
            for epsilon in options.epsilons:
                reports += self._guarded(
                    "eigenvalue_estimate",
                    lambda: linear.eigenvalue_lower_bound(graph, epsilon=epsilon, N=N, invariants=inv),
                )
            reports += self._guarded(
                "lichnerowicz_lemma", lambda: linear.lichnerowicz_check(graph, N, "lemma", invariants=inv)
            )
            reports += self._guarded(
                "lichnerowicz_sharp", lambda: linear.lichnerowicz_check(graph, N, "sharp", invariants=inv)
            )

            if inv.balanced:
                reports.append(unevaluated("volume", NOT_APPLICABLE, "balanced graph"))
            else:
                reports += self._guarded("volume", lambda: linear.volume_bound(graph, N, invariants=inv))

            if inv.bipartite:
                reports.append(unevaluated("all_negative_eigenvalue", NOT_APPLICABLE, "bipartite graph"))
            else:
                reports += self._guarded(
                    "all_negative_eigenvalue", lambda: linear.all_negative_eigenvalue_bound(graph, N, invariants=inv)
                )

            if is_triangle_free(graph):
                reports += self._guarded("two_sided", lambda: linear.two_sided_liyau(graph, N, invariants=inv))
            else:
                reports.append(unevaluated("two_sided", NOT_APPLICABLE, "graph has a triangle"))

        reports += self._guarded("diameter", lambda: linear.diameter_lower_bound(graph, invariants=inv))
        reports += self._guarded("buser", lambda: linear.buser_check(graph, invariants=inv))

        for p in options.p_values:
            reports += self._guarded(
                "p_diameter_volume", lambda: nonlinear.p_diameter_volume_bound(graph, p, invariants=inv)
            )
            reports += self._guarded("p_volume_only", lambda: nonlinear.p_volume_only_bound(graph, p, invariants=inv))
            if p >= 2.0 and (p == 2.0 or options.p_curvature is not None):
                K_p = None if p == 2.0 else options.p_curvature
                reports += self._guarded(
                    "p_lichnerowicz", lambda: nonlinear.p_lichnerowicz_check(graph, p, K_p, invariants=inv)
                )
            else:
                reports.append(
                    unevaluated("p_lichnerowicz", NOT_APPLICABLE, "needs p >= 2 and K_p", parameters={"p": p})
                )

        if len(options.p_values) >= 2:
            grid = sorted(options.p_values)
            reports += self._guarded("monotonicity", lambda: nonlinear.monotonicity_check(graph, grid, invariants=inv))

        failures = certificate_failures(reports)
        if failures:
            self.logger.warning(f"{len(failures)} certificate failures: {[report.theorem for report in failures]}")
        self.logger.info(f"Theorem suite produced {len(reports)} reports")
        return reports
