"""
Randomized search for violations of CD_p^σ(K, N) at a vertex.

The defect Γ_{p,2}^σ(f)(x) - (1/N)(Δ_p^σ f(x))² - K Γ_p^σ(f)(x)^{(2p-2)/p} is homogeneous in f, so the search runs
over unit vectors supported on the 2-ball of x. A negative defect below -1e-9 is a counterexample; finding none
within the budget only means "not falsified".
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import scipy.linalg
from scipy.optimize import minimize

from src.curvature.curvature_matrix import check_dimension
from src.curvature.psd_pencil import cd_pencil
from src.graph.signed_graph import SignedGraph, ball
from src.operators.p_laplacian import check_exponent, gamma_p, gamma_p2, p_laplacian_apply
from src.utils.config import Config
from src.utils.errors import DomainError
from src.utils.shared_config import get_default_config

COUNTEREXAMPLE_THRESHOLD = -1e-9
DOMAIN_PENALTY = 1e6
LOCAL_ITERATIONS = 200

FALSIFIED = "falsified"
NOT_FALSIFIED = "not falsified"


def cd_p_defect(graph: SignedGraph, x: int, p: float, K: float, N: float, f: np.ndarray) -> float:
    """
    Γ_{p,2}^σ(f)(x) - (1/N)(Δ_p^σ f(x))² - K Γ_p^σ(f)(x)^{(2p-2)/p}.

    Raises:
        DomainError: 1 < p < 2 and a signed difference at x vanishes.
    """
    p = check_exponent(p)
    N = check_dimension(N)
    value = gamma_p2(graph, p, f, x)
    if not math.isinf(N):
        value -= p_laplacian_apply(graph, p, f, x) ** 2 / N
    gamma_value = max(gamma_p(graph, p, f, f, x), 0.0)
    return float(value - K * gamma_value ** ((2.0 * p - 2.0) / p))


@dataclass
class FalsifierOutcome:
    """
    Result of one falsification run.

    Attributes:
        status: ``"falsified"`` or ``"not falsified"``.
        counterexample: A unit-norm vertex function with defect below the threshold, when found.
        best_defect: Smallest defect seen over all starts.
        starts: Number of starts evaluated.
    """

    vertex: int
    p: float
    K: float
    N: float
    status: str
    counterexample: Optional[np.ndarray]
    best_defect: float
    starts: int

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFIED


class CDpFalsifier:
    """Multi-start local search (L-BFGS-B) on the CD_p^σ defect over the 2-ball of a vertex."""

    def __init__(self, config: Config, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)
        self.budget = config.falsifier_budget
        self.logger.debug(f"CD_p falsifier ready with {self.budget} random starts")

    def _seeds(self, graph: SignedGraph, x: int, K: float, N: float) -> List[np.ndarray]:
        # eigenvectors of the quadratic (p = 2) pencil at K are exact minimizers when p = 2
        base, m_gamma = cd_pencil(graph, x, N)
        _, vectors = scipy.linalg.eigh(base - K * m_gamma)
        return [vectors[:, i] for i in range(min(3, vectors.shape[1]))]

    def falsify(
        self,
        graph: SignedGraph,
        x: int,
        p: float,
        K: float,
        N: float = math.inf,
        budget: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> FalsifierOutcome:
        """Search for f with negative CD_p^σ(K, N) defect at x."""
        p = check_exponent(p)
        N = check_dimension(N)
        budget = self.budget if budget is None else int(budget)
        rng = np.random.default_rng(self.config.random_seed if seed is None else seed)
        support = list(ball(graph, x, 2))

        def embed(z: np.ndarray) -> np.ndarray:
            f = np.zeros(graph.n)
            f[support] = z / np.linalg.norm(z)
            return f

        def objective(z: np.ndarray) -> float:
            if not np.all(np.isfinite(z)) or np.linalg.norm(z) == 0.0:
                return DOMAIN_PENALTY
            try:
                return cd_p_defect(graph, x, p, K, N, embed(z))
            except DomainError:
                return DOMAIN_PENALTY

        starts = self._seeds(graph, x, K, N)
        starts += [rng.standard_normal(len(support)) for _ in range(budget)]

        best_defect, best_f = math.inf, None
        for start in starts:
            candidates = [start]
            result = minimize(objective, start, method="L-BFGS-B", options={"maxiter": LOCAL_ITERATIONS})
            candidates.append(result.x)
            for z in candidates:
                value = objective(z)
                if value < best_defect:
                    best_defect, best_f = value, embed(z)
            if best_defect < COUNTEREXAMPLE_THRESHOLD:
                break

        status = FALSIFIED if best_defect < COUNTEREXAMPLE_THRESHOLD else NOT_FALSIFIED
        self.logger.debug(
            f"CD_p({K:g}, {N:g}) at vertex {graph.label(x)}, p={p:g}: {status} (best defect {best_defect:.3e})"
        )
        return FalsifierOutcome(
            vertex=x,
            p=p,
            K=float(K),
            N=N,
            status=status,
            counterexample=best_f if status == FALSIFIED else None,
            best_defect=float(best_defect),
            starts=len(starts),
        )


def cd_p_falsify(
    graph: SignedGraph,
    x: int,
    p: float,
    K: float,
    N: float = math.inf,
    budget: Optional[int] = None,
    config: Optional[Config] = None,
    seed: Optional[int] = None,
) -> FalsifierOutcome:
    """Convenience wrapper around CDpFalsifier under the default configuration."""
    config = config if config is not None else get_default_config()
    return CDpFalsifier(config).falsify(graph, x, p, K, N, budget=budget, seed=seed)
