"""
First nonzero eigenvalue λ_p^σ of the signed p-Laplacian by multi-start Rayleigh-quotient minimization.

Unbalanced graphs: λ_p^σ = inf R_p^σ(f) over f ≢ 0. Balanced graphs: the infimum is taken under
Σ_x |f(x)|^{p-2} f(x) τ(x) d_x = 0, where τ switches σ to the all-positive sign. The balanced problem is
solved in switched coordinates g = τf on the all-positive graph, where the constraint reads Σ_x d_x φ_p(g(x)) = 0.

Results are upper bounds of λ_p^σ certified by the eigen-equation residual, not proofs of global minimality.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from tqdm import tqdm

from src.graph.signed_graph import SignedGraph, all_positive, is_balanced
from src.operators.p_laplacian import check_exponent, p_laplacian_apply, signed_power
from src.spectral.spectrum import first_nonzero_eigenvalue
from src.utils.config import Config
from src.utils.errors import ConvergenceError
from src.utils.shared_config import get_default_config

GRADIENT_TOLERANCE = 1e-10
ARMIJO = 1e-4
MIN_STEP = 1e-18
PENALTY_SCHEDULE = (1.0, 10.0, 100.0, 1e3, 1e4)
PENALTY_ITERATIONS = 200
CONSTRAINT_TOLERANCE = 1e-8
# keeps |g|^{p-2} finite at zero entries when p < 2
ZERO_FLOOR = 1e-150

Objective = Callable[[np.ndarray], Tuple[float, np.ndarray]]


@dataclass
class PEigenResult:
    """
    Outcome of the p-eigenvalue search.

    Attributes:
        p: Exponent.
        lambda_p: Smallest stationary value found; an upper bound of λ_p^σ.
        minimizer: Eigenfunction estimate normalized to Σ_x d_x |f(x)|^p = 1.
        restarts_used: Number of starts evaluated.
        constraint_residual: |Σ_x d_x φ_p(f(x)) τ(x)| for balanced graphs, None otherwise.
        converged: Whether the best start reached the gradient and constraint tolerances.
        gradient_norm: Norm of the (reduced) gradient at the minimizer.
        eigen_residual: max_x |-Δ_p^σ f(x) - λ_p φ_p(f(x))|.
        balanced: Whether the graph is balanced.
        candidates: Final value of every start, in start order.
    """

    p: float
    lambda_p: float
    minimizer: np.ndarray
    restarts_used: int
    constraint_residual: Optional[float]
    converged: bool
    gradient_norm: float
    eigen_residual: float
    balanced: bool
    candidates: List[float] = field(default_factory=list)


class PEigenSolver:
    """Gradient descent with Armijo backtracking on the p-Rayleigh quotient, restarted from perturbed starts."""

    def __init__(self, config: Config, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)
        self.restarts = config.p_restarts
        self.max_iterations = config.p_max_iterations
        self.logger.debug(
            f"p-eigen solver ready: {self.restarts} restarts, {self.max_iterations} iterations per start"
        )

    # objective pieces

    @staticmethod
    def _rayleigh_with_gradient(graph: SignedGraph, p: float, f: np.ndarray) -> Tuple[float, np.ndarray]:
        u, v, s = graph.edge_arrays
        differences = f[u] - s * f[v]
        numerator = float(np.sum(np.abs(differences) ** p))
        denominator = float(np.sum(graph.degrees * np.abs(f) ** p))
        if denominator == 0.0:
            return np.inf, np.zeros_like(f)

        d_numerator = np.zeros_like(f)
        edge_terms = p * signed_power(differences, p)
        np.add.at(d_numerator, u, edge_terms)
        np.add.at(d_numerator, v, -s * edge_terms)
        d_denominator = p * graph.degrees * signed_power(f, p)

        value = numerator / denominator
        return value, (d_numerator - value * d_denominator) / denominator

    @staticmethod
    def _normalize(graph: SignedGraph, p: float, f: np.ndarray) -> np.ndarray:
        norm = float(np.sum(graph.degrees * np.abs(f) ** p)) ** (1.0 / p)
        return f / norm if norm > 0.0 else f

    @staticmethod
    def _constraint(graph: SignedGraph, p: float, g: np.ndarray) -> float:
        return float(np.sum(graph.degrees * signed_power(g, p)))

    def _shift_to_constraint(self, graph: SignedGraph, p: float, g: np.ndarray) -> np.ndarray:
        # c ↦ Σ d φ_p(g - c) is decreasing with a root in [min g, max g]
        low, high = float(np.min(g)), float(np.max(g))
        if low == high:
            return g
        shift = brentq(lambda c: self._constraint(graph, p, g - c), low, high, xtol=1e-15)
        return g - shift

    # descent

    def _descend(
        self, objective: Objective, start: np.ndarray, retract: Callable[[np.ndarray], np.ndarray], iterations: int
    ) -> Tuple[np.ndarray, float, float]:
        f = retract(start)
        value, gradient = objective(f)
        step = 1.0
        for _ in range(iterations):
            gradient_norm = float(np.linalg.norm(gradient))
            if gradient_norm <= GRADIENT_TOLERANCE:
                break
            while step >= MIN_STEP:
                candidate = retract(f - step * gradient)
                candidate_value, candidate_gradient = objective(candidate)
                if candidate_value <= value - ARMIJO * step * gradient_norm**2:
                    f, value, gradient = candidate, candidate_value, candidate_gradient
                    step *= 2.0
                    break
                step *= 0.5
            else:
                break
        return f, value, float(np.linalg.norm(gradient))

    def _solve_unbalanced(self, graph: SignedGraph, p: float, start: np.ndarray) -> Tuple[np.ndarray, float, float]:
        return self._descend(
            lambda f: self._rayleigh_with_gradient(graph, p, f),
            start,
            lambda f: self._normalize(graph, p, f),
            self.max_iterations,
        )

    def _solve_balanced(self, positive: SignedGraph, p: float, start: np.ndarray) -> Tuple[np.ndarray, float, float]:
        degrees = positive.degrees
        q = (p - 1.0) / p

        def penalized(mu: float) -> Objective:
            def objective(g: np.ndarray) -> Tuple[float, np.ndarray]:
                value, gradient = self._rayleigh_with_gradient(positive, p, g)
                denominator = float(np.sum(degrees * np.abs(g) ** p))
                if not np.isfinite(value):
                    return value, gradient
                constraint = self._constraint(positive, p, g)
                ratio = constraint / denominator**q
                d_constraint = (p - 1.0) * degrees * np.maximum(np.abs(g), ZERO_FLOOR) ** (p - 2.0)
                d_denominator = p * degrees * signed_power(g, p)
                d_ratio = d_constraint / denominator**q - q * ratio * d_denominator / denominator
                return value + mu * ratio**2, gradient + 2.0 * mu * ratio * d_ratio

            return objective

        def reduced(g: np.ndarray) -> Tuple[float, np.ndarray]:
            value, gradient = self._rayleigh_with_gradient(positive, p, g)
            weights = degrees * np.maximum(np.abs(g), ZERO_FLOOR) ** (p - 2.0)
            weights = weights / np.sum(weights)
            return value, gradient - np.sum(gradient) * weights

        g = start
        for mu in PENALTY_SCHEDULE:
            g, _, _ = self._descend(penalized(mu), g, lambda h: self._normalize(positive, p, h), PENALTY_ITERATIONS)

        def project(h: np.ndarray) -> np.ndarray:
            return self._normalize(positive, p, self._shift_to_constraint(positive, p, h))

        return self._descend(reduced, g, project, self.max_iterations)

    # public entry point

    def solve(
        self,
        graph: SignedGraph,
        p: float,
        restarts: Optional[int] = None,
        seed: Optional[int] = None,
        progress: bool = False,
        require_convergence: bool = False,
    ) -> PEigenResult:
        """
        Estimate λ_p^σ.

        The first start is the linear eigenfunction of λ^σ; the others perturb it with Gaussian noise of growing
        amplitude drawn from a generator seeded with ``seed`` (default: the configured seed). The best start counts
        as converged when its gradient norm and, on balanced graphs, its constraint residual are within tolerance.

        Raises:
            ValueError: p <= 1 or restarts < 1.
            ConvergenceError: no start produced a finite Rayleigh quotient, or ``require_convergence`` is set and
                the best start did not converge within the iteration budget.
        """
        p = check_exponent(p)
        restarts = self.restarts if restarts is None else int(restarts)
        if restarts < 1:
            raise ValueError("restarts must be at least 1")
        rng = np.random.default_rng(self.config.random_seed if seed is None else seed)

        balance = is_balanced(graph)
        tau = balance.certificate.as_array() if balance.balanced else np.ones(graph.n)
        working = all_positive(graph) if balance.balanced else graph
        linear = first_nonzero_eigenvalue(graph).eigenfunction * tau
        scale = float(np.max(np.abs(linear)))

        best: Optional[Tuple[np.ndarray, float, float]] = None
        candidates: List[float] = []
        for attempt in tqdm(range(restarts), desc=f"p={p:g} restarts", disable=not progress):
            start = linear if attempt == 0 else linear + scale * (attempt / restarts) * rng.standard_normal(graph.n)
            if balance.balanced:
                g, value, gradient_norm = self._solve_balanced(working, p, start)
            else:
                g, value, gradient_norm = self._solve_unbalanced(working, p, start)
            candidates.append(float(value))
            self.logger.debug(f"p={p:g} start {attempt}: R={value:.12g}, |grad|={gradient_norm:.3e}")
            if np.isfinite(value) and (best is None or value < best[1]):
                best = (g, value, gradient_norm)

        if best is None:
            raise ConvergenceError(f"no usable p-eigenfunction found for p={p} in {restarts} starts")

        g, value, gradient_norm = best
        minimizer = g * tau
        residual = float(
            np.max(np.abs(-p_laplacian_apply(graph, p, minimizer) - value * signed_power(minimizer, p)))
        )
        constraint_residual = None
        if balance.balanced:
            constraint_residual = abs(float(np.sum(graph.degrees * signed_power(minimizer, p) * tau)))
            if constraint_residual > CONSTRAINT_TOLERANCE:
                self.logger.warning(f"p={p:g}: constraint residual {constraint_residual:.3e} above tolerance")

        converged = gradient_norm <= GRADIENT_TOLERANCE and (constraint_residual or 0.0) <= CONSTRAINT_TOLERANCE
        if not converged:
            message = f"p={p:g}: best start stopped with gradient norm {gradient_norm:.3e}"
            if require_convergence:
                raise ConvergenceError(f"{message} within {self.max_iterations} iterations per start")
            self.logger.warning(message)
        self.logger.info(f"Estimated lambda_p for p={p:g}: {value:.12g} over {restarts} starts")

        return PEigenResult(
            p=p,
            lambda_p=float(value),
            minimizer=minimizer,
            restarts_used=restarts,
            constraint_residual=constraint_residual,
            converged=converged,
            gradient_norm=gradient_norm,
            eigen_residual=residual,
            balanced=balance.balanced,
            candidates=candidates,
        )


def p_spectral_gap(
    graph: SignedGraph,
    p: float,
    budget: Optional[int] = None,
    config: Optional[Config] = None,
    seed: Optional[int] = None,
    progress: bool = False,
    require_convergence: bool = False,
) -> PEigenResult:
    """Convenience wrapper: solve with ``budget`` restarts under the default configuration."""
    config = config if config is not None else get_default_config()
    return PEigenSolver(config).solve(
        graph, p, restarts=budget, seed=seed, progress=progress, require_convergence=require_convergence
    )
