import numpy as np
import pytest

from src.graph import generators
from src.graph.catalog import CORPUS_SPECS, chorded_heptagon, from_spec, signed_triangle
from src.operators.p_laplacian import p_rayleigh
from src.spectral.p_eigen import PEigenSolver, p_spectral_gap
from src.spectral.spectrum import first_nonzero_eigenvalue
from src.utils.errors import ConvergenceError


@pytest.mark.parametrize("spec", ["signed-triangle", "cycle:5:unbalanced", "cycle:5", "hypercube1neg:2"])
def test_matches_linear_eigenvalue_at_two(spec, config):
    g = from_spec(spec)
    result = PEigenSolver(config).solve(g, 2.0)
    assert result.lambda_p == pytest.approx(first_nonzero_eigenvalue(g).value, abs=1e-6)
    assert result.eigen_residual <= 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("spec", CORPUS_SPECS)
def test_p2_oracle_over_corpus(spec):
    g = from_spec(spec)
    result = p_spectral_gap(g, 2.0, budget=50, seed=20240611)
    assert result.lambda_p == pytest.approx(first_nonzero_eigenvalue(g).value, abs=1e-6)


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_unbalanced_minimizer_is_normalized(p, config):
    g = generators.cycle(5, "unbalanced")
    result = PEigenSolver(config).solve(g, p)
    assert result.constraint_residual is None
    assert not result.balanced
    assert float(np.sum(g.degrees * np.abs(result.minimizer) ** p)) == pytest.approx(1.0, rel=1e-8)
    assert p_rayleigh(g, p, result.minimizer) == pytest.approx(result.lambda_p, rel=1e-8)
    assert result.lambda_p == pytest.approx(min(result.candidates))
    assert len(result.candidates) == result.restarts_used == config.p_restarts


def test_balanced_constraint(config):
    g = generators.cycle(5)
    result = PEigenSolver(config).solve(g, 3.0)
    assert result.balanced
    assert result.constraint_residual == pytest.approx(0.0, abs=1e-6)
    assert result.lambda_p > 0.0


def test_seed_is_reproducible(config):
    g = signed_triangle()
    first = PEigenSolver(config).solve(g, 3.0, restarts=4, seed=7)
    second = PEigenSolver(config).solve(g, 3.0, restarts=4, seed=7)
    assert first.candidates == second.candidates


def test_rejects_bad_arguments(config):
    solver = PEigenSolver(config)
    with pytest.raises(ValueError, match="p must be"):
        solver.solve(signed_triangle(), 1.0)
    with pytest.raises(ValueError, match="restarts"):
        solver.solve(signed_triangle(), 3.0, restarts=0)


def test_iteration_budget_exhaustion(config):
    starved = config.with_overrides({"P_MAX_ITERATIONS": 1})
    result = PEigenSolver(starved).solve(chorded_heptagon(), 3.0, restarts=2)
    assert not result.converged
    with pytest.raises(ConvergenceError, match="within 1 iterations"):
        PEigenSolver(starved).solve(chorded_heptagon(), 3.0, restarts=2, require_convergence=True)
    with pytest.raises(ConvergenceError):
        p_spectral_gap(chorded_heptagon(), 3.0, budget=2, config=starved, require_convergence=True)
