import math

import numpy as np
import pytest

from src.graph import generators
from src.graph.catalog import chorded_heptagon, signed_triangle
from src.graph.signed_graph import SwitchingFunction, switch
from src.operators.laplacian import SignChoice, laplacian_matrix
from src.spectral.spectrum import (
    all_negative_spectrum_relation,
    cluster_eigenvalues,
    first_nonzero_eigenvalue,
    spectrum,
)


def test_signed_triangle():
    first = first_nonzero_eigenvalue(signed_triangle())
    assert first.value == pytest.approx(0.5, abs=1e-9)
    assert first.multiplicity == 2
    assert first.index == 0
    assert not first.balanced
    np.testing.assert_allclose(spectrum(signed_triangle()).eigenvalues, [0.5, 0.5, 2.0], atol=1e-9)


def test_all_positive_triangle():
    first = first_nonzero_eigenvalue(signed_triangle(), SignChoice.ALL_POSITIVE)
    assert first.value == pytest.approx(1.5, abs=1e-9)
    assert first.multiplicity == 2
    assert first.index == 1
    assert first.balanced


@pytest.mark.parametrize("n", [5, 7, 9])
def test_odd_cycles(n):
    balanced = first_nonzero_eigenvalue(generators.cycle(n))
    unbalanced = first_nonzero_eigenvalue(generators.cycle(n, "unbalanced"))
    assert balanced.value == pytest.approx(1 - math.cos(2 * math.pi / n), abs=1e-9)
    assert unbalanced.value == pytest.approx(1 - math.cos(math.pi / n), abs=1e-9)
    assert balanced.multiplicity == 2
    assert unbalanced.multiplicity == 2
    assert balanced.eigenspace.shape == (n, 2)


def test_chorded_heptagon_eigenfunction():
    g = chorded_heptagon()
    first = first_nonzero_eigenvalue(g)
    assert first.value == pytest.approx(0.08, abs=0.005)
    f = first.eigenfunction / first.eigenfunction[g.index("2")]
    np.testing.assert_allclose(np.abs(f), [1.087, 1, 0.672, 0.237, 0.237, 0.672, 1], atol=0.005)


def test_residuals_and_range(corpus_graphs):
    for name, g in corpus_graphs.items():
        spec = spectrum(g)
        assert spec.max_residual <= 1e-9, name
        assert spec.in_range(), name


def test_eigenfunctions_are_degree_orthonormal():
    g = chorded_heptagon()
    spec = spectrum(g)
    gram = spec.eigenfunctions.T @ (g.degrees[:, None] * spec.eigenfunctions)
    np.testing.assert_allclose(gram, np.eye(g.n), atol=1e-10)


def test_eigenpairs_satisfy_equation():
    g = generators.hypercube_one_negative(3)
    first = first_nonzero_eigenvalue(g)
    matrix = laplacian_matrix(g).matrix
    for pair in first.eigenpairs():
        np.testing.assert_allclose(matrix @ pair.function, pair.value * pair.function, atol=1e-10)


def test_switching_invariance(rng):
    g = chorded_heptagon()
    reference = spectrum(g).eigenvalues
    for _ in range(100):
        tau = SwitchingFunction.random(g.n, rng)
        np.testing.assert_allclose(spectrum(switch(g, tau)).eigenvalues, reference, atol=1e-10)


def test_cluster_eigenvalues():
    assert cluster_eigenvalues(np.array([0.0, 0.5, 0.5 + 1e-12, 2.0])) == [(0, 1), (1, 3), (3, 4)]


def test_all_negative_relation_non_bipartite():
    relation = all_negative_spectrum_relation(generators.cycle(5))
    assert relation.holds
    assert not relation.bipartite
    assert not relation.symmetric_about_one


def test_all_negative_relation_bipartite():
    relation = all_negative_spectrum_relation(generators.hypercube(3))
    assert relation.holds
    assert relation.bipartite
    assert relation.symmetric_about_one
