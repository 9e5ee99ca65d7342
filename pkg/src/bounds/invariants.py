"""Lazily computed graph quantities shared by every theorem check on one graph."""

import math
from functools import cached_property
from typing import Dict, Optional, Sequence

from src.combinatorics.cheeger import CheegerResult, cheeger_constant
from src.combinatorics.frustration import FrustrationResult, frustration_index
from src.curvature.curvature_matrix import CurvatureMatrixBundle, curvature_matrix_bundle, curvature_profile
from src.graph.signed_graph import SignedGraph, all_negative, all_positive, diameter, is_balanced, is_bipartite
from src.spectral.p_eigen import PEigenResult, PEigenSolver
from src.spectral.spectrum import FirstEigenvalue, Spectrum, first_nonzero_eigenvalue, spectrum
from src.utils.config import Config
from src.utils.shared_config import get_default_config


class GraphInvariants:
    """
    Cache of λ^σ, K(N), D, d, vol, ι^σ and h^σ for one signed graph.

    Args:
        graph: Signed graph.
        config: Size limits, tolerances and solver budgets (default configuration when omitted).
        bundles: Curvature-matrix bundles in vertex order, when computed elsewhere.
    """

    def __init__(
        self,
        graph: SignedGraph,
        config: Optional[Config] = None,
        bundles: Sequence[CurvatureMatrixBundle] = (),
    ):
        self.graph = graph
        self.config = config if config is not None else get_default_config()
        self._bundles = tuple(bundles)
        self._curvature: Dict[float, float] = {}
        self._p_eigen: Dict[float, PEigenResult] = {}

    @cached_property
    def spectrum(self) -> Spectrum:
        return spectrum(self.graph, zero_tolerance=self.config.zero_tolerance)

    @cached_property
    def first(self) -> FirstEigenvalue:
        return first_nonzero_eigenvalue(self.graph, spec=self.spectrum)

    @property
    def eigenvalue(self) -> float:
        return self.first.value

    @cached_property
    def balanced(self) -> bool:
        return is_balanced(self.graph).balanced

    @cached_property
    def bipartite(self) -> bool:
        return is_bipartite(self.graph)

    @cached_property
    def diameter(self) -> int:
        return diameter(self.graph)

    @property
    def max_degree(self) -> int:
        return self.graph.max_degree

    @property
    def volume(self) -> int:
        return self.graph.volume

    @cached_property
    def bundles(self):
        if not self._bundles:
            self._bundles = tuple(curvature_matrix_bundle(self.graph, x) for x in range(self.graph.n))
        return self._bundles

    def curvature(self, N: float = math.inf) -> float:
        """K(N): the largest K with CD^σ(K, N) at every vertex."""
        N = float(N)
        if N not in self._curvature:
            self._curvature[N] = curvature_profile(self.graph, (N,), self.bundles).minimum(N)
        return self._curvature[N]

    @cached_property
    def all_positive(self) -> "GraphInvariants":
        return GraphInvariants(all_positive(self.graph), self.config)

    @cached_property
    def all_negative(self) -> "GraphInvariants":
        return GraphInvariants(all_negative(self.graph), self.config)

    @cached_property
    def frustration(self) -> FrustrationResult:
        return frustration_index(self.graph, limit=self.config.frustration_size_limit, workers=self.config.workers)

    @cached_property
    def cheeger(self) -> CheegerResult:
        return cheeger_constant(self.graph, limit=self.config.cheeger_size_limit, workers=self.config.workers)

    def p_eigen(self, p: float) -> PEigenResult:
        p = float(p)
        if p not in self._p_eigen:
            self._p_eigen[p] = PEigenSolver(self.config).solve(self.graph, p)
        return self._p_eigen[p]
