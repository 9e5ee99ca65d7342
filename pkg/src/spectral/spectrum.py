"""
Spectrum of the signed Laplacian.

-Δ^σ = I - D^{-1}A^σ is not symmetric on irregular graphs, so eigenpairs are computed from the conjugate
S = I - D^{-1/2}A^σD^{-1/2} and mapped back with f = D^{-1/2}u. The eigenfunctions are then orthonormal in the
degree-weighted inner product Σ_x d_x f(x) g(x).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg

from src.graph.signed_graph import SignedGraph, is_balanced
from src.operators.laplacian import (
    SignChoice,
    SignChoiceLike,
    apply_sign_choice,
    laplacian_matrix,
    symmetric_conjugate,
)
from src.utils.errors import ConvergenceError

logger = logging.getLogger(__name__)

ZERO_TOLERANCE = 1e-8
RELATION_TOLERANCE = 1e-9


def cluster_eigenvalues(eigenvalues: np.ndarray, tolerance: float = ZERO_TOLERANCE) -> List[Tuple[int, int]]:
    """Group ascending eigenvalues into (start, stop) index ranges whose neighbors differ by at most tolerance."""
    clusters = []
    start = 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[i - 1] > tolerance:
            clusters.append((start, i))
            start = i
    return clusters


def _normalize_signs(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude entry of each eigenfunction made positive
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


@dataclass(frozen=True)
class Eigenpair:
    value: float
    function: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """
    Ascending eigenvalues of -Δ^σ with eigenfunctions as columns.

    Attributes:
        eigenvalues: λ_1 <= ... <= λ_|V|.
        eigenfunctions: n x n array, column i is the eigenfunction of eigenvalues[i].
        sign_choice: sign convention the spectrum was computed for.
        balanced: whether the signed graph under that convention is balanced.
        max_residual: max over pairs and vertices of |-Δ^σ f(x) - λ f(x)|.
        zero_tolerance: clustering and zero threshold.
    """

    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray
    sign_choice: SignChoice
    balanced: bool
    max_residual: float
    zero_tolerance: float = ZERO_TOLERANCE

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def eigenpair(self, index: int) -> Eigenpair:
        return Eigenpair(float(self.eigenvalues[index]), self.eigenfunctions[:, index].copy())

    @property
    def clusters(self) -> List[Tuple[int, int]]:
        return cluster_eigenvalues(self.eigenvalues, self.zero_tolerance)

    def multiplicities(self) -> List[Tuple[float, int]]:
        """(cluster mean, multiplicity) per eigenvalue cluster."""
        return [(float(np.mean(self.eigenvalues[a:b])), b - a) for a, b in self.clusters]

    def cluster_of(self, index: int) -> Tuple[int, int]:
        return next((a, b) for a, b in self.clusters if a <= index < b)

    def in_range(self, slack: float = 1e-10) -> bool:
        return bool(self.eigenvalues[0] >= -slack and self.eigenvalues[-1] <= 2.0 + slack)


def spectrum(
    graph: SignedGraph, sign_choice: SignChoiceLike = SignChoice.SIGMA, zero_tolerance: float = ZERO_TOLERANCE
) -> Spectrum:
    """
    Full eigendecomposition of -Δ^σ under the given sign convention.

    Raises:
        ConvergenceError: the dense symmetric eigensolver did not converge.
    """
    choice = SignChoice(sign_choice)
    conjugate = symmetric_conjugate(graph, choice)
    conjugate = 0.5 * (conjugate + conjugate.T)
    try:
        values, vectors = scipy.linalg.eigh(conjugate)
    except scipy.linalg.LinAlgError as e:
        raise ConvergenceError(f"symmetric eigensolver failed: {e}") from e

    functions = _normalize_signs(vectors / np.sqrt(graph.degrees)[:, None])
    operator = laplacian_matrix(graph, choice).matrix
    residual = float(np.max(np.abs(operator @ functions - functions * values[None, :])))
    balanced = is_balanced(apply_sign_choice(graph, choice)).balanced

    logger.debug("Computed %s spectrum for %d vertices (max residual %.3e)", choice.value, graph.n, residual)
    return Spectrum(
        eigenvalues=values,
        eigenfunctions=functions,
        sign_choice=choice,
        balanced=balanced,
        max_residual=residual,
        zero_tolerance=zero_tolerance,
    )


@dataclass(frozen=True)
class FirstEigenvalue:
    """λ^σ with its eigenspace: λ_1^σ when unbalanced, λ_2^σ when balanced."""

    value: float
    eigenfunction: np.ndarray
    multiplicity: int
    eigenspace: np.ndarray
    index: int
    balanced: bool

    def eigenpairs(self) -> List[Eigenpair]:
        return [Eigenpair(self.value, self.eigenspace[:, i].copy()) for i in range(self.eigenspace.shape[1])]


def first_nonzero_eigenvalue(
    graph: SignedGraph,
    sign_choice: SignChoiceLike = SignChoice.SIGMA,
    zero_tolerance: float = ZERO_TOLERANCE,
    spec: Optional[Spectrum] = None,
) -> FirstEigenvalue:
    """λ^σ, its first eigenfunction, its multiplicity and an orthonormal basis of its eigenspace."""
    spec = spec if spec is not None else spectrum(graph, sign_choice, zero_tolerance)
    index = 1 if spec.balanced and graph.n > 1 else 0
    start, stop = spec.cluster_of(index)
    start = max(start, index)
    return FirstEigenvalue(
        value=float(spec.eigenvalues[index]),
        eigenfunction=spec.eigenfunctions[:, index].copy(),
        multiplicity=stop - start,
        eigenspace=spec.eigenfunctions[:, start:stop].copy(),
        index=index,
        balanced=spec.balanced,
    )


@dataclass(frozen=True)
class SpectrumRelation:
    """Comparison of the all-negative spectrum with the reflected all-positive spectrum."""

    all_negative: np.ndarray
    all_positive: np.ndarray
    max_deviation: float
    holds: bool
    bipartite: bool
    symmetric_about_one: bool


def all_negative_spectrum_relation(graph: SignedGraph, tolerance: float = RELATION_TOLERANCE) -> SpectrumRelation:
    """Check λ_i^{σ-} = 2 - λ_{|V|-i+1} with both spectra computed independently."""
    negative = spectrum(graph, SignChoice.ALL_NEGATIVE).eigenvalues
    positive = spectrum(graph, SignChoice.ALL_POSITIVE).eigenvalues
    deviation = float(np.max(np.abs(negative - (2.0 - positive[::-1]))))
    symmetric = bool(np.max(np.abs(positive - (2.0 - positive[::-1]))) <= tolerance)
    return SpectrumRelation(
        all_negative=negative,
        all_positive=positive,
        max_deviation=deviation,
        holds=deviation <= tolerance,
        bipartite=bool(abs(positive[-1] - 2.0) <= tolerance),
        symmetric_about_one=symmetric,
    )
