"""
Signed Laplacian in matrix and pointwise form.

The operator is Δ^σ f(x) = (1/d_x) Σ_{y~x} (σ_xy f(y) - f(x)). ``laplacian_matrix`` returns the matrix of
-Δ^σ, which has unit diagonal and -σ_xy/d_x at neighbors.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from src.graph.signed_graph import SignedGraph, all_negative, all_positive


class SignChoice(str, Enum):
    SIGMA = "sigma"
    ALL_POSITIVE = "all_positive"
    ALL_NEGATIVE = "all_negative"


SignChoiceLike = Union[SignChoice, str]


def apply_sign_choice(graph: SignedGraph, sign_choice: SignChoiceLike = SignChoice.SIGMA) -> SignedGraph:
    """Return the graph itself, its all-positive version, or its all-negative version."""
    choice = SignChoice(sign_choice)
    if choice is SignChoice.ALL_POSITIVE:
        return all_positive(graph)
    if choice is SignChoice.ALL_NEGATIVE:
        return all_negative(graph)
    return graph


def as_vertex_function(graph: SignedGraph, values: Sequence[float]) -> np.ndarray:
    """Validate a vertex function: one finite real value per vertex, returned as a fresh float array."""
    f = np.array(values, dtype=float).reshape(-1)
    if f.shape[0] != graph.n:
        raise ValueError(f"vertex function has {f.shape[0]} values for {graph.n} vertices")
    if not np.all(np.isfinite(f)):
        raise ValueError("vertex function values must be finite")
    return f


@dataclass(frozen=True)
class LaplacianMatrix:
    """Dense matrix of -Δ^σ under one sign convention."""

    matrix: np.ndarray
    sign_choice: SignChoice

    def apply(self, f: np.ndarray) -> np.ndarray:
        """Δ^σ f at every vertex."""
        return -(self.matrix @ f)

    def as_rows(self):
        return self.matrix.tolist()


def laplacian_matrix(graph: SignedGraph, sign_choice: SignChoiceLike = SignChoice.SIGMA) -> LaplacianMatrix:
    """
    Build the matrix of -Δ^σ.

    Args:
        graph: Signed graph.
        sign_choice: ``"sigma"`` for the graph's own signs, ``"all_positive"`` for the unsigned Laplacian Δ,
            ``"all_negative"`` for Δ^{σ-}.

    Returns:
        LaplacianMatrix: diagonal 1, entry -σ_xy/d_x at each neighbor y of x.
    """
    choice = SignChoice(sign_choice)
    signed = apply_sign_choice(graph, choice)
    matrix = np.eye(graph.n)
    for x in range(graph.n):
        d_x = signed.degree(x)
        for y, sign in signed.signed_neighbors(x):
            matrix[x, y] = -sign / d_x
    return LaplacianMatrix(matrix=matrix, sign_choice=choice)


def symmetric_conjugate(graph: SignedGraph, sign_choice: SignChoiceLike = SignChoice.SIGMA) -> np.ndarray:
    """S = I - D^{-1/2} A^σ D^{-1/2}, similar to -Δ^σ through D^{1/2}."""
    signed = apply_sign_choice(graph, sign_choice)
    scale = 1.0 / np.sqrt(signed.degrees)
    return np.eye(graph.n) - scale[:, None] * signed.signed_adjacency * scale[None, :]


def laplacian_apply(
    graph: SignedGraph, f: np.ndarray, x: Optional[int] = None
) -> Union[float, np.ndarray]:
    """Δ^σ f, at vertex x when given, otherwise at every vertex."""
    if x is not None:
        total = 0.0
        for y, sign in graph.signed_neighbors(x):
            total += sign * f[y] - f[x]
        return total / graph.degree(x)

    u, v, s = graph.edge_arrays
    acc = np.zeros(graph.n)
    np.add.at(acc, u, s * f[v] - f[u])
    np.add.at(acc, v, s * f[u] - f[v])
    return acc / graph.degrees


def unsigned_laplacian_apply(graph: SignedGraph, values: np.ndarray) -> np.ndarray:
    """The all-positive Δ at every vertex, whatever the graph's signs."""
    u, v, _ = graph.edge_arrays
    acc = np.zeros(graph.n)
    np.add.at(acc, u, values[v] - values[u])
    np.add.at(acc, v, values[u] - values[v])
    return acc / graph.degrees
