"""
Carré du champ operators Γ^σ, Γ₂^σ and their quadratic-form matrices on the 2-ball of a vertex.

Γ₂^σ(f)(x) = ½ ΔΓ^σ(f)(x) - Γ^σ(f, Δ^σ f)(x), where the outer Δ is the unsigned Laplacian of the underlying
graph and the inner Δ^σ carries the signs.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np

from src.graph.signed_graph import SignedGraph, ball
from src.operators.laplacian import laplacian_apply, unsigned_laplacian_apply


def _gamma_field(graph: SignedGraph, f: np.ndarray, h: np.ndarray) -> np.ndarray:
    u, v, s = graph.edge_arrays
    acc = np.zeros(graph.n)
    np.add.at(acc, u, (s * f[v] - f[u]) * (s * h[v] - h[u]))
    np.add.at(acc, v, (s * f[u] - f[v]) * (s * h[u] - h[v]))
    return acc / (2.0 * graph.degrees)


def gamma(
    graph: SignedGraph, f: np.ndarray, h: np.ndarray, x: Optional[int] = None
) -> Union[float, np.ndarray]:
    """Γ^σ(f, h), at x when given, otherwise at every vertex."""
    if x is not None:
        total = 0.0
        for y, sign in graph.signed_neighbors(x):
            total += (sign * f[y] - f[x]) * (sign * h[y] - h[x])
        return total / (2.0 * graph.degree(x))
    return _gamma_field(graph, f, h)


def gradient_sq(graph: SignedGraph, f: np.ndarray, x: Optional[int] = None) -> Union[float, np.ndarray]:
    """|∇^σ f|² = 2Γ^σ(f, f)."""
    return 2.0 * gamma(graph, f, f, x)


def gamma2(graph: SignedGraph, f: np.ndarray, x: Optional[int] = None) -> Union[float, np.ndarray]:
    """Γ₂^σ(f, f); only f on the 2-ball of x enters the value at x."""
    field = 0.5 * unsigned_laplacian_apply(graph, _gamma_field(graph, f, f)) - _gamma_field(
        graph, f, laplacian_apply(graph, f)
    )
    if x is not None:
        return float(field[x])
    return field


@dataclass(frozen=True)
class LocalForms:
    """
    Quadratic forms at x in the coordinates of the 2-ball B₂(x).

    For f restricted to ``vertices``: Γ^σ(f)(x) = fᵀ m_gamma f, Γ₂^σ(f)(x) = fᵀ m_gamma2 f and
    Δ^σ f(x) = delta_row · f.
    """

    center: int
    vertices: Tuple[int, ...]
    m_gamma: np.ndarray
    m_gamma2: np.ndarray
    delta_row: np.ndarray

    def restrict(self, f: np.ndarray) -> np.ndarray:
        return np.asarray(f, dtype=float)[list(self.vertices)]


def _difference_rows(graph: SignedGraph, u: int, index: Dict[int, int]) -> np.ndarray:
    # row per neighbor w of u: σ_uw e_w - e_u
    rows = np.zeros((graph.degree(u), len(index)))
    for row, (w, sign) in enumerate(graph.signed_neighbors(u)):
        rows[row, index[w]] += sign
        rows[row, index[u]] -= 1.0
    return rows


def local_forms(graph: SignedGraph, x: int) -> LocalForms:
    """Matrices of Γ^σ(·)(x), Γ₂^σ(·)(x) and the row of Δ^σ(·)(x) on B₂(x)."""
    vertices = ball(graph, x, 2)
    index = {vertex: i for i, vertex in enumerate(vertices)}

    def gamma_form(u: int) -> np.ndarray:
        rows = _difference_rows(graph, u, index)
        return rows.T @ rows / (2.0 * graph.degree(u))

    def laplacian_row(u: int) -> np.ndarray:
        return _difference_rows(graph, u, index).sum(axis=0) / graph.degree(u)

    d_x = graph.degree(x)
    m_gamma = gamma_form(x)
    delta_row = laplacian_row(x)

    outer = np.zeros_like(m_gamma)
    cross = np.zeros_like(m_gamma)
    for y, sign in graph.signed_neighbors(x):
        outer += gamma_form(y) - m_gamma
        left = -np.eye(len(vertices))[index[x]]
        left[index[y]] += sign
        cross += np.outer(left, sign * laplacian_row(y) - delta_row)
    cross /= 2.0 * d_x
    m_gamma2 = 0.5 * outer / d_x - 0.5 * (cross + cross.T)

    return LocalForms(center=x, vertices=vertices, m_gamma=m_gamma, m_gamma2=m_gamma2, delta_row=delta_row)
