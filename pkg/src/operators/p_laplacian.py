"""
Signed p-Laplacian, p-Rayleigh quotient, linearizations and the p-carré du champ operators.

Δ_p^σ f(x) = (1/d_x) Σ_{y~x} φ_p(σ_xy f(y) - f(x)) with φ_p(t) = |t|^{p-2} t and φ_p(0) = 0.

The linearized operators weigh each neighbor by |σ_xy f(y) - f(x)|^{p-2}. That weight is 1 at a vanishing
difference for p = 2 and 0 for p > 2; for 1 < p < 2 it is undefined and a DomainError names the edge.
"""

from typing import Optional, Union

import numpy as np

from src.graph.signed_graph import SignedGraph
from src.utils.errors import DomainError


def check_exponent(p: float) -> float:
    p = float(p)
    if not p > 1.0 or not np.isfinite(p):
        raise ValueError(f"p must be a finite real number > 1, got {p}")
    return p


def signed_power(t: Union[float, np.ndarray], p: float) -> Union[float, np.ndarray]:
    """φ_p(t) = |t|^{p-2} t, zero at t = 0."""
    return np.sign(t) * np.abs(t) ** (p - 1.0)


def p_laplacian_apply(
    graph: SignedGraph, p: float, f: np.ndarray, x: Optional[int] = None
) -> Union[float, np.ndarray]:
    """Δ_p^σ f, at x when given, otherwise at every vertex. For p = 2 this is Δ^σ f."""
    p = check_exponent(p)
    if x is not None:
        total = 0.0
        for y, sign in graph.signed_neighbors(x):
            total += signed_power(sign * f[y] - f[x], p)
        return float(total) / graph.degree(x)

    u, v, s = graph.edge_arrays
    acc = np.zeros(graph.n)
    np.add.at(acc, u, signed_power(s * f[v] - f[u], p))
    np.add.at(acc, v, signed_power(s * f[u] - f[v], p))
    return acc / graph.degrees


def p_energy(graph: SignedGraph, p: float, f: np.ndarray) -> float:
    """Σ_{{x,y}∈E} |f(x) - σ_xy f(y)|^p."""
    u, v, s = graph.edge_arrays
    return float(np.sum(np.abs(f[u] - s * f[v]) ** p))


def p_norm(graph: SignedGraph, p: float, f: np.ndarray) -> float:
    """Σ_x d_x |f(x)|^p."""
    return float(np.sum(graph.degrees * np.abs(f) ** p))


def p_rayleigh(graph: SignedGraph, p: float, f: np.ndarray) -> float:
    """
    p-Rayleigh quotient R_p^σ(f).

    Raises:
        ValueError: p <= 1 or f identically zero.
    """
    p = check_exponent(p)
    f = np.asarray(f, dtype=float)
    denominator = p_norm(graph, p, f)
    if denominator == 0.0:
        raise ValueError("p-Rayleigh quotient is undefined for the zero function")
    return p_energy(graph, p, f) / denominator


def _linearization_weights(graph: SignedGraph, p: float, f: np.ndarray, x: int) -> np.ndarray:
    differences = np.array([sign * f[y] - f[x] for y, sign in graph.signed_neighbors(x)])
    if p < 2.0:
        for (y, _), difference in zip(graph.signed_neighbors(x), differences):
            if difference == 0.0:
                raise DomainError(graph.label(x), graph.label(y), p)
        return np.abs(differences) ** (p - 2.0)
    if p == 2.0:
        return np.ones_like(differences)
    return np.abs(differences) ** (p - 2.0)


def linearized_p_laplacian(graph: SignedGraph, p: float, f: np.ndarray, phi: np.ndarray, x: int) -> float:
    """L^σ_{p,f} φ(x) = (1/d_x) Σ |σ_xy f(y) - f(x)|^{p-2} (σ_xy φ(y) - φ(x))."""
    p = check_exponent(p)
    weights = _linearization_weights(graph, p, f, x)
    terms = [sign * phi[y] - phi[x] for y, sign in graph.signed_neighbors(x)]
    return float(np.dot(weights, terms)) / graph.degree(x)


def modified_linearized(graph: SignedGraph, p: float, f: np.ndarray, phi: np.ndarray, x: int) -> float:
    """ℒ^σ_{p,f} φ(x) = (1/d_x) Σ |σ_xy f(y) - f(x)|^{p-2} (φ(y) - φ(x)); the differences of φ are unsigned."""
    p = check_exponent(p)
    weights = _linearization_weights(graph, p, f, x)
    terms = [phi[y] - phi[x] for y in graph.neighbors(x)]
    return float(np.dot(weights, terms)) / graph.degree(x)


def gamma_p(
    graph: SignedGraph, p: float, f: np.ndarray, h: np.ndarray, x: Optional[int] = None
) -> Union[float, np.ndarray]:
    """Γ_p^σ(f, h)(x) = (1/2d_x) Σ φ_p(σ_xy f(y) - f(x)) (σ_xy h(y) - h(x))."""
    p = check_exponent(p)
    if x is not None:
        total = 0.0
        for y, sign in graph.signed_neighbors(x):
            total += signed_power(sign * f[y] - f[x], p) * (sign * h[y] - h[x])
        return float(total) / (2.0 * graph.degree(x))

    u, v, s = graph.edge_arrays
    acc = np.zeros(graph.n)
    np.add.at(acc, u, signed_power(s * f[v] - f[u], p) * (s * h[v] - h[u]))
    np.add.at(acc, v, signed_power(s * f[u] - f[v], p) * (s * h[u] - h[v]))
    return acc / (2.0 * graph.degrees)


def gamma_p2(graph: SignedGraph, p: float, f: np.ndarray, x: Optional[int] = None) -> Union[float, np.ndarray]:
    """
    Γ_{p,2}^σ(f, f)(x) = ½ ℒ^σ_{p,f}(Γ_p^σ(f, f))(x) - Γ_p^σ(f, Δ_p^σ f)(x).

    Raises:
        DomainError: 1 < p < 2 and a signed difference vanishes at x (at any vertex when x is None).
    """
    p = check_exponent(p)
    gamma_field = gamma_p(graph, p, f, f)
    laplacian_field = p_laplacian_apply(graph, p, f)

    def at(vertex: int) -> float:
        return 0.5 * modified_linearized(graph, p, f, gamma_field, vertex) - gamma_p(
            graph, p, f, laplacian_field, vertex
        )

    if x is not None:
        return at(x)
    return np.array([at(vertex) for vertex in range(graph.n)])


def green_identity_gap(graph: SignedGraph, p: float, f: np.ndarray, h: np.ndarray) -> float:
    """
    Σ_x d_x Γ_p^σ(f, h)(x) + Σ_x d_x h(x) Δ_p^σ f(x), which vanishes up to rounding.

    With h = f the first sum is ½ Σ_x Σ_{y~x} |σ_xy f(y) - f(x)|^p, the summation by parts behind the p-Rayleigh
    quotient.
    """
    p = check_exponent(p)
    degrees = graph.degrees
    first = float(np.sum(degrees * gamma_p(graph, p, f, h)))
    second = float(np.sum(degrees * h * p_laplacian_apply(graph, p, f)))
    return first + second
