"""
Exact Bakry-Émery curvature of a signed graph through the curvature matrix.

At a vertex x with neighbors y_1..y_m and two-sphere z_1..z_l, the (m+1)x(m+1) matrix Q(x) is the quadratic form
of Γ₂^σ(f)(x) in (f(x), f(y_1), ..., f(y_m)) after minimizing over the values f(z_k). With B₀ the change of
variables to gradient coordinates w_i = √p_xy_i σ_xy_i (σ_xy_i f(y_i) - f(x)),

    2B₀Q(x)B₀ᵀ = [[a, ωᵀ], [ω, M]],    A_∞ = M - ω a⁻¹ ωᵀ  (0⁻¹ = 0).

Γ^σ(f)(x) = ½|w|² and Δ^σ f(x) = v₀·w, so CD^σ(K, N) at x holds iff A_∞ - (2/N)v₀v₀ᵀ ⪰ K·I and
K_x(N) = λ_min(A_N) with A_N = A_∞ - (2/N)v₀v₀ᵀ.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import scipy.linalg

from src.graph.signed_graph import SignedGraph, sphere

logger = logging.getLogger(__name__)

ZERO_PIVOT = 1e-12


def check_dimension(N: float) -> float:
    N = float(N)
    if not N > 0.0 or math.isnan(N):
        raise ValueError(f"dimension N must lie in (0, inf], got {N}")
    return N


def _rate(graph: SignedGraph, u: int, w: int) -> float:
    return 1.0 / graph.degree(u) if graph.has_edge(u, w) else 0.0


def _sign(graph: SignedGraph, u: int, w: int) -> float:
    return float(graph.sign(u, w)) if graph.has_edge(u, w) else 0.0


@dataclass(frozen=True, eq=False)
class CurvatureMatrixBundle:
    """
    Every intermediate of the curvature-matrix construction at one vertex.

    Attributes:
        vertex: x.
        m: d_x.
        neighbors: y_1..y_m in ascending index order.
        two_sphere: z_1..z_l in ascending index order.
        rates: p_xy_i = 1/d_x for each neighbor.
        q: Q(x), rows and columns indexed by x, y_1, ..., y_m.
        b0: B₀.
        a: top-left entry of 2B₀Q(x)B₀ᵀ.
        omega: first column of 2B₀Q(x)B₀ᵀ below a.
        a_inf: A_∞.
        v0: (√p_xy_i σ_xy_i)_i.
    """

    vertex: int
    m: int
    neighbors: Tuple[int, ...]
    two_sphere: Tuple[int, ...]
    rates: np.ndarray
    q: np.ndarray
    b0: np.ndarray
    a: float
    omega: np.ndarray
    a_inf: np.ndarray
    v0: np.ndarray
    _cache: Dict[float, np.ndarray] = field(default_factory=dict, compare=False, repr=False)

    def a_n(self, N: float = math.inf) -> np.ndarray:
        """A_N = A_∞ - (2/N) v₀v₀ᵀ, symmetrized; the 2 matches Γ^σ = ½|w|² in gradient coordinates."""
        N = check_dimension(N)
        # 2/N rather than 1/N: Γ₂ = ½wᵀA_∞w and Γ = ½|w|², so clearing the ½ doubles the (1/N)(Δf)² term
        matrix = self.a_inf.copy() if math.isinf(N) else self.a_inf - (2.0 / N) * np.outer(self.v0, self.v0)
        return 0.5 * (matrix + matrix.T)

    def eigenvalues(self, N: float = math.inf) -> np.ndarray:
        N = check_dimension(N)
        if N not in self._cache:
            self._cache[N] = scipy.linalg.eigvalsh(self.a_n(N))
        return self._cache[N]

    def curvature(self, N: float = math.inf) -> float:
        return float(self.eigenvalues(N)[0])


def q_matrix(graph: SignedGraph, x: int) -> np.ndarray:
    """Q(x) from the two-sphere sums S_k = Σ_i p_xy_i p_y_iz_k and T_k = Σ_i p_xy_i p_y_iz_k σ_xy_i σ_y_iz_k."""
    ys = graph.neighbors(x)
    zs = sphere(graph, x, 2)
    m = len(ys)

    p_x = np.array([_rate(graph, x, y) for y in ys])
    p_back = np.array([_rate(graph, y, x) for y in ys])
    s_x = np.array([_sign(graph, x, y) for y in ys])
    # p_yy[i, j] = p_{y_i y_j}, s_yy[i, j] = σ_{y_i y_j}
    p_yy = np.array([[_rate(graph, yi, yj) for yj in ys] for yi in ys]).reshape(m, m)
    s_yy = np.array([[_sign(graph, yi, yj) for yj in ys] for yi in ys]).reshape(m, m)
    # p_yz[i, k] = p_{y_i z_k}, s_yz[i, k] = σ_{y_i z_k}
    p_yz = np.array([[_rate(graph, y, z) for z in zs] for y in ys]).reshape(m, len(zs))
    s_yz = np.array([[_sign(graph, y, z) for z in zs] for y in ys]).reshape(m, len(zs))

    weighted = p_x[:, None] * p_yz
    s_k = weighted.sum(axis=0)
    t_k = (weighted * s_x[:, None] * s_yz).sum(axis=0)

    four_q = np.zeros((m + 1, m + 1))
    four_q[0, 0] = 3.0 * np.sum(p_x * p_back) + 1.0 - np.sum(t_k**2 / s_k)

    # path x -> y_j -> y_i, excluding j = i (p_yy has a zero diagonal)
    two_step = p_x[:, None] * p_yy
    for i in range(m):
        four_q[0, i + 1] = (
            np.sum(two_step[:, i] * s_x * s_yy[:, i])
            - 2.0 * (p_back[i] + 1.0) * p_x[i] * s_x[i]
            + 2.0 * np.sum(t_k * p_x[i] * p_yz[i] * s_yz[i] / s_k)
        )
        four_q[i + 1, 0] = four_q[0, i + 1]
        four_q[i + 1, i + 1] = (
            np.sum(two_step[:, i])
            + 2.0 * (p_x[i] + 1.0) * p_x[i]
            - 4.0 * np.sum(p_x[i] ** 2 * p_yz[i] ** 2 / s_k)
        )
        for j in range(m):
            if j == i:
                continue
            four_q[i + 1, j + 1] = (
                -2.0 * (p_x[i] * p_yy[i, j] + p_x[j] * p_yy[j, i]) * s_yy[i, j]
                + 2.0 * p_x[i] * p_x[j] * s_x[i] * s_x[j]
                - 4.0 * np.sum(weighted[i] * weighted[j] * s_yz[i] * s_yz[j] / s_k)
            )
    return four_q / 4.0


def curvature_matrix_bundle(graph: SignedGraph, x: int) -> CurvatureMatrixBundle:
    """Build Q(x), B₀, the block split of 2B₀Q(x)B₀ᵀ, A_∞ and v₀ at vertex x."""
    ys = graph.neighbors(x)
    m = len(ys)
    rates = np.array([_rate(graph, x, y) for y in ys])
    signs = np.array([_sign(graph, x, y) for y in ys])

    q = q_matrix(graph, x)
    b0 = np.zeros((m + 1, m + 1))
    b0[0, 0] = 1.0
    b0[0, 1:] = signs
    b0[1:, 1:] = np.diag(1.0 / np.sqrt(rates))

    blocks = 2.0 * b0 @ q @ b0.T
    blocks = 0.5 * (blocks + blocks.T)
    a = float(blocks[0, 0])
    omega = blocks[1:, 0].copy()
    a_inf = blocks[1:, 1:].copy()
    if abs(a) > ZERO_PIVOT:
        a_inf -= np.outer(omega, omega) / a

    return CurvatureMatrixBundle(
        vertex=x,
        m=m,
        neighbors=ys,
        two_sphere=sphere(graph, x, 2),
        rates=rates,
        q=q,
        b0=b0,
        a=a,
        omega=omega,
        a_inf=a_inf,
        v0=np.sqrt(rates) * signs,
    )


def vertex_curvature(graph: SignedGraph, x: int, N: float = math.inf) -> float:
    """K_{G,σ,x}(N) = λ_min(A_N)."""
    return curvature_matrix_bundle(graph, x).curvature(N)


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """Per-vertex curvature for each requested N, with the A_N spectra kept for audit."""

    n_values: Tuple[float, ...]
    per_vertex: Dict[float, np.ndarray]
    spectra: Dict[float, List[np.ndarray]]
    bundles: Tuple[CurvatureMatrixBundle, ...] = field(repr=False)

    def at(self, x: int, N: float = math.inf) -> float:
        return float(self.per_vertex[float(N)][x])

    def minimum(self, N: float = math.inf) -> float:
        """Graph curvature: the minimum of K_x(N) over vertices."""
        return float(np.min(self.per_vertex[float(N)]))

    def argmin(self, N: float = math.inf) -> int:
        return int(np.argmin(self.per_vertex[float(N)]))


def curvature_profile(
    graph: SignedGraph, n_values: Iterable[float] = (math.inf,), bundles: Sequence[CurvatureMatrixBundle] = ()
) -> CurvatureProfile:
    """
    Curvature at every vertex for each N.

    Args:
        graph: Signed graph.
        n_values: Dimensions N in (0, inf].
        bundles: Precomputed bundles in vertex order (for example from a parallel map); built here when empty.
    """
    n_values = tuple(check_dimension(N) for N in n_values)
    bundles = tuple(bundles) if bundles else tuple(curvature_matrix_bundle(graph, x) for x in range(graph.n))
    if len(bundles) != graph.n:
        raise ValueError(f"expected {graph.n} curvature bundles, got {len(bundles)}")

    per_vertex = {N: np.array([bundle.curvature(N) for bundle in bundles]) for N in n_values}
    spectra = {N: [bundle.eigenvalues(N) for bundle in bundles] for N in n_values}
    for N in n_values:
        logger.debug("Curvature at N=%s: min %.12g at vertex %d", N, per_vertex[N].min(), per_vertex[N].argmin())
    return CurvatureProfile(n_values=n_values, per_vertex=per_vertex, spectra=spectra, bundles=bundles)


@dataclass(frozen=True)
class SharpnessResult:
    """Check of the universal bound K_x(2) >= -1 + 2/d at every vertex."""

    lower_bound: float
    curvatures: np.ndarray
    holds: bool


def sharpness_check(graph: SignedGraph, tolerance: float = 1e-9) -> SharpnessResult:
    curvatures = curvature_profile(graph, (2.0,)).per_vertex[2.0]
    bound = -1.0 + 2.0 / graph.max_degree
    holds = bool(np.all(curvatures >= bound - tolerance))
    return SharpnessResult(lower_bound=bound, curvatures=curvatures, holds=holds)
