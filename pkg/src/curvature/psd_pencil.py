"""
Curvature from the definition of CD^σ(K, N), independent of the curvature matrix.

On the 2-ball of x, Γ₂^σ(f)(x) - (1/N)(Δ^σ f(x))² - K Γ^σ(f)(x) is the quadratic form of
M(K) = M_Γ₂ - (1/N)vvᵀ - K M_Γ. M(K) ⪰ 0 is monotone in K because M_Γ ⪰ 0, so the largest feasible K is
found by bisection with a smallest-eigenvalue test.
"""

import math

import numpy as np
import scipy.linalg

from src.curvature.curvature_matrix import check_dimension
from src.graph.signed_graph import SignedGraph
from src.operators.carre_du_champ import local_forms
from src.utils.errors import BracketError

BRACKET = (-8.0, 8.0)
ITERATIONS = 60
PSD_THRESHOLD = -1e-11


def cd_pencil(graph: SignedGraph, x: int, N: float = math.inf):
    """(M_Γ₂ - (1/N)vvᵀ, M_Γ) on the 2-ball of x."""
    N = check_dimension(N)
    forms = local_forms(graph, x)
    base = forms.m_gamma2.copy()
    if not math.isinf(N):
        base -= np.outer(forms.delta_row, forms.delta_row) / N
    return 0.5 * (base + base.T), forms.m_gamma


def _is_psd(matrix: np.ndarray) -> bool:
    return bool(scipy.linalg.eigvalsh(matrix)[0] >= PSD_THRESHOLD)


def cd_check_psd(
    graph: SignedGraph,
    x: int,
    N: float = math.inf,
    bracket: tuple = BRACKET,
    iterations: int = ITERATIONS,
) -> float:
    """
    Largest K with M_Γ₂ - (1/N)vvᵀ - K M_Γ positive semidefinite.

    Raises:
        BracketError: K lies outside the bracket.
    """
    base, m_gamma = cd_pencil(graph, x, N)
    low, high = bracket
    if not _is_psd(base - low * m_gamma):
        raise BracketError(f"curvature at vertex {graph.label(x)} (N={N}) lies below {low}")
    if _is_psd(base - high * m_gamma):
        raise BracketError(f"curvature at vertex {graph.label(x)} (N={N}) lies above {high}")

    for _ in range(iterations):
        middle = 0.5 * (low + high)
        if _is_psd(base - middle * m_gamma):
            low = middle
        else:
            high = middle
    return low
