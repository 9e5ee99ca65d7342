"""
Theorem checks for the linear signed Laplacian.

Every check takes K from the curvature module at the requested N unless K is supplied; computed curvature makes the
CD^σ(K, N) hypothesis certified, a supplied value is recorded as such. Throughout, |∇^σ f|² = 2Γ^σ(f) and the
convention N/(N-1) = 1, 4/N = 0 applies at N = ∞.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.bounds.invariants import GraphInvariants
from src.bounds.report import (
    AT_LEAST,
    AT_MOST,
    CERTIFIED,
    COMPUTED,
    INFORMATIONAL,
    NOT_APPLICABLE,
    SUPPLIED,
    UNMET,
    VACUOUS,
    BoundReport,
    Quantity,
    evaluate,
    unevaluated,
)
from src.graph.generators import hypercube_one_negative
from src.graph.signed_graph import SignedGraph, is_triangle_free
from src.operators.carre_du_champ import gradient_sq
from src.spectral.spectrum import Eigenpair, all_negative_spectrum_relation
from src.utils.errors import HypothesisError

DEFAULT_ALPHA_OFFSETS = (0.5, 1.0, 3.0)
DEFAULT_EPSILONS = (0.5, 1.0, 2.0, 4.0)
LN2 = math.log(2.0)


# closed-form pieces


def _four_over(N: float) -> float:
    return 0.0 if math.isinf(N) else 4.0 / N


def _root_ratio(N: float) -> float:
    """√((N-1)/N), 1 at N = ∞."""
    if N <= 1.0:
        raise HypothesisError(f"N must exceed 1, got {N}")
    return 1.0 if math.isinf(N) else math.sqrt((N - 1.0) / N)


def ceil_product(t: int) -> int:
    """t⌈t/2⌉."""
    return t * ((t + 1) // 2)


def eigenvalue_bound_coefficients(epsilon: float, N: float = math.inf) -> Tuple[float, float]:
    """
    (c₁, c₂) = (ε, 2(2+ε)) / ((2+ε)² - 4/N).

    Raises:
        HypothesisError: ε <= 0 or N <= 4/(2+ε)².
    """
    if not epsilon > 0.0:
        raise HypothesisError(f"epsilon must be positive, got {epsilon}")
    if not N > 4.0 / (2.0 + epsilon) ** 2:
        raise HypothesisError(f"N={N} violates N > 4/(2+epsilon)^2 for epsilon={epsilon}")
    denominator = (2.0 + epsilon) ** 2 - _four_over(N)
    return epsilon / denominator, 2.0 * (2.0 + epsilon) / denominator


def lichnerowicz_limit(N: float, K: float) -> float:
    """NK/(N-1), the ε -> 0 limit of the eigenvalue estimate."""
    if N <= 1.0:
        raise HypothesisError(f"N must exceed 1, got {N}")
    return K if math.isinf(N) else N * K / (N - 1.0)


def optimal_epsilon(N: float) -> float:
    """The ε maximizing c₁: 2√((N-1)/N)."""
    return 2.0 * _root_ratio(N)


def cd0n_coefficient(N: float) -> float:
    """c₁ at the optimal ε: 1/(4(1 + √((N-1)/N)))."""
    return 1.0 / (4.0 * (1.0 + _root_ratio(N)))


def diameter_rhs(eigenvalue: float, K: float, max_degree: int) -> Optional[float]:
    """1/(4d(2λ^σ - K)), or None when 2λ^σ - K <= 0 and the bound is vacuous."""
    gap = 2.0 * eigenvalue - K
    if gap <= 0.0:
        return None
    return 1.0 / (4.0 * max_degree * gap)


def volume_rhs(max_degree: int, diameter: int, iota: int, N: float = math.inf) -> float:
    """8√((1 + √((N-1)/N)) ln 2) · d ι^σ · √((D+1)⌈(D+1)/2⌉)."""
    return (
        8.0
        * math.sqrt((1.0 + _root_ratio(N)) * LN2)
        * max_degree
        * iota
        * math.sqrt(ceil_product(diameter + 1))
    )


# shared plumbing


def _invariants(graph: SignedGraph, invariants: Optional[GraphInvariants]) -> GraphInvariants:
    return invariants if invariants is not None else GraphInvariants(graph)


def _tolerance(inv: GraphInvariants, tolerance: Optional[float]) -> float:
    return inv.config.bound_tolerance if tolerance is None else tolerance


def _curvature(inv: GraphInvariants, N: float, K: Optional[float]) -> Tuple[float, Quantity, str]:
    if K is None:
        value = inv.curvature(N)
        return value, Quantity(value, COMPUTED), CERTIFIED
    return float(K), Quantity(float(K), SUPPLIED), SUPPLIED


def _nonnegative_curvature(inv: GraphInvariants, N: float, tolerance: float) -> Tuple[float, str]:
    K = inv.curvature(N)
    return K, CERTIFIED if K >= -tolerance else UNMET


def _eigenpairs(inv: GraphInvariants, eigenpairs: Union[None, Eigenpair, Sequence[Eigenpair]]) -> List[Eigenpair]:
    if eigenpairs is None:
        return inv.first.eigenpairs()
    if isinstance(eigenpairs, Eigenpair):
        return [eigenpairs]
    return list(eigenpairs)


# Harnack inequality and gradient estimate


def harnack_threshold(eigenvalue: float, K: float) -> float:
    return 2.0 - 2.0 * K / eigenvalue


def harnack_check(
    graph: SignedGraph,
    eigenpairs: Union[None, Eigenpair, Sequence[Eigenpair]] = None,
    alphas: Optional[Sequence[float]] = None,
    N: float = math.inf,
    K: Optional[float] = None,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """
    max_x (|∇^σ f|²(x) + αλ f²(x)) <= ((α² - 4/N)λ + 2Kα)/((α-2)λ + 2K) · λ · max f² per eigenpair and α.

    Defaults to every basis function of the λ^σ eigenspace and α = threshold + (0.5, 1, 3).

    Raises:
        HypothesisError: λ = 0, or some α <= 2 - 2K/λ.
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    K, k_input, hypothesis = _curvature(inv, N, K)
    reports = []
    for pair in _eigenpairs(inv, eigenpairs):
        eigenvalue, f = pair.value, np.asarray(pair.function, dtype=float)
        if abs(eigenvalue) <= inv.config.zero_tolerance:
            raise HypothesisError("the Harnack inequality needs a nonzero eigenvalue")
        threshold = harnack_threshold(eigenvalue, K)
        grid = [threshold + offset for offset in DEFAULT_ALPHA_OFFSETS] if alphas is None else list(alphas)
        for alpha in grid:
            if not alpha > threshold:
                raise HypothesisError(f"alpha={alpha} must exceed 2 - 2K/lambda = {threshold:.12g}")

        max_f2 = float(np.max(f**2))
        gradient = gradient_sq(graph, f)
        for alpha in grid:
            lhs = float(np.max(gradient + alpha * eigenvalue * f**2))
            coefficient = ((alpha**2 - _four_over(N)) * eigenvalue + 2.0 * K * alpha) / (
                (alpha - 2.0) * eigenvalue + 2.0 * K
            )
            reports.append(
                evaluate(
                    "harnack",
                    lhs,
                    coefficient * eigenvalue * max_f2,
                    AT_MOST,
                    hypothesis,
                    inputs={"lambda": Quantity(eigenvalue), "K": k_input, "N": Quantity(N, SUPPLIED)},
                    parameters={"alpha": alpha, "threshold": threshold},
                    tolerance=tolerance,
                )
            )
    return reports


def gradient_estimate_rhs(eigenvalue: float, K: float, epsilon: float, N: float, max_f2: float) -> float:
    return (((2.0 + epsilon) ** 2 - _four_over(N)) * eigenvalue / epsilon - (4.0 / epsilon + 2.0) * K) * max_f2


def gradient_estimate_check(
    graph: SignedGraph,
    eigenpairs: Union[None, Eigenpair, Sequence[Eigenpair]] = None,
    epsilons: Sequence[float] = DEFAULT_EPSILONS,
    N: float = math.inf,
    K: Optional[float] = None,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """max_x |∇^σ f|²(x) <= (((2+ε)² - 4/N)λ/ε - (4/ε + 2)K) · max f² per eigenpair and ε > 0."""
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    K, k_input, hypothesis = _curvature(inv, N, K)
    if any(not epsilon > 0.0 for epsilon in epsilons):
        raise HypothesisError("every epsilon must be positive")

    reports = []
    for pair in _eigenpairs(inv, eigenpairs):
        f = np.asarray(pair.function, dtype=float)
        lhs = float(np.max(gradient_sq(graph, f)))
        for epsilon in epsilons:
            reports.append(
                evaluate(
                    "gradient_estimate",
                    lhs,
                    gradient_estimate_rhs(pair.value, K, epsilon, N, float(np.max(f**2))),
                    AT_MOST,
                    hypothesis,
                    inputs={"lambda": Quantity(pair.value), "K": k_input, "N": Quantity(N, SUPPLIED)},
                    parameters={"epsilon": epsilon},
                    tolerance=tolerance,
                )
            )
    return reports


# eigenvalue, diameter and volume estimates


def eigenvalue_lower_bound(
    graph: SignedGraph,
    epsilon: float = 2.0,
    N: float = math.inf,
    K: Optional[float] = None,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """
    λ^σ >= c₁/(d(D+1)⌈(D+1)/2⌉) + c₂K, and the improved form with D⌈D/2⌉ when λ^σ is multiple or G is balanced.

    Returns:
        [general, improved]; the improved report is ``not_applicable`` when its condition fails.

    Raises:
        HypothesisError: ε <= 0 or N <= 4/(2+ε)².
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    c1, c2 = eigenvalue_bound_coefficients(epsilon, N)
    K, k_input, hypothesis = _curvature(inv, N, K)
    d, D = inv.max_degree, inv.diameter
    inputs = {
        "lambda": Quantity(inv.eigenvalue),
        "K": k_input,
        "N": Quantity(N, SUPPLIED),
        "d": Quantity(d),
        "D": Quantity(D),
        "multiplicity": Quantity(inv.first.multiplicity),
    }
    parameters = {"epsilon": epsilon, "c1": c1, "c2": c2}

    general = evaluate(
        "eigenvalue_estimate",
        inv.eigenvalue,
        c1 / (d * ceil_product(D + 1)) + c2 * K,
        AT_LEAST,
        hypothesis,
        inputs=inputs,
        parameters=parameters,
        tolerance=tolerance,
    )
    if inv.first.multiplicity >= 2 or inv.balanced:
        improved = evaluate(
            "eigenvalue_estimate_improved",
            inv.eigenvalue,
            c1 / (d * ceil_product(D)) + c2 * K,
            AT_LEAST,
            hypothesis,
            inputs=inputs,
            parameters=parameters,
            tolerance=tolerance,
        )
    else:
        improved = unevaluated(
            "eigenvalue_estimate_improved",
            NOT_APPLICABLE,
            "lambda is simple and the graph is unbalanced",
            hypothesis=hypothesis,
            inputs=inputs,
            parameters=parameters,
        )
    return [general, improved]


def diameter_lower_bound(
    graph: SignedGraph,
    K: Optional[float] = None,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """
    (D+1)⌈(D+1)/2⌉ >= 1/(4d(2λ^σ - K)) at ε = 2, N = ∞, and D⌈D/2⌉ >= the same when λ^σ is multiple or G balanced.

    Both reports are ``vacuous`` when 2λ^σ - K <= 0.
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    K, k_input, hypothesis = _curvature(inv, math.inf, K)
    d, D = inv.max_degree, inv.diameter
    rhs = diameter_rhs(inv.eigenvalue, K, d)
    inputs = {"lambda": Quantity(inv.eigenvalue), "K": k_input, "d": Quantity(d), "D": Quantity(D)}

    if rhs is None:
        note = "2 lambda - K <= 0"
        return [
            unevaluated("diameter", VACUOUS, note, hypothesis, inputs),
            unevaluated("diameter_improved", VACUOUS, note, hypothesis, inputs),
        ]

    general = evaluate("diameter", ceil_product(D + 1), rhs, AT_LEAST, hypothesis, inputs, tolerance=tolerance)
    if inv.first.multiplicity >= 2 or inv.balanced:
        improved = evaluate(
            "diameter_improved", ceil_product(D), rhs, AT_LEAST, hypothesis, inputs, tolerance=tolerance
        )
    else:
        improved = unevaluated(
            "diameter_improved", NOT_APPLICABLE, "lambda is simple and the graph is unbalanced", hypothesis, inputs
        )
    return [general, improved]


def volume_bound(
    graph: SignedGraph,
    N: float = math.inf,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """
    vol(G) <= 8√((1 + √((N-1)/N)) ln 2) · d ι^σ(G) √((D+1)⌈(D+1)/2⌉) under CD^σ(0, N).

    Raises:
        HypothesisError: the graph is balanced (ι^σ = 0).
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    if inv.balanced:
        raise HypothesisError("the volume bound needs an unbalanced graph (iota = 0 on balanced input)")
    K, hypothesis = _nonnegative_curvature(inv, N, tolerance)
    iota = inv.frustration.iota
    return evaluate(
        "volume",
        inv.volume,
        volume_rhs(inv.max_degree, inv.diameter, iota, N),
        AT_MOST,
        hypothesis,
        inputs={
            "vol": Quantity(inv.volume),
            "d": Quantity(inv.max_degree),
            "D": Quantity(inv.diameter),
            "iota": Quantity(iota),
            "K": Quantity(K),
            "N": Quantity(N, SUPPLIED),
        },
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class VolumeExclusion:
    """Contrapositive of the volume bound: CD^σ(0, N) is excluded when vol > rhs."""

    volume: float
    rhs: float
    excluded: bool


def volume_exclusion(volume: float, max_degree: int, diameter: int, iota: int, N: float = math.inf) -> VolumeExclusion:
    rhs = volume_rhs(max_degree, diameter, iota, N)
    return VolumeExclusion(volume=float(volume), rhs=rhs, excluded=bool(volume > rhs))


def hypercube_exclusion_dimension(max_n: int = 32) -> Optional[int]:
    """
    Smallest n for which the volume bound excludes CD^σ(0, ∞) on Q^n with one negative edge.

    Q^n has vol = n2^n, d = D = n and ι^σ = 2, so exclusion reads 2^{2n} > 512 ln 2 (n+1)⌈(n+1)/2⌉.
    """
    for n in range(2, max_n + 1):
        if volume_exclusion(n * 2**n, n, n, 2).excluded:
            return n
    return None


def hypercube_exclusion_check(n: int) -> VolumeExclusion:
    """Volume exclusion evaluated on the generated graph rather than the closed form."""
    graph = hypercube_one_negative(n)
    inv = GraphInvariants(graph)
    return volume_exclusion(inv.volume, inv.max_degree, inv.diameter, inv.frustration.iota)


# Buser and Lichnerowicz


def buser_check(
    graph: SignedGraph,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """λ^σ <= 16 ln 2 · d (h^σ)² under CD^σ(0, ∞); balanced graphs are evaluated informationally."""
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    K, hypothesis = _nonnegative_curvature(inv, math.inf, tolerance)
    h = inv.cheeger.h
    report = evaluate(
        "buser",
        inv.eigenvalue,
        16.0 * LN2 * inv.max_degree * h**2,
        AT_MOST,
        hypothesis,
        inputs={"lambda": Quantity(inv.eigenvalue), "h": Quantity(h), "d": Quantity(inv.max_degree), "K": Quantity(K)},
        tolerance=tolerance,
    )
    if inv.balanced:
        report.status = INFORMATIONAL
        report.notes = "balanced graph: h = 0 and lambda is lambda_2"
    return report


def lichnerowicz_check(
    graph: SignedGraph,
    N: float = math.inf,
    variant: str = "lemma",
    K: Optional[float] = None,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """
    ``lemma``: ((N-1)/N)K <= λ^σ. ``sharp``: λ^σ >= NK/(N-1). Vacuous when K <= 0.

    Raises:
        HypothesisError: unknown variant, or N <= 1 in the sharp form.
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    K, k_input, hypothesis = _curvature(inv, N, K)
    if variant == "lemma":
        rhs = K if math.isinf(N) else (N - 1.0) / N * K
    elif variant == "sharp":
        rhs = lichnerowicz_limit(N, K)
    else:
        raise HypothesisError(f"unknown Lichnerowicz variant {variant!r}")

    theorem = f"lichnerowicz_{variant}"
    inputs = {"lambda": Quantity(inv.eigenvalue), "K": k_input, "N": Quantity(N, SUPPLIED)}
    if K <= 0.0:
        return unevaluated(theorem, VACUOUS, "K <= 0", hypothesis, inputs)
    return evaluate(theorem, inv.eigenvalue, rhs, AT_LEAST, hypothesis, inputs, tolerance=tolerance)


# all-positive and all-negative signs on triangle-free graphs


def all_negative_eigenvalue_bound(
    graph: SignedGraph,
    N: float = math.inf,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """
    2 - λ_|V| >= 1/(4(1 + √((N-1)/N))) · 1/(d(D+1)⌈(D+1)/2⌉) under CD^{σ-}(0, N), λ_i the all-positive spectrum.

    Raises:
        HypothesisError: bipartite graph (2 - λ_|V| = 0) or N <= 1.
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    if inv.bipartite:
        raise HypothesisError("bipartite graph: 2 - lambda_max = 0 and the all-negative sign is balanced")
    coefficient = cd0n_coefficient(N)
    K, hypothesis = _nonnegative_curvature(inv.all_negative, N, tolerance)
    top = float(inv.all_positive.spectrum.eigenvalues[-1])
    return evaluate(
        "all_negative_eigenvalue",
        2.0 - top,
        coefficient / (inv.max_degree * ceil_product(inv.diameter + 1)),
        AT_LEAST,
        hypothesis,
        inputs={
            "lambda_max": Quantity(top),
            "K_all_negative": Quantity(K),
            "N": Quantity(N, SUPPLIED),
            "d": Quantity(inv.max_degree),
            "D": Quantity(inv.diameter),
        },
        parameters={"coefficient": coefficient},
        tolerance=tolerance,
    )


def two_sided_liyau(
    graph: SignedGraph,
    N: float = math.inf,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """
    c/(dD₊) <= λ₂ and λ_top <= 2 - c/(dD₊) for the all-positive Laplacian, with c = 1/(4(1 + √((N-1)/N))) and
    D₊ = (D+1)⌈(D+1)/2⌉. λ_top is λ_|V| on non-bipartite graphs and λ_{|V|-1} on bipartite ones, where the
    spectrum is symmetric about 1.

    Raises:
        HypothesisError: the graph has a triangle, or N <= 1.
    """
    inv = _invariants(graph, invariants)
    tolerance = _tolerance(inv, tolerance)
    if not is_triangle_free(graph):
        raise HypothesisError("the two-sided estimate needs a triangle-free graph")
    positive = inv.all_positive
    coefficient = cd0n_coefficient(N)
    K, hypothesis = _nonnegative_curvature(positive, N, tolerance)
    bound = coefficient / (inv.max_degree * ceil_product(inv.diameter + 1))
    eigenvalues = positive.spectrum.eigenvalues

    if inv.bipartite:
        branch, top_index = "bipartite", len(eigenvalues) - 2
        relation = all_negative_spectrum_relation(graph, tolerance=max(tolerance, 1e-9))
        notes = f"spectrum symmetric about 1: {relation.symmetric_about_one}"
    else:
        branch, top_index, notes = "non_bipartite", len(eigenvalues) - 1, ""

    inputs = {"K": Quantity(K), "N": Quantity(N, SUPPLIED), "d": Quantity(inv.max_degree), "D": Quantity(inv.diameter)}
    parameters = {"coefficient": coefficient, "branch": branch}
    lower = evaluate(
        "two_sided_lower",
        float(eigenvalues[1]),
        bound,
        AT_LEAST,
        hypothesis,
        inputs={**inputs, "lambda_2": Quantity(float(eigenvalues[1]))},
        parameters=parameters,
        tolerance=tolerance,
        notes=notes,
    )
    upper = evaluate(
        "two_sided_upper",
        float(eigenvalues[top_index]),
        2.0 - bound,
        AT_MOST,
        hypothesis,
        inputs={**inputs, "lambda_top": Quantity(float(eigenvalues[top_index]))},
        parameters={**parameters, "index": top_index + 1},
        tolerance=tolerance,
        notes=notes,
    )
    return [lower, upper]

