"""
Theorem checks for the signed p-Laplacian.

λ_p^σ comes from the multi-start solver and is an upper estimate of the true value. The lower bounds below are
unconditional, so an estimate under a bound cannot come from the theorem: such checks are flagged ``solver_flag``
instead of ``fail``. So is a pass against an estimate whose solve did not converge. At p = 2 the exact linear
eigenvalue is used.
"""

import math
from typing import Dict, List, Optional, Sequence, Tuple

from src.bounds.invariants import GraphInvariants
from src.bounds.report import (
    AT_LEAST,
    AT_MOST,
    CERTIFIED,
    COMPUTED,
    FALSIFIED,
    NOT_FALSIFIED,
    PASS,
    SOLVER_FLAG,
    SUPPLIED,
    UNCONDITIONAL,
    VACUOUS,
    BoundReport,
    Quantity,
    evaluate,
    unevaluated,
)
from src.curvature.cdp_falsifier import CDpFalsifier
from src.graph.signed_graph import SignedGraph
from src.operators.p_laplacian import check_exponent
from src.utils.errors import HypothesisError

DEFAULT_P_VALUES = (1.5, 2.0, 3.0)
UNCONVERGED_NOTE = "p-solver did not converge within its iteration budget"


def _invariants(graph: SignedGraph, invariants: Optional[GraphInvariants]) -> GraphInvariants:
    return invariants if invariants is not None else GraphInvariants(graph)


def _lambda_p(inv: GraphInvariants, p: float) -> Tuple[float, Quantity, bool]:
    """λ_p, its input record and whether the solver converged; exact at p = 2."""
    if p == 2.0:
        return inv.eigenvalue, Quantity(inv.eigenvalue, COMPUTED), True
    result = inv.p_eigen(p)
    return result.lambda_p, Quantity(result.lambda_p, COMPUTED), result.converged


def _flag_unconverged(report: BoundReport, converged: bool) -> BoundReport:
    # a pass against an unconverged estimate certifies nothing
    if not converged and report.status == PASS:
        report.status = SOLVER_FLAG
        report.notes = UNCONVERGED_NOTE
    return report


def p_lichnerowicz_rhs(p: float, K_p: float, N: float, volume: float) -> float:
    """(1/vol)^{(p-2)/2} (NK_p/(N-1))^{p/2}."""
    scaled = K_p if math.isinf(N) else N * K_p / (N - 1.0)
    return (1.0 / volume) ** ((p - 2.0) / 2.0) * scaled ** (p / 2.0)


def p_lichnerowicz_check(
    graph: SignedGraph,
    p: float,
    K_p: Optional[float] = None,
    N: float = math.inf,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """
    λ_p^σ >= (1/vol(G))^{(p-2)/2} (NK_p/(N-1))^{p/2} under CD_p^σ(K_p, N).

    A supplied K_p is tested at every vertex with the CD_p falsifier and reported as ``falsified`` or
    ``not falsified``; it is never certified. K_p may be omitted only at p = 2, where the curvature module supplies it.

    Raises:
        HypothesisError: p < 2, N <= 1, or K_p missing for p != 2.
    """
    p = check_exponent(p)
    if p < 2.0:
        raise HypothesisError(f"the p-Lichnerowicz bound needs p >= 2, got {p}")
    if N <= 1.0:
        raise HypothesisError(f"the p-Lichnerowicz bound needs N > 1, got {N}")
    inv = _invariants(graph, invariants)
    tolerance = inv.config.bound_tolerance if tolerance is None else tolerance

    if K_p is None:
        if p != 2.0:
            raise HypothesisError("K_p must be supplied for p != 2")
        K_p, k_input, hypothesis = inv.curvature(N), Quantity(inv.curvature(N), COMPUTED), CERTIFIED
    else:
        falsifier = CDpFalsifier(inv.config)
        outcomes = [falsifier.falsify(graph, x, p, K_p, N) for x in range(graph.n)]
        hypothesis = FALSIFIED if any(outcome.falsified for outcome in outcomes) else NOT_FALSIFIED
        k_input = Quantity(float(K_p), SUPPLIED)

    eigenvalue, lambda_input, converged = _lambda_p(inv, p)
    inputs = {"lambda_p": lambda_input, "K_p": k_input, "N": Quantity(N, SUPPLIED), "vol": Quantity(inv.volume)}
    parameters = {"p": p}
    if K_p <= 0.0:
        return unevaluated("p_lichnerowicz", VACUOUS, "K_p <= 0", hypothesis, inputs, parameters)
    report = evaluate(
        "p_lichnerowicz",
        eigenvalue,
        p_lichnerowicz_rhs(p, K_p, N, inv.volume),
        AT_LEAST,
        hypothesis,
        inputs=inputs,
        parameters=parameters,
        tolerance=tolerance,
    )
    return _flag_unconverged(report, converged)


def p_diameter_volume_bound(
    graph: SignedGraph,
    p: float,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """λ_p^σ >= 1/((D+1)^{p-1} vol(G))."""
    p = check_exponent(p)
    inv = _invariants(graph, invariants)
    eigenvalue, lambda_input, converged = _lambda_p(inv, p)
    report = evaluate(
        "p_diameter_volume",
        eigenvalue,
        1.0 / ((inv.diameter + 1) ** (p - 1.0) * inv.volume),
        AT_LEAST,
        UNCONDITIONAL,
        inputs={"lambda_p": lambda_input, "D": Quantity(inv.diameter), "vol": Quantity(inv.volume)},
        parameters={"p": p},
        tolerance=inv.config.bound_tolerance if tolerance is None else tolerance,
        on_failure=SOLVER_FLAG,
    )
    return _flag_unconverged(report, converged)


def p_volume_only_bound(
    graph: SignedGraph,
    p: float,
    invariants: Optional[GraphInvariants] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """λ_p^σ >= ½ (2/(p vol(G)))^p."""
    p = check_exponent(p)
    inv = _invariants(graph, invariants)
    eigenvalue, lambda_input, converged = _lambda_p(inv, p)
    report = evaluate(
        "p_volume_only",
        eigenvalue,
        0.5 * (2.0 / (p * inv.volume)) ** p,
        AT_LEAST,
        UNCONDITIONAL,
        inputs={"lambda_p": lambda_input, "vol": Quantity(inv.volume)},
        parameters={"p": p},
        tolerance=inv.config.bound_tolerance if tolerance is None else tolerance,
        on_failure=SOLVER_FLAG,
    )
    return _flag_unconverged(report, converged)


def monotonicity_check(
    graph: SignedGraph,
    p_grid: Sequence[float],
    invariants: Optional[GraphInvariants] = None,
    eigenvalues: Optional[Dict[float, float]] = None,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """
    For each adjacent pair p <= q of the grid: 2^{-p}λ_p >= 2^{-q}λ_q and p(2λ_p)^{1/p} <= q(2λ_q)^{1/q}.

    Args:
        eigenvalues: λ_p per grid point; solved when omitted.

    Raises:
        ValueError: the grid is not ascending or holds an exponent <= 1.
    """
    grid = [check_exponent(p) for p in p_grid]
    if any(q < p for p, q in zip(grid, grid[1:])):
        raise ValueError("p grid must be ascending")
    inv = _invariants(graph, invariants)
    tolerance = inv.config.bound_tolerance if tolerance is None else tolerance

    values: Dict[float, Quantity] = {}
    converged: Dict[float, bool] = {}
    for p in grid:
        if eigenvalues is not None and p in eigenvalues:
            values[p], converged[p] = Quantity(float(eigenvalues[p]), SUPPLIED), True
        else:
            _, values[p], converged[p] = _lambda_p(inv, p)

    reports = []
    for p, q in zip(grid, grid[1:]):
        lp, lq = values[p].value, values[q].value
        inputs = {"lambda_p": values[p], "lambda_q": values[q]}
        parameters = {"p": p, "q": q}
        pair_converged = converged[p] and converged[q]
        scaled = evaluate(
            "monotonicity_scaled",
            2.0**-p * lp,
            2.0**-q * lq,
            AT_LEAST,
            UNCONDITIONAL,
            inputs=inputs,
            parameters=parameters,
            tolerance=tolerance,
            on_failure=SOLVER_FLAG,
        )
        root = evaluate(
            "monotonicity_root",
            p * (2.0 * lp) ** (1.0 / p),
            q * (2.0 * lq) ** (1.0 / q),
            AT_MOST,
            UNCONDITIONAL,
            inputs=inputs,
            parameters=parameters,
            tolerance=tolerance,
            on_failure=SOLVER_FLAG,
        )
        reports += [_flag_unconverged(scaled, pair_converged), _flag_unconverged(root, pair_converged)]
    return reports
