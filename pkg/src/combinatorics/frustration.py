"""
Exact frustration index by exhaustive switching enumeration.

ι^σ(G) = min_τ Σ_{xy∈E} |τ(x) - σ_xy τ(y)| counts every negative edge left by the best switching twice. Vertex 0 is
pinned to +1, so switching codes k in [0, 2^{n-1}) map to τ(x) = -1 iff bit x-1 of k is set. Ties between optimal
switchings go to the smallest code.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np
from tqdm import tqdm

from src.graph.signed_graph import Edge, SignedGraph, SwitchingFunction, is_balanced, switch
from src.utils.errors import SizeLimitError
from src.utils.shared_config import get_default_config

logger = logging.getLogger(__name__)

CHUNK = 1 << 15


@dataclass(frozen=True)
class FrustrationResult:
    """
    Attributes:
        iota: ι^σ(G), twice the negative-edge count under optimal_tau.
        optimal_tau: Best switching, pinned at vertex 0.
        residual_negative_edges: Negative edges of σ^τ for τ = optimal_tau.
        switchings_checked: Number of pinned switchings evaluated (1 when balance decided it).
    """

    iota: int
    optimal_tau: SwitchingFunction
    residual_negative_edges: Tuple[Edge, ...]
    switchings_checked: int

    @property
    def balanced(self) -> bool:
        return self.iota == 0


def _negative_counts(codes: np.ndarray, n: int, u: np.ndarray, v: np.ndarray, negative: np.ndarray) -> np.ndarray:
    shifts = np.arange(n - 1, dtype=np.int64)
    bits = np.zeros((len(codes), n), dtype=np.uint8)
    bits[:, 1:] = (codes[:, None] >> shifts) & 1
    return (bits[:, u] ^ bits[:, v] ^ negative).sum(axis=1)


def _sweep_chunk(bounds: Tuple[int, int], n: int, u: np.ndarray, v: np.ndarray, negative: np.ndarray):
    start, stop = bounds
    counts = _negative_counts(np.arange(start, stop, dtype=np.int64), n, u, v, negative)
    best = int(np.argmin(counts))
    return int(counts[best]), start + best


def min_negative_switching(
    n: int,
    edges: Iterable[Tuple[int, int, int]],
    workers: int = 1,
    progress: bool = False,
) -> Tuple[int, int]:
    """
    Smallest negative-edge count over all switchings of a graph on vertices 0..n-1, with its switching code.

    The 2^{n-1} codes are split into fixed chunks; with ``workers > 1`` the chunks run on a thread pool and are
    reduced in chunk order, so the result does not depend on the worker count.
    """
    edges = list(edges)
    if n <= 1 or not edges:
        return 0, 0
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    negative = np.array([1 if e[2] < 0 else 0 for e in edges], dtype=np.uint8)

    total = 1 << (n - 1)
    chunks = [(start, min(start + CHUNK, total)) for start in range(0, total, CHUNK)]

    def run(bounds: Tuple[int, int]):
        return _sweep_chunk(bounds, n, u, v, negative)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results: List[Tuple[int, int]] = list(
                tqdm(pool.map(run, chunks), total=len(chunks), desc="switchings", disable=not progress)
            )
    else:
        results = [run(bounds) for bounds in tqdm(chunks, desc="switchings", disable=not progress)]
    return min(results)


def tau_from_code(n: int, code: int) -> SwitchingFunction:
    return SwitchingFunction(tuple([1] + [-1 if (code >> (x - 1)) & 1 else 1 for x in range(1, n)]))


def frustration_index(
    graph: SignedGraph,
    limit: Optional[int] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> FrustrationResult:
    """
    Exact ι^σ(G).

    Args:
        graph: Signed graph.
        limit: Largest accepted vertex count (default: FRUSTRATION_SIZE_LIMIT).
        workers: Thread count for the sweep (default: WORKERS).
        progress: Show a tqdm bar over chunks.

    Raises:
        SizeLimitError: |V| exceeds the limit and neither shortcut (balanced, one negative edge) applies.
    """
    if limit is None or workers is None:
        config = get_default_config()
        limit = config.frustration_size_limit if limit is None else limit
        workers = config.workers if workers is None else workers
    balance = is_balanced(graph)
    if balance.balanced:
        return FrustrationResult(0, balance.certificate, (), 1)
    # unbalanced with one negative edge: 2 <= iota <= 2|E-|
    if len(graph.negative_edges) == 1:
        return FrustrationResult(2, SwitchingFunction.identity(graph.n), graph.negative_edges, 1)
    if graph.n > limit:
        raise SizeLimitError("frustration index", graph.n, limit)

    count, code = min_negative_switching(graph.n, graph.edges, workers=workers, progress=progress)
    tau = tau_from_code(graph.n, code)
    residual = switch(graph, tau).negative_edges
    logger.debug("Frustration index %d over %d switchings", 2 * count, 1 << (graph.n - 1))
    return FrustrationResult(2 * count, tau, residual, 1 << (graph.n - 1))


def induced_frustration(
    graph: SignedGraph,
    vertices: Iterable[int],
    limit: Optional[int] = None,
    workers: int = 1,
) -> int:
    """
    ι^σ(G_Ω) of the induced subgraph on ``vertices``, summed over its connected components.

    Raises:
        SizeLimitError: a component exceeds the limit.
    """
    limit = get_default_config().frustration_size_limit if limit is None else limit
    induced = graph.nx_graph.subgraph(vertices)
    iota = 0
    for component in sorted(nx.connected_components(induced), key=min):
        if len(component) < 2:
            continue
        if len(component) > limit:
            raise SizeLimitError("induced frustration", len(component), limit)
        order = sorted(component)
        local = {x: i for i, x in enumerate(order)}
        edges = [(local[x], local[y], graph.sign(x, y)) for x, y in induced.subgraph(order).edges()]
        count, _ = min_negative_switching(len(order), edges, workers=workers)
        iota += 2 * count
    return iota
