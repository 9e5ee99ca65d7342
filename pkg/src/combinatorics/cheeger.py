"""
Exact signed Cheeger constant

    h^σ = min_{∅≠Ω⊆V} (ι^σ(G_Ω) + |∂Ω|) / vol(Ω).

The minimum is taken as a sweep over ψ: V -> {-1, 0, +1}: with Ω = supp ψ, Σ_E |ψ(x) - σ_xy ψ(y)| equals twice the
negative edges of G_Ω under the switching ψ|_Ω plus |∂Ω|, and Σ_x d_x |ψ(x)| = vol(Ω). Minimizing over the signs of
ψ on Ω therefore yields ι^σ(G_Ω) + |∂Ω| with ι taken per component of G_Ω.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from src.combinatorics.frustration import induced_frustration
from src.graph.signed_graph import SignedGraph
from src.utils.errors import SizeLimitError
from src.utils.shared_config import get_default_config

logger = logging.getLogger(__name__)

CHUNK = 1 << 15

# ranking key of a candidate: (ratio, |Ω|, Ω, code)
Candidate = Tuple[Fraction, int, Tuple[int, ...], int]


@dataclass(frozen=True)
class CheegerResult:
    """
    Attributes:
        h: h^σ as a float.
        ratio: h^σ as an exact fraction.
        witness: Minimizing Ω (vertex indices, ascending); ties go to the smallest |Ω|, then the smallest set.
        witness_signs: Signs of the minimizing ψ on the witness.
        iota: ι^σ(G_Ω) of the witness, recomputed per component by the frustration routine.
        boundary: |∂Ω|.
        volume: vol(Ω).
    """

    h: float
    ratio: Fraction
    witness: Tuple[int, ...]
    witness_signs: Tuple[int, ...]
    iota: int
    boundary: int
    volume: int

    @property
    def consistent(self) -> bool:
        """h^σ vol(Ω) = ι^σ(G_Ω) + |∂Ω| holds exactly for the witness."""
        return self.ratio * self.volume == self.iota + self.boundary


def _psi(codes: np.ndarray, n: int) -> np.ndarray:
    # base-3 digit 0, 1, 2 of vertex x reads as ψ(x) = 0, +1, -1
    powers = 3 ** np.arange(n, dtype=np.int64)
    digits = (codes[:, None] // powers) % 3
    return np.where(digits == 2, -1, digits).astype(np.int8)


def _sweep_chunk(bounds: Tuple[int, int], graph: SignedGraph) -> Candidate:
    start, stop = bounds
    codes = np.arange(start, stop, dtype=np.int64)
    psi = _psi(codes, graph.n).astype(np.int64)
    u, v, s = graph.edge_arrays
    numerators = np.abs(psi[:, u] - s.astype(np.int64) * psi[:, v]).sum(axis=1)
    denominators = (np.abs(psi) * graph.degrees.astype(np.int64)).sum(axis=1)

    best = int(np.argmin(numerators / denominators))
    tied = np.flatnonzero(numerators * denominators[best] == numerators[best] * denominators)
    candidates = []
    for i in tied:
        support = tuple(int(x) for x in np.flatnonzero(psi[i]))
        ratio = Fraction(int(numerators[i]), int(denominators[i]))
        candidates.append((ratio, len(support), support, int(codes[i])))
    return min(candidates)


def cheeger_constant(
    graph: SignedGraph,
    limit: Optional[int] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> CheegerResult:
    """
    Exact h^σ over all nonempty Ω ⊆ V.

    Raises:
        SizeLimitError: |V| exceeds the limit (default CHEEGER_SIZE_LIMIT).
    """
    if limit is None or workers is None:
        config = get_default_config()
        limit = config.cheeger_size_limit if limit is None else limit
        workers = config.workers if workers is None else workers
    if graph.n > limit:
        raise SizeLimitError("Cheeger constant", graph.n, limit)

    total = 3**graph.n
    chunks = [(start, min(start + CHUNK, total)) for start in range(1, total, CHUNK)]

    def run(bounds: Tuple[int, int]) -> Candidate:
        return _sweep_chunk(bounds, graph)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results: List[Candidate] = list(
                tqdm(pool.map(run, chunks), total=len(chunks), desc="Cheeger sweep", disable=not progress)
            )
    else:
        results = [run(bounds) for bounds in tqdm(chunks, desc="Cheeger sweep", disable=not progress)]

    ratio, _, witness, code = min(results)
    psi = _psi(np.array([code], dtype=np.int64), graph.n)[0]
    inside = set(witness)
    boundary = sum(1 for x, y, _ in graph.edges if (x in inside) != (y in inside))
    volume = int(sum(graph.degree(x) for x in witness))
    iota = induced_frustration(graph, witness, limit=limit, workers=1)

    result = CheegerResult(
        h=float(ratio),
        ratio=ratio,
        witness=witness,
        witness_signs=tuple(int(psi[x]) for x in witness),
        iota=iota,
        boundary=boundary,
        volume=volume,
    )
    if not result.consistent:
        logger.warning(f"Cheeger witness recomputation mismatch: {ratio} vs ({iota} + {boundary})/{volume}")
    logger.debug(f"Cheeger constant {ratio} with witness of size {len(witness)}")
    return result
