"""
Switching classes of signatures on a fixed underlying graph, and the sign scan that compares their diameter bounds.

Two signatures are switching equivalent iff they agree on every cycle, so the classes are the 2^β signatures that are
positive on a BFS spanning tree (β = |E| - |V| + 1). Each class is reported through its canonical representative:
the lexicographically smallest sign vector in the class, edges in canonical order, with +1 < -1.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from src.bounds.linear import diameter_rhs
from src.curvature.curvature_matrix import curvature_profile
from src.graph.signed_graph import SignedGraph, all_positive, diameter, is_balanced
from src.spectral.spectrum import first_nonzero_eigenvalue
from src.utils.config import Config
from src.utils.errors import SizeLimitError


class _ParityForest:
    """Union-find that also tracks b_x ⊕ b_root for switching bits b."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, x: int) -> Tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root, running = x, 0
        for node in reversed(path):
            running ^= self.parity[node]
            self.parity[node] = running
            self.parent[node] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, x: int, y: int, relative: int) -> None:
        # afterwards b_x ⊕ b_y = relative
        rx, px = self.find(x)
        ry, py = self.find(y)
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ relative


def canonical_signs(graph: SignedGraph) -> Tuple[int, ...]:
    """Lexicographically smallest sign vector (order +1 < -1) switching equivalent to the graph's signs."""
    forest = _ParityForest(graph.n)
    signs = []
    for x, y, sign in graph.edges:
        negative = 1 if sign < 0 else 0
        rx, px = forest.find(x)
        ry, py = forest.find(y)
        if rx != ry:
            forest.union(x, y, negative)
            signs.append(1)
        else:
            signs.append(1 if px ^ py == negative else -1)
    return tuple(signs)


def canonical_representative(graph: SignedGraph) -> SignedGraph:
    return graph.with_signs(canonical_signs(graph))


def _sign_order(signs: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(0 if s > 0 else 1 for s in signs)


def switching_classes(graph: SignedGraph, limit: Optional[int] = None) -> List[SignedGraph]:
    """
    Canonical representatives of every switching class on the underlying graph, in lexicographic order.

    Raises:
        SizeLimitError: |E| exceeds ``limit``.
    """
    if limit is not None and graph.num_edges > limit:
        raise SizeLimitError("sign scan", graph.num_edges, limit)

    tree = {tuple(sorted(edge)) for edge in nx.bfs_edges(graph.nx_graph, 0, sort_neighbors=sorted)}
    free = [i for i, (x, y, _) in enumerate(graph.edges) if (x, y) not in tree]
    base = all_positive(graph)

    representatives = set()
    for code in range(1 << len(free)):
        signs = [1] * graph.num_edges
        for bit, i in enumerate(free):
            if (code >> bit) & 1:
                signs[i] = -1
        representatives.add(canonical_signs(base.with_signs(signs)))
    return [base.with_signs(signs) for signs in sorted(representatives, key=_sign_order)]


@dataclass(frozen=True)
class ClassEvaluation:
    """
    Diameter bound data of one switching class.

    Attributes:
        signs: Canonical sign vector.
        balanced: Whether the class is the balanced one.
        eigenvalue: λ^σ.
        multiplicity: Multiplicity of λ^σ.
        curvature: K(∞), the minimum over vertices.
        bound: 1/(4d(2λ^σ - K)), or None when 2λ^σ - K <= 0.
        improved: Whether the bound applies to D⌈D/2⌉ rather than (D+1)⌈(D+1)/2⌉.
    """

    signs: Tuple[int, ...]
    balanced: bool
    eigenvalue: float
    multiplicity: int
    curvature: float
    bound: Optional[float]
    improved: bool

    @property
    def negative_edges(self) -> int:
        return sum(1 for s in self.signs if s < 0)


def evaluate_switching_class(representative: SignedGraph) -> ClassEvaluation:
    first = first_nonzero_eigenvalue(representative)
    K = curvature_profile(representative, (math.inf,)).minimum(math.inf)
    balanced = is_balanced(representative).balanced
    return ClassEvaluation(
        signs=representative.edge_signs,
        balanced=balanced,
        eigenvalue=first.value,
        multiplicity=first.multiplicity,
        curvature=K,
        bound=diameter_rhs(first.value, K, representative.max_degree),
        improved=balanced or first.multiplicity >= 2,
    )


@dataclass
class SignScanResult:
    """All classes in canonical order and the index of the class with the largest diameter bound."""

    graph: SignedGraph
    diameter: int
    classes: List[ClassEvaluation] = field(default_factory=list)
    best: Optional[int] = None

    @property
    def best_class(self) -> Optional[ClassEvaluation]:
        return None if self.best is None else self.classes[self.best]


def best_class_index(classes: List[ClassEvaluation]) -> Optional[int]:
    """Largest non-vacuous bound; the first class in canonical order wins ties."""
    best = None
    for i, evaluation in enumerate(classes):
        if evaluation.bound is None:
            continue
        if best is None or evaluation.bound > classes[best].bound:
            best = i
    return best


class SignClassScanner:
    """Evaluates λ^σ, K(∞) and the diameter lower bound over every switching class of a graph."""

    def __init__(self, config: Config, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)
        self.edge_limit = config.sign_scan_edge_limit
        self.logger.debug(f"Sign-class scanner ready (edge limit {self.edge_limit})")

    def scan(self, graph: SignedGraph, progress: bool = False) -> SignScanResult:
        """
        Raises:
            SizeLimitError: |E| exceeds SIGN_SCAN_EDGE_LIMIT.
        """
        representatives = switching_classes(graph, self.edge_limit)
        self.logger.info(f"Scanning {len(representatives)} switching classes on {graph.num_edges} edges")

        result = SignScanResult(graph=graph, diameter=diameter(graph))
        for representative in tqdm(representatives, desc="switching classes", disable=not progress):
            evaluation = evaluate_switching_class(representative)
            self.logger.debug(
                f"Class with {evaluation.negative_edges} negative edges: lambda={evaluation.eigenvalue:.12g}, "
                f"K={evaluation.curvature:.12g}, bound={evaluation.bound}"
            )
            result.classes.append(evaluation)

        result.best = best_class_index(result.classes)
        if result.best is None:
            self.logger.warning("Every switching class has a vacuous diameter bound")
        return result
