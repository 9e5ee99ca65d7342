"""
Immutable signed-graph data model, switching algebra and balance detection.

Vertices are dense 0-based indices in order of first appearance; labels are opaque strings kept for
I/O. Every edge is stored once as ``(x, y, sign)`` with ``x < y``, and edges are kept sorted.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.utils.errors import GraphValidationError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise GraphValidationError(f"sign must be +1 or -1, got {sign!r}")
    return int(sign)


@dataclass(frozen=True)
class SwitchingFunction:
    """A vertex map tau: V -> {-1, +1}, stored by vertex index."""

    tau: Tuple[int, ...]

    def __post_init__(self):
        if not self.tau:
            raise ValueError("switching function must be defined on at least one vertex")
        for value in self.tau:
            if value not in (1, -1):
                raise ValueError(f"switching values must be +1 or -1, got {value!r}")

    @classmethod
    def identity(cls, n: int) -> "SwitchingFunction":
        return cls(tuple([1] * n))

    @classmethod
    def from_array(cls, values: Iterable[int]) -> "SwitchingFunction":
        return cls(tuple(int(v) for v in values))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "SwitchingFunction":
        return cls.from_array(rng.choice([-1, 1], size=n))

    def __call__(self, x: int) -> int:
        return self.tau[x]

    def __len__(self) -> int:
        return len(self.tau)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.tau, dtype=float)

    def compose(self, other: "SwitchingFunction") -> "SwitchingFunction":
        """Pointwise product; switching by the result equals switching by both."""
        return SwitchingFunction(tuple(a * b for a, b in zip(self.tau, other.tau)))

    def pinned(self) -> "SwitchingFunction":
        """Global sign flip so that vertex 0 maps to +1; switching by -tau equals switching by tau."""
        if self.tau[0] == 1:
            return self
        return SwitchingFunction(tuple(-v for v in self.tau))


class SignedGraph:
    """
    Finite simple connected graph whose edges carry signs in {-1, +1}.

    Instances are immutable; derived matrices and the networkx view are computed lazily and cached.
    """

    def __init__(self, labels: Sequence[str], edges: Iterable[Edge]):
        labels = tuple(str(label) for label in labels)
        if not labels:
            raise GraphValidationError("a signed graph needs at least one vertex")
        if len(set(labels)) != len(labels):
            raise GraphValidationError("vertex labels must be distinct")
        n = len(labels)

        signs: Dict[Tuple[int, int], int] = {}
        for x, y, sign in edges:
            x, y = int(x), int(y)
            if not (0 <= x < n and 0 <= y < n):
                raise GraphValidationError(f"edge ({x}, {y}) references an unknown vertex")
            if x == y:
                raise GraphValidationError(f"self-loop at vertex {labels[x]}")
            key = (min(x, y), max(x, y))
            if key in signs:
                raise GraphValidationError(f"duplicate edge {{{labels[key[0]]}, {labels[key[1]]}}}")
            signs[key] = _check_sign(sign)

        neighbors: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for (x, y), sign in signs.items():
            neighbors[x].append((y, sign))
            neighbors[y].append((x, sign))

        for x in range(n):
            if not neighbors[x]:
                raise GraphValidationError(f"vertex {labels[x]} is isolated; degrees must be at least 1")

        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self._edges: Tuple[Edge, ...] = tuple((x, y, s) for (x, y), s in sorted(signs.items()))
        self._signs = signs
        self._adjacency = tuple(tuple(sorted(row)) for row in neighbors)

        if n > 1 and not nx.is_connected(self.nx_graph):
            raise GraphValidationError("graph is disconnected; every vertex must be reachable")

    @classmethod
    def from_edge_list(cls, edges: Iterable[Tuple[str, str, int]]) -> "SignedGraph":
        """Build a graph from labelled edges; vertices are indexed by first appearance."""
        labels: List[str] = []
        index: Dict[str, int] = {}
        indexed: List[Edge] = []
        for u, v, sign in edges:
            for label in (str(u), str(v)):
                if label not in index:
                    index[label] = len(labels)
                    labels.append(label)
            indexed.append((index[str(u)], index[str(v)], _check_sign(sign)))
        if not indexed:
            raise GraphValidationError("edge list is empty")
        return cls(labels, indexed)

    # basic accessors

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def label(self, x: int) -> str:
        return self._labels[x]

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def neighbors(self, x: int) -> Tuple[int, ...]:
        return tuple(y for y, _ in self._adjacency[x])

    def signed_neighbors(self, x: int) -> Tuple[Tuple[int, int], ...]:
        """Neighbors of x with the edge sign, in ascending neighbor order."""
        return self._adjacency[x]

    def degree(self, x: int) -> int:
        return len(self._adjacency[x])

    def has_edge(self, x: int, y: int) -> bool:
        return (min(x, y), max(x, y)) in self._signs

    def sign(self, x: int, y: int) -> int:
        try:
            return self._signs[(min(x, y), max(x, y))]
        except KeyError:
            raise KeyError(f"no edge between {self.label(x)} and {self.label(y)}") from None

    @cached_property
    def degrees(self) -> np.ndarray:
        degrees = np.array([len(row) for row in self._adjacency], dtype=float)
        degrees.flags.writeable = False
        return degrees

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max())

    @property
    def volume(self) -> int:
        return 2 * self.num_edges

    @property
    def negative_edges(self) -> Tuple[Edge, ...]:
        return tuple(edge for edge in self._edges if edge[2] < 0)

    @property
    def edge_signs(self) -> Tuple[int, ...]:
        return tuple(edge[2] for edge in self._edges)

    # derived views

    @cached_property
    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(sources, targets, signs) as numpy arrays in canonical edge order."""
        u = np.array([e[0] for e in self._edges], dtype=np.int64)
        v = np.array([e[1] for e in self._edges], dtype=np.int64)
        s = np.array([e[2] for e in self._edges], dtype=float)
        for array in (u, v, s):
            array.flags.writeable = False
        return u, v, s

    @cached_property
    def signed_adjacency(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n))
        for x, y, sign in self._edges:
            matrix[x, y] = matrix[y, x] = sign
        matrix.flags.writeable = False
        return matrix

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """Frozen networkx view of the underlying graph; nodes are indices, edges carry ``sign``."""
        graph = nx.Graph()
        graph.add_nodes_from((i, {"label": label}) for i, label in enumerate(self._labels))
        graph.add_edges_from((x, y, {"sign": sign}) for x, y, sign in self._edges)
        return nx.freeze(graph)

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        """Same underlying graph with new signs given in canonical edge order."""
        if len(signs) != self.num_edges:
            raise GraphValidationError(f"expected {self.num_edges} signs, got {len(signs)}")
        return SignedGraph(self._labels, ((x, y, s) for (x, y, _), s in zip(self._edges, signs)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._labels, self._edges))

    def __repr__(self) -> str:
        return (
            f"SignedGraph(n={self.n}, edges={self.num_edges}, negative={len(self.negative_edges)}, "
            f"d={self.max_degree})"
        )


@dataclass(frozen=True)
class Walk:
    """A walk x_0, ..., x_t with consecutive adjacency and its running path signs."""

    vertices: Tuple[int, ...]
    path_sign: Tuple[int, ...]

    @classmethod
    def along(cls, graph: SignedGraph, vertices: Sequence[int]) -> "Walk":
        if not vertices:
            raise ValueError("a walk needs at least one vertex")
        signs = [1]
        for a, b in zip(vertices, vertices[1:]):
            if not graph.has_edge(a, b):
                raise ValueError(f"walk steps between non-adjacent vertices {graph.label(a)} and {graph.label(b)}")
            signs.append(signs[-1] * graph.sign(a, b))
        return cls(tuple(int(v) for v in vertices), tuple(signs))

    @classmethod
    def from_labels(cls, graph: SignedGraph, labels: Sequence[str]) -> "Walk":
        return cls.along(graph, [graph.index(label) for label in labels])

    def __len__(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    certificate: Optional[SwitchingFunction]
    negative_cycle: Optional[Tuple[int, ...]]

    def __iter__(self):
        yield self.balanced
        yield self.certificate


def from_edge_list(edges: Iterable[Tuple[str, str, int]]) -> SignedGraph:
    return SignedGraph.from_edge_list(edges)


def switch(graph: SignedGraph, tau: SwitchingFunction) -> SignedGraph:
    """Switch signs: sigma^tau_xy = tau(x) sigma_xy tau(y)."""
    if len(tau) != graph.n:
        raise ValueError(f"switching function has {len(tau)} values for {graph.n} vertices")
    return graph.with_signs([tau(x) * s * tau(y) for x, y, s in graph.edges])


def is_balanced(graph: SignedGraph) -> BalanceResult:
    """
    Decide balance by breadth-first sign propagation from vertex 0.

    Returns:
        BalanceResult: for balanced graphs a certificate tau with sigma^tau identically +1 and tau(0) = +1;
        otherwise a closed walk (first vertex repeated at the end) whose sign product is -1.
    """
    tau = {0: 1}
    parent = {0: None}
    for x, y in nx.bfs_edges(graph.nx_graph, 0, sort_neighbors=sorted):
        tau[y] = tau[x] * graph.sign(x, y)
        parent[y] = x

    for x, y, sign in graph.edges:
        if tau[x] * sign * tau[y] < 0:
            cycle = _tree_cycle(parent, x, y)
            logger.debug("Unbalanced: negative cycle through edge (%s, %s)", graph.label(x), graph.label(y))
            return BalanceResult(False, None, cycle)

    return BalanceResult(True, SwitchingFunction(tuple(tau[x] for x in range(graph.n))), None)


def _tree_cycle(parent: Mapping[int, Optional[int]], x: int, y: int) -> Tuple[int, ...]:
    def ancestors(v: int) -> List[int]:
        path = [v]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    up_x, up_y = ancestors(x), ancestors(y)
    common = set(up_x) & set(up_y)
    head = [v for v in up_x if v not in common]
    tail = [v for v in up_y if v not in common]
    lca = next(v for v in up_x if v in common)
    cycle = head + [lca] + list(reversed(tail))
    return tuple(cycle + [cycle[0]])


def all_pairs_distance(graph: SignedGraph) -> np.ndarray:
    distances = np.zeros((graph.n, graph.n), dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(graph.nx_graph):
        for target, length in lengths.items():
            distances[source, target] = length
    return distances


def diameter(graph: SignedGraph) -> int:
    if graph.n == 1:
        return 0
    return int(nx.diameter(graph.nx_graph))


def ball(graph: SignedGraph, x: int, radius: int = 2) -> Tuple[int, ...]:
    """Vertices within distance ``radius`` of x, in ascending index order."""
    return tuple(sorted(nx.single_source_shortest_path_length(graph.nx_graph, x, cutoff=radius)))


def sphere(graph: SignedGraph, x: int, radius: int = 2) -> Tuple[int, ...]:
    lengths = nx.single_source_shortest_path_length(graph.nx_graph, x, cutoff=radius)
    return tuple(sorted(v for v, length in lengths.items() if length == radius))


def is_triangle_free(graph: SignedGraph) -> bool:
    return sum(nx.triangles(graph.nx_graph).values()) == 0


def is_bipartite(graph: SignedGraph) -> bool:
    return nx.is_bipartite(graph.nx_graph)


def small_cycles_positive(graph: SignedGraph) -> bool:
    """True when every 3-cycle and every 4-cycle has sign product +1."""
    for cycle in nx.simple_cycles(graph.nx_graph, length_bound=4):
        product = 1
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            product *= graph.sign(a, b)
        if product < 0:
            return False
    return True


def all_positive(graph: SignedGraph) -> SignedGraph:
    return graph.with_signs([1] * graph.num_edges)


def all_negative(graph: SignedGraph) -> SignedGraph:
    return graph.with_signs([-1] * graph.num_edges)


def cartesian_product(first: SignedGraph, second: SignedGraph, separator: str = ",") -> SignedGraph:
    """
    Cartesian product; edges inherit the sign of the factor edge they copy.

    Vertex (x, u) is labelled ``f"{x}{separator}{u}"`` and vertices are ordered lexicographically by
    (index in first, index in second).
    """
    product = nx.cartesian_product(first.nx_graph, second.nx_graph)
    nodes = list(product.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    labels = [f"{first.label(x)}{separator}{second.label(u)}" for x, u in nodes]
    edges = [(index[a], index[b], data["sign"]) for a, b, data in product.edges(data=True)]
    return SignedGraph(labels, edges)
