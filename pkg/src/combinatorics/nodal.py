"""Strong nodal domains of a vertex function on a signed graph."""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from networkx.utils import UnionFind

from src.graph.signed_graph import SignedGraph, Walk
from src.operators.laplacian import as_vertex_function

# entries below this fraction of max |f| count as zeros
SUPPORT_TOLERANCE = 1e-10

WalkLike = Union[Walk, Sequence[int]]


@dataclass(frozen=True)
class NodalDecomposition:
    """
    Attributes:
        support: Ω = {x : f(x) ≠ 0}, ascending.
        domains: Strong nodal domains S_1..S_k; each sorted, ordered by smallest vertex.
    """

    support: Tuple[int, ...]
    domains: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.domains)

    def domain_of(self, x: int) -> int:
        """Index of the domain holding x, or -1 when f(x) = 0."""
        return next((i for i, domain in enumerate(self.domains) if x in domain), -1)


def _support(f: np.ndarray, tolerance: float) -> np.ndarray:
    scale = float(np.max(np.abs(f))) if f.size else 0.0
    return np.abs(f) > tolerance * scale


def strong_nodal_decomposition(
    graph: SignedGraph, f: Sequence[float], tolerance: float = SUPPORT_TOLERANCE
) -> NodalDecomposition:
    """Merge x ~ y whenever f(x) σ_xy f(y) > 0; vertices where f vanishes belong to no domain."""
    f = as_vertex_function(graph, f)
    nonzero = _support(f, tolerance)
    support = tuple(int(x) for x in np.flatnonzero(nonzero))

    domains = UnionFind(support)
    for x, y, sign in graph.edges:
        if nonzero[x] and nonzero[y] and f[x] * sign * f[y] > 0:
            domains.union(x, y)

    groups = sorted((tuple(sorted(group)) for group in domains.to_sets()), key=lambda group: group[0])
    return NodalDecomposition(support=support, domains=tuple(groups))


def _as_walk(graph: SignedGraph, walk: WalkLike) -> Walk:
    return walk if isinstance(walk, Walk) else Walk.along(graph, list(walk))


def is_strong_nodal_walk(graph: SignedGraph, f: Sequence[float], walk: WalkLike) -> bool:
    """f(x_k) σ_{x_k x_{k+1}} f(x_{k+1}) > 0 for every step of the walk."""
    f = as_vertex_function(graph, f)
    walk = _as_walk(graph, walk)
    steps = zip(walk.vertices, walk.vertices[1:])
    return all(f[a] * graph.sign(a, b) * f[b] > 0 for a, b in steps)


def path_sign_trace(graph: SignedGraph, f: Sequence[float], walk: WalkLike) -> List[float]:
    """
    σ(P_{x_0 x_i}) f(x_i) along the walk.

    Along a strong nodal walk starting where f > 0 every entry is positive; the first entry after a failing step
    is <= 0.

    Raises:
        ValueError: consecutive walk vertices are not adjacent.
    """
    f = as_vertex_function(graph, f)
    walk = _as_walk(graph, walk)
    return [float(sign * f[x]) for x, sign in zip(walk.vertices, walk.path_sign)]
