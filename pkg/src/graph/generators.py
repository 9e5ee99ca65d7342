"""Deterministic generators for cycles, complete graphs, trees, hypercubes and their signed variants."""

from functools import reduce
from typing import List, Sequence, Union

import networkx as nx

from src.graph.signed_graph import SignedGraph, cartesian_product

SignPattern = Union[str, Sequence[int]]


def _from_nx(graph: nx.Graph, signs: Sequence[int]) -> SignedGraph:
    edges = sorted((min(a, b), max(a, b)) for a, b in graph.edges)
    labels = [str(i + 1) for i in range(graph.number_of_nodes())]
    return SignedGraph(labels, [(a, b, s) for (a, b), s in zip(edges, signs)])


def _pattern_signs(
    pattern: SignPattern, edges: List[tuple], negative_edge: tuple, allowed: Sequence[str]
) -> List[int]:
    if not isinstance(pattern, str):
        signs = [int(s) for s in pattern]
        if len(signs) != len(edges):
            raise ValueError(f"sign pattern has {len(signs)} entries for {len(edges)} edges")
        return signs
    if pattern not in allowed:
        raise ValueError(f"unknown sign pattern {pattern!r}; expected one of {', '.join(allowed)}")
    if pattern in ("balanced", "all_positive"):
        return [1] * len(edges)
    if pattern == "all_negative":
        return [-1] * len(edges)
    return [-1 if edge == negative_edge else 1 for edge in edges]


def cycle(n: int, sign_pattern: SignPattern = "balanced") -> SignedGraph:
    """
    Cycle C_n with vertices labelled 1..n.

    ``"unbalanced"`` puts the single negative edge on the closing edge {1, n}; ``"all_negative"`` negates
    every edge. An explicit sequence gives signs in canonical edge order.
    """
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    base = nx.cycle_graph(n)
    edges = sorted((min(a, b), max(a, b)) for a, b in base.edges)
    signs = _pattern_signs(sign_pattern, edges, (0, n - 1), ("balanced", "unbalanced", "all_negative"))
    return _from_nx(base, signs)


def complete(n: int, sign_pattern: SignPattern = "all_positive") -> SignedGraph:
    """Complete graph K_n; ``"one_negative"`` negates edge {1, n}."""
    if n < 3:
        raise ValueError(f"complete graph needs n >= 3, got {n}")
    base = nx.complete_graph(n)
    edges = sorted((min(a, b), max(a, b)) for a, b in base.edges)
    signs = _pattern_signs(sign_pattern, edges, (0, n - 1), ("all_positive", "one_negative", "all_negative"))
    return _from_nx(base, signs)


def path(n: int) -> SignedGraph:
    if n < 2:
        raise ValueError(f"path needs n >= 2, got {n}")
    base = nx.path_graph(n)
    return _from_nx(base, [1] * base.number_of_edges())


def star(n: int) -> SignedGraph:
    """Star with one center (label 1) and n leaves."""
    if n < 1:
        raise ValueError(f"star needs n >= 1 leaves, got {n}")
    base = nx.star_graph(n)
    return _from_nx(base, [1] * base.number_of_edges())


def complete_two() -> SignedGraph:
    """K_2 on labels 0 and 1, the hypercube factor."""
    return SignedGraph(["0", "1"], [(0, 1, 1)])


def hypercube(n: int) -> SignedGraph:
    """Q^n as the n-fold Cartesian product of K_2; labels are bit strings, vertex index = binary value."""
    if n < 1:
        raise ValueError(f"hypercube needs n >= 1, got {n}")
    return reduce(lambda g, h: cartesian_product(g, h, separator=""), [complete_two()] * n)


def hypercube_one_negative(n: int) -> SignedGraph:
    """Q^n with the lexicographically first edge {0...00, 0...01} negative."""
    cube = hypercube(n)
    signs = list(cube.edge_signs)
    signs[0] = -1
    return cube.with_signs(signs)


def hypercube_product(n: int) -> SignedGraph:
    """(Q^2, sigma) x Q^{n-2}; the product has 2^{n-2} negative edges."""
    if n < 2:
        raise ValueError(f"hypercube product needs n >= 2, got {n}")
    square = hypercube_one_negative(2)
    if n == 2:
        return square
    return cartesian_product(square, hypercube(n - 2), separator="")
