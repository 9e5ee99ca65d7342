"""Named example graphs, the generator-spec parser, and the standard test corpus."""

from typing import Callable, Dict, List

from src.graph import generators
from src.graph.signed_graph import SignedGraph, all_positive

CHORDED_HEPTAGON_EDGES = [
    ("1", "2", 1),
    ("2", "3", 1),
    ("3", "4", 1),
    ("4", "5", -1),
    ("5", "6", 1),
    ("6", "7", 1),
    ("7", "1", 1),
    ("2", "7", 1),
]

CORPUS_SPECS: List[str] = [
    "complete:3",
    "signed-triangle",
    "cycle:4",
    "cycle:5",
    "cycle:5:unbalanced",
    "cycle:7",
    "cycle:7:unbalanced",
    "cycle:9:unbalanced",
    "complete:4:one_negative",
    "path:5",
    "hypercube:3",
    "hypercube1neg:2",
    "hypercube1neg:3",
    "chorded-heptagon",
    "chorded-heptagon:all_positive",
]


def signed_triangle() -> SignedGraph:
    """K_3 on labels 1, 2, 3 with the single negative edge {1, 3}."""
    return generators.cycle(3, "unbalanced")


def chorded_heptagon(sign: str = "signed") -> SignedGraph:
    """The 7-cycle 1..7 with chord {2, 7}; edge {4, 5} is negative unless ``sign="all_positive"``."""
    graph = SignedGraph.from_edge_list(CHORDED_HEPTAGON_EDGES)
    if sign == "signed":
        return graph
    if sign == "all_positive":
        return all_positive(graph)
    raise ValueError(f"unknown chorded-heptagon sign {sign!r}")


def _int_arg(parts: List[str], position: int, spec: str) -> int:
    try:
        return int(parts[position])
    except (IndexError, ValueError):
        raise ValueError(f"generator spec {spec!r} needs an integer argument") from None


def from_spec(spec: str) -> SignedGraph:
    """
    Build a graph from a generator spec such as ``cycle:5:unbalanced`` or ``hypercube1neg:3``.

    Raises:
        ValueError: unknown generator name or malformed arguments.
    """
    parts = spec.strip().split(":")
    name = parts[0]

    builders: Dict[str, Callable[[], SignedGraph]] = {
        "cycle": lambda: generators.cycle(_int_arg(parts, 1, spec), parts[2] if len(parts) > 2 else "balanced"),
        "complete": lambda: generators.complete(
            _int_arg(parts, 1, spec), parts[2] if len(parts) > 2 else "all_positive"
        ),
        "path": lambda: generators.path(_int_arg(parts, 1, spec)),
        "star": lambda: generators.star(_int_arg(parts, 1, spec)),
        "hypercube": lambda: generators.hypercube(_int_arg(parts, 1, spec)),
        "hypercube1neg": lambda: generators.hypercube_one_negative(_int_arg(parts, 1, spec)),
        "hypercube-product": lambda: generators.hypercube_product(_int_arg(parts, 1, spec)),
        "signed-triangle": signed_triangle,
        "chorded-heptagon": lambda: chorded_heptagon("all_positive" if parts[1:] == ["all_positive"] else "signed"),
    }
    if name not in builders:
        raise ValueError(f"unknown generator {name!r}; expected one of {', '.join(sorted(builders))}")
    return builders[name]()


def corpus() -> Dict[str, SignedGraph]:
    return {spec: from_spec(spec) for spec in CORPUS_SPECS}
