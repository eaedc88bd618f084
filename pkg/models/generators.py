"""
Named graph families used in experiments
"""

from itertools import combinations
from typing import Callable, Dict, List
import logging

import networkx as nx
import numpy as np

from models.graph import Graph, GraphError, build_graph

logger = logging.getLogger(__name__)


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete: n must be at least 1, got {n}")
    return build_graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; vertices 0..a-1 on one side, a..a+b-1 on the other"""
    if a < 1 or b < 1:
        raise GraphError(f"complete_bipartite: sides must be at least 1, got {a}, {b}")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def kneser(n: int, k: int) -> Graph:
    """
    Kneser graph KG(n, k): vertices are the k-subsets of {0..n-1} in
    lexicographic order, adjacent iff disjoint.
    """
    if k < 1 or n < 2 * k:
        raise GraphError(f"kneser: requires k >= 1 and n >= 2k, got n={n}, k={k}")
    subsets = [frozenset(s) for s in combinations(range(n), k)]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if subsets[i].isdisjoint(subsets[j])
    ]
    logger.debug(f"kneser({n}, {k}): {len(subsets)} vertices, {len(edges)} edges")
    return build_graph(len(subsets), edges)


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path: n must be at least 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle: n must be at least 3, got {n}")
    return build_graph(n, sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]))


def star(n: int) -> Graph:
    """K_{1,n} with the hub at vertex 0"""
    if n < 1:
        raise GraphError(f"star: n must be at least 1, got {n}")
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def random_graph(n: int, p: float, seed: int) -> Graph:
    """
    G(n, p) from numpy's PCG64 generator: one uniform draw per vertex pair,
    pairs visited in lexicographic order.
    """
    if n < 1:
        raise GraphError(f"random: n must be at least 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"random: p must lie in [0, 1], got {p}")
    if seed < 0:
        raise GraphError(f"random: seed must be non-negative, got {seed}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return build_graph(n, [pair for pair, x in zip(pairs, draws) if x < p])


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree decoded from a seeded Prüfer sequence"""
    if n < 1:
        raise GraphError(f"tree: n must be at least 1, got {n}")
    if seed < 0:
        raise GraphError(f"tree: seed must be non-negative, got {seed}")
    if n == 1:
        return build_graph(1, [])
    if n == 2:
        return build_graph(2, [(0, 1)])
    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
    tree = nx.from_prufer_sequence(sequence)
    return build_graph(n, sorted(tuple(sorted(e)) for e in tree.edges()))


FAMILIES: Dict[str, Callable[..., Graph]] = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "kneser": kneser,
    "path": path,
    "cycle": cycle,
    "star": star,
    "random": random_graph,
    "tree": random_tree,
}

_PARAMETER_TYPES: Dict[str, List[type]] = {
    "complete": [int],
    "complete_bipartite": [int, int],
    "kneser": [int, int],
    "path": [int],
    "cycle": [int],
    "star": [int],
    "random": [int, float, int],
    "tree": [int, int],
}


def generate(family: str, *params) -> Graph:
    """
    Build a graph from a named family.

    Args:
        family: One of the keys of FAMILIES
        params: The family's parameters, e.g. ``generate("kneser", 5, 2)``

    Returns:
        The generated Graph

    Raises:
        GraphError: unknown family or invalid parameters
    """
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    expected = _PARAMETER_TYPES[family]
    if len(params) != len(expected):
        raise GraphError(f"{family}: expected {len(expected)} parameters, got {len(params)}")
    return FAMILIES[family](*params)


def parse_family_spec(spec: str) -> Graph:
    """
    Parse ``name:p1,p2,...`` (e.g. ``kneser:5,2`` or ``random:20,0.3,7``)
    and generate the graph.
    """
    name, _, raw = spec.partition(":")
    name = name.strip()
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r} in {spec!r}")
    tokens = [t.strip() for t in raw.split(",")] if raw.strip() else []
    expected = _PARAMETER_TYPES[name]
    if len(tokens) != len(expected):
        raise GraphError(f"{spec!r}: {name} takes {len(expected)} parameters")
    try:
        params = [kind(token) for kind, token in zip(expected, tokens)]
    except ValueError:
        raise GraphError(f"{spec!r}: malformed parameters") from None
    return generate(name, *params)
