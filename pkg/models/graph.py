"""
Immutable simple graphs with dense vertex/edge indexing and edge-list file I/O
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple
import logging

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph cannot be built, parsed or generated"""


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..n-1.

    Edges are stored as (min, max) pairs; the edge-id of an edge is its
    position in ``edges``. ``incidence[v]`` lists (edge-id, other endpoint)
    in edge-id order.
    """

    n: int
    edges: Tuple[Edge, ...]
    incidence: Tuple[Tuple[Tuple[int, int], ...], ...] = field(compare=False, repr=False)
    max_degree: int = field(compare=False)
    edge_index: Dict[Edge, int] = field(compare=False, repr=False)
    sources: np.ndarray = field(compare=False, repr=False)
    targets: np.ndarray = field(compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def endpoints(self, edge: int) -> Edge:
        return self.edges[edge]

    def other_endpoint(self, edge: int, v: int) -> int:
        a, b = self.edges[edge]
        return b if v == a else a

    def edge_between(self, u: int, v: int) -> int:
        """Edge-id of uv; raises GraphError if u and v are not adjacent"""
        key = (u, v) if u < v else (v, u)
        try:
            return self.edge_index[key]
        except KeyError:
            raise GraphError(f"no edge between {u} and {v}") from None

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for edge_id, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, id=edge_id)
        return g


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """
    Build a graph, keeping the input edge order.

    Args:
        n: Vertex count
        edges: Vertex pairs in either orientation

    Returns:
        The constructed Graph

    Raises:
        GraphError: on a self-loop, duplicate edge or out-of-range vertex
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")

    normalized: List[Edge] = []
    edge_index: Dict[Edge, int] = {}
    incidence: List[List[Tuple[int, int]]] = [[] for _ in range(n)]

    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}): vertex index out of range for n={n}")
        if u == v:
            raise GraphError(f"edge ({u}, {v}): self-loop")
        key = (u, v) if u < v else (v, u)
        if key in edge_index:
            raise GraphError(f"edge ({u}, {v}): duplicate edge")
        edge_id = len(normalized)
        edge_index[key] = edge_id
        normalized.append(key)
        incidence[key[0]].append((edge_id, key[1]))
        incidence[key[1]].append((edge_id, key[0]))

    endpoints = np.array(normalized, dtype=np.int64).reshape(-1, 2)
    return Graph(
        n=n,
        edges=tuple(normalized),
        incidence=tuple(tuple(entries) for entries in incidence),
        max_degree=max((len(entries) for entries in incidence), default=0),
        edge_index=edge_index,
        sources=endpoints[:, 0].copy(),
        targets=endpoints[:, 1].copy(),
    )


def from_networkx(g: nx.Graph) -> Graph:
    """Relabel to 0..n-1 in sorted node order and keep edges lexicographic"""
    nodes = sorted(g.nodes())
    label = {node: i for i, node in enumerate(nodes)}
    edges = sorted(tuple(sorted((label[u], label[v]))) for u, v in g.edges())
    return build_graph(len(nodes), edges)


def read_edge_list(text: str) -> Graph:
    """
    Parse the edge-list format: first line ``n``, then one ``u v`` per line.

    Blank lines and lines starting with ``#`` are skipped.

    Raises:
        GraphError: naming the offending line number
    """
    n = None
    edges: List[Edge] = []
    seen: Dict[Edge, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(token) for token in fields]
        except ValueError:
            raise GraphError(f"line {line_no}: expected integers, got {line!r}") from None

        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphError(f"line {line_no}: expected a vertex count, got {line!r}")
            n = values[0]
            continue

        if len(values) != 2:
            raise GraphError(f"line {line_no}: expected 'u v', got {line!r}")
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {line_no}: vertex out of range in {line!r} (n={n})")
        if u == v:
            raise GraphError(f"line {line_no}: self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"line {line_no}: duplicate of the edge on line {seen[key]}")
        seen[key] = line_no
        edges.append((u, v))

    if n is None:
        raise GraphError("line 1: missing vertex count")

    try:
        return build_graph(n, edges)
    except GraphError as e:
        raise GraphError(f"invalid edge list: {e}") from e


def write_edge_list(graph: Graph) -> str:
    lines = [str(graph.n)]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
