"""
Structural queries on edge-colorings: monochromatic and bichromatic
components, cherries
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
import logging

import networkx as nx
import numpy as np

from models.coloring import EdgeColoring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Component:
    """Connected component of a color-class subgraph; lists are sorted"""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    degree: Dict[int, int]

    @property
    def size(self) -> int:
        return len(self.edges)

    def leaves(self) -> List[int]:
        return [v for v in self.vertices if self.degree[v] == 1]


@dataclass(frozen=True)
class Cherry:
    """Monochromatic component made of exactly two adjacent edges"""

    center: int
    arms: Tuple[int, int]
    color: int
    endpoints: Tuple[int, int]

    def endpoint_of(self, arm: int) -> int:
        return self.endpoints[self.arms.index(arm)]

    def other_arm(self, arm: int) -> int:
        return self.arms[1 - self.arms.index(arm)]


def _component(g: nx.Graph, nodes) -> Component:
    sub = g.subgraph(nodes)
    return Component(
        vertices=tuple(sorted(sub.nodes())),
        edges=tuple(sorted(data["id"] for _, _, data in sub.edges(data=True))),
        degree={v: sub.degree(v) for v in sub.nodes()},
    )


def color_class_graph(coloring: EdgeColoring, colors) -> nx.Graph:
    """Subgraph of the edges whose color is in ``colors``, edges tagged with their id"""
    wanted = set(colors)
    g = nx.Graph()
    for edge_id, (u, v) in enumerate(coloring.graph.edges):
        color = int(coloring.assignment[edge_id])
        if color in wanted:
            g.add_edge(u, v, id=edge_id, color=color)
    return g


def monochromatic_components(coloring: EdgeColoring, color: int) -> List[Component]:
    """Components of the ``color`` class, ordered by their lowest edge-id; singletons omitted"""
    if not 0 <= color < coloring.k:
        raise ValueError(f"color {color} outside [0, {coloring.k})")
    g = color_class_graph(coloring, [color])
    components = [_component(g, nodes) for nodes in nx.connected_components(g)]
    return sorted(components, key=lambda c: c.edges[0])


def has_large_component(coloring: EdgeColoring) -> bool:
    """
    True iff some monochromatic component has at least three edges, i.e.
    some edge uv of color a has d_a(u) + d_a(v) >= 4.
    """
    graph = coloring.graph
    if graph.m == 0:
        return False
    cd = coloring.color_degree
    a = coloring.assignment
    return bool(np.any(cd[graph.sources, a] + cd[graph.targets, a] >= 4))


def find_large_component(coloring: EdgeColoring) -> Optional[Tuple[int, Component]]:
    """
    A monochromatic component with at least three edges: lowest color first,
    then lowest minimum edge-id. None for cherry colorings.
    """
    graph = coloring.graph
    if graph.m == 0:
        return None
    cd = coloring.color_degree
    a = coloring.assignment
    heavy = cd[graph.sources, a] + cd[graph.targets, a] >= 4
    if not heavy.any():
        return None
    color = int(a[heavy].min())
    for component in monochromatic_components(coloring, color):
        if component.size >= 3:
            return color, component
    return None


def cherry_at(coloring: EdgeColoring, center: int, color: int) -> Optional[Cherry]:
    """The ``color``-cherry centered at ``center``, if there is one"""
    if coloring.color_degree[center, color] != 2:
        return None
    graph = coloring.graph
    arms = [e for e, _ in graph.incidence[center] if coloring.assignment[e] == color]
    ends = [graph.other_endpoint(e, center) for e in arms]
    if any(coloring.color_degree[x, color] != 1 for x in ends):
        return None
    return Cherry(center=center, arms=(arms[0], arms[1]), color=color, endpoints=(ends[0], ends[1]))


def cherries(coloring: EdgeColoring) -> List[Cherry]:
    """All cherries, ordered by (center, color)"""
    found = []
    for v, color in np.argwhere(coloring.color_degree == 2):
        cherry = cherry_at(coloring, int(v), int(color))
        if cherry is not None:
            found.append(cherry)
    return found


def cherries_at(coloring: EdgeColoring, v: int) -> List[Cherry]:
    found = []
    for color in np.flatnonzero(coloring.color_degree[v] == 2):
        cherry = cherry_at(coloring, v, int(color))
        if cherry is not None:
            found.append(cherry)
    return found


def is_cherry_coloring(coloring: EdgeColoring) -> bool:
    """Every monochromatic component has at most two edges"""
    return not has_large_component(coloring)


def cherry_of_arm(coloring: EdgeColoring, edge: int) -> Optional[Cherry]:
    """The cherry having ``edge`` as an arm, if any"""
    color = coloring.color_of(edge)
    for v in coloring.graph.edges[edge]:
        cherry = cherry_at(coloring, v, color)
        if cherry is not None:
            return cherry
    return None


def bichromatic_component(coloring: EdgeColoring, start: int, alpha: int, beta: int) -> Component:
    """
    Component of the subgraph of alpha- and beta-colored edges containing
    ``start``, with per-vertex degrees inside the component.
    """
    if alpha == beta:
        raise ValueError(f"bichromatic component needs two distinct colors, got {alpha} twice")
    g = color_class_graph(coloring, [alpha, beta])
    if start not in g:
        return Component(vertices=(start,), edges=(), degree={start: 0})
    return _component(g, nx.node_connected_component(g, start))
