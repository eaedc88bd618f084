"""
Color-shift digraph around a vertex
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np

from models.coloring import EdgeColoring
from models.structure import cherry_at

Arc = Tuple[int, int]


@dataclass(frozen=True)
class ColorShiftDigraph:
    """
    Digraph on the k colors around ``center``: arc (a, b) when some edge
    center-u is colored a and b is missing at u. A color is marked when
    an a-cherry is centered at ``center``.
    """

    center: int
    k: int
    arcs: FrozenSet[Arc]
    marked: FrozenSet[int]
    witness_edges: Dict[Arc, int]

    def successors(self, color: int) -> List[int]:
        return sorted(b for a, b in self.arcs if a == color)

    def out_degree(self, color: int) -> int:
        return sum(1 for a, _ in self.arcs if a == color)

    def sinks(self) -> List[int]:
        """Colors with out-degree 0"""
        sources = {a for a, _ in self.arcs}
        return [c for c in range(self.k) if c not in sources]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.k))
        g.add_edges_from(sorted(self.arcs))
        return g

    def is_cycle(self, cycle: List[int]) -> bool:
        if len(cycle) < 2 or len(set(cycle)) != len(cycle):
            return False
        return all((cycle[i], cycle[(i + 1) % len(cycle)]) in self.arcs for i in range(len(cycle)))

    def chords(self, cycle: List[int]) -> List[Arc]:
        """Arcs between colors of ``cycle`` that do not follow it"""
        members = set(cycle)
        along = {(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
        return sorted(arc for arc in self.arcs if arc[0] in members and arc[1] in members and arc not in along)

    def shortest_path(self, source: int, target: int) -> Optional[List[int]]:
        try:
            return nx.shortest_path(self.to_networkx(), source, target)
        except nx.NetworkXNoPath:
            return None


def build_color_shift_digraph(coloring: EdgeColoring, v: int) -> ColorShiftDigraph:
    """
    Build the color-shift digraph around ``v``; the witness of an arc is
    its lowest edge-id.
    """
    graph = coloring.graph
    arcs = set()
    witness: Dict[Arc, int] = {}
    for edge, u in sorted(graph.incidence[v]):
        color = coloring.color_of(edge)
        for missing in np.flatnonzero(coloring.color_degree[u] == 0):
            arc = (color, int(missing))
            arcs.add(arc)
            witness.setdefault(arc, edge)

    marked = {
        int(color)
        for color in np.flatnonzero(coloring.color_degree[v] == 2)
        if cherry_at(coloring, v, int(color)) is not None
    }
    return ColorShiftDigraph(
        center=v,
        k=coloring.k,
        arcs=frozenset(arcs),
        marked=frozenset(marked),
        witness_edges=witness,
    )
