"""
Models package initialization
"""
from .graph import Graph, GraphError, build_graph, read_edge_list, write_edge_list
from .coloring import ColoringError, EdgeColoring, RecoloringStep
from .structure import Cherry, Component
from .color_shift import ColorShiftDigraph, build_color_shift_digraph

__all__ = [
    "Graph",
    "GraphError",
    "build_graph",
    "read_edge_list",
    "write_edge_list",
    "ColoringError",
    "EdgeColoring",
    "RecoloringStep",
    "Cherry",
    "Component",
    "ColorShiftDigraph",
    "build_color_shift_digraph",
]
