"""
Shared fixtures: hand-built colorings used across the test modules
"""
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np
import pytest

from models.coloring import EdgeColoring
from models.generators import path, star
from models.graph import build_graph


def colored(n: int, k: int, colored_edges: Sequence[Tuple[int, int, int]]) -> EdgeColoring:
    """Coloring of the graph on ``n`` vertices with edges (u, v, color) in the given order"""
    graph = build_graph(n, [(u, v) for u, v, _ in colored_edges])
    return EdgeColoring(graph, k, [c for _, _, c in colored_edges])


def neighbourhood_coloring(
    k: int,
    spokes: Sequence[Tuple[int, Set[int]]],
    extra: Iterable[Tuple[int, int, int]] = (),
) -> EdgeColoring:
    """
    Hub 0 joined to neighbours 1..d. Spoke i is (edge color, colors missing
    at neighbour i+1); every other color is filled in at the neighbour with
    a pendant leaf. ``extra`` adds (u, v, color) edges between neighbours.
    Edge order: spokes, extras, pendants.
    """
    extra = list(extra)
    edges: List[Tuple[int, int, int]] = [(0, i + 1, color) for i, (color, _) in enumerate(spokes)]
    edges += extra
    next_vertex = len(spokes) + 1
    for i, (color, missing) in enumerate(spokes):
        x = i + 1
        taken = {color} | set(missing) | {c for u, v, c in extra if x in (u, v)}
        for filler in range(k):
            if filler not in taken:
                edges.append((x, next_vertex, filler))
                next_vertex += 1
    return colored(next_vertex, k, edges)


@pytest.fixture
def four_star():
    return star(4)


@pytest.fixture
def petersen_frozen() -> EdgeColoring:
    """Frozen proper 5-edge-coloring of the Petersen graph"""
    return colored(10, 5, [
        (0, 2, 0), (0, 8, 1), (2, 4, 2), (4, 6, 3), (6, 8, 4),
        (0, 1, 3), (2, 3, 4), (4, 5, 1), (6, 7, 0), (8, 9, 2),
        (1, 5, 4), (1, 7, 2), (3, 9, 3), (3, 7, 1), (5, 9, 0),
    ])


@pytest.fixture
def shift_digraph_coloring() -> EdgeColoring:
    """Hub with two marks (0 and 1) and a single out-degree-0 color, 6"""
    return neighbourhood_coloring(7, [
        (0, {4}), (0, {2}), (1, {4}), (1, {2}), (4, {0}), (5, {6}), (3, {1}), (2, {3}),
    ])


@pytest.fixture
def path_cherry() -> EdgeColoring:
    """Path on 7 vertices with a single 0-cherry centered at 5"""
    graph = path(7)
    return EdgeColoring(graph, 3, [0, 1, 0, 1, 0, 0])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
