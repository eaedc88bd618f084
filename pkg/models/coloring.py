"""
Edge-colorings with cached color-degree counters and the conflict potential
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple
import logging

import numpy as np

from config import settings
from models.graph import Graph

logger = logging.getLogger(__name__)


class ColoringError(ValueError):
    """Raised on inconsistent colorings or invalid recolorings"""


@dataclass(frozen=True)
class RecoloringStep:
    """One single-edge recoloring and the potential change it caused"""

    edge: int
    old_color: int
    new_color: int
    delta: int
    lemma: Optional[str] = None


def scratch_potential(graph: Graph, k: int, assignment: Sequence[int]) -> int:
    """
    Potential recomputed without any cached state: the number of pairs of
    adjacent edges sharing a color.
    """
    colors = np.asarray(assignment, dtype=np.int64)
    counts = np.zeros((graph.n, k), dtype=np.int64)
    np.add.at(counts, (graph.sources, colors), 1)
    np.add.at(counts, (graph.targets, colors), 1)
    return int((counts * (counts - 1) // 2).sum())


class EdgeColoring:
    """
    Assignment edge -> color in [0, k) over a fixed graph.

    ``color_degree[v, a]`` counts the edges at v colored a; the potential
    (sum over v and a of C(color_degree[v, a], 2)) is kept up to date on
    every recoloring.
    """

    def __init__(
        self,
        graph: Graph,
        k: int,
        assignment: Iterable[int],
        check_invariants: Optional[bool] = None,
    ):
        """
        Args:
            graph: The colored graph
            k: Number of available colors
            assignment: One color per edge, in edge-id order
            check_invariants: Recompute the potential from scratch after
                every recoloring (defaults to settings.CHECK_INVARIANTS)
        """
        if k < 1:
            raise ColoringError(f"k must be at least 1, got {k}")
        colors = np.array(list(assignment), dtype=np.int64)
        if colors.shape != (graph.m,):
            raise ColoringError(
                f"assignment has {colors.size} entries but the graph has {graph.m} edges"
            )
        if colors.size and (colors.min() < 0 or colors.max() >= k):
            bad = int(np.flatnonzero((colors < 0) | (colors >= k))[0])
            raise ColoringError(f"edge {bad}: color {int(colors[bad])} outside [0, {k})")

        self.graph = graph
        self.k = k
        self.assignment = colors
        self.check_invariants = (
            settings.CHECK_INVARIANTS if check_invariants is None else check_invariants
        )
        self.color_degree = np.zeros((graph.n, k), dtype=np.int64)
        np.add.at(self.color_degree, (graph.sources, colors), 1)
        np.add.at(self.color_degree, (graph.targets, colors), 1)
        self._potential = int((self.color_degree * (self.color_degree - 1) // 2).sum())

    @classmethod
    def random(cls, graph: Graph, k: int, rng: np.random.Generator, **kwargs) -> "EdgeColoring":
        """Independent uniform color per edge"""
        return cls(graph, k, rng.integers(0, k, size=graph.m), **kwargs)

    @classmethod
    def monochromatic(cls, graph: Graph, k: int, color: int = 0, **kwargs) -> "EdgeColoring":
        return cls(graph, k, [color] * graph.m, **kwargs)

    @property
    def potential(self) -> int:
        return self._potential

    def color_of(self, edge: int) -> int:
        return int(self.assignment[edge])

    def degree_in(self, v: int, color: int) -> int:
        return int(self.color_degree[v, color])

    def potential_delta(self, edge: int, color: int) -> int:
        """
        Change of the potential if ``edge`` were recolored to ``color``,
        computed in O(1) from the color-degree table.

        Raises:
            ColoringError: if ``edge`` or ``color`` is out of range, or ``color``
                is the edge's current color
        """
        if not 0 <= edge < self.graph.m:
            raise ColoringError(f"edge {edge} outside [0, {self.graph.m})")
        old = int(self.assignment[edge])
        if color == old:
            raise ColoringError(f"edge {edge} already has color {color}")
        if not 0 <= color < self.k:
            raise ColoringError(f"color {color} outside [0, {self.k})")
        u, v = self.graph.edges[edge]
        cd = self.color_degree
        return int(cd[u, color] + cd[v, color] - cd[u, old] - cd[v, old] + 2)

    def apply_recoloring(self, edge: int, color: int, lemma: Optional[str] = None) -> RecoloringStep:
        """
        Recolor one edge in place, updating counters and the cached potential.

        Returns:
            The applied RecoloringStep
        """
        delta = self.potential_delta(edge, color)
        old = int(self.assignment[edge])
        u, v = self.graph.edges[edge]
        cd = self.color_degree
        cd[u, old] -= 1
        cd[v, old] -= 1
        cd[u, color] += 1
        cd[v, color] += 1
        self.assignment[edge] = color
        self._potential += delta

        if self.check_invariants:
            expected = scratch_potential(self.graph, self.k, self.assignment)
            if expected != self._potential:
                raise ColoringError(
                    f"cached potential {self._potential} != recomputed {expected} "
                    f"after recoloring edge {edge}"
                )
        return RecoloringStep(edge=edge, old_color=old, new_color=color, delta=delta, lemma=lemma)

    def move_deltas(self) -> np.ndarray:
        """
        Potential change of every single-edge recoloring as an (m, k) table;
        entries for an edge's current color are set to a large sentinel.
        """
        graph = self.graph
        rows = np.arange(graph.m)
        totals = self.color_degree[graph.sources] + self.color_degree[graph.targets]
        own = totals[rows, self.assignment]
        deltas = totals - own[:, None] + 2
        deltas[rows, self.assignment] = np.iinfo(np.int64).max
        return deltas

    def is_proper(self) -> bool:
        return self._potential == 0

    def colors_at(self, v: int) -> Set[int]:
        return {int(c) for c in np.flatnonzero(self.color_degree[v])}

    def missing_colors(self, v: int) -> Set[int]:
        """Colors in [0, k) on no edge at v"""
        return {int(c) for c in np.flatnonzero(self.color_degree[v] == 0)}

    def half_square_potential(self) -> int:
        """The potential rewritten as half the sum of squared color-degrees minus |E|"""
        return int((self.color_degree**2).sum()) // 2 - self.graph.m

    def permuted(self, permutation: Sequence[int]) -> "EdgeColoring":
        """Coloring with every color c replaced by permutation[c]"""
        table = np.asarray(permutation, dtype=np.int64)
        if sorted(table.tolist()) != list(range(self.k)):
            raise ColoringError(f"not a permutation of range({self.k}): {list(permutation)}")
        return EdgeColoring(self.graph, self.k, table[self.assignment], self.check_invariants)

    def copy(self) -> "EdgeColoring":
        clone = EdgeColoring.__new__(EdgeColoring)
        clone.graph = self.graph
        clone.k = self.k
        clone.assignment = self.assignment.copy()
        clone.check_invariants = self.check_invariants
        clone.color_degree = self.color_degree.copy()
        clone._potential = self._potential
        return clone

    def key(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.k == other.k
            and np.array_equal(self.assignment, other.assignment)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"EdgeColoring(n={self.graph.n}, m={self.graph.m}, k={self.k}, potential={self._potential})"


def conflicting_pairs(coloring: EdgeColoring) -> List[Tuple[int, int]]:
    """Adjacent same-colored edge pairs found by scanning incidence lists"""
    pairs = []
    for entries in coloring.graph.incidence:
        for i, (e, _) in enumerate(entries):
            for f, _ in entries[i + 1:]:
                if coloring.assignment[e] == coloring.assignment[f]:
                    pairs.append((min(e, f), max(e, f)))
    return pairs
