"""
Monotone recoloring driver: from any k-edge-coloring with k >= Δ+1, emit
single-edge recolorings that never raise the potential and end on a proper
coloring, in O(n^2 Δ) steps
"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple
import logging

import networkx as nx
import numpy as np

from config import settings
from models.color_shift import ColorShiftDigraph, build_color_shift_digraph
from models.coloring import ColoringError, EdgeColoring, RecoloringStep
from models.graph import Graph, GraphError
from models.structure import (
    Cherry,
    cherries,
    cherry_at,
    cherry_of_arm,
    color_class_graph,
    find_large_component,
    has_large_component,
)
from services.walk import out_neighbors
from services.witness import Witness

logger = logging.getLogger(__name__)

# Lemma tags recorded on every emitted step
REDUCE = "reduce-large"
MOVE = "move-cherry"
EXCHANGE = "exchange-cherry"
SHIFT = "shift-cherry"
DEGREE_ONE = "degree-one"
SINK_PATH = "sink-path"
MARKED_CYCLE = "marked-cycle"
ISOLATE = "isolate-mark"
ROTATE = "rotate-cycle"
SEARCH = "search"


class PreconditionError(ValueError):
    """A driver operation was called outside its preconditions"""


class DriverError(RuntimeError):
    """The driver could not carry out a step it relies on"""


class _PotentialDropped(Exception):
    """Ends the current round once the potential is strictly below its start value"""


@dataclass
class ShiftResult:
    steps: List[RecoloringStep]
    dropped: bool
    center: Optional[int]


class VizingDriver:
    """
    Applies monotone recolorings to one coloring in place and logs them.

    Every public operation runs inside a round: the round records the
    potential it started from and ends as soon as the potential drops below
    it. A monochromatic component with three or more edges appearing
    mid-round is reduced at once, which ends the round.
    """

    def __init__(self, coloring: EdgeColoring, search_budget: Optional[int] = None):
        """
        Args:
            coloring: Coloring to recolor in place
            search_budget: Step cap of the descent search per round
        """
        self.coloring = coloring
        self.graph: Graph = coloring.graph
        self.steps: List[RecoloringStep] = []
        self.search_budget = settings.SEARCH_BUDGET if search_budget is None else search_budget
        self.rounds = 0
        self.fallback_rounds = 0
        self._baseline: Optional[int] = None

    # ------------------------------------------------------------------
    # plumbing

    @contextmanager
    def _round(self) -> Iterator[int]:
        start = len(self.steps)
        if self._baseline is not None:
            yield start
            return
        self._baseline = self.coloring.potential
        try:
            yield start
        except _PotentialDropped:
            pass
        finally:
            self._baseline = None

    def _recolor(self, edge: int, color: int, tag: str) -> RecoloringStep:
        delta = self.coloring.potential_delta(edge, color)
        if delta > 0:
            raise DriverError(f"{tag}: recoloring edge {edge} to {color} would raise the potential by {delta}")
        step = self.coloring.apply_recoloring(edge, color, lemma=tag)
        self.steps.append(step)
        logger.debug(f"{tag}: edge {edge} {step.old_color} -> {color} (delta {delta})")

        if self._baseline is not None:
            if self.coloring.potential < self._baseline:
                raise _PotentialDropped()
            if has_large_component(self.coloring):
                self.reduce_large_component()
        return step

    def _exchange(
        self,
        edge: int,
        excluded: Iterable[int],
        avoid: Iterable[int] = (),
        tag: str = EXCHANGE,
    ) -> RecoloringStep:
        """Recolor ``edge`` to the color outside ``excluded`` seen at most once around it"""
        u, v = self.graph.edges[edge]
        cd = self.coloring.color_degree
        excluded, avoid = set(excluded), set(avoid)
        candidates = [
            (int(cd[u, b] + cd[v, b]), b in avoid, b)
            for b in range(self.coloring.k)
            if b not in excluded and cd[u, b] + cd[v, b] <= 1
        ]
        if not candidates:
            raise DriverError(
                f"no monotone recoloring of edge {edge} outside colors {sorted(excluded)}"
            )
        return self._recolor(edge, min(candidates)[2], tag)

    def _require_spare_color(self) -> None:
        if self.coloring.k < self.graph.max_degree + 1:
            raise PreconditionError(
                f"k={self.coloring.k} but the maximum degree is {self.graph.max_degree}; "
                "at least max degree + 1 colors are needed"
            )

    def _require_cherry_coloring(self) -> None:
        if has_large_component(self.coloring):
            raise PreconditionError("not a cherry coloring: a monochromatic component has three or more edges")

    def _edge(self, u: int, v: int) -> int:
        try:
            return self.graph.edge_between(u, v)
        except GraphError as e:
            raise PreconditionError(str(e)) from e

    @staticmethod
    def _other(color: int, pair: Tuple[int, int]) -> int:
        return pair[1] if color == pair[0] else pair[0]

    def _arm_towards(self, v: int, color: int, successor: int) -> int:
        """Lowest arm of the ``color``-cherry at v whose far end misses ``successor``"""
        cherry = cherry_at(self.coloring, v, color)
        if cherry is None:
            raise DriverError(f"color {color} is not marked at vertex {v}")
        arms = [
            arm
            for arm, end in zip(cherry.arms, cherry.endpoints)
            if self.coloring.degree_in(end, successor) == 0
        ]
        if not arms:
            raise DriverError(f"no arc ({color}, {successor}) leaves the cherry at vertex {v}")
        return min(arms)

    # ------------------------------------------------------------------
    # monochromatic components and single cherries

    def reduce_large_component(self) -> RecoloringStep:
        """
        Recolor one edge of a monochromatic component with at least three
        edges, lowering the potential by at least one.

        Returns:
            The applied step
        """
        found = find_large_component(self.coloring)
        if found is None:
            raise PreconditionError("no monochromatic component with three or more edges")
        self._require_spare_color()

        color, component = found
        cd = self.coloring.color_degree
        best = None
        for edge in component.edges:
            u, v = self.graph.edges[edge]
            if cd[u, color] + cd[v, color] < 4:
                continue
            for beta in range(self.coloring.k):
                if beta == color or cd[u, beta] + cd[v, beta] > 1:
                    continue
                candidate = (self.coloring.potential_delta(edge, beta), edge, beta)
                if best is None or candidate < best:
                    best = candidate
        if best is None:
            raise DriverError(f"no reducing recoloring in the {color}-component {component.edges}")

        with self._round() as start:
            self._recolor(best[1], best[2], REDUCE)
        return self.steps[start]

    def move_cherry_edge(self, edge: int, beta: int) -> RecoloringStep:
        """
        Recolor an arm uv of a cherry to ``beta``, where ``beta`` is missing
        at one endpoint and the other endpoint centers no ``beta``-cherry.
        """
        cherry = cherry_of_arm(self.coloring, edge)
        if cherry is None:
            raise PreconditionError(f"edge {edge} is not an arm of a cherry")
        if beta == cherry.color or not 0 <= beta < self.coloring.k:
            raise PreconditionError(f"color {beta} is not a valid new color for edge {edge}")

        a, b = self.graph.edges[edge]
        reason = f"color {beta} is present at both {a} and {b}"
        feasible = False
        for v, u in ((a, b), (b, a)):
            if self.coloring.degree_in(v, beta) != 0:
                continue
            if self.coloring.degree_in(u, beta) >= 2:
                reason = f"vertex {u} centers a {beta}-cherry"
                continue
            feasible = True
            break
        if not feasible:
            raise PreconditionError(reason)

        with self._round() as start:
            self._recolor(edge, beta, MOVE)
        return self.steps[start]

    def exchange_cherry(self, edge: int, gamma: int) -> RecoloringStep:
        """
        Monotonically recolor a cherry arm to a color other than its own
        and ``gamma``; prefers colors missing at both endpoints.

        Raises:
            PreconditionError: if k <= max degree, the coloring is not a
                cherry coloring, ``edge`` is not an arm, or ``gamma`` is
                absent at the cherry's center
        """
        self._require_spare_color()
        self._require_cherry_coloring()
        cherry = cherry_of_arm(self.coloring, edge)
        if cherry is None:
            raise PreconditionError(f"edge {edge} is not an arm of a cherry")
        if not 0 <= gamma < self.coloring.k or self.coloring.degree_in(cherry.center, gamma) == 0:
            raise PreconditionError(f"color {gamma} is not present at the cherry center {cherry.center}")
        with self._round() as start:
            self._exchange(edge, {cherry.color, gamma})
        return self.steps[start]

    # ------------------------------------------------------------------
    # bichromatic components

    def shift_cherry_along_path(self, path: Sequence[int], gamma2: int) -> ShiftResult:
        """
        Move a cherry centered at ``path[-1]`` down the path to ``path[1]``.

        Args:
            path: Vertices x1..xl; x_l centers a gamma1-cherry with an arm
                to x_{l-1}, all of x2..xl have degree 2 in the
                (gamma1, gamma2)-component
            gamma2: A color missing at x_l

        Returns:
            ShiftResult; ``dropped`` when the potential fell on the way,
            otherwise ``center`` is x2
        """
        path = list(path)
        if len(path) < 2:
            raise PreconditionError("path needs at least two vertices")
        v = path[-1]
        arm = self._edge(v, path[-2])
        gamma1 = self.coloring.color_of(arm)
        cherry = cherry_at(self.coloring, v, gamma1)
        if cherry is None or arm not in cherry.arms:
            raise PreconditionError(f"edge {arm} is not an arm of a cherry centered at {v}")
        if gamma2 == gamma1 or self.coloring.degree_in(v, gamma2):
            raise PreconditionError(f"color {gamma2} is not missing at vertex {v}")

        colors = (gamma1, gamma2)
        component = color_class_graph(self.coloring, colors)
        for x, y in zip(path, path[1:]):
            if not component.has_edge(x, y):
                raise PreconditionError(f"({x}, {y}) is not an edge of the ({gamma1}, {gamma2})-component")
        for x in path[1:]:
            if component.degree(x) != 2:
                raise PreconditionError(f"vertex {x} has degree {component.degree(x)} in the component, not 2")

        baseline = self.coloring.potential
        with self._round() as start:
            for i in range(len(path) - 1, 1, -1):
                edge = self._edge(path[i], path[i - 1])
                self._recolor(edge, self._other(self.coloring.color_of(edge), colors), SHIFT)

        dropped = self.coloring.potential < baseline
        return ShiftResult(steps=self.steps[start:], dropped=dropped, center=None if dropped else path[1])

    def eliminate_cherry_via_degree1(self, cherry: Cherry, gamma2: int) -> List[RecoloringStep]:
        """
        Lower the potential using a degree-1 vertex of the bichromatic
        component holding ``cherry``.

        Off-path cherries hanging on the shortest path to the closest
        degree-1 vertex are exchanged away, the path is cut at its first
        degree-3 vertex, the cherry is shifted to the path's second vertex
        and the last edge is recolored.
        """
        self._require_cherry_coloring()
        v, gamma1 = cherry.center, cherry.color
        if cherry_at(self.coloring, v, gamma1) != cherry:
            raise PreconditionError(f"{cherry} is not a cherry of the current coloring")
        if gamma2 == gamma1 or self.coloring.degree_in(v, gamma2):
            raise PreconditionError(f"color {gamma2} is not missing at vertex {v}")

        colors = (gamma1, gamma2)
        component = color_class_graph(self.coloring, colors)
        leaves = [x for x in nx.node_connected_component(component, v) if component.degree(x) == 1]
        if not leaves:
            raise PreconditionError(f"the ({gamma1}, {gamma2})-component of vertex {v} has no degree-1 vertex")

        with self._round() as start:
            distance = nx.single_source_shortest_path_length(component, v)
            target = min(leaves, key=lambda x: (distance[x], x))
            path = nx.shortest_path(component, v, target)

            self._strip_off_path_cherries(path, colors)
            path = self._cut_at_degree_three(path, colors)

            forward = path[::-1]
            self.shift_cherry_along_path(forward, gamma2)
            last = self._edge(forward[0], forward[1])
            self._recolor(last, self._other(self.coloring.color_of(last), colors), DEGREE_ONE)
        return self.steps[start:]

    def _strip_off_path_cherries(self, path: List[int], colors: Tuple[int, int]) -> None:
        on_path = set(path)
        progress = True
        while progress:
            progress = False
            for y in path[1:-1]:
                for color in colors:
                    cherry = cherry_at(self.coloring, y, color)
                    if cherry is None:
                        continue
                    off = [arm for arm, end in zip(cherry.arms, cherry.endpoints) if end not in on_path]
                    if off:
                        self._exchange(off[0], colors)
                        progress = True
                        break
                if progress:
                    break

    def _cut_at_degree_three(self, path: List[int], colors: Tuple[int, int]) -> List[int]:
        component = color_class_graph(self.coloring, colors)
        for index in range(1, len(path) - 1):
            y = path[index]
            if component.degree(y) >= 3:
                self._exchange(self._edge(path[index - 1], y), colors)
                return path[:index]
        return path

    def eliminate_two_cherries(
        self,
        first: Cherry,
        second: Cherry,
        gamma2: Optional[int] = None,
    ) -> List[RecoloringStep]:
        """
        Lower the potential when two cherries share a bichromatic component
        and both centers have degree 2 in it.

        The arm of ``second`` farther from ``first``'s center (ties: the
        higher vertex-id is the farther one) is exchanged out of the
        component, leaving a degree-1 vertex.
        """
        self._require_cherry_coloring()
        if first == second:
            raise PreconditionError("two distinct cherries are needed")
        gamma1 = first.color
        if gamma2 is None:
            if second.color == gamma1:
                raise PreconditionError("both cherries share a color; pass the component's second color")
            gamma2 = second.color
        colors = (gamma1, gamma2)
        if gamma1 == gamma2 or second.color not in colors:
            raise PreconditionError(f"cherry colors do not fit the ({gamma1}, {gamma2})-component")
        for cherry in (first, second):
            if cherry_at(self.coloring, cherry.center, cherry.color) != cherry:
                raise PreconditionError(f"{cherry} is not a cherry of the current coloring")

        component = color_class_graph(self.coloring, colors)
        if second.center not in nx.node_connected_component(component, first.center):
            raise PreconditionError("the cherries lie in different bichromatic components")
        for cherry in (first, second):
            if component.degree(cherry.center) != 2:
                raise PreconditionError(f"center {cherry.center} has degree {component.degree(cherry.center)}, not 2")

        distance = nx.single_source_shortest_path_length(component, first.center)
        ends = sorted(zip(second.endpoints, second.arms), key=lambda pair: (distance[pair[0]], pair[0]))
        far_arm = ends[1][1]

        with self._round() as start:
            self._exchange(far_arm, colors)
            remaining = cherry_at(self.coloring, first.center, gamma1)
            if remaining is None:
                raise DriverError(f"cherry at {first.center} vanished without lowering the potential")
            self.eliminate_cherry_via_degree1(remaining, gamma2)
        return self.steps[start:]

    # ------------------------------------------------------------------
    # color-shift digraph

    def digraph(self, v: int) -> ColorShiftDigraph:
        return build_color_shift_digraph(self.coloring, v)

    def resolve_outdegree0(
        self,
        v: int,
        beta: int,
        alpha: int,
        path: Sequence[int],
    ) -> List[RecoloringStep]:
        """
        Walk the mark of ``beta`` along a directed path to the out-degree-0
        color ``alpha``; the last recoloring lowers the potential.
        """
        path = list(path)
        graph = self.digraph(v)
        if len(path) < 2 or path[0] != beta or path[-1] != alpha:
            raise PreconditionError(f"path {path} does not run from {beta} to {alpha}")
        if beta not in graph.marked:
            raise PreconditionError(f"color {beta} is not marked at vertex {v}")
        if graph.out_degree(alpha) != 0:
            raise PreconditionError(f"color {alpha} has out-degree {graph.out_degree(alpha)}")
        for arc in zip(path, path[1:]):
            if arc not in graph.arcs:
                raise PreconditionError(f"arc {arc} is not in the color-shift digraph of vertex {v}")
        if any(color in graph.marked for color in path[1:-1]):
            raise PreconditionError(f"path {path} passes a marked color; start from the mark closest to {alpha}")

        with self._round() as start:
            for i in range(len(path) - 1):
                current, successor = path[i], path[i + 1]
                graph = self.digraph(v)
                if current not in graph.marked or any(arc not in graph.arcs for arc in zip(path[i:], path[i + 1:])):
                    raise DriverError(f"path {path[i:]} was not preserved around vertex {v}")
                self._recolor(self._arm_towards(v, current, successor), successor, SINK_PATH)
        return self.steps[start:]

    def create_marked_cycle(self, v: int, beta: int) -> List[RecoloringStep]:
        """
        Move a mark along the shortest path from ``beta`` to a color lying
        on a cycle of the digraph, so that a cycle carries a marked color.
        """
        graph = self.digraph(v)
        if beta not in graph.marked:
            raise PreconditionError(f"vertex {v} centers no {beta}-cherry")
        g = graph.to_networkx()
        on_cycles: Set[int] = set()
        for scc in nx.strongly_connected_components(g):
            if len(scc) > 1:
                on_cycles |= scc
        if graph.marked & on_cycles:
            raise PreconditionError(f"a cycle around vertex {v} already carries a marked color")
        if self._route_to_sink(graph) is not None:
            raise PreconditionError(f"a marked color reaches a sink around vertex {v}")

        routes = nx.single_source_shortest_path(g, beta)
        candidates = [(len(p), target, p) for target, p in routes.items() if target in on_cycles]
        if not candidates:
            raise PreconditionError(f"no cycle is reachable from color {beta}")
        path = min(candidates)[2]
        last_mark = max(i for i, color in enumerate(path) if color in graph.marked)
        path = path[last_mark:]

        with self._round() as start:
            for current, successor in zip(path, path[1:]):
                self._recolor(self._arm_towards(v, current, successor), successor, MARKED_CYCLE)
            if self._marked_cycle(self.digraph(v)) is None:
                raise DriverError(f"no marked cycle around vertex {v} after moving the mark")
        return self.steps[start:]

    def isolate_mark_on_cycle(self, v: int, cycle: Sequence[int], beta: int) -> List[RecoloringStep]:
        """
        Clear every mark on a chordless cycle except ``beta`` by exchanging
        the arm that does not witness the cycle arc out of each cherry.
        """
        cycle = list(cycle)
        graph = self.digraph(v)
        if not graph.is_cycle(cycle):
            raise PreconditionError(f"{cycle} is not a cycle around vertex {v}")
        if beta not in cycle or beta not in graph.marked:
            raise PreconditionError(f"color {beta} is not a marked color of {cycle}")
        chords = graph.chords(cycle)
        if chords:
            raise PreconditionError(f"cycle {cycle} has chords {chords}")

        members = set(cycle)
        with self._round() as start:
            for _ in range(len(cycle)):
                graph = self.digraph(v)
                if not graph.is_cycle(cycle):
                    raise DriverError(f"cycle {cycle} was destroyed around vertex {v}")
                foreign = [c for c in cycle if c in graph.marked and c != beta]
                if not foreign:
                    break
                alpha = foreign[0]
                gamma = cycle[(cycle.index(alpha) + 1) % len(cycle)]
                keep = self._arm_towards(v, alpha, gamma)
                cherry = cherry_at(self.coloring, v, alpha)
                self._exchange(cherry.other_arm(keep), {alpha, gamma}, avoid=members, tag=ISOLATE)
            graph = self.digraph(v)
            if not graph.is_cycle(cycle) or [c for c in cycle if c in graph.marked] != [beta]:
                raise DriverError(f"could not isolate the mark of {beta} on {cycle}")
        return self.steps[start:]

    def rotate_cycle_and_eliminate(self, v: int, cycle: Sequence[int], beta: int) -> List[RecoloringStep]:
        """
        Lower the potential from a cycle carrying exactly one mark.

        With alpha the lowest color missing at v: if the (beta, alpha)-component
        of the beta-cherry has a degree-1 vertex, conclude there. Otherwise
        pass the mark once around the cycle; the beta-cherry comes back on a
        new arm, and the component then has a degree-1 vertex or a second
        cherry with a degree-2 center.
        """
        cycle = list(cycle)
        graph = self.digraph(v)
        if not graph.is_cycle(cycle) or beta not in cycle:
            raise PreconditionError(f"{cycle} is not a cycle through {beta} around vertex {v}")
        if [c for c in cycle if c in graph.marked] != [beta]:
            raise PreconditionError(f"cycle {cycle} must carry exactly one marked color, {beta}")
        self._require_spare_color()
        self._require_cherry_coloring()

        alpha = min(self.coloring.missing_colors(v))
        cherry = cherry_at(self.coloring, v, beta)
        position = cycle.index(beta)
        order = cycle[position:] + cycle[:position]
        originals = {}
        for color in order[1:]:
            edges = [e for e, _ in self.graph.incidence[v] if self.coloring.color_of(e) == color]
            originals[color] = edges[0]

        with self._round() as start:
            if self._has_degree_one_vertex(cherry, alpha):
                self.eliminate_cherry_via_degree1(cherry, alpha)
            else:
                gamma = order[1]
                movable = [
                    arm
                    for arm, end in zip(cherry.arms, cherry.endpoints)
                    if self.coloring.degree_in(end, gamma) == 0
                ]
                if not movable:
                    raise DriverError(f"no arm of the {beta}-cherry at {v} can take color {gamma}")
                self._recolor(max(movable), gamma, ROTATE)
                for i in range(1, len(order)):
                    successor = order[(i + 1) % len(order)]
                    self._recolor(originals[order[i]], successor, ROTATE)

                returned = cherry_at(self.coloring, v, beta)
                if returned is None:
                    raise DriverError(f"the {beta}-cherry did not come back around vertex {v}")
                self._finish_after_rotation(returned, alpha)
        return self.steps[start:]

    def _has_degree_one_vertex(self, cherry: Cherry, alpha: int) -> bool:
        component = color_class_graph(self.coloring, (cherry.color, alpha))
        return any(component.degree(x) == 1 for x in nx.node_connected_component(component, cherry.center))

    def _finish_after_rotation(self, cherry: Cherry, alpha: int) -> None:
        if self._has_degree_one_vertex(cherry, alpha):
            self.eliminate_cherry_via_degree1(cherry, alpha)
            return
        colors = (cherry.color, alpha)
        component = color_class_graph(self.coloring, colors)
        reachable = nx.node_connected_component(component, cherry.center)
        for other in cherries(self.coloring):
            if (
                other != cherry
                and other.color in colors
                and other.center in reachable
                and component.degree(other.center) == 2
            ):
                self.eliminate_two_cherries(cherry, other, alpha)
                return
        raise DriverError(f"rotation around vertex {cherry.center} left neither a degree-1 vertex nor a second cherry")

    def _route_to_sink(self, graph: ColorShiftDigraph) -> Optional[List[int]]:
        """Shortest path from a marked color to an out-degree-0 color, ties by (mark, sink)"""
        g = graph.to_networkx()
        sinks = set(graph.sinks())
        best = None
        for beta in sorted(graph.marked):
            for target, p in nx.single_source_shortest_path(g, beta).items():
                if target in sinks and target != beta:
                    candidate = (len(p), beta, target, p)
                    if best is None or candidate[:3] < best[:3]:
                        best = candidate
        return None if best is None else best[3]

    def _marked_cycle(self, graph: ColorShiftDigraph) -> Optional[Tuple[List[int], bool]]:
        """
        A cycle through a marked color, rotated to start at its lowest mark;
        the flag tells whether it is chordless.
        """
        g = graph.to_networkx()
        chordless = []
        for found in nx.chordless_cycles(g):
            for candidate in (list(found), list(reversed(found))):
                if graph.is_cycle(candidate) and graph.marked.intersection(candidate):
                    chordless.append(candidate)
                    break
        if chordless:
            best = min(chordless, key=lambda c: (len(c), sorted(c)))
            return self._start_at_mark(best, graph), True

        shortest = None
        for beta in sorted(graph.marked):
            for successor in graph.successors(beta):
                p = graph.shortest_path(successor, beta)
                if p is None:
                    continue
                candidate = [beta] + p[:-1]
                if shortest is None or len(candidate) < len(shortest):
                    shortest = candidate
        if shortest is None:
            return None
        return self._start_at_mark(shortest, graph), False

    @staticmethod
    def _start_at_mark(cycle: List[int], graph: ColorShiftDigraph) -> List[int]:
        first = min(c for c in cycle if c in graph.marked)
        i = cycle.index(first)
        return cycle[i:] + cycle[:i]

    # ------------------------------------------------------------------
    # rounds

    def _resolve_at_center(self, v: int) -> None:
        for _ in range(2 * self.coloring.k + 2):
            graph = self.digraph(v)
            if not graph.marked:
                raise PreconditionError(f"vertex {v} centers no cherry")
            route = self._route_to_sink(graph)
            if route is not None:
                self.resolve_outdegree0(v, route[0], route[-1], route)
                return
            found = self._marked_cycle(graph)
            if found is None:
                self.create_marked_cycle(v, min(graph.marked))
                continue
            cycle, chordless = found
            if len([c for c in cycle if c in graph.marked]) > 1:
                if not chordless:
                    raise DriverError(f"no chordless cycle through a marked color around vertex {v}")
                self.isolate_mark_on_cycle(v, cycle, cycle[0])
                continue
            self.rotate_cycle_and_eliminate(v, cycle, cycle[0])
            return
        raise DriverError(f"no progress around vertex {v}")

    def _descent_search(self) -> None:
        rng = np.random.default_rng([self.rounds, self.coloring.potential])
        for _ in range(self.search_budget):
            moves = out_neighbors(self.coloring)
            if not moves:
                raise DriverError("descent search found no monotone move")
            edge, color = moves[int(rng.integers(len(moves)))]
            self._recolor(edge, color, SEARCH)
        raise DriverError(f"descent search spent {self.search_budget} steps without lowering the potential")

    def decrease_potential_once(self) -> List[RecoloringStep]:
        """
        Emit monotone steps until the potential is strictly lower.

        Large monochromatic components go first. Otherwise the cherry
        centers are tried in increasing order through the color-shift
        digraph; should every center give up, a seeded descent search over
        monotone moves finishes the round.

        Returns:
            Steps of this round
        """
        if self.coloring.is_proper():
            raise PreconditionError("the coloring is already proper")
        self._require_spare_color()
        self.rounds += 1

        with self._round() as start:
            if has_large_component(self.coloring):
                self.reduce_large_component()
            for center in sorted({c.center for c in cherries(self.coloring)}):
                try:
                    self._resolve_at_center(center)
                except (PreconditionError, DriverError) as e:
                    logger.warning(f"Round {self.rounds}: center {center} gave up: {e}")
            logger.info(f"Round {self.rounds}: falling back to descent search")
            self.fallback_rounds += 1
            self._descent_search()
        return self.steps[start:]


def find_proper_coloring(graph: Graph, k: int, start: EdgeColoring) -> Witness:
    """
    Monotone recoloring sequence from ``start`` to a proper k-edge-coloring.

    Args:
        graph: The colored graph
        k: Number of colors, at least max degree + 1
        start: Initial coloring (left untouched)

    Returns:
        Witness from ``start`` to a proper coloring

    Raises:
        PreconditionError: if k <= max degree
        ColoringError: if ``start`` does not color ``graph`` with k colors
    """
    if k < graph.max_degree + 1:
        raise PreconditionError(
            f"k={k} but the maximum degree is {graph.max_degree}; "
            f"the monotone recoloring guarantee needs k >= {graph.max_degree + 1}"
        )
    if start.graph != graph or start.k != k:
        raise ColoringError("initial coloring does not match the graph and k")

    coloring = start.copy()
    driver = VizingDriver(coloring)
    while not coloring.is_proper():
        driver.decrease_potential_once()

    bound = settings.STEP_BOUND_CONSTANT * graph.n**2 * max(graph.max_degree, 1)
    if len(driver.steps) > bound:
        logger.warning(f"Witness has {len(driver.steps)} steps, above the pinned bound {bound}")
    logger.info(
        f"Proper coloring reached in {len(driver.steps)} steps over {driver.rounds} rounds "
        f"({driver.fallback_rounds} by descent search, initial potential {start.potential})"
    )
    return Witness(initial=start.copy(), steps=list(driver.steps), final=coloring)
