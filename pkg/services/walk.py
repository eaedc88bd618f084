"""
Mild random walk over k-edge-colorings: move to a uniformly random
neighboring coloring whose potential is not larger, until proper
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, TextIO, Tuple
import csv
import logging

import numpy as np
from pydantic import BaseModel, Field

from config import settings
from models.coloring import ColoringError, EdgeColoring, RecoloringStep
from models.graph import Graph

logger = logging.getLogger(__name__)


class WalkError(ValueError):
    """Raised on an inconsistent walk configuration"""


class SamplerMode(str, Enum):
    EXACT = "exact"
    REJECTION = "rejection"


class InitMode(str, Enum):
    RANDOM = "random"
    GIVEN = "given"
    MONOCHROMATIC = "monochromatic"


class WalkOutcome(str, Enum):
    PROPER = "Proper"
    BUDGET_EXHAUSTED = "BudgetExhausted"
    STUCK = "Stuck"


class WalkConfig(BaseModel):
    """Parameters of one walk"""

    k: int = Field(..., ge=1, description="Number of colors")
    max_steps: int = Field(settings.DEFAULT_MAX_STEPS, ge=1, description="Step budget")
    seed: int = Field(settings.DEFAULT_SEED, ge=0, lt=2**64, description="Seed of the PCG64 generator")
    sampler_mode: SamplerMode = Field(SamplerMode(settings.SAMPLER_MODE), description="exact or rejection")
    init: InitMode = Field(InitMode.RANDOM, description="Initial coloring when none is given")
    record_trace: bool = Field(False, description="Keep every applied step and potential")
    patience: int = Field(settings.REJECTION_PATIENCE, ge=1, description="Rejection draws per (edge, color) slot")


@dataclass
class WalkResult:
    outcome: WalkOutcome
    final: EdgeColoring
    steps_taken: int
    potential_trace: Optional[List[int]] = None
    steps: Optional[List[RecoloringStep]] = None
    accepted: int = 0
    rejected: int = 0


def _monotone_moves(coloring: EdgeColoring) -> Tuple[np.ndarray, np.ndarray]:
    deltas = coloring.move_deltas()
    pairs = np.argwhere(deltas <= 0)
    return pairs, deltas[pairs[:, 0], pairs[:, 1]]


def out_neighbors(coloring: EdgeColoring) -> List[Tuple[int, int]]:
    """All (edge, color) recolorings with non-positive potential change, by edge then color"""
    pairs, _ = _monotone_moves(coloring)
    return [(int(e), int(c)) for e, c in pairs]


@dataclass
class MildSampler:
    """
    Transition rule of the walk, with draw counters for rejection mode.

    Exact mode picks uniformly among the out-neighbors. Rejection mode draws
    (edge, other color) pairs uniformly until one is monotone; after
    ``patience * m * (k - 1)`` misses it checks exhaustively whether any
    out-neighbor exists before drawing on.
    """

    rng: np.random.Generator
    mode: SamplerMode = SamplerMode.EXACT
    patience: int = settings.REJECTION_PATIENCE
    accepted: int = field(default=0)
    rejected: int = field(default=0)

    def step(self, coloring: EdgeColoring, lemma: Optional[str] = None) -> Optional[RecoloringStep]:
        """Apply one move; None when the coloring has no out-neighbor"""
        if self.mode == SamplerMode.EXACT:
            pairs, _ = _monotone_moves(coloring)
            if len(pairs) == 0:
                return None
            edge, color = pairs[self.rng.integers(len(pairs))]
            self.accepted += 1
            return coloring.apply_recoloring(int(edge), int(color), lemma)
        return self._rejection_step(coloring, lemma)

    def _rejection_step(self, coloring: EdgeColoring, lemma: Optional[str]) -> Optional[RecoloringStep]:
        m, k = coloring.graph.m, coloring.k
        if m == 0 or k == 1:
            return None
        limit = self.patience * m * (k - 1)
        misses = 0
        checked = False
        while True:
            edge = int(self.rng.integers(m))
            color = int(self.rng.integers(k - 1))
            if color >= coloring.assignment[edge]:
                color += 1
            if coloring.potential_delta(edge, color) <= 0:
                self.accepted += 1
                return coloring.apply_recoloring(edge, color, lemma)
            self.rejected += 1
            misses += 1
            if misses >= limit and not checked:
                if not out_neighbors(coloring):
                    return None
                checked = True


def step_mild(
    coloring: EdgeColoring,
    rng: np.random.Generator,
    mode: SamplerMode = SamplerMode.EXACT,
) -> Optional[RecoloringStep]:
    """One walk step on ``coloring``; None means Stuck"""
    return MildSampler(rng=rng, mode=mode).step(coloring)


def detect_frozen(coloring: EdgeColoring) -> bool:
    """
    True iff no single-edge recoloring keeps the proper coloring proper.

    Raises:
        ColoringError: if the coloring is not proper
    """
    if not coloring.is_proper():
        raise ColoringError(f"frozen detection needs a proper coloring (potential {coloring.potential})")
    return not out_neighbors(coloring)


def initial_coloring(graph: Graph, cfg: WalkConfig, rng: np.random.Generator) -> EdgeColoring:
    if cfg.init == InitMode.GIVEN:
        raise WalkError("init mode 'given' requires an initial coloring")
    if cfg.init == InitMode.MONOCHROMATIC:
        return EdgeColoring.monochromatic(graph, cfg.k)
    return EdgeColoring.random(graph, cfg.k, rng)


def run_walk(graph: Graph, cfg: WalkConfig, start: Optional[EdgeColoring] = None) -> WalkResult:
    """
    Run the walk until the coloring is proper, no move exists, or the
    step budget is spent.

    Args:
        graph: Graph to color
        cfg: Walk parameters
        start: Initial coloring; drawn according to ``cfg.init`` when omitted

    Returns:
        WalkResult; reproducible from (graph, cfg, start)

    Raises:
        WalkError: if ``start`` does not match the graph or ``cfg.k``
    """
    rng = np.random.default_rng(cfg.seed)
    if start is not None:
        if start.graph != graph:
            raise WalkError("initial coloring belongs to a different graph")
        if start.k != cfg.k:
            raise WalkError(f"initial coloring uses k={start.k} but the walk is configured with k={cfg.k}")
        coloring = start.copy()
    else:
        coloring = initial_coloring(graph, cfg, rng)

    sampler = MildSampler(rng=rng, mode=cfg.sampler_mode, patience=cfg.patience)
    trace = [coloring.potential] if cfg.record_trace else None
    applied: Optional[List[RecoloringStep]] = [] if cfg.record_trace else None
    steps = 0

    while True:
        if coloring.is_proper():
            outcome = WalkOutcome.PROPER
            break
        if steps >= cfg.max_steps:
            outcome = WalkOutcome.BUDGET_EXHAUSTED
            break
        step = sampler.step(coloring)
        if step is None:
            outcome = WalkOutcome.STUCK
            break
        steps += 1
        if cfg.record_trace:
            trace.append(coloring.potential)
            applied.append(step)

    logger.info(f"Walk finished: {outcome.value} after {steps} steps (seed {cfg.seed}, potential {coloring.potential})")
    return WalkResult(
        outcome=outcome,
        final=coloring,
        steps_taken=steps,
        potential_trace=trace,
        steps=applied,
        accepted=sampler.accepted,
        rejected=sampler.rejected,
    )


def write_trace(result: WalkResult, stream: TextIO) -> None:
    """CSV with one row per applied step; needs a walk run with record_trace"""
    if result.steps is None or result.potential_trace is None:
        raise WalkError("walk was run without record_trace")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["step", "edge", "old_color", "new_color", "potential"])
    for index, (step, potential) in enumerate(zip(result.steps, result.potential_trace[1:]), start=1):
        writer.writerow([index, step.edge, step.old_color, step.new_color, potential])
