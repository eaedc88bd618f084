"""
Ground-truth oracles and experiment statistics for the walk: exhaustive
enumeration, monotone reachability, ensembles and scaling tables
"""

from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Dict, List, Optional, Sequence, TextIO
import csv
import logging

import numpy as np
from pydantic import BaseModel, Field
from scipy import stats

from config import settings
from models import generators
from models.coloring import EdgeColoring
from models.graph import Graph, GraphError
from services.walk import WalkConfig, WalkOutcome, out_neighbors, run_walk

logger = logging.getLogger(__name__)


class BudgetExceededError(ValueError):
    """Raised when an exhaustive search would exceed its state budget"""


class StepStats(BaseModel):
    min: int
    median: float
    mean: float
    max: int


class EnsembleReport(BaseModel):
    """Aggregated outcome of independent walks on one graph"""

    runs: int = Field(..., ge=1, description="Number of walks")
    base_seed: int = Field(..., description="Seed the per-run seeds are derived from")
    outcomes: Dict[str, int] = Field(..., description="Walk outcome histogram")
    steps: StepStats = Field(..., description="Step counts over all runs")
    frequencies: Dict[str, int] = Field(
        default_factory=dict,
        description="Proper outcomes keyed by their assignment as decimal CSV",
    )
    support_size: Optional[int] = Field(None, description="Number of proper colorings, when enumerable")
    tv_distance: Optional[float] = Field(None, ge=0.0, le=1.0, description="Total variation distance to uniform")
    chi_square: Optional[float] = Field(None, description="Chi-square statistic against uniform")
    p_value: Optional[float] = Field(None, description="Chi-square p-value")


class KRule(str, Enum):
    DELTA_PLUS_ONE = "delta+1"
    DELTA = "delta"


class ScalingRow(BaseModel):
    n: int
    mean_steps: float
    max_steps: int
    runs: int


def _state_count(k: int, m: int) -> int:
    return k**m


def enumerate_proper_colorings(
    graph: Graph,
    k: int,
    budget: Optional[int] = None,
) -> List[EdgeColoring]:
    """
    All proper k-edge-colorings of ``graph`` in lexicographic order of their
    assignments, by backtracking over edges with color-degree pruning.

    Raises:
        BudgetExceededError: if k ** |E| exceeds the budget
    """
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    states = _state_count(k, graph.m)
    if states > budget:
        raise BudgetExceededError(
            f"{k}^{graph.m} = {states} assignments exceeds the enumeration budget {budget}; "
            "use a smaller instance"
        )

    used = np.zeros((graph.n, k), dtype=bool)
    assignment = [0] * graph.m
    found: List[EdgeColoring] = []

    def extend(edge: int) -> None:
        if edge == graph.m:
            found.append(EdgeColoring(graph, k, assignment))
            return
        u, v = graph.edges[edge]
        for color in range(k):
            if used[u, color] or used[v, color]:
                continue
            used[u, color] = used[v, color] = True
            assignment[edge] = color
            extend(edge + 1)
            used[u, color] = used[v, color] = False

    extend(0)
    logger.info(f"Enumerated {len(found)} proper {k}-edge-colorings of a graph with {graph.m} edges")
    return found


def monotone_reachability(
    graph: Graph,
    k: int,
    start: EdgeColoring,
    budget: Optional[int] = None,
) -> bool:
    """
    Breadth-first search from ``start`` over single-edge recolorings that do
    not raise the potential; True iff a proper coloring is reachable.

    Raises:
        BudgetExceededError: if k ** |E| exceeds the budget
    """
    budget = settings.REACHABILITY_BUDGET if budget is None else budget
    states = _state_count(k, graph.m)
    if states > budget:
        raise BudgetExceededError(
            f"{k}^{graph.m} = {states} colorings exceeds the reachability budget {budget}"
        )
    if start.is_proper():
        return True

    seen = {start.key()}
    queue = deque([start.key()])
    while queue:
        coloring = EdgeColoring(graph, k, queue.popleft(), check_invariants=False)
        for edge, color in out_neighbors(coloring):
            neighbor = list(coloring.key())
            neighbor[edge] = color
            key = tuple(neighbor)
            if key in seen:
                continue
            if coloring.potential + coloring.potential_delta(edge, color) == 0:
                logger.debug(f"Proper coloring reached after exploring {len(seen)} states")
                return True
            seen.add(key)
            queue.append(key)
    logger.debug(f"No proper coloring among {len(seen)} monotonically reachable states")
    return False


def derive_seed(base_seed: int, index: int) -> int:
    """Seed of run ``index``: SeedSequence([base_seed, index]) hashed to 64 bits"""
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1, np.uint64)[0])


def _single_run(job) -> tuple:
    graph, cfg, start = job
    result = run_walk(graph, cfg, start)
    key = ",".join(str(c) for c in result.final.key()) if result.outcome == WalkOutcome.PROPER else None
    return result.outcome.value, result.steps_taken, key


def run_ensemble(
    graph: Graph,
    cfg: WalkConfig,
    runs: int,
    workers: Optional[int] = None,
    start: Optional[EdgeColoring] = None,
) -> EnsembleReport:
    """
    Run independent walks and aggregate their outcomes.

    Run i uses ``cfg`` with the seed derived from (cfg.seed, i). When the
    proper colorings can be enumerated, the proper outcomes are compared
    with the uniform distribution over them.

    Args:
        graph: Graph to color
        cfg: Walk parameters; ``cfg.seed`` is the base seed
        runs: Number of walks
        workers: Worker processes (defaults to settings.ENSEMBLE_WORKERS)
        start: Shared initial coloring, if any

    Returns:
        EnsembleReport
    """
    if runs < 1:
        raise ValueError(f"runs must be at least 1, got {runs}")
    workers = settings.ENSEMBLE_WORKERS if workers is None else workers
    jobs = [
        (graph, cfg.model_copy(update={"seed": derive_seed(cfg.seed, i), "record_trace": False}), start)
        for i in range(runs)
    ]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_single_run, jobs, chunksize=max(1, runs // (4 * workers))))
    else:
        results = [_single_run(job) for job in jobs]

    outcomes = Counter(outcome for outcome, _, _ in results)
    steps = np.array([s for _, s, _ in results], dtype=np.int64)
    frequencies = Counter(key for _, _, key in results if key is not None)

    report = EnsembleReport(
        runs=runs,
        base_seed=cfg.seed,
        outcomes={outcome.value: outcomes.get(outcome.value, 0) for outcome in WalkOutcome},
        steps=StepStats(
            min=int(steps.min()),
            median=float(np.median(steps)),
            mean=float(steps.mean()),
            max=int(steps.max()),
        ),
        frequencies=dict(sorted(frequencies.items())),
    )

    try:
        support = enumerate_proper_colorings(graph, cfg.k)
    except BudgetExceededError as e:
        logger.info(f"Skipping uniformity statistics: {e}")
        return report

    report.support_size = len(support)
    proper_runs = sum(frequencies.values())
    if support and proper_runs:
        keys = [",".join(str(c) for c in coloring.key()) for coloring in support]
        observed = np.array([frequencies.get(key, 0) for key in keys], dtype=float)
        expected = np.full(len(keys), proper_runs / len(keys))
        report.tv_distance = float(0.5 * np.abs(observed / proper_runs - 1.0 / len(keys)).sum())
        if len(keys) > 1:
            chisq, pval = stats.chisquare(observed, expected)
            report.chi_square, report.p_value = float(chisq), float(pval)
        else:
            report.chi_square, report.p_value = 0.0, 1.0

    logger.info(
        f"Ensemble of {runs} walks: {report.outcomes} "
        f"(mean steps {report.steps.mean:.1f}, TV {report.tv_distance})"
    )
    return report


SCALING_FAMILIES = ("complete", "complete_even", "complete_bipartite", "path", "cycle", "star", "tree")


def scaling_graph(family: str, n: int, seed: int = 0) -> Graph:
    """Member of size parameter ``n`` of a scaling family"""
    if family == "complete":
        return generators.complete(n)
    if family == "complete_even":
        return generators.complete(2 * n)
    if family == "complete_bipartite":
        return generators.complete_bipartite(n, n)
    if family == "path":
        return generators.path(n)
    if family == "cycle":
        return generators.cycle(n)
    if family == "star":
        return generators.star(n)
    if family == "tree":
        return generators.random_tree(n, seed)
    raise GraphError(f"unknown scaling family {family!r}; choose from {', '.join(SCALING_FAMILIES)}")


def scaling_experiment(
    family: str,
    sizes: Sequence[int],
    k_rule: KRule = KRule.DELTA_PLUS_ONE,
    runs: int = 10,
    seed: int = 0,
    max_steps: Optional[int] = None,
) -> List[ScalingRow]:
    """
    Mean and maximum walk length against n for one graph family.

    Each size runs ``runs`` walks from uniformly random colorings with
    k = max degree + 1 or k = max degree, following ``k_rule``.
    """
    if runs < 1:
        raise ValueError(f"runs must be at least 1, got {runs}")
    max_steps = settings.DEFAULT_MAX_STEPS if max_steps is None else max_steps
    rows: List[ScalingRow] = []
    for n in sizes:
        graph = scaling_graph(family, n, seed)
        k = graph.max_degree + 1 if k_rule == KRule.DELTA_PLUS_ONE else graph.max_degree
        k = max(k, 1)
        taken = []
        for i in range(runs):
            cfg = WalkConfig(k=k, max_steps=max_steps, seed=derive_seed(seed, i))
            taken.append(run_walk(graph, cfg).steps_taken)
        rows.append(ScalingRow(n=n, mean_steps=float(np.mean(taken)), max_steps=int(max(taken)), runs=runs))
        logger.info(f"Scaling {family} n={n} k={k}: mean {rows[-1].mean_steps:.1f} steps")
    return rows


def write_scaling_csv(rows: Sequence[ScalingRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "mean_steps", "max_steps", "runs"])
    for row in rows:
        writer.writerow([row.n, row.mean_steps, row.max_steps, row.runs])
