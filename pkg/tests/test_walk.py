import io
from collections import Counter

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from models.coloring import ColoringError, EdgeColoring
from models.generators import complete, path, random_graph
from services.walk import (
    MildSampler,
    SamplerMode,
    WalkConfig,
    WalkError,
    WalkOutcome,
    detect_frozen,
    out_neighbors,
    run_walk,
    step_mild,
    write_trace,
)


def test_out_neighbors_of_monochromatic_triangle():
    sigma = EdgeColoring.monochromatic(complete(3), 3)
    assert out_neighbors(sigma) == [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_out_neighbors_single_edge():
    assert out_neighbors(EdgeColoring(path(2), 2, [0])) == [(0, 1)]


def test_frozen_petersen_has_no_out_neighbor(petersen_frozen):
    assert petersen_frozen.is_proper()
    assert out_neighbors(petersen_frozen) == []
    assert detect_frozen(petersen_frozen)
    assert step_mild(petersen_frozen, np.random.default_rng(0)) is None


def test_proper_out_neighbors_keep_properness():
    sigma = EdgeColoring(path(4), 4, [0, 1, 0])
    for edge, color in out_neighbors(sigma):
        assert sigma.potential_delta(edge, color) == 0
        u, v = sigma.graph.edges[edge]
        assert color in sigma.missing_colors(u) & sigma.missing_colors(v)
    assert not detect_frozen(sigma)


def test_detect_frozen_needs_proper_coloring():
    with pytest.raises(ColoringError):
        detect_frozen(EdgeColoring.monochromatic(complete(3), 3))


def test_exact_sampler_is_uniform_over_out_neighbors():
    rng = np.random.default_rng(99)
    base = EdgeColoring.monochromatic(complete(3), 3)
    counts = Counter()
    trials = 30_000
    for _ in range(trials):
        step = step_mild(base.copy(), rng)
        assert step.delta <= 0
        counts[(step.edge, step.new_color)] += 1
    assert len(counts) == 6
    assert stats.chisquare(list(counts.values())).pvalue > 1e-3


@pytest.mark.slow
def test_exact_sampler_is_uniform_full_scale():
    rng = np.random.default_rng(7)
    base = EdgeColoring.monochromatic(complete(4), 4)
    counts = Counter()
    for _ in range(100_000):
        step = step_mild(base.copy(), rng)
        counts[(step.edge, step.new_color)] += 1
    assert len(counts) == len(out_neighbors(base))
    assert stats.chisquare(list(counts.values())).pvalue > 1e-3


def test_rejection_sampler_counts_draws():
    rng = np.random.default_rng(1)
    sigma = EdgeColoring(path(4), 2, [0, 0, 1])
    sampler = MildSampler(rng=rng, mode=SamplerMode.REJECTION)
    step = sampler.step(sigma)
    assert step is not None and step.delta <= 0
    assert sampler.accepted == 1
    assert sampler.rejected >= 0


def test_rejection_sampler_detects_stuck(petersen_frozen):
    sampler = MildSampler(rng=np.random.default_rng(2), mode=SamplerMode.REJECTION, patience=1)
    assert sampler.step(petersen_frozen) is None
    assert sampler.rejected == petersen_frozen.graph.m * (petersen_frozen.k - 1)


def test_walk_on_triangle_reaches_proper():
    for seed in range(20):
        result = run_walk(complete(3), WalkConfig(k=3, seed=seed))
        assert result.outcome == WalkOutcome.PROPER
        assert result.final.is_proper()


def test_walk_from_proper_start_takes_no_step(petersen_frozen):
    result = run_walk(petersen_frozen.graph, WalkConfig(k=5), petersen_frozen)
    assert result.outcome == WalkOutcome.PROPER
    assert result.steps_taken == 0


def test_walk_is_reproducible():
    g = random_graph(12, 0.4, 5)
    cfg = WalkConfig(k=g.max_degree + 1, seed=77, record_trace=True)
    first, second = run_walk(g, cfg), run_walk(g, cfg)
    assert first.steps_taken == second.steps_taken
    assert first.potential_trace == second.potential_trace
    assert first.final == second.final


def test_trace_is_non_increasing():
    g = random_graph(15, 0.4, 6)
    result = run_walk(g, WalkConfig(k=g.max_degree + 1, seed=3, record_trace=True))
    trace = result.potential_trace
    assert trace[-1] == 0
    assert all(b <= a for a, b in zip(trace, trace[1:]))
    assert len(result.steps) == result.steps_taken


def test_rejection_mode_walk_terminates():
    g = random_graph(10, 0.5, 2)
    result = run_walk(g, WalkConfig(k=g.max_degree + 1, seed=4, sampler_mode=SamplerMode.REJECTION))
    assert result.outcome == WalkOutcome.PROPER
    assert result.accepted == result.steps_taken


def test_budget_exhausted():
    g = random_graph(20, 0.5, 1)
    result = run_walk(g, WalkConfig(k=g.max_degree + 1, seed=0, max_steps=1))
    assert result.outcome == WalkOutcome.BUDGET_EXHAUSTED
    assert result.steps_taken == 1


def test_stuck_below_max_degree_plus_one():
    outcomes = {run_walk(complete(3), WalkConfig(k=2, seed=s, max_steps=50)).outcome for s in range(10)}
    assert outcomes <= {WalkOutcome.STUCK, WalkOutcome.BUDGET_EXHAUSTED}


def test_start_must_match_k():
    start = EdgeColoring.monochromatic(complete(3), 3)
    with pytest.raises(WalkError):
        run_walk(complete(3), WalkConfig(k=4), start)
    with pytest.raises(WalkError):
        run_walk(complete(4), WalkConfig(k=3), start)


def test_config_validation():
    with pytest.raises(ValidationError):
        WalkConfig(k=0)
    with pytest.raises(ValidationError):
        WalkConfig(k=3, max_steps=0)


def test_write_trace():
    result = run_walk(complete(3), WalkConfig(k=3, seed=1, init="monochromatic", record_trace=True))
    stream = io.StringIO()
    write_trace(result, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "step,edge,old_color,new_color,potential"
    assert len(lines) == result.steps_taken + 1
    assert lines[-1].endswith(",0")


def test_write_trace_requires_recording():
    result = run_walk(complete(3), WalkConfig(k=3, seed=1))
    with pytest.raises(WalkError):
        write_trace(result, io.StringIO())


def test_walks_terminate_with_spare_color():
    rng = np.random.default_rng(8)
    for _ in range(10):
        g = random_graph(int(rng.integers(5, 15)), 0.4, int(rng.integers(2**31)))
        for seed in range(3):
            result = run_walk(g, WalkConfig(k=g.max_degree + 1, seed=seed))
            assert result.outcome == WalkOutcome.PROPER


@pytest.mark.slow
def test_walks_terminate_full_scale():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        g = random_graph(int(rng.integers(5, 31)), float(rng.uniform(0.1, 0.5)), int(rng.integers(2**31)))
        for seed in range(20):
            result = run_walk(g, WalkConfig(k=g.max_degree + 1, seed=seed, max_steps=10**6))
            assert result.outcome == WalkOutcome.PROPER
