import numpy as np
import pytest

from models.coloring import EdgeColoring
from models.generators import complete, cycle, path, random_graph, star
from models.structure import (
    bichromatic_component,
    cherries,
    cherries_at,
    cherry_at,
    cherry_of_arm,
    find_large_component,
    has_large_component,
    is_cherry_coloring,
    monochromatic_components,
)


def test_monochromatic_triangle_component():
    sigma = EdgeColoring.monochromatic(complete(3), 3)
    (component,) = monochromatic_components(sigma, 0)
    assert component.edges == (0, 1, 2)
    assert monochromatic_components(sigma, 1) == []
    color, found = find_large_component(sigma)
    assert color == 0 and found.size == 3


def test_proper_coloring_components_are_single_edges():
    sigma = EdgeColoring(cycle(6), 2, [0, 1, 1, 0, 1, 0])
    assert sigma.is_proper()
    for color in range(2):
        assert all(c.size == 1 for c in monochromatic_components(sigma, color))
    assert cherries(sigma) == []
    assert find_large_component(sigma) is None


def test_monochromatic_four_star(four_star):
    sigma = EdgeColoring.monochromatic(four_star, 4)
    (component,) = monochromatic_components(sigma, 0)
    assert component.size == 4
    assert component.degree[0] == 4


def test_path_of_three_edges_is_large():
    sigma = EdgeColoring(path(5), 3, [0, 0, 0, 1])
    assert has_large_component(sigma)
    color, component = find_large_component(sigma)
    assert (color, component.edges) == (0, (0, 1, 2))


def test_large_component_prefers_lowest_color():
    sigma = EdgeColoring(path(9), 3, [2, 2, 2, 0, 1, 1, 1, 1])
    color, component = find_large_component(sigma)
    assert color == 1
    assert component.edges == (4, 5, 6, 7)


def test_cherry_coloring_has_no_large_component():
    sigma = EdgeColoring(path(5), 3, [0, 0, 1, 1])
    assert is_cherry_coloring(sigma)
    assert find_large_component(sigma) is None
    assert [(c.center, c.color) for c in cherries(sigma)] == [(1, 0), (3, 1)]


def test_single_repeated_color_on_star(four_star):
    sigma = EdgeColoring(four_star, 5, [0, 1, 2, 0])
    (cherry,) = cherries(sigma)
    assert cherry.center == 0
    assert cherry.arms == (0, 3)
    assert cherry.endpoints == (1, 4)
    assert cherries_at(sigma, 0) == [cherry]
    assert cherries_at(sigma, 1) == []
    assert cherry_of_arm(sigma, 3) == cherry
    assert cherry_of_arm(sigma, 1) is None
    assert cherry.other_arm(0) == 3
    assert cherry.endpoint_of(3) == 4


def test_two_edges_inside_larger_component_are_no_cherry():
    sigma = EdgeColoring(path(4), 2, [0, 0, 0])
    assert cherry_at(sigma, 1, 0) is None
    assert cherries(sigma) == []


def test_missing_colors_bound_cherry_count():
    rng = np.random.default_rng(17)
    for seed in range(40):
        g = random_graph(10, 0.4, seed)
        k = g.max_degree + 1
        sigma = EdgeColoring.random(g, k, rng)
        if not is_cherry_coloring(sigma):
            continue
        for v in range(g.n):
            assert len(sigma.missing_colors(v)) >= len(cherries_at(sigma, v)) + 1


def test_proper_iff_no_cherry_and_no_large_component():
    rng = np.random.default_rng(23)
    g = random_graph(8, 0.5, 4)
    for _ in range(300):
        sigma = EdgeColoring.random(g, 4, rng)
        assert sigma.is_proper() == (not cherries(sigma) and not has_large_component(sigma))


def test_bichromatic_component_of_proper_coloring_alternates():
    sigma = EdgeColoring(cycle(6), 3, [0, 1, 1, 0, 1, 0])
    component = bichromatic_component(sigma, 0, 0, 1)
    assert component.size == 6
    assert all(d == 2 for d in component.degree.values())


def test_bichromatic_component_degrees_in_cherry_colorings():
    rng = np.random.default_rng(31)
    for seed in range(40):
        g = random_graph(10, 0.5, seed)
        sigma = EdgeColoring.random(g, g.max_degree + 1, rng)
        if not is_cherry_coloring(sigma):
            continue
        for v in range(g.n):
            component = bichromatic_component(sigma, v, 0, 1)
            assert max(component.degree.values()) <= 4


def test_bichromatic_component_of_isolated_start():
    sigma = EdgeColoring(path(3), 3, [0, 1])
    component = bichromatic_component(sigma, 0, 1, 2)
    assert component.vertices == (0,) and component.edges == ()


def test_bichromatic_component_rejects_equal_colors():
    with pytest.raises(ValueError):
        bichromatic_component(EdgeColoring(path(3), 3, [0, 1]), 0, 1, 1)


def test_degree_one_vertex_after_cherry_surgery():
    sigma = EdgeColoring(star(3), 4, [0, 0, 1])
    component = bichromatic_component(sigma, 0, 0, 2)
    assert component.leaves() == [1, 2]
