from dataclasses import replace

import pytest

from models.coloring import EdgeColoring, RecoloringStep
from models.generators import complete, path
from services.vizing import find_proper_coloring
from services.witness import Witness, verify_witness


@pytest.fixture
def k4_witness() -> Witness:
    g = complete(4)
    return find_proper_coloring(g, 4, EdgeColoring.monochromatic(g, 4))


def test_driver_witness_is_valid(k4_witness):
    report = verify_witness(k4_witness)
    assert report.valid
    assert report.steps_checked == len(k4_witness)
    assert report.final_potential == 0


def test_flipped_delta_is_rejected(k4_witness):
    index = next(i for i, s in enumerate(k4_witness.steps) if s.delta != 0)
    steps = list(k4_witness.steps)
    steps[index] = replace(steps[index], delta=-steps[index].delta)
    report = verify_witness(Witness(k4_witness.initial, steps))
    assert not report.valid
    assert report.failed_step == index
    assert "delta" in report.reason


def test_wrong_old_color_is_rejected(k4_witness):
    steps = list(k4_witness.steps)
    steps[0] = replace(steps[0], old_color=(steps[0].old_color + 1) % 4)
    assert verify_witness(Witness(k4_witness.initial, steps)).failed_step == 0


def test_increasing_step_is_rejected():
    sigma = EdgeColoring(path(3), 3, [0, 1])
    steps = [RecoloringStep(edge=0, old_color=0, new_color=1, delta=1)]
    report = verify_witness(Witness(sigma, steps))
    assert not report.valid
    assert "increased" in report.reason


def test_unfinished_replay_is_rejected():
    sigma = EdgeColoring(path(3), 3, [0, 0])
    report = verify_witness(Witness(sigma, []))
    assert not report.valid
    assert report.final_potential == 1


def test_out_of_range_edge_and_color():
    sigma = EdgeColoring(path(3), 3, [0, 0])
    assert not verify_witness(Witness(sigma, [RecoloringStep(5, 0, 1, -1)])).valid
    assert not verify_witness(Witness(sigma, [RecoloringStep(0, 0, 7, -1)])).valid
    assert not verify_witness(Witness(sigma, [RecoloringStep(0, 0, 0, 0)])).valid


def test_final_coloring_must_match(k4_witness):
    wrong = k4_witness.final.permuted([1, 0, 2, 3])
    report = verify_witness(Witness(k4_witness.initial, k4_witness.steps, wrong))
    assert not report.valid
    assert "final" in report.reason
