"""
Recoloring witnesses and their independent replay check
"""

from dataclasses import dataclass, field
from typing import List, Optional
import logging

from models.coloring import EdgeColoring, RecoloringStep, scratch_potential

logger = logging.getLogger(__name__)


@dataclass
class Witness:
    """A monotone recoloring sequence from ``initial`` to ``final``"""

    initial: EdgeColoring
    steps: List[RecoloringStep]
    final: Optional[EdgeColoring] = None

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class VerificationReport:
    valid: bool
    steps_checked: int
    final_potential: int
    reason: Optional[str] = None
    failed_step: Optional[int] = None
    lemma: Optional[str] = field(default=None)


def verify_witness(witness: Witness) -> VerificationReport:
    """
    Replay a witness using only single-edge recolorings and scratch
    potential recomputation.

    A witness is sound when every step names the edge's current color,
    its recorded delta equals the recomputed change and is not positive,
    and the replay ends on a proper coloring (equal to ``final`` when given).

    Returns:
        VerificationReport describing the first failure, if any
    """
    initial = witness.initial
    graph, k = initial.graph, initial.k
    assignment = [int(c) for c in initial.assignment]
    potential = scratch_potential(graph, k, assignment)

    def fail(index: int, reason: str, step: Optional[RecoloringStep] = None) -> VerificationReport:
        logger.warning(f"Witness rejected at step {index}: {reason}")
        return VerificationReport(
            valid=False,
            steps_checked=index,
            final_potential=potential,
            reason=reason,
            failed_step=index,
            lemma=step.lemma if step else None,
        )

    for index, step in enumerate(witness.steps):
        if not 0 <= step.edge < graph.m:
            return fail(index, f"edge {step.edge} does not exist", step)
        if not 0 <= step.new_color < k:
            return fail(index, f"color {step.new_color} outside [0, {k})", step)
        if assignment[step.edge] != step.old_color:
            return fail(index, f"edge {step.edge} has color {assignment[step.edge]}, step says {step.old_color}", step)
        if step.new_color == step.old_color:
            return fail(index, f"edge {step.edge} recolored to its own color", step)

        assignment[step.edge] = step.new_color
        after = scratch_potential(graph, k, assignment)
        change = after - potential
        if change != step.delta:
            return fail(index, f"recorded delta {step.delta} but the potential changed by {change}", step)
        if change > 0:
            return fail(index, f"potential increased by {change}", step)
        potential = after

    if potential != 0:
        return fail(len(witness.steps), f"replay ends with potential {potential}, not a proper coloring")
    if witness.final is not None and [int(c) for c in witness.final.assignment] != assignment:
        return fail(len(witness.steps), "replay does not end on the recorded final coloring")

    return VerificationReport(valid=True, steps_checked=len(witness.steps), final_potential=0)
