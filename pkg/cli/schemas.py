"""
Pydantic schemas for the JSON documents the command line reads and writes
"""
from typing import List, Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.coloring import EdgeColoring, RecoloringStep
from models.graph import Graph, build_graph
from services.analysis import EnsembleReport, ScalingRow
from services.witness import Witness


class ColoringDocument(BaseModel):
    """A graph together with a k-edge-coloring of it"""
    n: int = Field(..., ge=0, description="Number of vertices")
    k: int = Field(..., ge=1, description="Number of colors")
    edges: List[List[int]] = Field(..., description="Vertex pairs; the position is the edge id")
    assignment: List[int] = Field(..., description="Color of each edge, in edge order")

    @model_validator(mode="after")
    def check_shape(self) -> "ColoringDocument":
        if any(len(pair) != 2 for pair in self.edges):
            raise ValueError("every edge must be a pair [u, v]")
        if len(self.assignment) != len(self.edges):
            raise ValueError(
                f"assignment has {len(self.assignment)} entries for {len(self.edges)} edges"
            )
        bad = [c for c in self.assignment if not 0 <= c < self.k]
        if bad:
            raise ValueError(f"color {bad[0]} outside [0, {self.k})")
        return self

    def to_graph(self) -> Graph:
        return build_graph(self.n, [tuple(pair) for pair in self.edges])

    def to_coloring(self, graph: Optional[Graph] = None) -> EdgeColoring:
        """Coloring over ``graph`` (built from the document when omitted)"""
        graph = graph or self.to_graph()
        if graph.n != self.n or [list(e) for e in graph.edges] != [sorted(e) for e in self.edges]:
            raise ValueError("coloring document does not match the graph")
        return EdgeColoring(graph, self.k, self.assignment)

    @classmethod
    def from_coloring(cls, coloring: EdgeColoring) -> "ColoringDocument":
        return cls(
            n=coloring.graph.n,
            k=coloring.k,
            edges=[list(e) for e in coloring.graph.edges],
            assignment=list(coloring.key()),
        )


class StepDocument(BaseModel):
    """One single-edge recoloring"""
    model_config = ConfigDict(populate_by_name=True)

    edge: int = Field(..., ge=0, description="Edge id")
    from_: int = Field(..., alias="from", description="Color before the step")
    to: int = Field(..., description="Color after the step")
    delta: int = Field(..., description="Potential change")
    lemma: Optional[str] = Field(None, description="Driver operation that produced the step")

    def to_step(self) -> RecoloringStep:
        return RecoloringStep(edge=self.edge, old_color=self.from_, new_color=self.to, delta=self.delta, lemma=self.lemma)

    @classmethod
    def from_step(cls, step: RecoloringStep) -> "StepDocument":
        return cls(edge=step.edge, from_=step.old_color, to=step.new_color, delta=step.delta, lemma=step.lemma)


class WitnessDocument(BaseModel):
    """Initial coloring and the monotone steps leading to a proper coloring"""
    initial: ColoringDocument = Field(..., description="Starting coloring")
    steps: List[StepDocument] = Field(default_factory=list, description="Recolorings in order")
    final: Optional[ColoringDocument] = Field(None, description="Coloring the replay must end on")

    def to_witness(self) -> Witness:
        initial = self.initial.to_coloring()
        final = self.final.to_coloring(initial.graph) if self.final is not None else None
        return Witness(initial=initial, steps=[s.to_step() for s in self.steps], final=final)

    @classmethod
    def from_witness(cls, witness: Witness) -> "WitnessDocument":
        return cls(
            initial=ColoringDocument.from_coloring(witness.initial),
            steps=[StepDocument.from_step(s) for s in witness.steps],
            final=ColoringDocument.from_coloring(witness.final) if witness.final is not None else None,
        )


class EnumerationDocument(BaseModel):
    """All proper colorings of a graph"""
    n: int
    k: int
    edges: List[List[int]]
    count: int = Field(..., description="Number of proper colorings")
    assignments: List[List[int]] = Field(..., description="Proper assignments in lexicographic order")


__all__ = [
    "ColoringDocument",
    "StepDocument",
    "WitnessDocument",
    "EnumerationDocument",
    "EnsembleReport",
    "ScalingRow",
]
