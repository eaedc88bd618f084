"""
Services package initialization
"""
from .walk import WalkConfig, WalkResult, run_walk
from .vizing import VizingDriver, find_proper_coloring
from .witness import Witness, verify_witness

__all__ = ["WalkConfig", "WalkResult", "run_walk", "VizingDriver", "find_proper_coloring", "Witness", "verify_witness"]
