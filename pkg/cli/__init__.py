"""
CLI package initialization
"""
from .commands import COMMANDS, ExitCode, run_command
from .schemas import *

__all__ = ["COMMANDS", "ExitCode", "run_command"]
