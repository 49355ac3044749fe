"""Cop numbers by exact game solving, kernelization and constructive bounds."""
from .errors import *  # noqa: F401,F403
from .graph import Graph
from .variants import CopSpec, RobberSpec, VariantSpec
from .game import GameState, WinningRegion, cop_number, solve

__all__ = ["Graph", "CopSpec", "RobberSpec", "VariantSpec", "GameState", "WinningRegion", "solve", "cop_number"]
