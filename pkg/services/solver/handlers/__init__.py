"""Handlers layer exports."""

from handlers.fuzz_handler import FuzzHandler
from handlers.reduction_handler import ReductionHandler, ReductionRequest
from handlers.solve_handler import SolveHandler, SolveRequest
from handlers.structure_handler import StructureHandler

__all__ = [
    "SolveHandler",
    "SolveRequest",
    "StructureHandler",
    "ReductionHandler",
    "ReductionRequest",
    "FuzzHandler",
]
