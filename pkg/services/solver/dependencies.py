"""Dependency injection configuration for the solver command line."""

from matching_common import setup_logging

from config import load_config
from handlers import FuzzHandler, ReductionHandler, SolveHandler, StructureHandler
from infrastructure import MetadataCodec, SmtiCodec

logger = setup_logging()

_config = load_config()

# Codecs
_instance_codec = SmtiCodec()
_metadata_codec = MetadataCodec()

# Service composition
_solve_handler = SolveHandler(_instance_codec, _config.oracle)
_structure_handler = StructureHandler(_instance_codec)
_reduction_handler = ReductionHandler(
    _instance_codec, _metadata_codec, _config.reduction, _config.oracle
)
_fuzz_handler = FuzzHandler(_instance_codec, _config.oracle)


def get_instance_codec() -> SmtiCodec:
    """Returns the shared instance codec."""
    return _instance_codec


def get_solve_handler() -> SolveHandler:
    """Returns the configured solve handler."""
    return _solve_handler


def get_structure_handler() -> StructureHandler:
    """Returns the configured rotations/decompose handler."""
    return _structure_handler


def get_reduction_handler() -> ReductionHandler:
    """Returns the configured reduction handler."""
    return _reduction_handler


def get_fuzz_handler() -> FuzzHandler:
    """Returns the configured fuzz handler."""
    return _fuzz_handler
