"""Infrastructure layer exports."""

from infrastructure.dimacs import DimacsCodec
from infrastructure.dot_export import rotation_dot
from infrastructure.graph_format import CliqueCodec
from infrastructure.instance_format import SmtiCodec
from infrastructure.metadata_format import MetadataCodec
from infrastructure.td_format import PaceTdCodec

__all__ = [
    "SmtiCodec",
    "PaceTdCodec",
    "CliqueCodec",
    "DimacsCodec",
    "MetadataCodec",
    "rotation_dot",
]
