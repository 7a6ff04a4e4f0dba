"""Handlers for the rotations and decompose commands."""

from typing import Literal

from matching_common import setup_logging
from matching_common.infrastructure import TextCodec

from domain import (
    Instance,
    RotationStructure,
    TreeDecomposition,
    build_rotation_structure,
    heuristic_decomposition,
    make_nice,
    primal_graph,
    rotation_graph,
)
from infrastructure import PaceTdCodec, rotation_dot
from response_models import RotationsResponse

logger = setup_logging()


class StructureHandler:
    """Exports the rotation digraph and tree decompositions of an instance."""

    def __init__(self, codec: TextCodec[Instance]):
        self._codec = codec

    def _rotations(self, text: str) -> tuple[Instance, RotationStructure]:
        inst = self._codec.parse(text)
        rs = build_rotation_structure(inst)
        logger.info(
            "Rotation structure built",
            extra={"rotations": len(rs.rotations), "arcs": len(rs.arcs)},
        )
        return inst, rs

    def rotations(self, text: str) -> RotationsResponse:
        """
        Lists the rotations and digraph arcs of a strict instance.

        Raises:
            InstanceValidationError: If the instance is malformed.
            UnsupportedInputError: If the instance has ties.
        """
        _, rs = self._rotations(text)
        return RotationsResponse.from_structure(rs)

    def rotations_dot(self, text: str) -> str:
        """DOT rendering of the rotation digraph."""
        inst, rs = self._rotations(text)
        return rotation_dot(inst, rs)

    def decompose(
        self, text: str, graph: Literal["primal", "rotation"], nice: bool = False
    ) -> str:
        """
        Computes a min-fill decomposition and renders it as a PACE `.td` file.

        Args:
            text: The instance document.
            graph: Which graph to decompose. Primal vertices are the men
                followed by the women, rotation vertices are rotation ids.
            nice: Convert to nice form before writing.
        """
        inst = self._codec.parse(text)
        if graph == "primal":
            g = primal_graph(inst)
        else:
            g = rotation_graph(build_rotation_structure(inst))
        td: TreeDecomposition = heuristic_decomposition(g)
        if nice:
            td = make_nice(td, g).as_tree_decomposition()
        logger.info(
            "Decomposition computed",
            extra={"graph": graph, "width": td.width, "bags": len(td.bags)},
        )
        return PaceTdCodec(n_vertices=g.number_of_nodes()).render(td)
