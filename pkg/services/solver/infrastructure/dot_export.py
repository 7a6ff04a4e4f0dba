"""Graphviz rendering of the rotation digraph."""

from domain import Instance, RotationStructure


def rotation_dot(inst: Instance, rs: RotationStructure) -> str:
    """
    Renders the rotation digraph as a DOT document.

    Nodes are `r<id>` (1-based) labelled with the rotation's (man, woman)
    pairs; every arc of the digraph becomes one edge.
    """
    lines = ["digraph rotations {"]
    for rotation in rs.rotations:
        pairs = " ".join(
            f"({inst.men[m]},{inst.women[w]})" for m, w in rotation.pairs
        )
        lines.append(f'  "r{rotation.id + 1}" [label="{pairs}"];')
    for a, b in rs.arcs:
        lines.append(f'  "r{a + 1}" -> "r{b + 1}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
