"""PACE `.td` tree decomposition files with 1-based vertex ids."""

from matching_common import InstanceValidationError
from matching_common.infrastructure import TextCodec

from domain import TreeDecomposition


def _ints(parts: list[str], line: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError as e:
        raise InstanceValidationError("non-integer value", line, e) from e


class PaceTdCodec(TextCodec[TreeDecomposition]):
    """
    Reads and writes `s td <bags> <width+1> <vertices>` documents.

    Bag lines are `b <id> <vertices...>`, every other non-comment line is a
    tree edge `<bag> <bag>`. Graph vertices are shifted to 0-based ids on
    read. The decomposition is rooted at its smallest bag id unless a root
    is given; writing numbers the root bag 1.
    """

    def __init__(self, n_vertices: int | None = None, root: int | None = None):
        self._n_vertices = n_vertices
        self._root = root

    def parse(self, text: str) -> TreeDecomposition:
        declared: tuple[int, int, int] | None = None
        bags: dict[int, frozenset[int]] = {}
        edges: list[tuple[int, int]] = []

        for number, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "s":
                if declared is not None or len(parts) != 5 or parts[1] != "td":
                    raise InstanceValidationError("malformed 's td' line", number)
                n_bags, max_bag, n_vertices = _ints(parts[2:], number)
                declared = (n_bags, max_bag, n_vertices)
                continue
            if declared is None:
                raise InstanceValidationError("content before 's td' line", number)
            if parts[0] == "b":
                if len(parts) < 2:
                    raise InstanceValidationError("bag line without id", number)
                bag_id, *vertices = _ints(parts[1:], number)
                if bag_id in bags:
                    raise InstanceValidationError(f"bag {bag_id} defined twice", number)
                for vertex in vertices:
                    if not 1 <= vertex <= declared[2]:
                        raise InstanceValidationError(
                            f"unknown vertex {vertex}", number
                        )
                bags[bag_id] = frozenset(v - 1 for v in vertices)
                continue
            ends = _ints(parts, number)
            if len(ends) != 2:
                raise InstanceValidationError("tree edge needs two bag ids", number)
            edges.append((ends[0], ends[1]))

        if declared is None:
            raise InstanceValidationError("missing 's td' line")
        if len(bags) != declared[0]:
            raise InstanceValidationError(
                f"declared {declared[0]} bags but found {len(bags)}"
            )
        largest = max((len(b) for b in bags.values()), default=0)
        if largest > declared[1]:
            raise InstanceValidationError(
                f"bag of size {largest} exceeds declared size {declared[1]}"
            )
        for a, b in edges:
            for bag_id in (a, b):
                if bag_id not in bags:
                    raise InstanceValidationError(
                        f"tree edge names unknown bag {bag_id}"
                    )

        root = self._root if self._root is not None else min(bags, default=1)
        return TreeDecomposition(bags=bags, edges=tuple(edges), root=root)

    def render(self, value: TreeDecomposition) -> str:
        order = [value.root, *(b for b in sorted(value.bags) if b != value.root)]
        ids = {bag_id: i for i, bag_id in enumerate(order, start=1)}
        vertices = self._n_vertices
        if vertices is None:
            vertices = max((max(b) + 1 for b in value.bags.values() if b), default=0)
        largest = max((len(b) for b in value.bags.values()), default=0)
        out = [f"s td {len(ids)} {largest} {vertices}"]
        for bag_id, number in ids.items():
            members = " ".join(str(v + 1) for v in sorted(value.bags[bag_id]))
            out.append(f"b {number} {members}".rstrip())
        for a, b in value.edges:
            out.append(f"{ids[a]} {ids[b]}")
        return "\n".join(out) + "\n"
