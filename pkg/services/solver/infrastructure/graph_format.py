"""Coloured graph documents for the clique reductions."""

from matching_common import InstanceValidationError
from matching_common.infrastructure import TextCodec
from pydantic import ValidationError

from exceptions import ReductionInputError
from reductions.models import CliqueInput


def _ints(parts: list[str], line: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError as e:
        raise InstanceValidationError("non-integer value", line, e) from e


class CliqueCodec(TextCodec[CliqueInput]):
    """
    Reads and writes `p clique <vertices> <classes>` documents.

    Every vertex has a `v <vertex> <class>` line and every edge an
    `e <u> <v>` line; vertices and classes are 1-based and `c` lines are
    comments.
    """

    def parse(self, text: str) -> CliqueInput:
        header: tuple[int, int] | None = None
        classes: dict[int, int] = {}
        edges: list[tuple[int, int]] = []

        for number, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split()
            if not parts or parts[0] == "c":
                continue
            if header is None:
                if len(parts) != 4 or parts[:2] != ["p", "clique"]:
                    raise InstanceValidationError(
                        "expected 'p clique <vertices> <classes>'", number
                    )
                n, k = _ints(parts[2:], number)
                header = (n, k)
                continue
            values = _ints(parts[1:], number)
            if parts[0] == "v" and len(values) == 2:
                vertex, colour = values
                if not 1 <= vertex <= header[0]:
                    raise InstanceValidationError(f"unknown vertex {vertex}", number)
                if vertex in classes:
                    raise InstanceValidationError(
                        f"vertex {vertex} coloured twice", number
                    )
                classes[vertex] = colour - 1
            elif parts[0] == "e" and len(values) == 2:
                edges.append((values[0] - 1, values[1] - 1))
            else:
                raise InstanceValidationError(f"malformed line '{raw.strip()}'", number)

        if header is None:
            raise InstanceValidationError("missing 'p clique' header")
        missing = [v for v in range(1, header[0] + 1) if v not in classes]
        if missing:
            raise InstanceValidationError(f"vertex {missing[0]} has no class")
        try:
            return CliqueInput(
                n_vertices=header[0],
                k=header[1],
                classes=tuple(classes[v] for v in range(1, header[0] + 1)),
                edges=tuple(edges),
            )
        except ReductionInputError as e:
            raise InstanceValidationError(e.reason, cause=e) from e
        except ValidationError as e:
            reason = e.errors()[0]["msg"]
            raise InstanceValidationError(reason, cause=e) from e

    def render(self, value: CliqueInput) -> str:
        out = [f"p clique {value.n_vertices} {value.k}"]
        out.extend(f"v {v + 1} {c + 1}" for v, c in enumerate(value.classes))
        out.extend(f"e {u + 1} {v + 1}" for u, v in value.edges)
        return "\n".join(out) + "\n"
