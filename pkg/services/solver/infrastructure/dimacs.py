"""DIMACS CNF documents."""

from matching_common import InstanceValidationError
from matching_common.infrastructure import TextCodec
from pydantic import ValidationError

from exceptions import ReductionInputError
from reductions.models import SatInput


class DimacsCodec(TextCodec[SatInput]):
    """
    Reads and writes `p cnf <variables> <clauses>` formulas.

    Clauses are whitespace-separated literals terminated by 0 and may span
    lines. The block size and sparsity are not part of the document and come
    from the codec.
    """

    def __init__(self, block_size: int = 1, sparsity: int | None = None):
        self._block_size = block_size
        self._sparsity = sparsity

    def parse(self, text: str) -> SatInput:
        header: tuple[int, int] | None = None
        clauses: list[tuple[int, ...]] = []
        current: list[int] = []

        for number, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split()
            if not parts or parts[0] in ("c", "%"):
                continue
            if parts[0] == "p":
                if header is not None or len(parts) != 4 or parts[1] != "cnf":
                    raise InstanceValidationError(
                        "expected a single 'p cnf <variables> <clauses>'", number
                    )
                try:
                    header = (int(parts[2]), int(parts[3]))
                except ValueError as e:
                    raise InstanceValidationError(
                        "non-integer header counts", number, e
                    ) from e
                continue
            if header is None:
                raise InstanceValidationError("clause before 'p cnf' header", number)
            for token in parts:
                try:
                    literal = int(token)
                except ValueError as e:
                    raise InstanceValidationError(
                        f"invalid literal '{token}'", number, e
                    ) from e
                if literal == 0:
                    clauses.append(tuple(current))
                    current = []
                else:
                    current.append(literal)

        if header is None:
            raise InstanceValidationError("missing 'p cnf' header")
        if current:
            clauses.append(tuple(current))
        if len(clauses) != header[1]:
            raise InstanceValidationError(
                f"header declares {header[1]} clauses, found {len(clauses)}"
            )
        try:
            return SatInput(
                n_vars=header[0],
                clauses=tuple(clauses),
                block_size=self._block_size,
                sparsity=self._sparsity,
            )
        except ReductionInputError as e:
            raise InstanceValidationError(e.reason, cause=e) from e
        except ValidationError as e:
            reason = e.errors()[0]["msg"]
            raise InstanceValidationError(reason, cause=e) from e

    def render(self, value: SatInput) -> str:
        out = [f"p cnf {value.n_vars} {len(value.clauses)}"]
        out.extend(" ".join(map(str, clause)) + " 0" for clause in value.clauses)
        return "\n".join(out) + "\n"
