"""JSON documents printed by the command line."""

from pydantic import BaseModel

from domain import Matching, RotationStructure, SolveReport, SolveStats


def _pairs(mu: Matching) -> list[tuple[int, int]]:
    return [(m + 1, w + 1) for m, w in mu.sorted_pairs()]


class SolveResponse(BaseModel):
    """Solve outcome; every field is always present."""

    problem: str
    method: str
    optimum: int | list[tuple[int, int]] | None
    witness: list[tuple[int, int]] | None
    stats: SolveStats

    @classmethod
    def from_report(cls, report: SolveReport, with_witness: bool) -> "SolveResponse":
        witness = None
        if with_witness and report.witness is not None:
            witness = _pairs(report.witness)
        return cls(
            problem=report.problem.value,
            method=report.method.value,
            optimum=report.optimum,
            witness=witness,
            stats=report.stats,
        )


class RotationEntry(BaseModel):
    """One rotation as 1-based (man, woman) pairs."""

    id: int
    pairs: list[tuple[int, int]]


class RotationsResponse(BaseModel):
    """Rotations of a strict instance and the arcs of their digraph."""

    man_optimal: list[tuple[int, int]]
    rotations: list[RotationEntry]
    arcs: list[tuple[int, int]]

    @classmethod
    def from_structure(cls, rs: RotationStructure) -> "RotationsResponse":
        return cls(
            man_optimal=_pairs(rs.man_optimal),
            rotations=[
                RotationEntry(
                    id=rotation.id + 1,
                    pairs=[(m + 1, w + 1) for m, w in rotation.pairs],
                )
                for rotation in rs.rotations
            ],
            arcs=[(a + 1, b + 1) for a, b in rs.arcs],
        )


class FuzzMismatch(BaseModel):
    """A trial on which two methods disagreed."""

    trial: int
    problem: str
    instance: str
    values: dict[str, object]


class FuzzResponse(BaseModel):
    """Outcome of a batch of oracle-equivalence trials."""

    trials: int
    checks: int
    skipped: int
    mismatches: list[FuzzMismatch]
