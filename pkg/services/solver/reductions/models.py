"""Inputs, outputs and reports of the hardness-instance generators."""

import itertools
import math
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, Field, PrivateAttr, model_validator

from domain import Instance
from exceptions import ReductionInputError

Side = Literal["m", "w"]


class ReductionKind(StrEnum):
    """Reduction family."""

    CLIQUE_SESM = "clique-sesm"
    CLIQUE_BSM = "clique-bsm"
    CLIQUE_MAX_SMT = "clique-maxsmt"
    CLIQUE_MIN_SMT = "clique-minsmt"
    SAT_SESM = "sat-sesm"
    SAT_BSM = "sat-bsm"

    @property
    def is_clique(self) -> bool:
        return self.value.startswith("clique")


class ClassEdge(BaseModel, frozen=True):
    """Edge t of the edge set between colour classes i < j (all 1-based)."""

    i: int
    j: int
    t: int
    u: int
    v: int


class CliqueInput(BaseModel, frozen=True):
    """A graph with its vertex set split into k equal colour classes."""

    n_vertices: int = Field(ge=1)
    k: int = Field(ge=2)
    classes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    _members: list[tuple[int, ...]] = PrivateAttr()
    _position: dict[int, int] = PrivateAttr()
    _class_edges: list[ClassEdge] = PrivateAttr()

    @model_validator(mode="after")
    def _validate_partition(self) -> "CliqueInput":
        if len(self.classes) != self.n_vertices:
            raise ReductionInputError(
                f"{len(self.classes)} class labels for {self.n_vertices} vertices"
            )
        sizes = [0] * self.k
        for vertex, colour in enumerate(self.classes):
            if not 0 <= colour < self.k:
                raise ReductionInputError(f"vertex {vertex + 1} has unknown class")
            sizes[colour] += 1
        if len(set(sizes)) != 1:
            raise ReductionInputError("colour classes differ in size")
        if sizes[0] < 2:
            raise ReductionInputError("colour classes need at least two vertices")

        seen: set[frozenset[int]] = set()
        for u, v in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ReductionInputError(f"edge {{{u + 1},{v + 1}}} leaves the graph")
            if self.classes[u] == self.classes[v]:
                raise ReductionInputError(
                    f"edge {{{u + 1},{v + 1}}} lies inside a colour class"
                )
            key = frozenset((u, v))
            if key in seen:
                raise ReductionInputError(f"edge {{{u + 1},{v + 1}}} listed twice")
            seen.add(key)
        self._index()
        return self

    def _index(self) -> None:
        self._members = [
            tuple(v for v in range(self.n_vertices) if self.classes[v] == colour)
            for colour in range(self.k)
        ]
        self._position = {
            v: j for members in self._members for j, v in enumerate(members, start=1)
        }
        oriented = []
        for u, v in self.edges:
            if self.classes[u] > self.classes[v]:
                u, v = v, u
            oriented.append(
                (self.classes[u], self.classes[v], self._position[u], self._position[v])
            )
        self._class_edges = []
        for (ci, cj), group in itertools.groupby(sorted(oriented), lambda e: e[:2]):
            for t, (_, _, pu, pv) in enumerate(group, start=1):
                self._class_edges.append(
                    ClassEdge(
                        i=ci + 1,
                        j=cj + 1,
                        t=t,
                        u=self._members[ci][pu - 1],
                        v=self._members[cj][pv - 1],
                    )
                )

    @property
    def p(self) -> int:
        return self.n_vertices // self.k

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex(self, i: int, j: int) -> int:
        """Vertex v^i_j (1-based class and position)."""
        return self._members[i - 1][j - 1]

    def position(self, vertex: int) -> tuple[int, int]:
        """(class, position) of a vertex, both 1-based."""
        return self.classes[vertex] + 1, self._position[vertex]

    @property
    def class_edges(self) -> list[ClassEdge]:
        """Edges in global order: by class pair, then by endpoint positions."""
        return list(self._class_edges)

    def edges_between(self, i: int, j: int) -> list[ClassEdge]:
        return [e for e in self._class_edges if (e.i, e.j) == (i, j)]

    def incident(self, i: int, j: int) -> list[ClassEdge]:
        """Edges incident to v^i_j in global order."""
        v = self.vertex(i, j)
        return [e for e in self._class_edges if v in (e.u, e.v)]

    def class_degree(self, i: int) -> int:
        return sum(1 for e in self._class_edges if i in (e.i, e.j))


class SatBlock(BaseModel, frozen=True):
    """A group of consecutive clauses and the assignments satisfying all of them."""

    index: int
    clauses: tuple[tuple[int, ...], ...]
    variables: tuple[int, ...]
    true_sets: tuple[frozenset[int], ...]

    @property
    def size(self) -> int:
        """Number of satisfying partial assignments."""
        return len(self.true_sets)

    def false_set(self, j: int) -> frozenset[int]:
        """Variables the j-th assignment (1-based) sets to false."""
        return frozenset(self.variables) - self.true_sets[j - 1]


class SatInput(BaseModel, frozen=True):
    """A CNF formula split into blocks of block_size consecutive clauses."""

    n_vars: int = Field(ge=1)
    clauses: tuple[tuple[int, ...], ...]
    block_size: int = Field(default=1, ge=1)
    sparsity: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _validate_formula(self) -> "SatInput":
        if not self.clauses:
            raise ReductionInputError("the formula has no clauses")
        for number, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ReductionInputError(f"clause {number} is empty")
            for literal in clause:
                if literal == 0 or abs(literal) > self.n_vars:
                    raise ReductionInputError(
                        f"clause {number} has invalid literal {literal}"
                    )
        if len(self.clauses) > self.s * self.n_vars:
            raise ReductionInputError(
                f"{len(self.clauses)} clauses exceed sparsity {self.s} "
                f"for {self.n_vars} variables"
            )
        return self

    @property
    def s(self) -> int:
        if self.sparsity is not None:
            return self.sparsity
        return max(1, math.ceil(len(self.clauses) / self.n_vars))

    @property
    def width(self) -> int:
        """Largest clause size."""
        return max(len(clause) for clause in self.clauses)

    @property
    def padded_clauses(self) -> tuple[tuple[int, ...], ...]:
        """Clauses padded with (x1 or not x1) to a multiple of block_size."""
        missing = -len(self.clauses) % self.block_size
        return self.clauses + ((1, -1),) * missing

    @property
    def n_blocks(self) -> int:
        return len(self.padded_clauses) // self.block_size

    def blocks(self) -> list[SatBlock]:
        """Splits the padded formula and enumerates each block's assignments."""
        padded = self.padded_clauses
        blocks = []
        for i in range(self.n_blocks):
            chunk = padded[i * self.block_size : (i + 1) * self.block_size]
            variables = tuple(sorted({abs(lit) for clause in chunk for lit in clause}))
            true_sets = []
            for mask in range(1 << len(variables)):
                true = frozenset(
                    x for b, x in enumerate(variables) if mask >> b & 1
                )
                if all(
                    any((lit > 0) == (abs(lit) in true) for lit in clause)
                    for clause in chunk
                ):
                    true_sets.append(true)
            blocks.append(
                SatBlock(
                    index=i + 1,
                    clauses=chunk,
                    variables=variables,
                    true_sets=tuple(true_sets),
                )
            )
        return blocks


class AgentRole(BaseModel, frozen=True):
    """Gadget membership of one agent."""

    side: Side
    gadget: str
    index: tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if not self.index:
            return self.gadget
        return f"{self.gadget}[{','.join(map(str, self.index))}]"


class Predictions(BaseModel, frozen=True):
    """Quantities the construction promises before it is built."""

    agents: int
    happy_pairs: int
    pool: int
    graph: Literal["primal", "rotation"]
    treewidth_bound: int
    target_kind: Literal["delta", "bal", "max_size", "min_size"]
    target: int
    extras: dict[str, int] = Field(default_factory=dict)


class ReductionMetadata(BaseModel, frozen=True):
    """Side-car description of a generated instance."""

    kind: ReductionKind
    relaxed: bool
    predicted: Predictions
    men_roles: tuple[AgentRole, ...] = ()
    women_roles: tuple[AgentRole, ...] = ()
    unsatisfiable_block: int | None = None


class ReductionOutput(BaseModel, frozen=True):
    """A generated instance together with its metadata and source input."""

    instance: Instance | None
    metadata: ReductionMetadata
    source: CliqueInput | SatInput

    _lookup: dict[tuple[Side, str, tuple[int, ...]], int] = PrivateAttr()

    def model_post_init(self, __context) -> None:
        self._lookup = {}
        for side, roles in (
            ("m", self.metadata.men_roles),
            ("w", self.metadata.women_roles),
        ):
            for agent, role in enumerate(roles):
                self._lookup[(side, role.gadget, role.index)] = agent

    @property
    def kind(self) -> ReductionKind:
        return self.metadata.kind

    @property
    def predicted(self) -> Predictions:
        return self.metadata.predicted

    def man(self, gadget: str, *index: int) -> int:
        """Index of the man playing the given role."""
        return self._lookup[("m", gadget, index)]

    def woman(self, gadget: str, *index: int) -> int:
        """Index of the woman playing the given role."""
        return self._lookup[("w", gadget, index)]

    def men_in(self, gadget: str) -> list[int]:
        return [
            m for m, role in enumerate(self.metadata.men_roles) if role.gadget == gadget
        ]


class CheckResult(BaseModel, frozen=True):
    """Outcome of one structural check."""

    name: str
    status: Literal["pass", "fail", "skipped"]
    detail: str = ""


class VerificationReport(BaseModel, frozen=True):
    """All structural checks run against one reduction output."""

    kind: ReductionKind
    relaxed: bool
    checks: tuple[CheckResult, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    def status(self, name: str) -> str | None:
        return next((c.status for c in self.checks if c.name == name), None)
