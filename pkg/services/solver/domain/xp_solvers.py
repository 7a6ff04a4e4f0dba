"""Dynamic programs over nice tree decompositions of the primal graph."""

import time
from abc import ABC, abstractmethod

from matching_common import UnsupportedInputError, setup_logging

from domain.gale_shapley import lattice_extremes
from domain.models import Instance, Matching, Method, Problem, SolveReport, SolveStats
from domain.stability import primal_graph
from domain.tree_decomposition import NiceTreeDecomposition, NodeKind, validate
from exceptions import DecompositionMismatchError, TreeDecompositionError

logger = setup_logging()

Assignment = tuple[tuple[int, int | None], ...]
"""Sorted (bag vertex, partner vertex or None) pairs."""

# per node: assignment -> target -> (value, back-pointer)
Table = dict[Assignment, dict[int, tuple[int, object]]]


class XpObjective(ABC):
    """Scoring rules plugged into the primal-graph dynamic program."""

    problem: Problem
    core_only: bool
    """Whether always-matched agents must be matched and the rest single."""

    @abstractmethod
    def gain(
        self, inst: Instance, vertex: int, partner: int | None
    ) -> tuple[int, int]:
        """
        Contribution of one agent when it is introduced.

        Args:
            inst: The instance.
            vertex: Primal-graph vertex of the introduced agent.
            partner: Vertex of its partner, None when single.

        Returns:
            Increments of the target coordinate and of the stored value.
        """

    @abstractmethod
    def better(self, new: int, old: int) -> bool:
        """Whether a stored value should be replaced."""

    @abstractmethod
    def optimum(self, root: dict[int, int]) -> tuple[int, int]:
        """
        Reads the optimum off the root row.

        Args:
            root: Target coordinate to stored value for the empty assignment.

        Returns:
            The optimum and the target coordinate attaining it.
        """


def _ranks(inst: Instance, vertex: int, partner: int) -> tuple[int, int]:
    """Returns (man's rank of the woman, woman's rank of the man)."""
    side, index = inst.agent_of_vertex(vertex)
    _, other = inst.agent_of_vertex(partner)
    m, w = (index, other) if side == "m" else (other, index)
    return inst.man_rank(m, w), inst.woman_rank(w, m)


class SexEqualObjective(XpObjective):
    problem = Problem.SESM
    core_only = True

    def gain(self, inst, vertex, partner):
        if partner is None or vertex >= inst.n_men:
            return 0, 0
        p_m, p_w = _ranks(inst, vertex, partner)
        return p_m - p_w, 0

    def better(self, new, old):
        return False

    def optimum(self, root):
        t = min(root, key=lambda t: (abs(t), t))
        return abs(t), t


class BalancedObjective(XpObjective):
    problem = Problem.BSM
    core_only = True

    def gain(self, inst, vertex, partner):
        if partner is None:
            return 0, 0
        p_m, p_w = _ranks(inst, vertex, partner)
        return (p_m, 0) if vertex < inst.n_men else (0, p_w)

    def better(self, new, old):
        return new < old

    def optimum(self, root):
        t = min(root, key=lambda t: (max(t, root[t]), t))
        return max(t, root[t]), t


class CardinalityObjective(XpObjective):
    core_only = False

    def __init__(self, maximize: bool):
        self._maximize = maximize
        self.problem = Problem.MAX_SMT if maximize else Problem.MIN_SMT

    def gain(self, inst, vertex, partner):
        return 0, int(partner is not None and vertex < inst.n_men)

    def better(self, new, old):
        return new > old if self._maximize else new < old

    def optimum(self, root):
        return root[0], 0


class XpSolver:
    """Runs one objective over a nice decomposition of the primal graph."""

    def __init__(
        self, inst: Instance, ntd: NiceTreeDecomposition, objective: XpObjective
    ):
        self._inst = inst
        self._ntd = ntd
        self._objective = objective
        self._neighbours = [set() for _ in range(inst.n_agents)]
        for m, w in inst.acceptable_pairs():
            self._neighbours[inst.man_vertex(m)].add(inst.woman_vertex(w))
            self._neighbours[inst.woman_vertex(w)].add(inst.man_vertex(m))
        self._options = self._agent_options()
        self._tables: list[Table] = []

    def _agent_options(self) -> list[list[int | None]]:
        inst = self._inst
        if not self._objective.core_only:
            return [
                [*sorted(self._neighbours[x], key=lambda y: self._rank(x, y)), None]
                for x in range(inst.n_agents)
            ]
        extremes = lattice_extremes(inst)
        core = {inst.man_vertex(m) for m in extremes.matched_men} | {
            inst.woman_vertex(w) for w in extremes.matched_women
        }
        return [
            sorted((self._neighbours[x] & core), key=lambda y: self._rank(x, y))
            if x in core
            else [None]
            for x in range(inst.n_agents)
        ]

    def _rank(self, x: int, y: int | None) -> int:
        """Rank of y in x's list; being single ranks below every partner."""
        if y is None:
            return self._inst.n_agents + 1
        p_m, p_w = _ranks(self._inst, x, y)
        return p_m if x < self._inst.n_men else p_w

    def _blocks(self, x: int, y: int, f: dict[int, int | None]) -> bool:
        return self._rank(x, y) < self._rank(x, f[x]) and self._rank(y, x) < self._rank(
            y, f[y]
        )

    def _correction(self, f: Assignment) -> tuple[int, int]:
        dt = dv = 0
        for x, partner in f:
            gt, gv = self._objective.gain(self._inst, x, partner)
            dt += gt
            dv += gv
        return dt, dv

    @staticmethod
    def _store(
        table: Table, f: Assignment, t: int, v: int, back: object, better
    ) -> None:
        row = table.setdefault(f, {})
        if t not in row or better(v, row[t][0]):
            row[t] = (v, back)

    def _introduce(self, child: Table, x: int) -> Table:
        table: Table = {}
        better = self._objective.better
        for fc, row in child.items():
            assigned = dict(fc)
            used = {p for p in assigned.values() if p is not None}
            expecting = [y for y, p in fc if p == x]
            for option in self._options[x]:
                if option is not None and option in used:
                    continue
                if expecting and expecting != [option]:
                    continue
                if option in assigned and assigned[option] != x:
                    continue
                f = dict(assigned)
                f[x] = option
                if any(
                    self._blocks(x, y, f) for y in self._neighbours[x] if y in assigned
                ):
                    continue
                key = tuple(sorted(f.items()))
                gt, gv = self._objective.gain(self._inst, x, option)
                for t, (v, _) in row.items():
                    self._store(table, key, t + gt, v + gv, (fc, t), better)
        return table

    def _forget(self, child: Table, x: int) -> Table:
        table: Table = {}
        better = self._objective.better
        for fc, row in child.items():
            key = tuple(item for item in fc if item[0] != x)
            for t, (v, _) in row.items():
                self._store(table, key, t, v, (fc, t), better)
        return table

    def _join(self, left: Table, right: Table) -> Table:
        table: Table = {}
        better = self._objective.better
        for f, row in left.items():
            other = right.get(f)
            if not other:
                continue
            ct, cv = self._correction(f)
            for t1, (v1, _) in row.items():
                for t2, (v2, _) in other.items():
                    self._store(table, f, t1 + t2 - ct, v1 + v2 - cv, (t1, t2), better)
        return table

    def run(self) -> tuple[dict[int, int], int]:
        """Fills every table bottom-up; returns the root row and entry count."""
        entries = 0
        for node in self._ntd.nodes:
            match node.kind:
                case NodeKind.LEAF:
                    table: Table = {(): {0: (0, None)}}
                case NodeKind.INTRODUCE:
                    table = self._introduce(self._tables[node.children[0]], node.vertex)
                case NodeKind.FORGET:
                    table = self._forget(self._tables[node.children[0]], node.vertex)
                case NodeKind.JOIN:
                    table = self._join(
                        self._tables[node.children[0]], self._tables[node.children[1]]
                    )
            self._tables.append(table)
            entries += sum(len(row) for row in table.values())
            logger.debug(
                "Node table computed",
                extra={"node": node.id, "kind": node.kind, "entries": entries},
            )
        root = self._tables[self._ntd.root].get((), {})
        return {t: v for t, (v, _) in root.items()}, entries

    def witness(self, t: int) -> Matching:
        """Follows back-pointers from the root entry with target t."""
        pairs: list[tuple[int, int]] = []
        stack: list[tuple[int, Assignment, int]] = [(self._ntd.root, (), t)]
        while stack:
            node_id, f, target = stack.pop()
            node = self._ntd.node(node_id)
            _, back = self._tables[node_id][f][target]
            match node.kind:
                case NodeKind.INTRODUCE:
                    fc, tc = back
                    stack.append((node.children[0], fc, tc))
                case NodeKind.FORGET:
                    fc, tc = back
                    partner = dict(fc)[node.vertex]
                    if node.vertex < self._inst.n_men and partner is not None:
                        pairs.append((node.vertex, partner - self._inst.n_men))
                    stack.append((node.children[0], fc, tc))
                case NodeKind.JOIN:
                    t1, t2 = back
                    stack.append((node.children[0], f, t1))
                    stack.append((node.children[1], f, t2))
        return Matching.from_pairs(pairs)


def _check_decomposition(inst: Instance, ntd: NiceTreeDecomposition) -> int:
    try:
        return validate(ntd.as_tree_decomposition(), primal_graph(inst))
    except TreeDecompositionError as e:
        raise DecompositionMismatchError("primal", e) from e


def xp_solve(
    inst: Instance, ntd: NiceTreeDecomposition, objective: XpObjective
) -> SolveReport:
    """
    Solves one objective with the primal-graph dynamic program.

    Args:
        inst: The instance; strict for the sex-equal and balanced objectives.
        ntd: A nice tree decomposition of the primal graph.
        objective: The scoring rules.

    Returns:
        SolveReport with the optimum, a witness and table statistics.

    Raises:
        UnsupportedInputError: If a strict-only objective gets ties.
        DecompositionMismatchError: If ntd does not decompose the primal graph.
    """
    if objective.core_only and inst.has_ties:
        raise UnsupportedInputError(
            objective.problem.value, "preference lists contain ties"
        )
    started = time.perf_counter()
    width = _check_decomposition(inst, ntd)

    logger.info(
        "Processing XP solve",
        extra={"problem": objective.problem, "nodes": len(ntd.nodes), "width": width},
    )
    solver = XpSolver(inst, ntd, objective)
    root, entries = solver.run()
    optimum, t = objective.optimum(root)
    witness = solver.witness(t)

    logger.info(
        "XP solve processed",
        extra={"problem": objective.problem, "optimum": optimum, "entries": entries},
    )
    return SolveReport(
        problem=objective.problem,
        method=Method.XP,
        optimum=optimum,
        witness=witness,
        stats=SolveStats(
            nodes=len(ntd.nodes),
            width=width,
            table_entries=entries,
            tables={"N": entries},
            elapsed_seconds=time.perf_counter() - started,
        ),
    )


def xp_solve_sesm(inst: Instance, ntd: NiceTreeDecomposition) -> SolveReport:
    return xp_solve(inst, ntd, SexEqualObjective())


def xp_solve_bsm(inst: Instance, ntd: NiceTreeDecomposition) -> SolveReport:
    return xp_solve(inst, ntd, BalancedObjective())


def xp_solve_max_smt(inst: Instance, ntd: NiceTreeDecomposition) -> SolveReport:
    return xp_solve(inst, ntd, CardinalityObjective(maximize=True))


def xp_solve_min_smt(inst: Instance, ntd: NiceTreeDecomposition) -> SolveReport:
    return xp_solve(inst, ntd, CardinalityObjective(maximize=False))
