"""Dynamic programs over nice tree decompositions of the rotation graph."""

import time
from abc import ABC, abstractmethod
from collections.abc import Hashable
from enum import StrEnum

from matching_common import UnsupportedInputError, setup_logging
from pydantic import BaseModel

from domain.models import Instance, Matching, Method, Problem, SolveReport, SolveStats
from domain.rotations import RotationStructure, closure, eliminate, rotation_graph
from domain.tree_decomposition import NiceTreeDecomposition, NodeKind, validate
from exceptions import (
    DecompositionMismatchError,
    InvalidStateError,
    TreeDecompositionError,
)

logger = setup_logging()

# per node: chosen rotations of the bag -> key -> (value, back-pointer)
StateTable = dict[frozenset[int], dict[Hashable, tuple[int, object]]]


class ManKind(StrEnum):
    """Whether a state already fixes the final partner of a man."""

    SETTLED = "settled"
    UNSETTLED = "unsettled"


class ManView(BaseModel, frozen=True):
    """What a state (node, chosen rotations) knows about one man."""

    man: int
    ell: int | None
    eff: int | None
    segment: tuple[int, ...]
    kind: ManKind
    partner: int


class _Context:
    """Per-solve caches: closures, matchings of closed sets and man paths."""

    def __init__(
        self, inst: Instance, rs: RotationStructure, ntd: NiceTreeDecomposition
    ):
        self.inst = inst
        self.rs = rs
        self.ntd = ntd
        self.men = sorted(rs.man_optimal.men)
        self.paths = {m: rs.per_man_path.get(m, ()) for m in self.men}
        self._closures: dict[int, frozenset[int]] = {}
        self._matchings: dict[frozenset[int], tuple[Matching, int, int]] = {}

    def closure_of(self, rotation_id: int) -> frozenset[int]:
        if rotation_id not in self._closures:
            self._closures[rotation_id] = closure(self.rs, [rotation_id])
        return self._closures[rotation_id]

    def closed_matching(self, subset: frozenset[int]) -> tuple[Matching, int, int]:
        """Matching of the closure of subset with its two satisfaction sums."""
        closed = frozenset().union(*(self.closure_of(r) for r in subset))
        if closed not in self._matchings:
            mu = eliminate(self.rs, closed)
            sat_m = sum(self.inst.man_rank(m, w) for m, w in mu.pairs)
            sat_w = sum(self.inst.woman_rank(w, m) for m, w in mu.pairs)
            self._matchings[closed] = (mu, sat_m, sat_w)
        return self._matchings[closed]

    def closed_in_bag(self, subset: frozenset[int], bag: frozenset[int]) -> bool:
        """Whether the closure of subset meets the bag only inside subset."""
        return all(self.closure_of(r) & bag <= subset for r in subset)

    def ranks(self, m: int, subset: frozenset[int]) -> tuple[int, int]:
        mu, _, _ = self.closed_matching(subset)
        w = mu.partner_of_man(m)
        return self.inst.man_rank(m, w), self.inst.woman_rank(w, m)


def _last_on_path(path: tuple[int, ...], members: frozenset[int]) -> int | None:
    for rotation_id in reversed(path):
        if rotation_id in members:
            return rotation_id
    return None


def _view(ctx: _Context, node_id: int, subset: frozenset[int], m: int) -> ManView:
    bag = ctx.ntd.node(node_id).bag
    gamma = ctx.ntd.cumulative(node_id)
    path = ctx.paths[m]
    relevant = any(r in bag for r in path)
    ell = _last_on_path(path, subset)
    if ell is not None:
        after = path[path.index(ell) + 1 :]
        eff = next((r for r in after if r in bag and r not in subset), None)
    else:
        eff = next((r for r in path if r in bag), None)

    segment: tuple[int, ...] = ()
    if relevant:
        start = path.index(ell) if ell is not None else 0
        end = path.index(eff) if eff is not None else len(path) - 1
        segment = path[start : end + 1]

    settled = set(path) <= gamma or (relevant and set(segment) <= gamma)
    mu, _, _ = ctx.closed_matching(subset)
    return ManView(
        man=m,
        ell=ell,
        eff=eff,
        segment=segment,
        kind=ManKind.SETTLED if settled else ManKind.UNSETTLED,
        partner=mu.partner_of_man(m),
    )


def state_views(
    inst: Instance,
    rs: RotationStructure,
    ntd: NiceTreeDecomposition,
    node_id: int,
    subset: frozenset[int],
) -> dict[int, ManView]:
    """
    Describes every always-matched man with respect to a state.

    The partner field is the man's partner in the matching of the closure of
    the chosen rotations, which is what the tables are evaluated at.

    Raises:
        InvalidStateError: If the chosen rotations are not in the node's bag.
    """
    bag = ntd.node(node_id).bag
    if not subset <= bag:
        raise InvalidStateError(node_id, f"rotations {sorted(subset - bag)} not in bag")
    ctx = _Context(inst, rs, ntd)
    return {m: _view(ctx, node_id, subset, m) for m in ctx.men}


class FptObjective(ABC):
    """How table keys and values evolve under the rotation-graph recurrences."""

    problem: Problem
    table_name: str

    @abstractmethod
    def leaf(self, sat_m: int, sat_w: int) -> tuple[Hashable, int]:
        """Key and value of the single leaf entry."""

    @abstractmethod
    def shift(
        self, key: Hashable, value: int, d_m: int, d_w: int
    ) -> tuple[Hashable, int]:
        """Applies the change of tentative satisfactions at an introduce node."""

    @abstractmethod
    def join(
        self,
        left: tuple[Hashable, int],
        right: tuple[Hashable, int],
        sat_m: int,
        sat_w: int,
    ) -> tuple[Hashable, int]:
        """Combines two child entries, removing the bag's shared contribution once."""

    def better(self, new: int, old: int) -> bool:
        return False

    @abstractmethod
    def optimum(self, root: dict[Hashable, int]) -> tuple[object, Hashable | None]:
        """Optimum read off the root row and the key attaining it."""


class PairsObjective(FptObjective):
    """Table N: reachable (men's sum, women's sum) pairs."""

    problem = Problem.GSM
    table_name = "N"

    def leaf(self, sat_m, sat_w):
        return (sat_m, sat_w), 0

    def shift(self, key, value, d_m, d_w):
        return (key[0] + d_m, key[1] + d_w), 0

    def join(self, left, right, sat_m, sat_w):
        (a, _), (b, _) = left, right
        return (a[0] + b[0] - sat_m, a[1] + b[1] - sat_w), 0

    def optimum(self, root):
        return sorted(root), None


class DifferenceObjective(FptObjective):
    """Table S: reachable differences between the two sums."""

    problem = Problem.SESM
    table_name = "S"

    def leaf(self, sat_m, sat_w):
        return sat_m - sat_w, 0

    def shift(self, key, value, d_m, d_w):
        return key + d_m - d_w, 0

    def join(self, left, right, sat_m, sat_w):
        return left[0] + right[0] - (sat_m - sat_w), 0

    def optimum(self, root):
        d = min(root, key=lambda d: (abs(d), d))
        return abs(d), d


class BalanceObjective(FptObjective):
    """Table B: least women's sum for every reachable men's sum."""

    problem = Problem.BSM
    table_name = "B"

    def leaf(self, sat_m, sat_w):
        return sat_m, sat_w

    def shift(self, key, value, d_m, d_w):
        return key + d_m, value + d_w

    def join(self, left, right, sat_m, sat_w):
        return left[0] + right[0] - sat_m, left[1] + right[1] - sat_w

    def better(self, new, old):
        return new < old

    def optimum(self, root):
        b = min(root, key=lambda b: (max(b, root[b]), b))
        return max(b, root[b]), b


def _subsets(bag: frozenset[int]) -> list[frozenset[int]]:
    """All subsets of a bag in ascending bitmask order over ascending ids."""
    slots = sorted(bag)
    return [
        frozenset(r for i, r in enumerate(slots) if mask >> i & 1)
        for mask in range(1 << len(slots))
    ]


class FptSolver:
    """Fills one rotation-graph table over a nice decomposition."""

    def __init__(
        self,
        inst: Instance,
        rs: RotationStructure,
        ntd: NiceTreeDecomposition,
        objective: FptObjective,
    ):
        self._ctx = _Context(inst, rs, ntd)
        self._ntd = ntd
        self._objective = objective
        self._tables: list[StateTable] = []

    def _store(self, row: dict, key: Hashable, value: int, back: object) -> None:
        if key not in row or self._objective.better(value, row[key][0]):
            row[key] = (value, back)

    def _introduce_shift(
        self, child_id: int, subset: frozenset[int], rho: int
    ) -> tuple[int, int]:
        ctx = self._ctx
        gamma_child = self._ntd.cumulative(child_id)
        rho_closure = ctx.closure_of(rho)
        smaller = subset - {rho}
        d_m = d_w = 0
        for m in ctx.men:
            path = ctx.paths[m]
            rho_m = _last_on_path(path, rho_closure)
            if rho_m is None or rho_m in gamma_child:
                continue
            ell = _last_on_path(path, subset)
            if ell is not None and ell not in ctx.closure_of(rho_m):
                continue
            after_m, after_w = ctx.ranks(m, subset)
            before_m, before_w = ctx.ranks(m, smaller)
            d_m += after_m - before_m
            d_w += after_w - before_w
        return d_m, d_w

    def _leaf(self) -> StateTable:
        _, sat_m, sat_w = self._ctx.closed_matching(frozenset())
        key, value = self._objective.leaf(sat_m, sat_w)
        return {frozenset(): {key: (value, None)}}

    def _forget(self, node_id: int, child: StateTable, rho: int) -> StateTable:
        table: StateTable = {}
        for subset in _subsets(self._ntd.node(node_id).bag):
            row: dict = {}
            for source in (subset, subset | {rho}):
                for key, (value, _) in child.get(source, {}).items():
                    self._store(row, key, value, (source, key))
            if row:
                table[subset] = row
        return table

    def _introduce(
        self, node_id: int, child_id: int, child: StateTable, rho: int
    ) -> StateTable:
        table: StateTable = {}
        bag = self._ntd.node(node_id).bag
        for subset in _subsets(bag):
            if not self._ctx.closed_in_bag(subset, bag):
                continue
            if rho not in subset:
                source_row = child.get(subset, {})
                row = {
                    key: (value, (subset, key))
                    for key, (value, _) in source_row.items()
                }
            else:
                source = subset - {rho}
                row = {}
                if source not in child:
                    continue
                d_m, d_w = self._introduce_shift(child_id, subset, rho)
                for key, (value, _) in child[source].items():
                    new_key, new_value = self._objective.shift(key, value, d_m, d_w)
                    self._store(row, new_key, new_value, (source, key))
            if row:
                table[subset] = row
        return table

    def _join(self, left: StateTable, right: StateTable) -> StateTable:
        table: StateTable = {}
        for subset, left_row in left.items():
            right_row = right.get(subset)
            if not right_row:
                continue
            _, sat_m, sat_w = self._ctx.closed_matching(subset)
            row: dict = {}
            for k1, (v1, _) in left_row.items():
                for k2, (v2, _) in right_row.items():
                    key, value = self._objective.join((k1, v1), (k2, v2), sat_m, sat_w)
                    self._store(row, key, value, (k1, k2))
            table[subset] = row
        return table

    def run(self) -> tuple[dict[Hashable, int], int]:
        """Fills all tables bottom-up; returns the root row and entry count."""
        entries = 0
        for node in self._ntd.nodes:
            match node.kind:
                case NodeKind.LEAF:
                    table = self._leaf()
                case NodeKind.FORGET:
                    table = self._forget(
                        node.id, self._tables[node.children[0]], node.vertex
                    )
                case NodeKind.INTRODUCE:
                    child_id = node.children[0]
                    table = self._introduce(
                        node.id, child_id, self._tables[child_id], node.vertex
                    )
                case NodeKind.JOIN:
                    table = self._join(
                        self._tables[node.children[0]], self._tables[node.children[1]]
                    )
            self._tables.append(table)
            entries += sum(len(row) for row in table.values())
            logger.debug(
                "State table computed",
                extra={"node": node.id, "kind": node.kind, "entries": entries},
            )
        root = self._tables[self._ntd.root].get(frozenset(), {})
        return {key: value for key, (value, _) in root.items()}, entries

    def chosen_rotations(self, key: Hashable) -> frozenset[int]:
        """Rotations taken at forget nodes along the back-pointers of a root key."""
        chosen: set[int] = set()
        stack = [(self._ntd.root, frozenset(), key)]
        while stack:
            node_id, subset, k = stack.pop()
            node = self._ntd.node(node_id)
            _, back = self._tables[node_id][subset][k]
            match node.kind:
                case NodeKind.FORGET | NodeKind.INTRODUCE:
                    source, child_key = back
                    if node.kind is NodeKind.FORGET and node.vertex in source:
                        chosen.add(node.vertex)
                    stack.append((node.children[0], source, child_key))
                case NodeKind.JOIN:
                    k1, k2 = back
                    stack.append((node.children[0], subset, k1))
                    stack.append((node.children[1], subset, k2))
        return frozenset(chosen)

    def witness(self, key: Hashable) -> Matching:
        closed = closure(self._ctx.rs, self.chosen_rotations(key))
        return eliminate(self._ctx.rs, closed)


def _check_decomposition(rs: RotationStructure, ntd: NiceTreeDecomposition) -> int:
    try:
        return validate(ntd.as_tree_decomposition(), rotation_graph(rs))
    except TreeDecompositionError as e:
        raise DecompositionMismatchError("rotation", e) from e


def fpt_solve(
    inst: Instance,
    rs: RotationStructure,
    ntd: NiceTreeDecomposition,
    objective: FptObjective,
) -> SolveReport:
    """
    Solves one objective with the rotation-graph dynamic program.

    Raises:
        UnsupportedInputError: If the instance has ties.
        DecompositionMismatchError: If ntd does not decompose the rotation graph.
    """
    if inst.has_ties:
        raise UnsupportedInputError(
            objective.problem.value, "preference lists contain ties"
        )
    started = time.perf_counter()
    width = _check_decomposition(rs, ntd)

    logger.info(
        "Processing FPT solve",
        extra={
            "problem": objective.problem,
            "rotations": len(rs.rotations),
            "nodes": len(ntd.nodes),
            "width": width,
        },
    )
    solver = FptSolver(inst, rs, ntd, objective)
    root, entries = solver.run()
    optimum, key = objective.optimum(root)
    witness = solver.witness(key) if key is not None else None

    logger.info(
        "FPT solve processed",
        extra={"problem": objective.problem, "entries": entries},
    )
    return SolveReport(
        problem=objective.problem,
        method=Method.FPT,
        optimum=optimum,
        witness=witness,
        stats=SolveStats(
            nodes=len(ntd.nodes),
            width=width,
            table_entries=entries,
            tables={objective.table_name: entries},
            elapsed_seconds=time.perf_counter() - started,
        ),
    )


def fpt_solve_gsm(
    inst: Instance, rs: RotationStructure, ntd: NiceTreeDecomposition
) -> set[tuple[int, int]]:
    """Set of (men's sum, women's sum) over all stable matchings."""
    report = fpt_solve(inst, rs, ntd, PairsObjective())
    return set(report.optimum)


def fpt_solve_sesm(
    inst: Instance, rs: RotationStructure, ntd: NiceTreeDecomposition
) -> SolveReport:
    return fpt_solve(inst, rs, ntd, DifferenceObjective())


def fpt_solve_bsm(
    inst: Instance, rs: RotationStructure, ntd: NiceTreeDecomposition
) -> SolveReport:
    return fpt_solve(inst, rs, ntd, BalanceObjective())


def sesm_from_pairs(pairs: set[tuple[int, int]]) -> int:
    return min(abs(t_m - t_w) for t_m, t_w in pairs)


def bsm_from_pairs(pairs: set[tuple[int, int]]) -> int:
    return min(max(t_m, t_w) for t_m, t_w in pairs)
