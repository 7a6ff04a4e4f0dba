"""Rotation poset of a strict instance and the matchings of its closed sets."""

from collections import deque
from collections.abc import Iterable, Iterator, Sequence

import networkx as nx
from matching_common import UnsupportedInputError, setup_logging
from pydantic import BaseModel, PrivateAttr

from domain.gale_shapley import man_optimal
from domain.models import Instance, Matching
from exceptions import NotClosedError, UnknownAgentError, UnknownRotationError

logger = setup_logging()


class Rotation(BaseModel, frozen=True):
    """A cycle of matched pairs; eliminating it moves each man to the next woman."""

    id: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def men(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.pairs)

    def moves(self) -> Iterator[tuple[int, int, int]]:
        """Yields (man, old partner, new partner) for every pair."""
        r = len(self.pairs)
        for i, (m, w) in enumerate(self.pairs):
            yield m, w, self.pairs[(i + 1) % r][1]


class RotationStructure(BaseModel, frozen=True):
    """
    Rotations with their precedence digraph and per-man covering paths.

    Rotation ids follow the elimination order used to build the structure,
    which is a topological order of the digraph.
    """

    rotations: tuple[Rotation, ...]
    arcs: tuple[tuple[int, int], ...]
    per_man_rotations: dict[int, tuple[int, ...]]
    per_man_path: dict[int, tuple[int, ...]]
    man_optimal: Matching
    n_men: int

    _dag: nx.DiGraph | None = PrivateAttr(default=None)

    @property
    def dag(self) -> nx.DiGraph:
        if self._dag is None:
            graph = nx.DiGraph()
            graph.add_nodes_from(range(len(self.rotations)))
            graph.add_edges_from(self.arcs)
            self._dag = graph
        return self._dag

    def rotation(self, rotation_id: int) -> Rotation:
        if not 0 <= rotation_id < len(self.rotations):
            raise UnknownRotationError(rotation_id)
        return self.rotations[rotation_id]

    def predecessors(self, rotation_id: int) -> list[int]:
        return sorted(self.dag.predecessors(rotation_id))


def _successor_woman(
    inst: Instance, by_man: dict[int, int], by_woman: dict[int, int], m: int
) -> int | None:
    entries = inst.men_prefs[m]
    position = next(i for i, (w, _) in enumerate(entries) if w == by_man[m])
    for w, _ in entries[position + 1 :]:
        holder = by_woman.get(w)
        if holder is None:
            return None
        if inst.woman_rank(w, m) < inst.woman_rank(w, holder):
            return w
    return None


def _exposed_rotations(
    inst: Instance, by_man: dict[int, int], by_woman: dict[int, int]
) -> list[tuple[tuple[int, int], ...]]:
    following: dict[int, int] = {}
    for m in sorted(by_man):
        w = _successor_woman(inst, by_man, by_woman, m)
        if w is not None:
            following[m] = by_woman[w]

    cycles: list[tuple[tuple[int, int], ...]] = []
    finished: set[int] = set()
    for start in sorted(following):
        walk: list[int] = []
        on_walk: set[int] = set()
        m = start
        while m in following and m not in finished and m not in on_walk:
            walk.append(m)
            on_walk.add(m)
            m = following[m]
        if m in on_walk:
            cycle = walk[walk.index(m) :]
            first = cycle.index(min(cycle))
            cycle = cycle[first:] + cycle[:first]
            cycles.append(tuple((x, by_man[x]) for x in cycle))
        finished.update(walk)
    cycles.sort(key=lambda pairs: pairs[0][0])
    return cycles


def _bfs_path(dag: nx.DiGraph, source: int, target: int) -> list[int]:
    parent = {source: source}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        if node == target:
            break
        for nxt in sorted(dag.successors(node)):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]


def build_rotation_structure(inst: Instance) -> RotationStructure:
    """
    Exposes and eliminates rotations from the man-optimal matching onwards.

    Every step eliminates the exposed rotation containing the smallest man.
    Precedence arcs come from two labelling rules: consecutive rotations of
    the same man, and for every woman a man moves past, the rotation that
    first gave her a partner she prefers to him. The stored digraph is the
    transitive reduction of those arcs.

    Raises:
        UnsupportedInputError: If the instance has ties.
    """
    if inst.has_ties:
        raise UnsupportedInputError(
            "build_rotation_structure", "preference lists contain ties"
        )

    base = man_optimal(inst)
    by_man = {m: w for m, w in base.pairs}
    by_woman = {w: m for m, w in base.pairs}

    rotations: list[Rotation] = []
    raw_arcs: set[tuple[int, int]] = set()
    last_of_man: dict[int, int] = {}
    # per woman: (rotation id, new partner) in elimination order
    woman_history: dict[int, list[tuple[int, int]]] = {w: [] for w in by_woman}
    initial_partner = dict(by_woman)

    while True:
        exposed = _exposed_rotations(inst, by_man, by_woman)
        if not exposed:
            break
        rotation = Rotation(id=len(rotations), pairs=exposed[0])

        for m, old_w, new_w in rotation.moves():
            if m in last_of_man:
                raw_arcs.add((last_of_man[m], rotation.id))
            last_of_man[m] = rotation.id

            entries = inst.men_prefs[m]
            old_rank = inst.man_rank(m, old_w)
            new_rank = inst.man_rank(m, new_w)
            for w, rank in entries:
                if not old_rank < rank < new_rank:
                    continue
                if inst.woman_rank(w, initial_partner[w]) < inst.woman_rank(w, m):
                    continue
                source = next(
                    rho
                    for rho, partner in woman_history[w]
                    if inst.woman_rank(w, partner) < inst.woman_rank(w, m)
                )
                raw_arcs.add((source, rotation.id))

        for m, _, new_w in rotation.moves():
            by_man[m] = new_w
            by_woman[new_w] = m
            woman_history[new_w].append((rotation.id, m))
        rotations.append(rotation)

    closure_dag = nx.DiGraph()
    closure_dag.add_nodes_from(range(len(rotations)))
    closure_dag.add_edges_from(raw_arcs)
    reduced = nx.transitive_reduction(closure_dag)
    arcs = tuple(sorted(reduced.edges()))

    per_man: dict[int, list[int]] = {m: [] for m in sorted(base.men)}
    for rotation in rotations:
        for m in rotation.men:
            per_man[m].append(rotation.id)

    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(rotations)))
    dag.add_edges_from(arcs)
    per_man_path: dict[int, tuple[int, ...]] = {}
    for m, chain in per_man.items():
        path: list[int] = chain[:1]
        for source, target in zip(chain, chain[1:]):
            path.extend(_bfs_path(dag, source, target)[1:])
        per_man_path[m] = tuple(path)

    logger.debug(
        "Rotation structure built",
        extra={"rotations": len(rotations), "arcs": len(arcs)},
    )

    return RotationStructure(
        rotations=tuple(rotations),
        arcs=arcs,
        per_man_rotations={m: tuple(chain) for m, chain in per_man.items()},
        per_man_path=per_man_path,
        man_optimal=base,
        n_men=inst.n_men,
    )


def _check_ids(rs: RotationStructure, subset: Iterable[int]) -> set[int]:
    ids = set(subset)
    for rotation_id in sorted(ids):
        rs.rotation(rotation_id)
    return ids


def closure(rs: RotationStructure, subset: Iterable[int]) -> frozenset[int]:
    """Smallest closed set containing the given rotations."""
    ids = _check_ids(rs, subset)
    result = set(ids)
    for rotation_id in ids:
        result |= nx.ancestors(rs.dag, rotation_id)
    return frozenset(result)


def is_closed(rs: RotationStructure, subset: Iterable[int]) -> bool:
    ids = _check_ids(rs, subset)
    return all(set(rs.dag.predecessors(r)) <= ids for r in ids)


def eliminate(
    rs: RotationStructure, closed: Iterable[int], order: Sequence[int] | None = None
) -> Matching:
    """
    Applies the rotations of a closed set to the man-optimal matching.

    Args:
        rs: The rotation structure.
        closed: A closed set of rotation ids.
        order: Optional elimination order; must list the set compatibly with
            precedence. Defaults to ascending ids.

    Returns:
        The stable matching whose rotation set is the given closed set.

    Raises:
        UnknownRotationError: If an id is not a rotation.
        NotClosedError: If the set is not closed or the order breaks precedence.
    """
    ids = _check_ids(rs, closed)
    for rotation_id in sorted(ids):
        for pred in rs.predecessors(rotation_id):
            if pred not in ids:
                raise NotClosedError(pred, rotation_id)

    sequence = list(order) if order is not None else sorted(ids)
    for rotation_id in sequence:
        if rotation_id not in ids:
            raise UnknownRotationError(rotation_id)
    unordered = ids - set(sequence)
    if unordered or len(sequence) != len(ids):
        raise UnknownRotationError(min(unordered, default=sequence[0]))

    by_man = {m: w for m, w in rs.man_optimal.pairs}
    done: set[int] = set()
    for rotation_id in sequence:
        for pred in rs.predecessors(rotation_id):
            if pred not in done:
                raise NotClosedError(pred, rotation_id)
        for m, _, new_w in rs.rotation(rotation_id).moves():
            by_man[m] = new_w
        done.add(rotation_id)
    return Matching.from_pairs(by_man.items())


def matching_for(rs: RotationStructure, subset: Iterable[int]) -> Matching:
    """Stable matching of the closure of an arbitrary rotation subset."""
    return eliminate(rs, closure(rs, subset))


def man_path(rs: RotationStructure, m: int) -> tuple[int, ...]:
    """
    Directed path of the rotation digraph through every rotation of a man.

    Men that no rotation moves get the empty path.

    Raises:
        UnknownAgentError: If m is not a man of the instance.
    """
    if not 0 <= m < rs.n_men:
        raise UnknownAgentError(f"man {m + 1}")
    return rs.per_man_path.get(m, ())


def rotation_graph(rs: RotationStructure) -> nx.Graph:
    """Undirected version of the rotation digraph."""
    return rs.dag.to_undirected()


def enumerate_closed_sets(rs: RotationStructure) -> Iterator[frozenset[int]]:
    """Yields every closed set exactly once by include/exclude in id order."""
    count = len(rs.rotations)
    preds = [frozenset(rs.predecessors(r)) for r in range(count)]
    stack: list[tuple[int, frozenset[int]]] = [(0, frozenset())]
    while stack:
        index, chosen = stack.pop()
        if index == count:
            yield chosen
            continue
        stack.append((index + 1, chosen))
        if preds[index] <= chosen:
            stack.append((index + 1, chosen | {index}))
