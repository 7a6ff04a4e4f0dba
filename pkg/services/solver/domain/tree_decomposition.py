"""Tree decompositions: validation, min-fill construction and nice form."""

from collections.abc import Hashable
from enum import StrEnum

import networkx as nx
from matching_common import setup_logging
from networkx.algorithms.approximation import treewidth_min_fill_in
from pydantic import BaseModel, PrivateAttr

from exceptions import TreeDecompositionError

logger = setup_logging()


class TreeDecomposition(BaseModel, frozen=True):
    """Bags on the nodes of a tree, rooted at one node."""

    bags: dict[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...] = ()
    root: int

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=0) - 1

    def tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(self.bags)
        tree.add_edges_from(self.edges)
        return tree


class NodeKind(StrEnum):
    """Node types of a nice tree decomposition."""

    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


class NiceNode(BaseModel, frozen=True):
    """One node of a nice tree decomposition."""

    id: int
    kind: NodeKind
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


class NiceTreeDecomposition(BaseModel, frozen=True):
    """
    A nice tree decomposition.

    Node ids index `nodes`, and every child has a smaller id than its
    parent, so iterating `nodes` in order is a bottom-up traversal. The root
    is the last node and has an empty bag.
    """

    nodes: tuple[NiceNode, ...]

    _cumulative: list[frozenset[int]] | None = PrivateAttr(default=None)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    def node(self, node_id: int) -> NiceNode:
        return self.nodes[node_id]

    def cumulative(self, node_id: int) -> frozenset[int]:
        """Union of the bags in the subtree of a node."""
        if self._cumulative is None:
            gamma: list[frozenset[int]] = []
            for node in self.nodes:
                below = frozenset().union(*(gamma[c] for c in node.children))
                gamma.append(below | node.bag)
            self._cumulative = gamma
        return self._cumulative[node_id]

    def as_tree_decomposition(self) -> TreeDecomposition:
        return TreeDecomposition(
            bags={node.id: node.bag for node in self.nodes},
            edges=tuple((c, node.id) for node in self.nodes for c in node.children),
            root=self.root,
        )


def _label(vertex: Hashable) -> str:
    return str(vertex)


def validate(td: TreeDecomposition, graph: nx.Graph) -> int:
    """
    Checks that a tree decomposition decomposes a graph.

    Args:
        td: The decomposition; bag contents are graph vertices.
        graph: The decomposed graph.

    Returns:
        The width, the largest bag size minus one.

    Raises:
        TreeDecompositionError: Naming the first violated property.
    """
    if not td.bags:
        raise TreeDecompositionError("no bags")
    if td.root not in td.bags:
        raise TreeDecompositionError(f"root {td.root} is not a bag")
    for a, b in td.edges:
        if a not in td.bags or b not in td.bags:
            raise TreeDecompositionError(f"tree edge ({a}, {b}) names an unknown bag")
    tree = td.tree()
    if not nx.is_tree(tree):
        raise TreeDecompositionError("bags do not form a tree")

    occurrences: dict[int, list[int]] = {v: [] for v in graph.nodes}
    for bag_id in sorted(td.bags):
        for vertex in td.bags[bag_id]:
            if vertex not in occurrences:
                raise TreeDecompositionError(
                    f"vertex {_label(vertex)} of bag {bag_id} is not in the graph"
                )
            occurrences[vertex].append(bag_id)

    for u, v in sorted(tuple(sorted(edge)) for edge in graph.edges):
        if not set(occurrences[u]) & set(occurrences[v]):
            raise TreeDecompositionError(f"edge {{{_label(u)},{_label(v)}}} uncovered")

    for vertex in sorted(occurrences):
        nodes = occurrences[vertex]
        if not nodes:
            raise TreeDecompositionError(f"vertex {_label(vertex)} is in no bag")
        if not nx.is_connected(tree.subgraph(nodes)):
            raise TreeDecompositionError(
                f"bags containing vertex {_label(vertex)} are disconnected"
            )

    return td.width


def heuristic_decomposition(graph: nx.Graph) -> TreeDecomposition:
    """Builds a decomposition from a min-fill elimination ordering."""
    if graph.number_of_nodes() == 0:
        return TreeDecomposition(bags={0: frozenset()}, root=0)

    width, decomposition = treewidth_min_fill_in(graph)
    start = max(decomposition.nodes, key=lambda bag: (len(bag), sorted(bag)))
    ids = {bag: i for i, bag in enumerate(nx.bfs_tree(decomposition, start))}
    logger.debug(
        "Min-fill decomposition computed",
        extra={"width": width, "bags": len(ids)},
    )
    return TreeDecomposition(
        bags={i: frozenset(bag) for bag, i in ids.items()},
        edges=tuple(sorted((ids[a], ids[b]) for a, b in decomposition.edges)),
        root=0,
    )


class _NiceBuilder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(
        self,
        kind: NodeKind,
        bag: frozenset[int],
        vertex: int | None = None,
        children: tuple[int, ...] = (),
    ) -> int:
        node_id = len(self.nodes)
        self.nodes.append(
            NiceNode(id=node_id, kind=kind, bag=bag, vertex=vertex, children=children)
        )
        return node_id

    def bag(self, node_id: int) -> frozenset[int]:
        return self.nodes[node_id].bag

    def chain_to(self, top: int, target: frozenset[int]) -> int:
        """Forgets vertices missing from target, then introduces new ones."""
        bag = self.bag(top)
        for vertex in sorted(bag - target):
            bag = bag - {vertex}
            top = self.add(NodeKind.FORGET, bag, vertex, (top,))
        for vertex in sorted(target - bag):
            bag = bag | {vertex}
            top = self.add(NodeKind.INTRODUCE, bag, vertex, (top,))
        return top

    def join_all(self, tops: list[int]) -> int:
        level = list(tops)
        while len(level) > 1:
            merged = [
                self.add(NodeKind.JOIN, self.bag(a), None, (a, b))
                for a, b in zip(level[0::2], level[1::2])
            ]
            if len(level) % 2:
                merged.append(level[-1])
            level = merged
        return level[0]


def make_nice(
    td: TreeDecomposition, graph: nx.Graph | None = None
) -> NiceTreeDecomposition:
    """
    Converts a tree decomposition into nice form of the same width.

    Leaves introduce their bag vertex by vertex, every child edge becomes a
    chain of forget nodes followed by introduce nodes, nodes with several
    children become a balanced tree of join nodes, and a final forget chain
    empties the root bag.

    Args:
        td: The decomposition to convert.
        graph: When given, td is validated against it first.

    Raises:
        TreeDecompositionError: If the bags do not form a tree, or do not
            decompose graph.
    """
    if graph is not None:
        validate(td, graph)
    tree = td.tree()
    if td.root not in td.bags or not nx.is_tree(tree):
        raise TreeDecompositionError("bags do not form a tree")

    builder = _NiceBuilder()
    parent = {td.root: None}
    order = [td.root]
    for node in order:
        for neighbour in sorted(tree.neighbors(node)):
            if neighbour not in parent:
                parent[neighbour] = node
                order.append(neighbour)

    top_of: dict[int, int] = {}
    for node in reversed(order):
        bag = td.bags[node]
        children = [c for c in sorted(tree.neighbors(node)) if parent.get(c) == node]
        if not children:
            leaf = builder.add(NodeKind.LEAF, frozenset())
            top_of[node] = builder.chain_to(leaf, bag)
            continue
        tops = [builder.chain_to(top_of.pop(c), bag) for c in children]
        top_of[node] = builder.join_all(tops)

    root_top = builder.chain_to(top_of[td.root], frozenset())
    if root_top != len(builder.nodes) - 1 or builder.bag(root_top):
        raise TreeDecompositionError("nice conversion did not end at an empty root")

    nice = NiceTreeDecomposition(nodes=tuple(builder.nodes))
    logger.debug(
        "Nice decomposition built",
        extra={"nodes": len(nice.nodes), "width": nice.width},
    )
    return nice


def check_nice(ntd: NiceTreeDecomposition) -> None:
    """
    Verifies the bag relation of every node of a nice decomposition.

    Raises:
        TreeDecompositionError: Naming the first offending node.
    """
    for node in ntd.nodes:
        child_bags = [ntd.node(c).bag for c in node.children]
        if any(c >= node.id for c in node.children):
            raise TreeDecompositionError(f"node {node.id} has a later child")
        match node.kind:
            case NodeKind.LEAF:
                ok = not node.children and not node.bag
            case NodeKind.INTRODUCE:
                ok = (
                    len(child_bags) == 1
                    and node.vertex not in child_bags[0]
                    and node.bag == child_bags[0] | {node.vertex}
                )
            case NodeKind.FORGET:
                ok = (
                    len(child_bags) == 1
                    and node.vertex in child_bags[0]
                    and node.bag == child_bags[0] - {node.vertex}
                )
            case NodeKind.JOIN:
                ok = len(child_bags) == 2 and child_bags[0] == child_bags[1] == node.bag
        if not ok:
            raise TreeDecompositionError(f"node {node.id} breaks its {node.kind} rule")
    if ntd.nodes[ntd.root].bag:
        raise TreeDecompositionError("root bag is not empty")
