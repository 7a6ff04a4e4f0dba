import re

import networkx as nx
import pytest
from hypothesis import given, settings
from matching_common import InstanceValidationError

from domain import (
    NodeKind,
    TreeDecomposition,
    heuristic_decomposition,
    make_nice,
    primal_graph,
    validate,
)
from domain.tree_decomposition import check_nice
from exceptions import TreeDecompositionError
from infrastructure import PaceTdCodec
from tests.strategies import strict_instances


def _path_decomposition() -> TreeDecomposition:
    return TreeDecomposition(
        bags={1: frozenset({0, 1}), 2: frozenset({1, 2})},
        edges=((1, 2),),
        root=1,
    )


def test_path_decomposition_is_valid():
    assert validate(_path_decomposition(), nx.path_graph(3)) == 1


@pytest.mark.parametrize(
    "td, message",
    [
        (
            TreeDecomposition(bags={1: frozenset({0, 1})}, root=1),
            "edge {1,2} uncovered",
        ),
        (
            TreeDecomposition(
                bags={1: frozenset({0, 1}), 2: frozenset({1, 2})}, root=1
            ),
            "do not form a tree",
        ),
        (
            TreeDecomposition(
                bags={
                    1: frozenset({0, 1}),
                    2: frozenset({1, 2}),
                    3: frozenset({0}),
                },
                edges=((1, 2), (2, 3)),
                root=1,
            ),
            "vertex 0 are disconnected",
        ),
        (
            TreeDecomposition(
                bags={1: frozenset({0, 1}), 2: frozenset({1, 2, 9})},
                edges=((1, 2),),
                root=1,
            ),
            "vertex 9 of bag 2 is not in the graph",
        ),
    ],
)
def test_validate_names_the_violation(td, message):
    with pytest.raises(TreeDecompositionError, match=re.escape(message)):
        validate(td, nx.path_graph(3))


def test_empty_graph_gets_a_single_empty_bag():
    td = heuristic_decomposition(nx.Graph())

    assert td.bags == {0: frozenset()}
    assert make_nice(td).nodes[-1].bag == frozenset()


def test_nice_form_keeps_width():
    nice = make_nice(_path_decomposition())

    check_nice(nice)
    assert nice.width == 1
    assert nice.nodes[0].kind == NodeKind.LEAF
    assert validate(nice.as_tree_decomposition(), nx.path_graph(3)) == 1


def test_nice_conversion_rejects_a_decomposition_of_another_graph():
    td = TreeDecomposition(bags={1: frozenset({0, 1})}, root=1)

    assert make_nice(td).width == 1
    with pytest.raises(TreeDecompositionError, match=re.escape("edge {1,2} uncovered")):
        make_nice(td, nx.path_graph(3))


def test_complete_bipartite_width(i3):
    td = heuristic_decomposition(primal_graph(i3))

    assert validate(td, primal_graph(i3)) == 3


@settings(max_examples=60, deadline=None)
@given(strict_instances(max_side=5))
def test_heuristic_and_nice_forms_are_valid(inst):
    graph = primal_graph(inst)
    td = heuristic_decomposition(graph)
    nice = make_nice(td)

    assert validate(td, graph) == td.width
    check_nice(nice)
    assert nice.width == td.width
    assert validate(nice.as_tree_decomposition(), graph) == td.width
    for node in nice.nodes:
        assert node.bag <= nice.cumulative(node.id)


PATH_TD = """\
c a path on three vertices
s td 2 2 3
b 1 1 2
b 2 2 3
1 2
"""


def test_pace_parse():
    td = PaceTdCodec().parse(PATH_TD)

    assert td == _path_decomposition()


def test_pace_render_numbers_root_first():
    td = TreeDecomposition(
        bags={5: frozenset({0}), 3: frozenset({0, 1})}, edges=((3, 5),), root=5
    )

    assert PaceTdCodec(n_vertices=2).render(td) == "s td 2 2 2\nb 1 1\nb 2 1 2\n2 1\n"


@pytest.mark.parametrize(
    "text",
    [
        "b 1 1\n",
        "s td 1 1 2\nb 1 3\n",
        "s td 2 1 2\nb 1 1\n",
        "s td 1 1 2\nb 1 1 2\n",
        "s td 1 2 2\nb 1 1 2\n1 7\n",
    ],
)
def test_pace_rejects_malformed_files(text):
    with pytest.raises(InstanceValidationError):
        PaceTdCodec().parse(text)
