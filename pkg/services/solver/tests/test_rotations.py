import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from matching_common import UnsupportedInputError

from domain import (
    Matching,
    build_rotation_structure,
    closure,
    eliminate,
    enumerate_closed_sets,
    enumerate_stable_strict,
    is_closed,
    is_stable,
    man_optimal,
    man_path,
    matching_for,
    rotation_graph,
    woman_optimal,
)
from exceptions import NotClosedError, UnknownAgentError, UnknownRotationError
from tests.strategies import strict_instances


def test_two_by_two_has_one_rotation(i2):
    rs = build_rotation_structure(i2)

    assert [r.pairs for r in rs.rotations] == [((0, 0), (1, 1))]
    assert rs.arcs == ()


def test_cyclic_instance_has_a_chain_of_two(i3):
    rs = build_rotation_structure(i3)

    assert [r.pairs for r in rs.rotations] == [
        ((0, 0), (1, 1), (2, 2)),
        ((0, 1), (1, 2), (2, 0)),
    ]
    assert rs.arcs == ((0, 1),)


def test_single_pair_has_no_rotation(single):
    rs = build_rotation_structure(single)

    assert rs.rotations == ()
    assert man_path(rs, 0) == ()


def test_rotations_need_strict_lists(tied):
    with pytest.raises(UnsupportedInputError):
        build_rotation_structure(tied)


def test_closure_adds_predecessors(i3):
    rs = build_rotation_structure(i3)

    assert closure(rs, {1}) == frozenset({0, 1})
    assert closure(rs, {0}) == frozenset({0})
    assert not is_closed(rs, {1})


def test_eliminate_walks_the_chain(i3, i3_middle):
    rs = build_rotation_structure(i3)

    assert eliminate(rs, set()) == man_optimal(i3)
    assert eliminate(rs, {0}) == i3_middle
    assert eliminate(rs, {0, 1}) == woman_optimal(i3)
    assert matching_for(rs, {1}) == woman_optimal(i3)


def test_eliminate_rejects_open_sets(i3):
    rs = build_rotation_structure(i3)

    with pytest.raises(NotClosedError):
        eliminate(rs, {1})
    with pytest.raises(NotClosedError):
        eliminate(rs, {0, 1}, order=[1, 0])
    with pytest.raises(UnknownRotationError):
        eliminate(rs, {5})


def test_man_paths(i2, i3):
    assert man_path(build_rotation_structure(i3), 0) == (0, 1)
    assert man_path(build_rotation_structure(i2), 0) == (0,)
    with pytest.raises(UnknownAgentError):
        man_path(build_rotation_structure(i2), 7)


def _eliminated(inst, rotation, mu: Matching) -> bool:
    m, _, new_w = next(rotation.moves())
    return inst.man_rank(m, mu.partner_of_man(m)) >= inst.man_rank(m, new_w)


@settings(max_examples=80, deadline=None)
@given(strict_instances(max_side=5))
def test_closed_sets_match_stable_matchings(inst):
    rs = build_rotation_structure(inst)
    stable = enumerate_stable_strict(inst, method="filter")
    closed = list(enumerate_closed_sets(rs))

    assert len(closed) == len(stable.matchings)
    assert len(set(closed)) == len(closed)
    assert len(rs.rotations) <= inst.n_agents**2
    assert nx.is_directed_acyclic_graph(rs.dag)
    assert {eliminate(rs, c) for c in closed} == set(stable.matchings)
    for c in closed:
        assert is_stable(inst, eliminate(rs, c))


@settings(max_examples=80, deadline=None)
@given(strict_instances(max_side=5))
def test_digraph_reachability_is_precedence(inst):
    rs = build_rotation_structure(inst)
    stable = enumerate_stable_strict(inst, method="filter").matchings
    removed = {
        r.id: {i for i, mu in enumerate(stable) if _eliminated(inst, r, mu)}
        for r in rs.rotations
    }

    for a, b in itertools.permutations(range(len(rs.rotations)), 2):
        precedes = removed[b] <= removed[a]
        assert precedes == (a in nx.ancestors(rs.dag, b))


@settings(max_examples=60, deadline=None)
@given(strict_instances(max_side=5))
def test_elimination_order_does_not_matter(inst):
    rs = build_rotation_structure(inst)
    for c in enumerate_closed_sets(rs):
        if not c:
            continue
        orders = itertools.islice(nx.all_topological_sorts(rs.dag.subgraph(c)), 2)
        assert len({eliminate(rs, c, order) for order in orders}) == 1


def test_rotation_graph_is_undirected_chain(i3):
    graph = rotation_graph(build_rotation_structure(i3))

    assert sorted(graph.edges) == [(0, 1)]
