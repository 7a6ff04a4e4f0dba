from itertools import combinations

import pytest
from hypothesis import given, settings
from matching_common import UnsupportedInputError

from domain import (
    NodeKind,
    Problem,
    Instance,
    TreeDecomposition,
    build_rotation_structure,
    closure,
    eliminate,
    enumerate_stable_strict,
    fpt_solve,
    fpt_solve_bsm,
    fpt_solve_gsm,
    fpt_solve_sesm,
    heuristic_decomposition,
    is_stable,
    make_nice,
    man_optimal,
    oracle_optimum,
    rotation_graph,
    state_views,
)
from domain.fpt_solvers import (
    DifferenceObjective,
    ManKind,
    bsm_from_pairs,
    sesm_from_pairs,
)
from exceptions import DecompositionMismatchError, InvalidStateError
from tests.strategies import strict_instances


def _heuristic(rs):
    return make_nice(heuristic_decomposition(rotation_graph(rs)))


def _single_bag(rs):
    bag = frozenset(range(len(rs.rotations)))
    return make_nice(TreeDecomposition(bags={0: bag}, root=0))


def _inflated(rs):
    td = heuristic_decomposition(rotation_graph(rs))
    if not rs.rotations:
        return make_nice(td)
    bags = {i: bag | {0} for i, bag in td.bags.items()}
    return make_nice(TreeDecomposition(bags=bags, edges=td.edges, root=td.root))


def _rerooted(rs):
    td = heuristic_decomposition(rotation_graph(rs))
    return make_nice(
        TreeDecomposition(bags=td.bags, edges=td.edges, root=max(td.bags))
    )


DECOMPOSITIONS = [_heuristic, _single_bag, _inflated, _rerooted]


@pytest.mark.parametrize("decompose", DECOMPOSITIONS)
def test_pair_sets_golden(i2, i3, single, decompose):
    for inst, expected in (
        (i3, {(3, 9), (6, 6), (9, 3)}),
        (i2, {(2, 4), (4, 2)}),
        (single, {(1, 1)}),
    ):
        rs = build_rotation_structure(inst)
        assert fpt_solve_gsm(inst, rs, decompose(rs)) == expected


@pytest.mark.parametrize("decompose", DECOMPOSITIONS)
def test_sex_equal_and_balanced_golden(i2, i3, single, i3_middle, decompose):
    for inst, delta, bal in ((i3, 0, 6), (i2, 2, 4), (single, 0, 1)):
        rs = build_rotation_structure(inst)
        ntd = decompose(rs)
        assert fpt_solve_sesm(inst, rs, ntd).optimum == delta
        assert fpt_solve_bsm(inst, rs, ntd).optimum == bal

    rs = build_rotation_structure(i3)
    assert fpt_solve_sesm(i3, rs, decompose(rs)).witness == i3_middle


def test_projections_of_pair_sets():
    pairs = {(3, 9), (6, 6), (9, 3)}

    assert sesm_from_pairs(pairs) == 0
    assert bsm_from_pairs(pairs) == 6


def test_state_views_on_a_chain(i3):
    rs = build_rotation_structure(i3)
    ntd = _single_bag(rs)
    introduce = next(
        n.id for n in ntd.nodes if n.kind == NodeKind.INTRODUCE and n.vertex == 0
    )

    view = state_views(i3, rs, ntd, introduce, frozenset({0}))[0]
    assert view.ell == 0
    assert view.partner == 1
    assert view.kind == ManKind.UNSETTLED

    leaf = state_views(i3, rs, ntd, 0, frozenset())[0]
    assert leaf.ell is None
    assert leaf.partner == man_optimal(i3).partner_of_man(0)


def _bag_subsets(bag):
    slots = sorted(bag)
    for size in range(len(slots) + 1):
        yield from (frozenset(c) for c in combinations(slots, size))


@settings(max_examples=40, deadline=None)
@given(strict_instances(max_side=4))
def test_state_views_at_every_node(inst):
    rs = build_rotation_structure(inst)
    ntd = _inflated(rs)
    optimal = man_optimal(inst)
    for node in ntd.nodes:
        gamma = ntd.cumulative(node.id)
        for subset in _bag_subsets(node.bag):
            closed = eliminate(rs, closure(rs, subset))
            for m, view in state_views(inst, rs, ntd, node.id, subset).items():
                path = rs.per_man_path.get(m, ())
                chosen = [r for r in path if r in subset]
                assert view.ell == (chosen[-1] if chosen else None)
                after = path[path.index(view.ell) + 1 :] if chosen else path
                assert view.eff == next(
                    (r for r in after if r in node.bag and r not in subset), None
                )

                relevant = any(r in node.bag for r in path)
                assert bool(view.segment) == relevant
                if relevant:
                    assert view.ell is not None or view.eff is not None
                    first = path.index(view.segment[0])
                    assert view.segment == path[first : first + len(view.segment)]

                assert view.partner == closed.partner_of_man(m)
                if not subset:
                    assert view.partner == optimal.partner_of_man(m)
                if not gamma:
                    assert (view.kind == ManKind.SETTLED) == (not path)
                if node.id == ntd.root:
                    assert view.kind == ManKind.SETTLED


def test_state_outside_the_bag_is_rejected(i3):
    rs = build_rotation_structure(i3)

    with pytest.raises(InvalidStateError):
        state_views(i3, rs, _single_bag(rs), 0, frozenset({1}))


def test_ties_and_foreign_decompositions_are_rejected(i3, tied):
    rs = build_rotation_structure(i3)
    with pytest.raises(UnsupportedInputError):
        fpt_solve(tied, rs, _heuristic(rs), DifferenceObjective())

    empty = make_nice(TreeDecomposition(bags={0: frozenset({0})}, root=0))
    with pytest.raises(DecompositionMismatchError):
        fpt_solve_sesm(i3, rs, empty)


def test_table_statistics(i3):
    rs = build_rotation_structure(i3)
    report = fpt_solve_sesm(i3, rs, _single_bag(rs))

    assert report.method == "fpt"
    assert report.stats.width == 1
    assert report.stats.tables["S"] == report.stats.table_entries > 0


@pytest.mark.parametrize("decompose", DECOMPOSITIONS)
@settings(max_examples=40, deadline=None)
@given(strict_instances(max_side=5))
def test_fpt_matches_oracle(decompose, inst):
    rs = build_rotation_structure(inst)
    ntd = decompose(rs)
    stable = enumerate_stable_strict(inst, method="filter")
    pairs = fpt_solve_gsm(inst, rs, ntd)

    assert pairs == {(s.sat_m, s.sat_w) for s in stable.scores}
    sesm = fpt_solve_sesm(inst, rs, ntd)
    bsm = fpt_solve_bsm(inst, rs, ntd)
    assert sesm.optimum == oracle_optimum(inst, Problem.SESM).optimum
    assert bsm.optimum == oracle_optimum(inst, Problem.BSM).optimum
    assert sesm.optimum == sesm_from_pairs(pairs)
    assert bsm.optimum == bsm_from_pairs(pairs)
    assert is_stable(inst, sesm.witness)
    assert is_stable(inst, bsm.witness)


def _independent_rotations(k: int) -> Instance:
    """k disjoint copies of the 2x2 instance, one free-standing rotation each."""
    men, women = [], []
    for c in range(0, 2 * k, 2):
        men += [[c, c + 1], [c + 1, c]]
        women += [[c + 1, c], [c, c + 1]]
    return Instance.from_rankings(men, women)


@pytest.mark.parametrize("width", range(1, 7))
def test_table_entries_scale_with_bag_subsets(width):
    k = width + 1
    inst = _independent_rotations(k)
    rs = build_rotation_structure(inst)
    ntd = _single_bag(rs)
    states = sum(2 ** len(node.bag) for node in ntd.nodes)
    # a row that has forgotten j rotations holds j + 1 keys
    expected = sum(2**i for i in range(k + 1))
    expected += sum(2 ** (k - j) * (j + 1) for j in range(1, k + 1))

    assert len(rs.rotations) == k
    assert not rs.arcs
    for report in (fpt_solve_sesm(inst, rs, ntd), fpt_solve_bsm(inst, rs, ntd)):
        entries = report.stats.table_entries
        assert report.stats.width == width
        assert entries == expected
        assert states <= entries <= 4 * states
        assert entries <= states * inst.n_men**4
