import pytest
from hypothesis import given, settings
from matching_common import UnsupportedInputError

from domain import (
    Problem,
    TreeDecomposition,
    heuristic_decomposition,
    is_stable,
    make_nice,
    oracle_optimum,
    primal_graph,
    score,
    xp_solve_bsm,
    xp_solve_max_smt,
    xp_solve_min_smt,
    xp_solve_sesm,
)
from exceptions import DecompositionMismatchError
from tests.strategies import strict_instances, tied_instances


def _heuristic(inst):
    return make_nice(heuristic_decomposition(primal_graph(inst)))


def _single_bag(inst):
    bag = frozenset(range(inst.n_agents))
    return make_nice(TreeDecomposition(bags={0: bag}, root=0))


def _inflated(inst):
    td = heuristic_decomposition(primal_graph(inst))
    bags = {i: bag | {0} for i, bag in td.bags.items()}
    return make_nice(TreeDecomposition(bags=bags, edges=td.edges, root=td.root))


DECOMPOSITIONS = [_heuristic, _single_bag, _inflated]


@pytest.mark.parametrize("decompose", DECOMPOSITIONS)
def test_sex_equal_golden(i2, i3, single, i3_middle, decompose):
    assert xp_solve_sesm(i2, decompose(i2)).optimum == 2
    assert xp_solve_sesm(single, decompose(single)).optimum == 0
    report = xp_solve_sesm(i3, decompose(i3))
    assert report.optimum == 0
    assert report.witness == i3_middle


@pytest.mark.parametrize("decompose", DECOMPOSITIONS)
def test_balanced_golden(i2, i3, single, decompose):
    assert xp_solve_bsm(i2, decompose(i2)).optimum == 4
    assert xp_solve_bsm(i3, decompose(i3)).optimum == 6
    assert xp_solve_bsm(single, decompose(single)).optimum == 1


@pytest.mark.parametrize("decompose", DECOMPOSITIONS)
def test_cardinality_golden(tied, i2, empty_lists, decompose):
    maximum = xp_solve_max_smt(tied, decompose(tied))
    minimum = xp_solve_min_smt(tied, decompose(tied))

    assert maximum.optimum == 2
    assert minimum.optimum == 1
    assert minimum.witness.sorted_pairs() == [(1, 0)]
    assert xp_solve_max_smt(i2, decompose(i2)).optimum == 2
    assert xp_solve_min_smt(empty_lists, decompose(empty_lists)).optimum == 0


def test_report_statistics(i3):
    ntd = _heuristic(i3)
    report = xp_solve_sesm(i3, ntd)

    assert report.method == "xp"
    assert report.stats.nodes == len(ntd.nodes)
    assert report.stats.width == 3
    assert report.stats.table_entries > 0


def test_strict_objectives_reject_ties(tied):
    with pytest.raises(UnsupportedInputError):
        xp_solve_sesm(tied, _heuristic(tied))


def test_foreign_decomposition_is_rejected(i2, i3):
    with pytest.raises(DecompositionMismatchError):
        xp_solve_sesm(i3, _heuristic(i2))


@settings(max_examples=60, deadline=None)
@given(strict_instances())
def test_strict_objectives_match_oracle(inst):
    ntd = _heuristic(inst)
    for solve, problem in ((xp_solve_sesm, Problem.SESM), (xp_solve_bsm, Problem.BSM)):
        report = solve(inst, ntd)
        assert report.optimum == oracle_optimum(inst, problem).optimum
        assert is_stable(inst, report.witness)

    s = score(inst, xp_solve_sesm(inst, ntd).witness)
    assert abs(s.delta) == oracle_optimum(inst, Problem.SESM).optimum


@settings(max_examples=60, deadline=None)
@given(tied_instances())
def test_cardinality_matches_oracle(inst):
    ntd = _heuristic(inst)
    for solve, problem in (
        (xp_solve_max_smt, Problem.MAX_SMT),
        (xp_solve_min_smt, Problem.MIN_SMT),
    ):
        report = solve(inst, ntd)
        assert report.optimum == oracle_optimum(inst, problem).optimum
        assert report.witness.size == report.optimum
        assert is_stable(inst, report.witness)
