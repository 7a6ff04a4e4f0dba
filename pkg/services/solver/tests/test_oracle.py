import pytest
from matching_common import GuardExceededError, OracleConfig, UnsupportedInputError

from domain import (
    Problem,
    enumerate_stable_strict,
    enumerate_weakly_stable,
    oracle_optimum,
)


@pytest.mark.parametrize("method", ["rotations", "filter"])
def test_stable_counts(i2, i3, single, method):
    assert len(enumerate_stable_strict(i2, method=method).matchings) == 2
    assert len(enumerate_stable_strict(i3, method=method).matchings) == 3
    assert len(enumerate_stable_strict(single, method=method).matchings) == 1


def test_weakly_stable_sizes(tied):
    stable = enumerate_weakly_stable(tied)

    assert {s.size for s in stable.scores} == {1, 2}


@pytest.mark.parametrize(
    "problem, expected",
    [
        (Problem.SESM, 0),
        (Problem.BSM, 6),
        (Problem.MAX_SMT, 3),
        (Problem.MIN_SMT, 3),
        (Problem.GSM, [(3, 9), (6, 6), (9, 3)]),
    ],
)
def test_cyclic_optima(i3, problem, expected):
    assert oracle_optimum(i3, problem).optimum == expected


def test_two_by_two_optima(i2):
    assert oracle_optimum(i2, Problem.SESM).optimum == 2
    assert oracle_optimum(i2, Problem.BSM).optimum == 4
    assert oracle_optimum(i2, Problem.GSM).optimum == [(2, 4), (4, 2)]


def test_tied_sizes(tied, empty_lists):
    assert oracle_optimum(tied, Problem.MAX_SMT).optimum == 2
    assert oracle_optimum(tied, Problem.MIN_SMT).optimum == 1
    assert oracle_optimum(empty_lists, Problem.MAX_SMT).optimum == 0


def test_witness_attains_the_optimum(i3, i3_middle):
    report = oracle_optimum(i3, Problem.SESM)

    assert report.witness == i3_middle
    assert report.method == "oracle"


def test_strict_objectives_reject_ties(tied):
    with pytest.raises(UnsupportedInputError):
        oracle_optimum(tied, Problem.SESM)


def test_guards(i3):
    with pytest.raises(GuardExceededError) as exc:
        enumerate_weakly_stable(i3, OracleConfig(max_weak_pairs=4))
    assert exc.value.actual == 9

    with pytest.raises(GuardExceededError):
        enumerate_stable_strict(
            i3, OracleConfig(max_filter_agents=4), method="filter"
        )
