import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from matching_common import UnsupportedInputError

from domain import (
    Matching,
    enumerate_stable_strict,
    is_stable,
    lattice_extremes,
    man_optimal,
    score,
    stable_with_tiebreak,
    woman_optimal,
)
from tests.strategies import strict_instances, tied_instances


def test_man_optimal_golden(i2, i3, empty_lists):
    assert man_optimal(i2) == Matching.from_pairs([(0, 0), (1, 1)])
    assert man_optimal(i3) == Matching.from_pairs([(0, 0), (1, 1), (2, 2)])
    assert man_optimal(empty_lists) == Matching()


def test_woman_optimal_golden(i2, i3, single):
    assert woman_optimal(i2) == Matching.from_pairs([(0, 1), (1, 0)])
    assert woman_optimal(i3) == Matching.from_pairs([(0, 2), (1, 0), (2, 1)])
    assert woman_optimal(single) == Matching.from_pairs([(0, 0)])


def test_strict_algorithms_reject_ties(tied):
    with pytest.raises(UnsupportedInputError):
        man_optimal(tied)
    with pytest.raises(UnsupportedInputError):
        woman_optimal(tied)


@pytest.mark.parametrize("seed", range(8))
def test_tiebreak_result_is_weakly_stable(tied, seed):
    mu = stable_with_tiebreak(tied, seed)

    assert is_stable(tied, mu)
    assert mu.size in (1, 2)


def test_tiebreak_on_strict_instance_is_man_optimal(i2):
    assert stable_with_tiebreak(i2, 5) == man_optimal(i2)


def test_lattice_extremes_of_cyclic_instance(i3):
    extremes = lattice_extremes(i3)

    assert extremes.matched_men == frozenset({0, 1, 2})
    assert extremes.woman_optimal == woman_optimal(i3)


@settings(max_examples=60, deadline=None)
@given(strict_instances())
def test_extremes_bound_every_stable_matching(inst):
    extremes = lattice_extremes(inst)
    stable = enumerate_stable_strict(inst, method="filter")
    best = score(inst, extremes.man_optimal).sat_m
    worst = score(inst, extremes.woman_optimal).sat_m

    assert min(s.sat_m for s in stable.scores) == best
    assert max(s.sat_m for s in stable.scores) == worst
    for mu in stable.matchings:
        assert mu.men == extremes.matched_men
        assert mu.women == extremes.matched_women


@settings(max_examples=60, deadline=None)
@given(tied_instances(), st.integers(min_value=0, max_value=99))
def test_tiebreak_is_weakly_stable_on_random_instances(inst, seed):
    assert is_stable(inst, stable_with_tiebreak(inst, seed))
