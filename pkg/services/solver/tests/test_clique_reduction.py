import pytest
from matching_common import GuardExceededError, ReductionConfig, UnsupportedInputError

from domain import is_stable, score
from exceptions import ReductionInputError, ReductionParameterError
from reductions import (
    CliqueInput,
    ReductionKind,
    check_leader_form,
    clique_witness_matching,
    find_multicolored_clique,
    reduce_clique_to_bsm,
    reduce_clique_to_max_smt,
    reduce_clique_to_min_smt,
    reduce_clique_to_sesm,
    reduce_sat_to_sesm,
    verify_reduction,
)
from reductions.models import SatInput

REDUCTIONS = [
    reduce_clique_to_sesm,
    reduce_clique_to_bsm,
    reduce_clique_to_max_smt,
    reduce_clique_to_min_smt,
]


@pytest.fixture
def yes_graph() -> CliqueInput:
    """Two classes of two vertices joined by the single edge {1, 3}."""
    return CliqueInput(n_vertices=4, k=2, classes=(0, 0, 1, 1), edges=((0, 2),))


@pytest.fixture
def no_graph() -> CliqueInput:
    return CliqueInput(n_vertices=4, k=2, classes=(0, 0, 1, 1), edges=())


def test_clique_search(yes_graph, no_graph):
    assert find_multicolored_clique(yes_graph) == (0, 2)
    assert find_multicolored_clique(no_graph) is None


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_vertices": 3, "k": 2, "classes": (0, 0, 1), "edges": ()},
        {"n_vertices": 2, "k": 2, "classes": (0, 1), "edges": ()},
        {"n_vertices": 4, "k": 2, "classes": (0, 0, 1, 1), "edges": ((0, 1),)},
        {"n_vertices": 4, "k": 2, "classes": (0, 0, 1, 1), "edges": ((0, 2), (2, 0))},
        {"n_vertices": 4, "k": 2, "classes": (0, 0, 1, 1), "edges": ((0, 7),)},
        {"n_vertices": 4, "k": 2, "classes": (0, 0, 1), "edges": ()},
    ],
)
def test_malformed_graphs(kwargs):
    with pytest.raises(ReductionInputError):
        CliqueInput(**kwargs)


def test_sex_equal_counts(yes_graph):
    out = reduce_clique_to_sesm(yes_graph)

    assert out.instance.n_agents == out.predicted.agents == 120
    assert out.instance.n_men == out.instance.n_women == 60
    assert out.predicted.pool == 7
    assert out.predicted.happy_pairs == 41
    assert out.predicted.target_kind == "delta"
    assert out.predicted.target == 0
    assert out.predicted.treewidth_bound == 16


def test_sex_equal_witness_is_balanced(yes_graph):
    out = reduce_clique_to_sesm(yes_graph)
    mu = clique_witness_matching(out, (0, 2))

    assert is_stable(out.instance, mu)
    assert mu.size == out.instance.n_men
    assert score(out.instance, mu).delta == 0


def test_balanced_target(yes_graph):
    out = reduce_clique_to_bsm(yes_graph)
    mu = clique_witness_matching(out, (0, 2))

    assert out.predicted.pool == 9
    assert out.predicted.extras["eta"] == out.predicted.target == 94
    assert is_stable(out.instance, mu)
    assert score(out.instance, mu).bal <= 94


def test_tied_reduction_counts(yes_graph):
    maximum = reduce_clique_to_max_smt(yes_graph)
    minimum = reduce_clique_to_min_smt(yes_graph)

    assert maximum.instance.n_agents == maximum.predicted.agents == 24
    assert maximum.predicted.target == maximum.instance.n_men == 12
    assert minimum.instance.n_agents == minimum.predicted.agents == 31
    assert minimum.predicted.target == 11


@pytest.mark.parametrize("reduce", [reduce_clique_to_max_smt, reduce_clique_to_min_smt])
def test_tied_witness_attains_target(yes_graph, reduce):
    out = reduce(yes_graph)
    mu = clique_witness_matching(out, (0, 2))

    assert is_stable(out.instance, mu)
    assert mu.size == out.predicted.target


@pytest.mark.parametrize("reduce", REDUCTIONS)
def test_leader_form_holds(yes_graph, reduce):
    forms = check_leader_form(reduce(yes_graph))

    assert [form.colour for form in forms] == [1, 2]
    assert all(form.ok for form in forms)


@pytest.mark.parametrize("reduce", REDUCTIONS)
def test_verification_passes(yes_graph, reduce):
    report = verify_reduction(reduce(yes_graph))

    assert report.passed, report.checks
    assert report.status("agent-count") == "pass"
    assert report.status("treewidth-bound") == "pass"
    assert report.status("witness-stable") == "pass"
    assert report.relaxed


def test_verification_without_clique_skips_the_witness(no_graph):
    report = verify_reduction(reduce_clique_to_min_smt(no_graph))

    assert report.status("witness-stable") == "skipped"
    assert report.status("agent-count") == "pass"


def test_witness_needs_a_clique(yes_graph):
    out = reduce_clique_to_sesm(yes_graph)

    with pytest.raises(ReductionInputError):
        clique_witness_matching(out, (1, 3))


def test_strict_spacers_need_many_edges(yes_graph):
    with pytest.raises(ReductionInputError):
        reduce_clique_to_sesm(yes_graph, relaxed=False)


def test_negative_pool_is_refused(yes_graph):
    config = ReductionConfig(s10=0, s20=0, s30=5, s40=0)

    with pytest.raises(ReductionParameterError):
        reduce_clique_to_sesm(yes_graph, config)


def test_agent_guard(yes_graph):
    with pytest.raises(GuardExceededError):
        reduce_clique_to_sesm(yes_graph, ReductionConfig(max_agents=50))


def test_clique_helpers_reject_sat_outputs():
    out = reduce_sat_to_sesm(SatInput(n_vars=2, clauses=((1, 2),)))

    with pytest.raises(UnsupportedInputError):
        check_leader_form(out)
    assert out.kind == ReductionKind.SAT_SESM
