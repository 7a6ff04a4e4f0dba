import random

import pytest
from matching_common import OracleConfig, ReductionConfig

from domain import random_instance
from exceptions import DecompositionMismatchError, TreeDecompositionError
from handlers import (
    FuzzHandler,
    ReductionHandler,
    ReductionRequest,
    SolveHandler,
    SolveRequest,
)
from infrastructure import MetadataCodec, SmtiCodec
from tests.conftest import I3_TEXT

CLIQUE_TEXT = "p clique 4 2\nv 1 1\nv 2 1\nv 3 2\nv 4 2\ne 1 3\n"


def test_random_instance_is_seeded():
    first = random_instance(random.Random(3), 4, 3, tie_probability=0.5)
    second = random_instance(random.Random(3), 4, 3, tie_probability=0.5)

    assert first == second
    assert (first.n_men, first.n_women) == (4, 3)


def test_random_instance_density_bounds():
    full = random_instance(random.Random(0), 3, 3, density=1.0)
    empty = random_instance(random.Random(0), 3, 3, density=0.0)

    assert len(full.acceptable_pairs()) == 9
    assert not full.has_ties
    assert len(empty.acceptable_pairs()) == 0


def test_fuzz_batches_are_reproducible():
    handler = FuzzHandler(SmtiCodec(), OracleConfig())

    first = handler.process(n=3, trials=3, seed=11)
    second = handler.process(n=3, trials=3, seed=11)

    assert first == second
    assert first.mismatches == []
    assert first.checks + first.skipped > 0


@pytest.fixture
def reductions() -> ReductionHandler:
    return ReductionHandler(
        SmtiCodec(), MetadataCodec(), ReductionConfig(), OracleConfig()
    )


def test_reduction_request_builds_instance(reductions):
    out = reductions.build(
        ReductionRequest(kind="clique-maxsmt", input_text=CLIQUE_TEXT)
    )

    assert out.instance.n_agents == 24


def test_generate_writes_both_files(reductions, tmp_path):
    request = ReductionRequest(kind="clique-sesm", input_text=CLIQUE_TEXT)

    files = reductions.generate(request, tmp_path / "sesm")

    assert files.instance.read_text(encoding="utf-8").startswith("p smti 60 60\n")
    assert MetadataCodec().parse(files.metadata.read_text(encoding="utf-8")).kind == (
        "clique-sesm"
    )


def test_supplied_decomposition_must_cover_the_primal_graph():
    handler = SolveHandler(SmtiCodec(), OracleConfig())
    request = SolveRequest(
        instance_text=I3_TEXT,
        problem="sesm",
        method="xp",
        td_text="s td 1 2 6\nb 1 1 4\n",
    )

    with pytest.raises(DecompositionMismatchError) as exc:
        handler.process(request)
    assert exc.value.graph_kind == "primal"
    assert isinstance(exc.value.cause, TreeDecompositionError)
