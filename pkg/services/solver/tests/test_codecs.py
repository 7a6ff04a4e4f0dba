import pytest
from matching_common import InstanceValidationError

from domain import build_rotation_structure
from infrastructure import CliqueCodec, DimacsCodec, MetadataCodec, rotation_dot
from reductions import CliqueInput, SatInput, reduce_clique_to_min_smt

CLIQUE_TEXT = """\
c two classes, one edge
p clique 4 2
v 1 1
v 2 1
v 3 2
v 4 2
e 1 3
"""

CNF_TEXT = """\
c (x1 or x2) and (not x1)
p cnf 2 2
1 2 0
-1
0
"""


def test_clique_parse():
    graph = CliqueCodec().parse(CLIQUE_TEXT)

    assert graph == CliqueInput(
        n_vertices=4, k=2, classes=(0, 0, 1, 1), edges=((0, 2),)
    )
    assert graph.p == 2


def test_clique_render():
    graph = CliqueInput(n_vertices=4, k=2, classes=(0, 0, 1, 1), edges=((0, 2),))

    assert CliqueCodec().render(graph) == (
        "p clique 4 2\nv 1 1\nv 2 1\nv 3 2\nv 4 2\ne 1 3\n"
    )


@pytest.mark.parametrize(
    "text, reason",
    [
        ("v 1 1\n", "expected 'p clique <vertices> <classes>'"),
        ("p clique 2 2\nv 1 1\n", "vertex 2 has no class"),
        ("p clique 2 2\nv 3 1\n", "unknown vertex 3"),
        ("p clique 2 2\nv 1 1\nv 1 2\n", "vertex 1 coloured twice"),
        ("p clique 2 2\nv 1 x\n", "non-integer value"),
        ("p clique 4 2\nv 1 1\nv 2 1\nv 3 2\nv 4 2\ne 1 2\n", "inside a colour"),
        ("", "missing 'p clique' header"),
    ],
)
def test_clique_parse_rejects(text, reason):
    with pytest.raises(InstanceValidationError, match=reason):
        CliqueCodec().parse(text)


def test_dimacs_parse():
    formula = DimacsCodec(block_size=2).parse(CNF_TEXT)

    assert formula == SatInput(n_vars=2, clauses=((1, 2), (-1,)), block_size=2)
    assert formula.n_blocks == 1


def test_dimacs_render():
    formula = SatInput(n_vars=2, clauses=((1, 2), (-1,)))

    assert DimacsCodec().render(formula) == "p cnf 2 2\n1 2 0\n-1 0\n"


@pytest.mark.parametrize(
    "text, reason",
    [
        ("1 2 0\n", "clause before 'p cnf' header"),
        ("p cnf 2 2\n1 2 0\n", "header declares 2 clauses, found 1"),
        ("p cnf 2 1\n1 x 0\n", "invalid literal 'x'"),
        ("p cnf 2 1\np cnf 2 1\n", "expected a single"),
        ("p cnf 1 1\n2 0\n", "invalid literal 2"),
        ("c nothing\n", "missing 'p cnf' header"),
    ],
)
def test_dimacs_parse_rejects(text, reason):
    with pytest.raises(InstanceValidationError, match=reason):
        DimacsCodec().parse(text)


def test_metadata_parses_what_it_renders():
    graph = CliqueInput(n_vertices=4, k=2, classes=(0, 0, 1, 1), edges=((0, 2),))
    metadata = reduce_clique_to_min_smt(graph).metadata
    codec = MetadataCodec()
    text = codec.render(metadata)

    assert text.startswith("kind: clique-minsmt\nrelaxed: true\nagents: 31\n")
    assert "man 1: leader[1]\n" in text
    assert codec.parse(text) == metadata


@pytest.mark.parametrize(
    "text, reason",
    [
        ("kind clique-sesm\n", "expected 'key: value'"),
        ("kind: clique-sesm\nrelaxed: true\n", "missing key 'agents'"),
        ("man 2: leader[1]\n", "man roles are not numbered"),
        ("man 1: Leader!\n", "malformed role"),
    ],
)
def test_metadata_parse_rejects(text, reason):
    with pytest.raises(InstanceValidationError, match=reason):
        MetadataCodec().parse(text)


def test_rotation_dot(i3):
    dot = rotation_dot(i3, build_rotation_structure(i3))
    lines = dot.splitlines()

    assert lines[0] == "digraph rotations {"
    assert lines[-1] == "}"
    assert sum(1 for line in lines if "[label=" in line) == 2
    assert '  "r1" -> "r2";' in lines


def test_rotation_dot_without_rotations(single):
    dot = rotation_dot(single, build_rotation_structure(single))

    assert dot == "digraph rotations {\n}\n"
