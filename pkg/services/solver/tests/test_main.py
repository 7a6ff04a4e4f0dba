import json

import pytest

from main import EXIT_GUARD, EXIT_INVALID, EXIT_OK, main
from tests.conftest import I3_TEXT, TIED_TEXT

CLIQUE_TEXT = "p clique 4 2\nv 1 1\nv 2 1\nv 3 2\nv 4 2\ne 1 3\n"
CONTRADICTION_TEXT = "p cnf 1 2\n1 0\n-1 0\n"


def _complete(n: int) -> str:
    ids = " ".join(str(i) for i in range(1, n + 1))
    lines = [f"p smti {n} {n}"]
    lines += [f"m {i} : ({ids})" for i in range(1, n + 1)]
    lines += [f"w {i} : ({ids})" for i in range(1, n + 1)]
    return "\n".join(lines) + "\n"


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def _solve(path: str, problem: str, method: str, *extra: str) -> int:
    return main(
        ["solve", "--problem", problem, "--method", method, "--instance", path, *extra]
    )


def test_parse_echoes_the_instance(files, capsys):
    assert main(["parse", "--instance", files("i3.smti", I3_TEXT)]) == EXIT_OK
    assert capsys.readouterr().out == I3_TEXT


@pytest.mark.parametrize("method", ["oracle", "xp", "fpt"])
def test_solve_sex_equal(files, capsys, method):
    path = files("i3.smti", I3_TEXT)

    code = _solve(path, "sesm", method, "--witness")
    out = _json(capsys)

    assert code == EXIT_OK
    assert set(out) == {"problem", "method", "optimum", "witness", "stats"}
    assert out["problem"] == "sesm"
    assert out["method"] == method
    assert out["optimum"] == 0
    assert out["witness"] == [[1, 2], [2, 3], [3, 1]]


def test_solve_without_witness_flag(files, capsys):
    path = files("i3.smti", I3_TEXT)

    _solve(path, "gsm", "fpt")
    out = _json(capsys)

    assert out["optimum"] == [[3, 9], [6, 6], [9, 3]]
    assert out["witness"] is None


def test_solve_gale_shapley_reports_its_matching(files, capsys):
    path = files("i3.smti", I3_TEXT)

    _solve(path, "bsm", "gs", "--witness")
    out = _json(capsys)

    assert out["optimum"] == 9
    assert out["witness"] == [[1, 1], [2, 2], [3, 3]]


def test_solve_tied_instance(files, capsys):
    path = files("tied.smti", TIED_TEXT)

    _solve(path, "max-smt", "xp")

    assert _json(capsys)["optimum"] == 2


def test_rotations(files, capsys):
    assert main(["rotations", "--instance", files("i3.smti", I3_TEXT)]) == EXIT_OK
    out = _json(capsys)

    assert len(out["rotations"]) == 2
    assert out["arcs"] == [[1, 2]]
    assert out["man_optimal"] == [[1, 1], [2, 2], [3, 3]]


def test_rotations_dot(files, capsys):
    main(["rotations", "--instance", files("i3.smti", I3_TEXT), "--dot"])

    assert capsys.readouterr().out.startswith("digraph rotations {\n")


def test_decompose_writes_a_td_file(files, tmp_path):
    out = tmp_path / "i3.td"

    code = main(
        [
            "decompose",
            "--instance",
            files("i3.smti", I3_TEXT),
            "--graph",
            "primal",
            "--nice",
            "--out",
            str(out),
        ]
    )

    assert code == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("s td ")


def test_generate_then_parse(files, tmp_path, capsys):
    source = files("graph.clq", CLIQUE_TEXT)
    prefix = tmp_path / "minsmt"

    code = main(
        ["generate", "--kind", "clique-minsmt", "--input", source, "--out", str(prefix)]
    )
    written = _json(capsys)

    assert code == EXIT_OK
    assert written["instance"] == str(tmp_path / "minsmt.smti")
    assert (tmp_path / "minsmt.meta").read_text(encoding="utf-8").startswith(
        "kind: clique-minsmt\n"
    )
    assert main(["parse", "--instance", written["instance"]]) == EXIT_OK


def test_generate_unsatisfiable_formula(files, tmp_path, capsys):
    source = files("contradiction.cnf", CONTRADICTION_TEXT)

    code = main(
        [
            "generate",
            "--kind",
            "sat-sesm",
            "--input",
            source,
            "--block-size",
            "2",
            "--out",
            str(tmp_path / "sat"),
        ]
    )

    assert code == EXIT_OK
    assert _json(capsys)["instance"] is None
    assert "unsatisfiable_block: 1" in (tmp_path / "sat.meta").read_text(
        encoding="utf-8"
    )


def _verify(kind: str, source: str, *extra: str) -> int:
    return main(["verify-reduction", "--kind", kind, "--input", source, *extra])


def test_verify_reduction(files, capsys):
    source = files("graph.clq", CLIQUE_TEXT)

    code = _verify("clique-sesm", source, "--relaxed")
    out = _json(capsys)

    assert code == EXIT_OK
    assert out["kind"] == "clique-sesm"
    assert all(check["status"] != "fail" for check in out["checks"])


def test_verify_reduction_strict_mode_rejects_a_sparse_graph(files):
    source = files("graph.clq", CLIQUE_TEXT)

    assert _verify("clique-sesm", source) == EXIT_INVALID


@pytest.mark.parametrize("kind", ["sat-sesm", "sat-bsm"])
def test_verify_sat_reduction(files, capsys, kind):
    source = files("clause.cnf", "p cnf 2 1\n1 2 0\n")

    code = _verify(kind, source, "--relaxed")
    statuses = {check["name"]: check["status"] for check in _json(capsys)["checks"]}

    assert code == EXIT_OK
    assert statuses["rotation-families"] == "pass"
    assert statuses["stable-set"] == "pass"


def test_fuzz_batch_agrees(capsys):
    assert main(["fuzz", "--n", "3", "--trials", "4", "--seed", "7"]) == EXIT_OK
    out = _json(capsys)

    assert out["trials"] == 4
    assert out["mismatches"] == []


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--problem", "sesm", "--method", "fpt", "--instance", "TIED"],
        [
            "solve",
            "--problem",
            "sesm",
            "--method",
            "xp",
            "--instance",
            "I3",
            "--graph",
            "rotation",
        ],
        ["parse", "--instance", "BROKEN"],
        ["parse", "--instance", "MISSING"],
    ],
)
def test_invalid_input_exit_code(files, argv):
    paths = {
        "TIED": files("tied.smti", TIED_TEXT),
        "I3": files("i3.smti", I3_TEXT),
        "BROKEN": files("broken.smti", "p smti 1 1\nm 1 : 2\n"),
        "MISSING": "no/such/file.smti",
    }

    assert main([paths.get(arg, arg) for arg in argv]) == EXIT_INVALID


def test_guard_exit_code(files):
    path = files("complete.smti", _complete(5))

    code = _solve(path, "max-smt", "oracle")

    assert code == EXIT_GUARD


def test_unknown_problem_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--problem", "nope", "--method", "xp", "--instance", "x"])
    assert exc.value.code == 2


@pytest.mark.parametrize("command", ["generate", "verify-reduction"])
def test_reduction_help_explains_the_agent_counts(capsys, command):
    with pytest.raises(SystemExit) as exc:
        main([command, "--help"])
    text = " ".join(capsys.readouterr().out.split())

    assert exc.value.code == 0
    assert "4n + 8a + 2h + 2" in text
    assert "extras.printed_agents" in text
