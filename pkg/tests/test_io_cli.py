import json

import pytest
from click.testing import CliRunner

from pmvc import colorings as col
from pmvc.cli import main
from pmvc.generators import gen_dicke_graph
from pmvc.graph import make_graph
from pmvc.graph_io import (
    graph_digest,
    graph_from_json,
    graph_from_text,
    graph_to_json,
    graph_to_text,
    read_graph,
    read_sidecar,
    sidecar_spec,
    write_graph,
    write_sidecar,
)


# --------------------------------------------------------------------------
# file formats

def test_text_round_trip():
    g = gen_dicke_graph(6, 2)
    assert graph_from_text(graph_to_text(g)) == g


def test_text_format_shape():
    g = make_graph(2, 2, [(1, 1, 2, 2)])
    assert graph_to_text(g) == "2 2\n1 1 2 2\n"


def test_text_accepts_comments_and_blanks():
    g = graph_from_text("# a comment\n\n3 2\n\n1 1 2 2\n# trailing\n")
    assert g.n == 3 and len(g.edges) == 1


def test_text_errors():
    with pytest.raises(ValueError, match="header"):
        graph_from_text("1 2 3\n")
    with pytest.raises(ValueError, match="edge"):
        graph_from_text("2 1\n1 1 2\n")
    with pytest.raises(ValueError, match="empty"):
        graph_from_text("# nothing\n")


def test_json_round_trip(tmp_path):
    g = gen_dicke_graph(4, 1)
    assert graph_from_json(graph_to_json(g)) == g
    path = tmp_path / "g.json"
    write_graph(g, path, as_json=True)
    assert read_graph(path) == g


def test_digest_is_stable_and_sensitive():
    g = gen_dicke_graph(4, 1)
    assert graph_digest(g) == graph_digest(gen_dicke_graph(4, 1))
    assert graph_digest(g) != graph_digest(gen_dicke_graph(4, 2))


def test_sidecar_round_trip(tmp_path):
    path = tmp_path / "g.graph"
    write_graph(gen_dicke_graph(4, 1), path)
    write_sidecar(path, spec=col.dicke(1), symmetric_sets=[[1], [2, 3, 4]])
    meta = read_sidecar(path)
    assert sidecar_spec(meta) == col.dicke(1)
    assert meta["symmetric_sets"] == [[1], [2, 3, 4]]
    assert read_sidecar(tmp_path / "missing.graph") == {}


# --------------------------------------------------------------------------
# CLI

@pytest.fixture()
def runner():
    return CliRunner()


def test_cli_generate_dicke(tmp_path, runner):
    out = tmp_path / "g.graph"
    result = runner.invoke(main, ["generate", "dicke-graph", "-n", "6", "-k", "2",
                                  "-o", str(out)])
    assert result.exit_code == 0, result.output
    g = read_graph(out)
    assert len(g.edges) == 22
    meta = read_sidecar(out)
    assert sidecar_spec(meta) == col.dicke(2)
    assert meta["symmetric_sets"] == [[1, 2], [3, 4, 5, 6]]


def test_cli_generate_to_stdout(runner):
    result = runner.invoke(main, ["generate", "kbip", "-a", "2", "-b", "4"])
    assert result.exit_code == 0
    assert result.output.startswith("6 1\n")


def test_cli_generate_mutant_deterministic(tmp_path, runner):
    a, b = tmp_path / "a.graph", tmp_path / "b.graph"
    for out in (a, b):
        result = runner.invoke(main, ["generate", "mutant", "--base", "dicke:10,4",
                                      "--mode", "bicolored:2", "--seed", "7",
                                      "-o", str(out)])
        assert result.exit_code == 0, result.output
    assert a.read_text() == b.read_text()
    g = read_graph(a)
    assert len(g.edges) == len(gen_dicke_graph(10, 4).edges) - 2


def test_cli_encode_reports_named_count(tmp_path, runner):
    graph = tmp_path / "g.graph"
    write_graph(make_graph(6, 2, [(1, 1, 2, 1), (2, 2, 3, 2), (3, 1, 4, 1),
                                  (4, 2, 5, 2), (5, 1, 6, 1), (1, 2, 6, 2),
                                  (1, 1, 3, 1), (2, 1, 4, 1), (3, 2, 5, 2),
                                  (4, 1, 6, 1)]), graph)
    out = tmp_path / "f.cnf"
    result = runner.invoke(main, ["encode", str(graph), "--spec", "ghz:2",
                                  "--encoding", "tutte-cnf", "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert "named variables: 70" in result.output
    result = runner.invoke(main, ["encode", str(graph), "--spec", "ghz:2",
                                  "--encoding", "tutte-cnf", "--opt",
                                  "-o", str(out)])
    assert "named variables: 55" in result.output
    sidecar = json.loads((tmp_path / "f.cnf.vars.json").read_text())
    assert sidecar["named_count"] == 55


def test_cli_encode_all_encodings(tmp_path, runner):
    graph = tmp_path / "g.graph"
    write_graph(gen_dicke_graph(4, 1), graph)
    write_sidecar(graph, spec=col.dicke(1), symmetric_sets=[[2, 3, 4]])
    for enc, suffix in [("tutte-cnf", "cnf"), ("tutte-pbxor", "opb"),
                        ("tutte-asp", "lp"), ("exactone-cnf", "cnf"),
                        ("exactone-pb", "opb"), ("qbf", "qdimacs")]:
        out = tmp_path / f"f-{enc}.{suffix}"
        result = runner.invoke(main, ["encode", str(graph), "--spec", "dicke:1",
                                      "--encoding", enc, "--gs", "auto",
                                      "-o", str(out)])
        assert result.exit_code == 0, (enc, result.output)
        assert out.exists() and out.stat().st_size > 0


def test_cli_encode_qbf_rejects_explicit(tmp_path, runner):
    graph = tmp_path / "g.graph"
    write_graph(make_graph(2, 2, [(1, 1, 2, 1)]), graph)
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"kind": "explicit", "colorings": [[1, 1]]}))
    result = runner.invoke(main, ["encode", str(graph), "--spec", str(spec),
                                  "--encoding", "qbf", "-o", str(tmp_path / "x")])
    assert result.exit_code != 0


def test_cli_check_exit_codes(tmp_path, runner):
    good = tmp_path / "good.graph"
    write_graph(gen_dicke_graph(6, 2), good)
    result = runner.invoke(main, ["check", str(good), "--spec", "dicke:2",
                                  "--method", "tutte"])
    assert result.exit_code == 0, result.output
    assert "SATISFIES" in result.output

    bad = tmp_path / "bad.graph"
    write_graph(make_graph(2, 2, []), bad)
    result = runner.invoke(main, ["check", str(bad), "--spec", "ghz:2",
                                  "--method", "tutte"])
    assert result.exit_code == 1
    assert "VIOLATED" in result.output
    assert "witness verified: True" in result.output

    result = runner.invoke(main, ["check", str(bad), "--spec", "ghz:2",
                                  "--method", "tutte", "--solver", "nonexistent"])
    assert result.exit_code != 0


def test_cli_check_uses_sidecar_spec(tmp_path, runner):
    graph = tmp_path / "g.graph"
    write_graph(gen_dicke_graph(4, 1), graph)
    write_sidecar(graph, spec=col.dicke(1))
    result = runner.invoke(main, ["check", str(graph), "--method", "enum-blossom"])
    assert result.exit_code == 0, result.output


def test_cli_check_unknown_when_qbf_too_big(tmp_path, runner):
    graph = tmp_path / "g.graph"
    write_graph(gen_dicke_graph(10, 2), graph)
    result = runner.invoke(main, ["check", str(graph), "--spec", "dicke:2",
                                  "--method", "qbf"])
    assert result.exit_code == 2
    assert "UNKNOWN" in result.output


def test_cli_solve_internal(tmp_path, runner):
    f = tmp_path / "t.cnf"
    f.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    result = runner.invoke(main, ["solve", str(f)])
    assert result.exit_code == 0
    assert "status: SAT" in result.output
    assert "true variables: [2]" in result.output
    result = runner.invoke(main, ["solve", str(f), "--bruteforce"])
    assert result.exit_code == 0
    f2 = tmp_path / "u.cnf"
    f2.write_text("p cnf 1 2\n1 0\n-1 0\n")
    assert runner.invoke(main, ["solve", str(f2)]).exit_code == 1


def test_cli_oracle_commands(tmp_path, runner):
    graph = tmp_path / "g.graph"
    write_graph(gen_dicke_graph(4, 1), graph)
    result = runner.invoke(main, ["oracle", "forall", str(graph), "--spec", "dicke:1"])
    assert result.exit_code == 0 and "SATISFIES" in result.output
    result = runner.invoke(main, ["oracle", "pm", str(graph)])
    assert "perfect matching exists" in result.output
    kbip = tmp_path / "k.graph"
    from pmvc.generators import gen_complete_bipartite
    write_graph(gen_complete_bipartite(2, 4), kbip)
    result = runner.invoke(main, ["oracle", "tutte-set", str(kbip)])
    assert "deletion set: [1, 2]" in result.output
