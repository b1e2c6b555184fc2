import json

import pytest

from corpus import doc_ttl
from shaclsat.cli import dispatch

FIG1_SHAPES = doc_ttl(
    ":studentShape a sh:NodeShape ; sh:targetClass :Student ; sh:not :disjFacultyShape .\n"
    ":disjFacultyShape a sh:PropertyShape ; sh:path (:hasSupervisor :hasFaculty) ; "
    "sh:disjoint :hasFaculty ."
)

FIG1_GRAPH = """
@prefix : <http://corpus.example/> .
:Alex a :Student ; :hasFaculty :CS ; :hasSupervisor :Jane .
:Jane :hasFaculty :CS .
"""


@pytest.fixture()
def files(tmp_path):
    shapes = tmp_path / "shapes.ttl"
    shapes.write_text(FIG1_SHAPES)
    graph = tmp_path / "graph.ttl"
    graph.write_text(FIG1_GRAPH)
    return tmp_path, shapes, graph


def test_validate_conforms_exit_zero(files, capsys):
    _, shapes, graph = files
    code = dispatch(["validate", str(graph), str(shapes)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out == {"conforms": True, "violations": []}


def test_validate_violation_exit_one(files, capsys):
    tmp_path, shapes, _ = files
    bad = tmp_path / "bad.ttl"
    bad.write_text(FIG1_GRAPH.replace(":Jane :hasFaculty :CS", ":Jane :hasFaculty :Physics"))
    code = dispatch(["validate", str(bad), str(shapes)])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and not out["conforms"]
    assert out["violations"] == [
        {"focusNode": "<http://corpus.example/Alex>", "shape": "<http://corpus.example/studentShape>"}
    ]
    assert dispatch(["validate", "--direct", str(bad), str(shapes)]) == 1
    capsys.readouterr()


def test_classify_fig1(files, capsys):
    _, shapes, _ = files
    code = dispatch(["classify", str(shapes)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "Decidable"
    assert out["rawFeatures"] == ["D", "S"]


def test_translate_back_translate_pipe(files, tmp_path, capsys):
    _, shapes, graph = files
    assert dispatch(["translate", str(shapes)]) == 0
    scl_text = capsys.readouterr().out
    scl_file = tmp_path / "out.scl"
    scl_file.write_text(scl_text)
    assert dispatch(["back-translate", str(scl_file)]) == 0
    turtle = capsys.readouterr().out
    back = tmp_path / "back.ttl"
    back.write_text(turtle)
    assert dispatch(["validate", str(graph), str(back)]) == 0
    capsys.readouterr()


def test_sat_exit_codes(files, tmp_path, capsys):
    _, shapes, _ = files
    assert dispatch(["sat", str(shapes)]) == 0
    capsys.readouterr()
    unsat = tmp_path / "unsat.ttl"
    unsat.write_text(
        doc_ttl(
            ":s a sh:NodeShape ; sh:targetNode :c ; sh:in (:c) ; sh:not :t .\n"
            ":t a sh:NodeShape ; sh:in (:c) ."
        )
    )
    code = dispatch(["sat", str(unsat)])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and out == {"outcome": "UnsatUpTo", "bound": 4}


def test_sat_budget_abort_exit_two(tmp_path, capsys):
    hard = tmp_path / "hard.scl"
    from shaclsat.gadgets import gadget_infinity
    from shaclsat.scl_text import print_scl

    hard.write_text(print_scl(gadget_infinity("O")))
    code = dispatch(["sat", str(hard), "--max-domain", "6", "--budget", "0.01"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2 and out["outcome"] == "Aborted"


def test_contains_exit_codes(tmp_path, capsys):
    d1 = tmp_path / "d1.ttl"
    d2 = tmp_path / "d2.ttl"
    d1.write_text(doc_ttl(":s a sh:PropertyShape ; sh:targetClass :A ; sh:path :r ; sh:minCount 2 ."))
    d2.write_text(doc_ttl(":s a sh:PropertyShape ; sh:targetClass :A ; sh:path :r ; sh:minCount 1 ."))
    assert dispatch(["contains", str(d1), str(d2)]) == 0
    capsys.readouterr()
    code = dispatch(["contains", str(d2), str(d1)])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and "counterexampleTurtle" in out


def test_rewrite_and_axiomatize(tmp_path, capsys):
    scl = tmp_path / "f.scl"
    scl.write_text(
        "(at <http://e/c> (count>= 1 (alt (rel <http://e/P>) (rel <http://e/Q>)) (top)))"
    )
    assert dispatch(["rewrite", str(scl), "--eliminate", "A"]) == 0
    out = capsys.readouterr().out
    assert "(alt" not in out
    assert dispatch(["rewrite", str(scl), "--name-subformulas"]) == 0
    capsys.readouterr()
    scl.write_text("(at <http://e/c> (filter datatype <http://www.w3.org/2001/XMLSchema#boolean>))")
    assert dispatch(["axiomatize", str(scl)]) == 0
    assert "at-most 2" in capsys.readouterr().out


def test_gadget_subcommands(tmp_path, capsys):
    assert dispatch(["gadget", "infinity", "C"]) == 0
    assert "count>= 2" in capsys.readouterr().out
    tiling = tmp_path / "t.json"
    tiling.write_text('{"tiles": ["t"], "horizontal": [["t","t"]], "vertical": [["t","t"]]}')
    assert dispatch(["gadget", "domino", "SZAE", str(tiling)]) == 0
    capsys.readouterr()


def test_stdin_dash(files, capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("(top)"))
    assert dispatch(["classify", "-", "--lang", "scl"]) == 0
    capsys.readouterr()


def test_usage_error_exit_64(capsys):
    assert dispatch(["no-such-command"]) == 64
    capsys.readouterr()
    assert dispatch(["sat"]) == 64
    capsys.readouterr()
    assert dispatch(["validate", "/nonexistent/path.ttl", "/nonexistent/shapes.ttl"]) == 64
    capsys.readouterr()


def test_parse_error_exit_65(tmp_path, capsys):
    bad = tmp_path / "bad.ttl"
    bad.write_text(":س :p .")
    assert dispatch(["validate", str(bad), str(bad)]) == 65
    capsys.readouterr()
    bad_scl = tmp_path / "bad.scl"
    bad_scl.write_text("(nonsense")
    assert dispatch(["classify", str(bad_scl), "--lang", "scl"]) == 65
    capsys.readouterr()


def test_threads_env_guard(files, capsys, monkeypatch):
    _, shapes, graph = files
    monkeypatch.setenv("SHACL_LOGIC_THREADS", "not-a-number")
    assert dispatch(["validate", str(graph), str(shapes)]) == 64
    capsys.readouterr()
    monkeypatch.setenv("SHACL_LOGIC_THREADS", "2")
    assert dispatch(["validate", str(graph), str(shapes)]) == 0
    capsys.readouterr()


def test_text_output_mode(files, capsys):
    _, shapes, graph = files
    assert dispatch(["--output", "text", "validate", str(graph), str(shapes)]) == 0
    assert "conforms" in capsys.readouterr().out
    assert dispatch(["--output", "text", "classify", str(shapes)]) == 0
    out = capsys.readouterr().out
    assert "Decidable" in out and "finite-model property" in out
    assert dispatch(["--output", "text", "sat", str(shapes)]) == 0
    assert capsys.readouterr().out.startswith("Sat")
