from __future__ import annotations

import json

import pytest

from sqturan import report
from sqturan.cli import run
from sqturan.graph import complete, gn
from sqturan.io import from_graph6, read_graph6_file
from sqturan.prooflab import LemmaReport
from sqturan.search import SearchReport
from sqturan.spectral import spectral_radius


def config_of(text: str) -> dict:
    first = text.splitlines()[0]
    assert first.startswith("# config: ")
    return json.loads(first[len("# config: "):])


def test_emit_examples():
    rep = SearchReport(8, 9, "edges", 30.0, ["Hzz", "Haa"], 10, True)
    lines = report.search_graph6(rep).splitlines()[1:]
    assert lines == ["Haa", "Hzz"]
    assert "rho=3.000000000000" in report.spectral_text(spectral_radius(complete(4)))
    assert report.lemma_csv([]).splitlines()[1:] == ["lemma,holds,quantities,thresholds"]


def test_emit_is_byte_stable():
    reps = [LemmaReport("w_size", True, {"b": 1.5, "a": 2}), LemmaReport("near_turan", False, {"x": 0.1})]
    a = report.lemma_csv(reps, {"seed": 1})
    b = report.lemma_csv(list(reversed(reps)), {"seed": 1})
    assert a == b
    assert a.splitlines()[2].startswith("near_turan,false")


def test_emit_path_error(tmp_path):
    with pytest.raises(OSError, match="cannot write"):
        report.emit("x", tmp_path / "missing" / "out.txt")


def test_construct_round_trip(tmp_path, capsys):
    out = tmp_path / "g.g6"
    assert run(["construct", "--family", "gn", "--n", "10", "--out", str(out)]) == 0
    text = out.read_text()
    assert config_of(text)["flags"]["n"] == 10
    (g,) = read_graph6_file(out)
    assert g.edge_count() == 36 and g.rows == gn(10).rows


def test_construct_dimacs(tmp_path):
    out = tmp_path / "g.col"
    assert run(["construct", "--family", "turan", "--n", "9", "--format", "dimacs", "--out", str(out)]) == 0
    assert run(["edges", "--input", str(out)]) == 0


def test_chromatic_example(capsys):
    assert run(["chromatic", "--family", "cycle-square", "--ell", "8"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("chi=4\n")
    assert "vertex,color" in out


def test_verify_theorem_example(capsys):
    assert run(["verify-theorem", "--ell", "8", "--n-min", "10", "--n-max", "60"]) == 0
    out = capsys.readouterr().out
    rows = out.splitlines()[2:]
    assert len(rows) == 51
    assert all(r.endswith(",true") for r in rows)


@pytest.mark.parametrize("argv, code", [
    (["edges", "--family", "gn", "--n", "12"], 0),
    (["matching", "--family", "cycle-square", "--ell", "8"], 0),
    (["good-partition", "--ell", "8"], 0),
    (["detect", "--family", "gn", "--n", "14", "--ell", "8"], 0),
    (["detect", "--family", "complete", "--n", "9", "--ell", "8"], 0),
    (["spectral", "--family", "gn", "--n", "12"], 0),
    (["eigen-balance", "--sizes", "5,3,3"], 0),
    (["audit", "--family", "gn", "--n", "20", "--ell", "8"], 0),
    (["maxcut3", "--family", "gn", "--n", "12", "--mode", "exact"], 0),
    (["search", "--ell", "8", "--n", "6"], 0),
    (["search", "--ell", "8", "--n", "12", "--method", "hillclimb", "--budget", "30"], 0),
    (["search", "--ell", "8", "--n", "8", "--budget", "100"], 2),
    (["detect", "--family", "gn", "--n", "30", "--ell", "8", "--node-limit", "3"], 2),
    ([], 1),
    (["nope"], 1),
    (["edges"], 1),
    (["edges", "--family", "gn"], 1),
    (["edges", "--family", "gn", "--n", "2"], 1),
    (["edges", "--family", "gn", "--n", "5", "--graph6", "C~"], 1),
    (["search", "--ell", "8", "--n", "20"], 1),
    (["eigen-balance", "--sizes", "3,3"], 1),
    (["good-partition", "--ell", "30"], 1),
    (["spectral", "--graph6", "!!"], 1),
    (["verify-theorem", "--ell", "8", "--n-min", "9", "--n-max", "5"], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code


def test_usage_error_names_flag(capsys):
    run(["edges", "--family", "gn", "--n", "2"])
    err = capsys.readouterr().err
    assert "--n" in err and ">= 4" in err


def test_check_failure_exit(monkeypatch, capsys):
    from sqturan import search
    from sqturan.errors import CheckFailure

    def broken(*a, **k):
        raise CheckFailure("witness G?~ contains C_8^2")
    monkeypatch.setattr("sqturan.cli.exhaustive_extremal", broken)
    assert run(["search", "--ell", "8", "--n", "6"]) == 3


def test_threads_env(monkeypatch, tmp_path):
    out = tmp_path / "r.csv"
    monkeypatch.setenv("SQTURAN_THREADS", "2")
    assert run(["search", "--ell", "7", "--n", "6", "--out", str(out)]) == 0
    assert config_of(out.read_text())["threads"] == 2
    monkeypatch.setenv("SQTURAN_THREADS", "zero")
    assert run(["search", "--ell", "7", "--n", "6"]) == 1


def test_search_outputs_are_deterministic(tmp_path):
    paths = []
    for k in range(2):
        csv_path, g6_path = tmp_path / "r.csv", tmp_path / "w.g6"
        assert run(["search", "--ell", "8", "--n", "14", "--method", "hillclimb", "--budget", "40",
                    "--seed", "5", "--out", str(csv_path), "--witness-out", str(g6_path)]) == 0
        paths.append((csv_path.read_bytes(), g6_path.read_bytes()))
    assert paths[0] == paths[1]


def test_spectral_vector_output(tmp_path, capsys):
    vec = tmp_path / "x.csv"
    assert run(["spectral", "--family", "complete", "--n", "4", "--vector-out", str(vec)]) == 0
    assert "rho=3.000000000000" in capsys.readouterr().out
    lines = vec.read_text().splitlines()
    assert lines[1] == "vertex,entry" and len(lines) == 6


def test_report_emit_formats(tmp_path):
    from sqturan.report import report_emit

    assert "rho=3.000000000000" in report_emit(spectral_radius(complete(4)), "text")
    assert report_emit([], "csv").splitlines()[1] == "lemma,holds,quantities,thresholds"
    rep = SearchReport(ell=8, n=9, objective="edges", best_value=30, witnesses=["HFzf~~~", "H?~~~~~"],
                       graphs_enumerated=1, exhaustive=True, candidates=1, gn_value=29,
                       comparison="exceeds_Gn", seed=None, budget=None, prune_samples=[])
    out = tmp_path / "w.g6"
    text = report_emit(rep, "graph6", out)
    assert out.read_text() == text
    assert text.splitlines()[1:] == ["H?~~~~~", "HFzf~~~"]
    with pytest.raises(ValueError):
        report_emit(rep, "xml")
    with pytest.raises(OSError, match="cannot write"):
        report_emit(rep, "csv", tmp_path / "missing" / "x.csv")
