"""End-to-end tests for the command line interface.

Everything runs in process through cli.main so that exit codes and
stdout/stderr can be asserted without spawning interpreters.
"""

import json
import math

import numpy as np
import pytest

from polyscheme.cli import main
from polyscheme.numerics import SymMatrix
from polyscheme.reports import reports_from_json
from polyscheme.spherical import format_gram_matrix


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def petersen_edges(tmp_path, capsys):
    path = tmp_path / "pet.edges"
    assert main(["gen", "petersen", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture
def petersen_rel(tmp_path, capsys):
    path = tmp_path / "pet.rel"
    assert main(["gen", "petersen", "--as", "scheme", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture
def cube_rel(tmp_path, capsys):
    path = tmp_path / "cube.rel"
    assert main(["gen", "hamming", "3", "2", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture
def pentagon_gram(tmp_path):
    angles = 2 * math.pi * np.arange(5) / 5
    pts = np.column_stack([np.cos(angles), np.sin(angles)])
    path = tmp_path / "pentagon.gram"
    path.write_text(format_gram_matrix(SymMatrix(pts @ pts.T)))
    return path


class TestGen:
    def test_graph_is_default_for_named_families(self, capsys):
        code, out, _ = run(capsys, "gen", "petersen")
        assert code == 0
        assert out.splitlines()[0] == "10 15"

    def test_scheme_is_default_for_parametric_families(self, capsys):
        code, out, _ = run(capsys, "gen", "hamming", "3", "2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "8 3"
        assert lines[1] == "0 1 1 2 1 2 2 3"

    def test_tensor_output(self, capsys):
        code, out, _ = run(capsys, "gen", "johnson", "5", "2", "--as", "tensor")
        assert code == 0
        assert out.splitlines()[0] == "10 2"

    def test_graph_override(self, capsys):
        code, out, _ = run(capsys, "gen", "hamming", "3", "2", "--as", "graph")
        assert code == 0
        assert out.splitlines()[0] == "8 12"

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "c5.edges"
        code, out, _ = run(capsys, "gen", "cycle", "5", "-o", str(path))
        assert code == 0
        assert out == ""
        assert path.read_text().splitlines()[0] == "5 5"

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "gen", "nosuch")
        assert code == 2
        assert err.startswith("error: unknown family 'nosuch'")


class TestAnalyzeGraph:
    def test_petersen_text(self, petersen_edges, capsys):
        code, out, _ = run(capsys, "analyze-graph", str(petersen_edges))
        assert code == 0
        assert "spectrum: 3 (x1)  1 (x5)  -2 (x4)" in out
        assert "diameter: 2   girth: 5" in out
        assert "moore bound: n = 10 > M(3, 1) = 4" in out
        assert "forced entries at diameter: E_1 -> -1/6  E_2 -> 1/15" in out
        assert "[pass] projector-entries" in out
        assert "min forced per row 6 >= 6" in out

    def test_petersen_json_round_trip(self, petersen_edges, capsys):
        code, out, _ = run(capsys, "analyze-graph", str(petersen_edges), "--json")
        assert code == 0
        payload = json.loads(out)
        assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == out
        reports, meta = reports_from_json(out)
        assert len(reports) == 2
        assert all(r.ok for r in reports)
        assert meta["degree"] == 3
        assert meta["spectrum"] == [3.0, 1.0, -2.0]

    def test_json_to_file(self, petersen_edges, tmp_path, capsys):
        dest = tmp_path / "out.json"
        code, out, _ = run(
            capsys, "analyze-graph", str(petersen_edges), "--json", "-o", str(dest))
        assert code == 0
        assert out == ""
        assert json.loads(dest.read_text())["n"] == 10

    def test_irregular_graph_reports_in_band(self, tmp_path, capsys):
        path = tmp_path / "path3.edges"
        path.write_text("3 2\n0 1\n1 2\n")
        code, out, _ = run(capsys, "analyze-graph", str(path))
        assert code == 0
        assert "[hypothesis-not-met]" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze-graph", "no-such-file.edges")
        assert code == 2
        assert err.startswith("error:")


class TestAnalyzeScheme:
    def test_petersen_verdict_lines(self, petersen_rel, capsys):
        code, out, _ = run(capsys, "analyze-scheme", str(petersen_rel))
        assert code == 0
        assert "points: 10   classes: 2" in out
        assert "P class 1 detector: polynomial; ordering 0-1-2" in out
        assert (
            "P class 1 size condition: polynomial; ordering 0-1-2; n = 10 > M(3, 1) = 4"
            in out
        )
        assert "P class 1 product formula: polynomial; witness l = 2" in out
        assert "Q eigenspace 1 detector: polynomial; ordering 0-1-2; schur-diameter 2" in out

    def test_cube_refutations(self, cube_rel, capsys):
        code, out, _ = run(capsys, "analyze-scheme", str(cube_rel))
        assert code == 0
        assert "P class 1 detector: polynomial; ordering 0-1-2-3" in out
        assert "P class 1 size condition: inconclusive; n = 8 <= M(3, 2) = 10" in out
        assert "P class 2 detector: not_polynomial; relation graph disconnected" in out
        assert "Q eigenspace 2 detector: not_polynomial; Krein-number index graph is not a path from 0" in out
        assert "embedding of eigenspace 2 degenerate: repeated points" in out

    def test_parametric_mode_on_tensor(self, tmp_path, capsys):
        path = tmp_path / "cube.tensor"
        assert main(["gen", "hamming", "3", "2", "--as", "tensor", "-o", str(path)]) == 0
        capsys.readouterr()
        code, out, _ = run(capsys, "analyze-scheme", str(path), "--parametric")
        assert code == 0
        assert "points: 8   classes: 3   (parametric)" in out
        assert "intersection-number index graph is not a path from 0" in out
        # no point data, so no spherical embeddings are attempted
        assert "sphere-eigenvalue" not in out

    def test_alternate_seed_set_agrees(self, petersen_rel, capsys):
        code, out, _ = run(
            capsys, "analyze-scheme", str(petersen_rel), "--seed-set", "alternate")
        assert code == 0
        assert "P class 1 product formula: polynomial; witness l = 2" in out

    def test_bad_seed_set_is_usage_error(self, petersen_rel, capsys):
        with pytest.raises(SystemExit) as info:
            main(["analyze-scheme", str(petersen_rel), "--seed-set", "bogus"])
        assert info.value.code == 2

    def test_axiom_violation(self, tmp_path, capsys):
        path = tmp_path / "bad.rel"
        path.write_text("4 1\n0 1 1 1\n1 0 1 1\n1 1 0 1\n1 1 1 1\n")
        code, _, err = run(capsys, "analyze-scheme", str(path))
        assert code == 2
        assert err.startswith("error: axiom 1: diagonal pair (3, 3)")

    def test_json_round_trip(self, petersen_rel, capsys):
        code, out, _ = run(capsys, "analyze-scheme", str(petersen_rel), "--json")
        assert code == 0
        payload = json.loads(out)
        assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == out
        assert payload["n"] == 10
        assert payload["degrees"] == [1, 3, 6]
        assert payload["mode"] == "explicit"
        # a detector, size and product verdict for each side of each class
        assert len(payload["verdicts"]) == 12
        assert {v["kind"] for v in payload["verdicts"]} == {"P", "Q"}
        reports, _ = reports_from_json(out)
        assert all(r.ok for r in reports)


class TestAnalyzeGram:
    def test_pentagon_size_route(self, pentagon_gram, capsys):
        code, out, _ = run(capsys, "analyze-gram", str(pentagon_gram))
        assert code == 0
        assert "points: 5   dimension: 2   distinct products: 2" in out
        assert "values: 1  0.3090169944  -0.8090169944" in out
        assert "[pass] sphere-eigenvalue" in out
        assert "multiplicity >= 2" in out

    def test_pentagon_schur_route(self, pentagon_gram, capsys):
        code, out, _ = run(capsys, "analyze-gram", str(pentagon_gram), "--route", "schur")
        assert code == 0
        assert "[pass] sphere-eigenvalue" in out

    def test_declared_d(self, pentagon_gram, capsys):
        code, out, _ = run(
            capsys, "analyze-gram", str(pentagon_gram), "--declared-d", "3")
        assert code == 0
        assert "n = 5 <= N(2, 2) = 5; size hypothesis not met" in out

    def test_json(self, pentagon_gram, capsys):
        code, out, _ = run(capsys, "analyze-gram", str(pentagon_gram), "--json")
        assert code == 0
        reports, meta = reports_from_json(out)
        assert len(reports) == 1
        assert reports[0].ok
        assert reports[0].subject == "sphere(n=5, m=2, s=2)"
        assert meta["subject"].endswith("pentagon.gram")

    def test_malformed_gram(self, tmp_path, capsys):
        path = tmp_path / "bad.gram"
        path.write_text("2\n1.0 zz\nzz 1.0\n")
        code, _, err = run(capsys, "analyze-gram", str(path))
        assert code == 2
        assert err.startswith("error: line 2:")


class TestBounds:
    def test_moore_single(self, capsys):
        code, out, _ = run(capsys, "bounds", "moore", "7", "1")
        assert code == 0
        assert out == "M(7, 1) = 8\n"

    def test_moore_span(self, capsys):
        code, out, _ = run(capsys, "bounds", "moore", "3", "1..3")
        assert code == 0
        assert out.splitlines() == ["M(3, 1) = 4", "M(3, 2) = 10", "M(3, 3) = 22"]

    def test_absolute(self, capsys):
        code, out, _ = run(capsys, "bounds", "absolute", "5", "1")
        assert code == 0
        assert out == "N(5, 1) = 6\n"

    def test_empty_span(self, capsys):
        code, _, err = run(capsys, "bounds", "moore", "3", "5..3")
        assert code == 2
        assert err == "error: empty range '5..3'\n"


class TestScan:
    def test_johnson_summary(self, capsys):
        code, out, _ = run(capsys, "scan", "johnson3", "6..12")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "scan johnson(n, 3)"
        assert lines[-2] == "P-condition: never true for n in range"
        assert lines[-1] == (
            "Q-condition: first true at n = 7; largest not-true at n = 6; "
            "monotone beyond first success: yes")

    def test_hamming_summary(self, capsys):
        code, out, _ = run(capsys, "scan", "hamming3", "2..8")
        assert code == 0
        lines = out.splitlines()
        assert lines[-2] == (
            "P-condition: first true at q = 7; largest not-true at q = 6; "
            "monotone beyond first success: yes")
        assert lines[-1] == (
            "Q-condition: first true at q = 4; largest not-true at q = 3; "
            "monotone beyond first success: yes")

    def test_json_rows(self, capsys):
        code, out, _ = run(capsys, "scan", "johnson3", "6..8", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "johnson3"
        assert payload["range"] == [6, 8]
        first = payload["rows"][0]
        assert first["param"] == 6
        assert first["n"] == 20
        assert first["absolute_bound"] == 20
        assert first["q_status"] == "inconclusive"

    def test_unknown_scan_family(self, capsys):
        code, _, err = run(capsys, "scan", "cycle9", "3..5")
        assert code == 2
        assert err.startswith("error: unknown scan family")
