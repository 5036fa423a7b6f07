import json
import subprocess
import sys

import pytest

from conftest import C, K, P
from corona_spectra import parse_edge_list, svev_corona, write_graph, CoronaOperands
from corona_spectra.cli import EXIT_CLOSED, EXIT_CONSISTENCY, EXIT_INPUT, EXIT_OK, dumps, main
from corona_spectra.graph_core import permute_vertices


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, G in {"c4": C(4), "k2": K(2), "k1": K(1), "k4": K(4), "p4": P(4)}.items():
        paths[name] = str(tmp_path / f"{name}.txt")
        write_graph(G, paths[name])
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestGen:
    def test_cycle4(self, capsys):
        code, out, _ = run(capsys, "gen", "cycle", 4)
        assert code == EXIT_OK
        assert out.splitlines()[0] == "4 4"
        assert set(out.splitlines()[1:]) == {"0 1", "1 2", "2 3", "0 3"}

    def test_complete2(self, capsys):
        assert run(capsys, "gen", "complete", 2)[1] == "2 1\n0 1\n"

    def test_bad_cycle(self, capsys):
        code, out, err = run(capsys, "gen", "cycle", 2)
        assert code == EXIT_INPUT and out == "" and "error" in err

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "k3.txt"
        assert run(capsys, "gen", "complete", 3, "--out", target)[0] == EXIT_OK
        assert parse_edge_list(target.read_text()) == K(3)


class TestCorona:
    def test_svev(self, capsys, files):
        code, out, _ = run(capsys, "corona", "--kind", "svev", files["c4"], files["k2"], files["k2"])
        assert code == EXIT_OK and out.startswith("24 40\n")
        assert parse_edge_list(out) == svev_corona(CoronaOperands(C(4), K(2), K(2)))

    def test_svee(self, capsys, files):
        code, out, _ = run(capsys, "corona", "--kind", "svee", files["c4"], files["k2"], files["k1"])
        assert code == EXIT_OK and out.startswith("20 32\n")

    def test_refuses_to_overwrite_input(self, capsys, files):
        before = open(files["k2"]).read()
        code, _, err = run(capsys, "corona", "--kind", "svev", files["c4"], files["k2"], files["k2"],
                           "--out", files["k2"])
        assert code == EXIT_INPUT and "overwrite" in err
        assert open(files["k2"]).read() == before

    def test_missing_file(self, capsys, files, tmp_path):
        code, _, _ = run(capsys, "corona", "--kind", "svev", files["c4"], tmp_path / "nope", files["k2"])
        assert code == EXIT_INPUT

    def test_malformed_file(self, capsys, files, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 1\n0 0\n")
        assert run(capsys, "corona", "--kind", "svee", files["c4"], bad, files["k1"])[0] == EXIT_INPUT


class TestSpectrum:
    def test_c4_oracle(self, capsys, files):
        code, out, _ = run(capsys, "spectrum", files["c4"])
        rep = json.loads(out)
        assert code == EXIT_OK and rep["method"] == "oracle" and rep["order"] == 4
        assert [e["multiplicity"] for e in rep["entries"]] == [1, 2, 1]
        assert [round(e["value"], 9) for e in rep["entries"]] == [0, 1, 2]

    def test_both_on_fixture(self, capsys, files):
        code, out, _ = run(capsys, "spectrum", "--kind", "svev", "--method", "both",
                           files["c4"], files["k2"], files["k2"])
        rep = json.loads(out)
        assert code == EXIT_OK and rep["order"] == 24
        assert rep["max_deviation_vs_oracle"] <= 1e-8
        assert {"value": pytest.approx(4 / 3), "multiplicity": 4} in rep["entries"]

    def test_closed_non_regular(self, capsys, files):
        code, _, err = run(capsys, "spectrum", "--kind", "svev", "--method", "closed",
                           files["p4"], files["k2"], files["k1"])
        assert code == EXIT_CLOSED and "inapplicable" in err

    def test_closed_on_bare_graph(self, capsys, files):
        assert run(capsys, "spectrum", "--method", "closed", files["c4"])[0] == EXIT_CLOSED

    def test_consistency_failure_exit(self, capsys, files):
        code, _, err = run(capsys, "spectrum", "--kind", "svee", "--method", "both", "--tol", "1e-30",
                           files["c4"], files["k2"], files["k1"])
        assert code == EXIT_CONSISTENCY and "deviates" in err

    def test_tolerance_must_be_positive(self, capsys, files):
        assert run(capsys, "spectrum", "--tol", "0", files["c4"])[0] == EXIT_INPUT

    def test_kind_without_operands(self, capsys, files):
        assert run(capsys, "spectrum", "--kind", "svev", files["c4"])[0] == EXIT_INPUT

    def test_adjacency_matrix_and_plain(self, capsys, files):
        code, out, _ = run(capsys, "spectrum", "--matrix", "adjacency", "--plain", files["k4"])
        assert code == EXIT_OK and "multiplicity" in out
        assert out.split()[-2:] == ["3", "1"]

    def test_deterministic_output(self, capsys, files):
        args = ("spectrum", "--kind", "svee", "--method", "both", files["c4"], files["k2"], files["k1"])
        assert run(capsys, *args)[1] == run(capsys, *args)[1]


class TestInvariants:
    def test_svev(self, capsys, files):
        code, out, _ = run(capsys, "invariants", "--kind", "svev", files["c4"], files["k2"], files["k2"])
        rep = json.loads(out)
        assert code == EXIT_OK
        assert rep["tau"]["exact"] == 71663616
        assert rep["kf_star"]["closed"] == pytest.approx(8492 / 3, rel=1e-9)

    def test_svee(self, capsys, files):
        rep = json.loads(run(capsys, "invariants", "--kind", "svee", files["c4"], files["k2"], files["k1"])[1])
        assert rep["kemeny"]["spectral"] == pytest.approx(307 / 12, abs=1e-8)

    def test_disconnected(self, capsys, tmp_path):
        path = tmp_path / "two.txt"
        path.write_text("4 2\n0 1\n2 3\n")
        code, out, _ = run(capsys, "invariants", path)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["tau"]["exact"] == 0
        assert "kemeny" not in rep and "kf_star" not in rep
        assert rep["omitted"]["kemeny"]

    def test_plain(self, capsys, files):
        code, out, _ = run(capsys, "invariants", "--plain", files["c4"])
        assert code == EXIT_OK and "tau" in out and "kemeny" in out


class TestCospectral:
    def test_same_file(self, capsys, files):
        assert json.loads(run(capsys, "cospectral", files["c4"], files["c4"])[1])["cospectral"] is True

    def test_c4_k4(self, capsys, files):
        rep = json.loads(run(capsys, "cospectral", files["c4"], files["k4"])[1])
        assert rep["cospectral"] is False

    def test_relabeled_corona(self, capsys, tmp_path):
        G = svev_corona(CoronaOperands(C(5), K(3), K(2)))
        perm = list(reversed(range(G.n)))
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        write_graph(G, a)
        write_graph(permute_vertices(G, perm), b)
        assert run(capsys, "cospectral", a, b, "--plain")[1] == "cospectral\n"


class TestVerify:
    def test_seeded_and_reproducible(self, capsys, monkeypatch):
        monkeypatch.setenv("CORONA_SPECTRA_SEED", "42")
        code, out, _ = run(capsys, "verify", "--kind", "svee", "--trials", 5)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["ok"] and rep["seed"] == 42 and len(rep["trials"]) == 5
        assert all(t["block_dev"] <= 1e-12 for t in rep["trials"])
        assert run(capsys, "verify", "--kind", "svee", "--trials", 5)[1] == out


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_INPUT
    assert run(capsys, "spectrum")[0] == EXIT_INPUT
    assert run(capsys, "gen", "wheel", 3)[0] == EXIT_INPUT


def test_dumps_is_sorted_and_round_trips():
    obj = {"b": 1.0 / 3, "a": [1, 2.0, None, True], "c": {"z": 0.1, "y": "s"}}
    text = dumps(obj)
    assert json.loads(text) == obj
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "corona_spectra", "spectrum", files["c4"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 4
