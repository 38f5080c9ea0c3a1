import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from harmonic_polytope import oracles
from harmonic_polytope.cli import main
from harmonic_polytope.config import get_limits
from harmonic_polytope.faces import (
    FacetInequality,
    HarmonicTriple,
    VertexPoint,
    facet_system,
    fine_triples,
    polytope_face_dim,
    vertex_coordinates,
)
from harmonic_polytope.volume import BipartiteMultigraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestExamples:
    def test_fvector(self, capsys):
        assert run(capsys, "fvector", "--n", "3", "--format", "json") == (
            0, '{"n":3,"fvector":[1,66,144,102,24,1]}\n', "")

    def test_volume(self, capsys):
        assert run(capsys, "volume", "--n", "4") == (0, '{"n":4,"volume":"2848/3"}\n', "")

    def test_mixed_volume(self, capsys):
        code, out, _ = run(capsys, "mixed-volume", "--n", "6", "--g", "1-2,3-4,5-6", "--gp", "1-4,4-5,5-6,2-3")
        assert (code, out) == (0, '{"scaled_mv":2}\n')

    def test_module_entry(self):
        proc = subprocess.run([sys.executable, "-m", "harmonic_polytope", "fvector", "--n", "2"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert proc.stdout == '{"n":2,"fvector":[1,6,6,1]}\n'


class TestOtherCommands:
    def test_nonzero_count(self, capsys):
        assert run(capsys, "nonzero-count", "--n", "4")[1] == '{"n":4,"a_n":1242}\n'

    def test_gamma_from_graphs(self, capsys):
        code, out, _ = run(capsys, "gamma", "--n", "6", "--g", "1-2,3-4,5-6", "--gp", "1-4,4-5,5-6,2-3")
        assert json.loads(out) == {"gamma": "12|34|56;1456|23", "i_trimmed": 2, "weight": 16}

    def test_gamma_direct(self, capsys):
        code, out, _ = run(capsys, "gamma", "--n", "2", "--gamma", "12;12")
        assert json.loads(out) == {"gamma": "12;12", "i_trimmed": 1, "weight": 1}

    def test_triples_order(self, capsys):
        _, out, _ = run(capsys, "triples", "--n", "2")
        rows = json.loads(out)["triples"]
        assert len(rows) == 13
        keys = [(r["dim"], r["triple"]) for r in rows]
        assert keys == sorted(keys)
        assert rows[-1] == {"triple": "12;12;12", "dim": 2}

    def test_verify_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "3")
        assert code == 0
        report = json.loads(out)
        assert report and all(set(r) == {"check", "n", "expected", "actual", "status"} for r in report)
        assert {r["status"] for r in report} == {"pass"}


class TestRoundTrip:
    def test_vertices(self, capsys):
        _, out, _ = run(capsys, "vertices", "--n", "3")
        got = {VertexPoint(tuple(x), tuple(y)) for x, y in json.loads(out)["vertices"]}
        assert got == {vertex_coordinates(t) for t in fine_triples(3)}

    def test_facets(self, capsys):
        _, out, _ = run(capsys, "facets", "--n", "3")
        got = [FacetInequality(frozenset(f["S"]), frozenset(f["T"]), f["rhs"]) for f in json.loads(out)["facets"]]
        assert got == facet_system(3)

    def test_triples(self, capsys):
        _, out, _ = run(capsys, "triples", "--n", "3")
        for row in json.loads(out)["triples"]:
            t = HarmonicTriple.parse(row["triple"], 3)
            assert str(t) == row["triple"]
            assert polytope_face_dim(t) == row["dim"]

    def test_volume(self, capsys):
        _, out, _ = run(capsys, "volume", "--n", "4")
        assert Fraction(json.loads(out)["volume"]) == Fraction(2848, 3)

    def test_gamma(self, capsys):
        _, out, _ = run(capsys, "gamma", "--n", "6", "--g", "1-2,3-4,5-6", "--gp", "1-4,4-5,5-6,2-3")
        text = json.loads(out)["gamma"]
        assert str(BipartiteMultigraph.parse(text)) == text


class TestCsv:
    def test_fvector(self, capsys):
        _, out, _ = run(capsys, "fvector", "--n", "2", "--format", "csv")
        assert out == "d,f_d\r\n-1,1\r\n0,6\r\n1,6\r\n2,1\r\n"

    def test_vertices(self, capsys):
        _, out, _ = run(capsys, "vertices", "--n", "2", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["triple", "x1", "x2", "y1", "y2"]
        assert len(rows) == 7

    def test_verify_quotes_lists(self, capsys):
        _, out, _ = run(capsys, "verify", "--n", "2", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        fv = next(r for r in rows if r["check"] == "fvector_tables_vs_known")
        assert json.loads(fv["actual"]) == [1, 6, 6, 1]


class TestExitCodes:
    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["fvector"])
        assert exc.value.code == 2

    def test_bad_graph(self, capsys):
        code, out, err = run(capsys, "mixed-volume", "--n", "3", "--g", "1-9", "--gp", "")
        assert code == 2 and out == "" and err.startswith("error:")

    def test_missing_graph(self, capsys):
        assert run(capsys, "mixed-volume", "--n", "3", "--g", "1-2")[0] == 2

    def test_cap(self, capsys):
        code, out, err = run(capsys, "volume", "--n", "8")
        assert code == 3 and out == "" and "volume" in err

    def test_cap_override(self, capsys):
        code, _, err = run(capsys, "triples", "--n", "3", "--cap", "triples=2")
        assert code == 3
        assert run(capsys, "fvector", "--n", "2", "--cap", "tables=2")[0] == 0

    def test_bad_cap_name(self, capsys):
        assert run(capsys, "fvector", "--n", "2", "--cap", "bogus=3")[0] == 2

    def test_mismatch(self, capsys, monkeypatch):
        monkeypatch.setitem(oracles.KNOWN_VOLUMES, 2, Fraction(4))
        code, out, _ = run(capsys, "verify", "--n", "2")
        assert code == 4
        bad = [r for r in json.loads(out) if r["status"] == "fail"]
        assert [r["check"] for r in bad] == ["volume_vs_known"]


class TestDeterminism:
    @pytest.mark.parametrize("argv", [["volume", "--n", "5"], ["verify", "--n", "3"]])
    def test_threads(self, capsys, argv):
        single = run(capsys, *argv, "--threads", "1")
        double = run(capsys, *argv, "--threads", "2")
        assert single == double


def test_cap_override_does_not_leak(capsys):
    before = get_limits()
    run(capsys, "fvector", "--n", "2", "--cap", "tables=2")
    assert get_limits() == before
