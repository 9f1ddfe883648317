import json
import os
import subprocess
import sys

import pytest

from chordcycle.cli import EXIT_ABSENT, EXIT_CAP, EXIT_OK, EXIT_USAGE, main
from chordcycle.coloring import Coloring, verify_coloring
from chordcycle.generators import complete_graph, cycle_graph, hajos_join
from chordcycle.graph import parse_graph6, to_edge_list, to_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")]


K4 = to_graph6(complete_graph(4))
C5 = to_graph6(cycle_graph(5))


class TestDetect:
    def test_k4_two_chords(self, capsys):
        code, [rec] = run(capsys, "detect", "--input", K4, "--k-chords", "2")
        assert code == EXIT_OK and rec["result"] == "found" and len(rec["chords"]) == 2

    def test_c5_no_diamond(self, capsys):
        code, [rec] = run(capsys, "detect", "--input", C5, "--pattern", "diamond")
        assert code == EXIT_ABSENT and rec["result"] == "absent"

    def test_budget_cap(self, capsys):
        code, [rec] = run(capsys, "detect", "--input", to_graph6(complete_graph(16)), "--k-chords", "7",
                          "--budget", "100")
        assert code == EXIT_CAP and rec["result"] == "capped"

    def test_kind(self, capsys):
        code, [rec] = run(capsys, "detect", "--input", K4, "--k-chords", "2", "--kind", "X")
        assert code == EXIT_OK and rec["kind"] == "X"
        code, _ = run(capsys, "detect", "--input", K4, "--k-chords", "2", "--kind", "V")
        assert code == EXIT_ABSENT

    @pytest.mark.parametrize("argv", [
        ["detect", "--input", "not-graph6!", "--k-chords", "1"],
        ["detect", "--input", K4],
        ["detect", "--input", K4, "--k-chords", "1", "--pattern", "k4"],
        ["detect", "--input", K4, "--pattern", "hexagon"],
        ["detect", "--input", K4, "--k-chords", "1", "--kind", "X"],
        ["detect", "--input", K4, "--k-chords", "1", "--budget", "0"],
        ["nonsense"],
    ])
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as info:
            code = main(argv)
            raise SystemExit(code)
        assert info.value.code == EXIT_USAGE

    def test_edge_list_file(self, tmp_path, capsys):
        f = tmp_path / "g.txt"
        f.write_text(to_edge_list(cycle_graph(7)))
        code, [rec] = run(capsys, "detect", "--input", str(f), "--k-chords", "0")
        assert code == EXIT_OK and sorted(rec["cycle"]) == list(range(7))

    def test_stdin(self, monkeypatch, capsys):
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(K4 + "\n"))
        code, _ = run(capsys, "detect", "--input", "-", "--pattern", "k4")
        assert code == EXIT_OK


class TestColor:
    def test_hajos_c3(self, capsys):
        g = hajos_join(5)
        code, [rec] = run(capsys, "color", "--input", to_graph6(g), "--theorem", "c3")
        assert code == EXIT_OK and rec["palette"] <= 96
        assert verify_coloring(g, Coloring(tuple(rec["colors"]), rec["palette"]))
        assert rec["colors_used"] == len(set(rec["colors"]))

    def test_c9_2cycle(self, capsys):
        code, [rec] = run(capsys, "color", "--input", to_graph6(cycle_graph(9)), "--theorem", "2cycle")
        assert code == EXIT_OK and rec["colors_used"] <= 6

    def test_k4_refused(self, capsys):
        code, [rec] = run(capsys, "color", "--input", K4, "--theorem", "2cycle")
        assert code == EXIT_ABSENT and rec["result"] == "refused" and rec["witness"]["kind"] == "X"


class TestChi:
    @pytest.mark.parametrize("name,chi", [("Petersen", 3), ("C7", 3), ("multipartite:3,3", 2)])
    def test_values(self, capsys, name, chi):
        assert main(["gen", name]) == EXIT_OK
        g6 = capsys.readouterr().out.strip()
        code, [rec] = run(capsys, "chi", "--input", g6)
        assert code == EXIT_OK and rec["chi"] == chi

    def test_cap(self, capsys):
        code, [rec] = run(capsys, "chi", "--input", to_graph6(cycle_graph(30)), "--max-vertices", "10")
        assert code == EXIT_CAP


class TestGen:
    def test_enum(self, capsys):
        main(["gen", "enum:3"])
        lines = capsys.readouterr().out.split()
        assert len(lines) == 8 and all(parse_graph6(s).n == 3 for s in lines)

    def test_random_uses_seed_flag(self, capsys):
        main(["gen", "random:8,0.5,4", "--seed", "3"])
        a = capsys.readouterr().out
        main(["gen", "random:8,0.5,4,3"])
        assert capsys.readouterr().out == a

    def test_hajos(self, capsys):
        main(["gen", "hajos:3"])
        assert parse_graph6(capsys.readouterr().out.strip()) == hajos_join(3)


class TestVerify:
    def test_hajos_builtin(self, tmp_path):
        out = tmp_path / "r.jsonl"
        assert main(["verify", "--theorem", "hajos", "--source", "builtin", "--out", str(out)]) == EXIT_OK
        recs = [json.loads(x) for x in out.read_text().splitlines()]
        graphs = [r for r in recs if r["type"] == "graph"]
        assert [r["k"] for r in graphs] == list(range(2, 8))
        assert all(r["bound_ok"] and r["chi"] == r["k"] + 1 == r["omega"] + 1 for r in graphs)

    def test_2cycle_enum6(self, tmp_path):
        out = tmp_path / "r.jsonl"
        assert main(["verify", "--theorem", "2cycle", "--source", "enum:6", "--out", str(out)]) == EXIT_OK
        agg = json.loads(out.read_text().splitlines()[-1])
        assert agg["violations"] == 0 and agg["falsifications"] == 0 and agg["max_chi"]["xv_free"] <= 6

    def test_scott_random(self, tmp_path):
        out = tmp_path / "r.jsonl"
        assert main(["verify", "--theorem", "scott", "--source", "random:12,0.3,100,7",
                     "--out", str(out)]) == EXIT_OK
        agg = json.loads(out.read_text().splitlines()[-1])
        assert agg["in_class"] == 100 and agg["passed"] == 100

    def test_hajos_needs_builtin(self, capsys):
        assert main(["verify", "--theorem", "hajos", "--source", "enum:3"]) == EXIT_USAGE

    def test_missing_source(self, capsys):
        assert main(["verify", "--theorem", "c3"]) == EXIT_USAGE
        assert main(["verify", "--theorem", "c3", "--source", "/no/such/file"]) == EXIT_USAGE

    def test_graph6_file_source(self, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text("\n".join(to_graph6(cycle_graph(n)) for n in range(3, 9)) + "\n")
        out = tmp_path / "r.jsonl"
        assert main(["verify", "--theorem", "tf3", "--source", str(src), "--out", str(out)]) == EXIT_OK
        agg = json.loads(out.read_text().splitlines()[-1])
        assert agg["in_class"] == 5  # C3 is a triangle


def test_console_script_env_budget():
    env = dict(os.environ, CHORDCYCLE_BUDGET="50")
    proc = subprocess.run(
        [sys.executable, "-m", "chordcycle.cli", "detect", "--input", to_graph6(complete_graph(16)),
         "--k-chords", "7"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == EXIT_CAP
