import json

import pytest

from bakergame.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_generate_grid(tmp_path, capsys):
    p = tmp_path / "g.gr"
    code, _ = run(capsys, ["generate", "grid", "--rows", "3", "--cols", "3", "-o", str(p)])
    assert code == 0
    text = p.read_text()
    assert "p graph 9 12" in text


def test_generate_diaggrid_with_embedding(tmp_path, capsys):
    g = tmp_path / "g.gr"
    e = tmp_path / "g.emb"
    code, _ = run(
        capsys,
        ["generate", "diaggrid", "--n", "3", "-o", str(g), "--embedding-out", str(e)],
    )
    assert code == 0
    assert "p embed 9 2" in e.read_text()


def test_play_reports_win(tmp_path, capsys):
    g = tmp_path / "g.gr"
    run(capsys, ["generate", "grid", "--rows", "3", "--cols", "3", "-o", str(g)])
    code, out = run(
        capsys,
        ["play", "--graph", str(g), "--strategy", "minorfree:5",
         "--rseq", "const:1", "--preserver", "max", "--json"],
    )
    assert code == 0
    report = json.loads(out)
    assert report["outcome"] == "win"
    assert report["rounds"] <= report["round_bound"]
    assert "wall_time" not in report  # deterministic without --timing


def test_play_minor_witness_exit(tmp_path, capsys):
    g = tmp_path / "k5.gr"
    lines = ["p graph 5 10"] + [
        "e %d %d" % (u, v) for u in range(5) for v in range(u + 1, 5)
    ]
    g.write_text("\n".join(lines) + "\n")
    code, out = run(
        capsys,
        ["play", "--graph", str(g), "--strategy", "minorfree:5",
         "--rseq", "const:1", "--json"],
    )
    assert code == 3
    assert json.loads(out)["outcome"] == "minor_witness"


def test_play_budget_exit(tmp_path, capsys):
    g = tmp_path / "g.gr"
    run(capsys, ["generate", "grid", "--rows", "3", "--cols", "3", "-o", str(g)])
    code, _ = run(
        capsys,
        ["play", "--graph", str(g), "--strategy", "minorfree:5",
         "--rseq", "const:1", "--budget", "1", "--json"],
    )
    assert code == 4


def test_solve_then_oracle_pipeline(tmp_path, capsys):
    g = tmp_path / "g.gr"
    run(capsys, ["generate", "grid", "--rows", "3", "--cols", "3", "-o", str(g)])
    code, out = run(
        capsys,
        ["solve", "--problem", "mis", "--graph", str(g),
         "--strategy", "minorfree:5", "--k", "2", "--memo"],
    )
    assert code == 0
    sol = json.loads(out)
    code, out = run(capsys, ["oracle", "--problem", "mis", "--graph", str(g)])
    assert code == 0
    exact = json.loads(out)
    assert 2 * sol["size"] >= exact["size"]
    assert sol["ratio_bound"] == "1/2"


def test_solve_infeasible_exit(tmp_path, capsys):
    g = tmp_path / "g.gr"
    g.write_text("p graph 2 1\ne 0 1\na hit:0\n")
    code, out = run(
        capsys,
        ["solve", "--problem", "domset", "--graph", str(g),
         "--strategy", "chordal:1", "--k", "2"],
    )
    assert code == 2
    assert json.loads(out)["feasible"] is False


def test_solve_budget_exit(tmp_path, capsys):
    g = tmp_path / "g.gr"
    run(capsys, ["generate", "grid", "--rows", "3", "--cols", "3", "-o", str(g)])
    code, _ = run(
        capsys,
        ["solve", "--problem", "mis", "--graph", str(g),
         "--strategy", "minorfree:5", "--k", "2", "--max-nodes", "5"],
    )
    assert code == 4


def test_bad_file_exit(tmp_path, capsys):
    g = tmp_path / "bad.gr"
    g.write_text("e 0 1\n")
    code = main(["play", "--graph", str(g), "--strategy", "edgeless", "--rseq", "const:1"])
    err = capsys.readouterr().err
    assert code == 1
    assert "line 1" in err


def test_bench_small(tmp_path, capsys):
    code, out = run(capsys, ["bench", "--sizes", "9", "--k", "1", "--per-size-budget", "30"])
    assert code == 0
    report = json.loads(out)
    assert report["rows"][0]["n"] == 9
    assert report["rows"][0]["status"] == "ok"
