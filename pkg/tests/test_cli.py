import json
from pathlib import Path

import pytest

from twmatch.__main__ import run
from twmatch.core.graph import grid_graph, write_graph

P4 = "4 3\n0 1\n1 2\n2 3\n"
C4 = "4 4\n0 1\n1 2\n2 3\n3 0\n"
TWO_K2 = "4 2\n0 1\n2 3\n"


def _solve(capsys, *argv):
    code = run(["solve", "--no-timing", *argv])
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def test_induced_yes(capsys, write_file):
    code, report, _ = _solve(capsys, "--problem", "induced", "--ell", "1", "--graph", write_file("p4.gr", P4))
    assert code == 0
    assert report["answer"] == "yes"
    assert report["value"] == 2
    assert report["decomposition"] == "min-fill"
    assert report["width_used"] == 1
    assert report["schema_version"] == 1
    assert "wall_time" not in report


def test_induced_no_exits_one(capsys, write_file):
    code, report, _ = _solve(capsys, "--problem", "induced", "--ell", "2", "--graph", write_file("c4.gr", C4))
    assert code == 1
    assert report["answer"] == "no"


def test_report_is_deterministic_without_timing(capsys, write_file):
    graph = write_file("c4.gr", C4)
    run(["solve", "--no-timing", "--problem", "induced", "--ell", "1", "--graph", graph])
    first = capsys.readouterr().out
    run(["solve", "--no-timing", "--problem", "induced", "--ell", "1", "--graph", graph])
    assert capsys.readouterr().out == first


def test_timing_included_by_default(capsys, write_file):
    assert run(["solve", "--problem", "induced", "--ell", "1", "--graph", write_file("p4.gr", P4)]) == 0
    assert json.loads(capsys.readouterr().out)["wall_time"] >= 0


def test_acyclic_with_certificate(capsys, write_file):
    code, report, _ = _solve(
        capsys, "--problem", "acyclic", "--ell", "2", "--graph", write_file("p4.gr", P4), "--seed", "0", "--certificate"
    )
    assert code == 0
    assert report["certificate"] == [[0, 1], [2, 3]]
    assert report["seed"] == 0
    assert report["trials"] >= 1
    assert report["value"] is None


def test_cdisc_with_oracle_and_certificate(capsys, write_file):
    code, report, _ = _solve(
        capsys,
        "--problem", "cdisc", "--c", "2", "--ell", "2",
        "--graph", write_file("2k2.gr", TWO_K2),
        "--check-oracle", "--certificate", "--join", "naive",
    )
    assert code == 0
    assert report["oracle_checked"] is True
    assert report["certificate"] == [[0, 1], [2, 3]]
    assert report["c"] == 2
    assert report["join"] == "naive"


def test_disc_with_c_one_notes_maximum_matching(capsys, write_file):
    code, report, _ = _solve(capsys, "--problem", "disc", "--c", "1", "--ell", "2", "--graph", write_file("c4.gr", C4))
    assert code == 0
    assert "maximum matching" in report["notice"]
    assert report["value"] == 4


def test_disc_with_c_one_on_large_grid(capsys, write_file):
    graph = write_file("grid.gr", write_graph(grid_graph(4, 5)))
    code, report, _ = _solve(capsys, "--problem", "disc", "--c", "1", "--ell", "10", "--graph", graph, "--certificate")
    assert code == 0
    assert report["value"] == 20
    assert len(report["certificate"]) == 10


def test_acyclic_trials_follow_false_negative_target(capsys, write_file):
    graph = write_file("c4.gr", C4)
    code, report, _ = _solve(
        capsys, "--problem", "acyclic", "--ell", "2", "--graph", graph, "--false-negative-target", "0.05"
    )
    assert code == 1
    assert report["trials"] == 3


def test_supplied_decomposition(capsys, write_file):
    graph = write_file("p4.gr", P4)
    td = write_file("p4.td", "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n")
    code, report, _ = _solve(capsys, "--problem", "induced", "--ell", "1", "--graph", graph, "--td", td)
    assert code == 0
    assert report["decomposition"] == "supplied"


@pytest.mark.parametrize(
    "td_text",
    [
        "s td 1 2 5\nb 1 1 2\n",  # wrong vertex count
        "s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n",  # misses edge 2-3
    ],
)
def test_bad_decomposition_exits_two(capsys, write_file, td_text):
    graph = write_file("p4.gr", P4)
    code, _, err = _solve(capsys, "--problem", "induced", "--ell", "1", "--graph", graph, "--td", write_file("bad.td", td_text))
    assert code == 2
    assert "Error:" in err


def test_input_errors_exit_two(capsys, write_file):
    graph = write_file("p4.gr", P4)
    code, _, err = _solve(capsys, "--problem", "cdisc", "--ell", "1", "--graph", graph)
    assert code == 2 and "--c is required" in err
    code, _, err = _solve(capsys, "--problem", "induced", "--ell", "3", "--graph", graph)
    assert code == 2 and "out of range" in err
    code, _, err = _solve(capsys, "--problem", "induced", "--ell", "1", "--graph", "missing.gr")
    assert code == 2 and "not found" in err
    code, _, err = _solve(capsys, "--problem", "induced", "--ell", "1", "--graph", write_file("bad.gr", "3 1\n0 0\n"))
    assert code == 2 and "line 2" in err


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["--help"]) == 0
    assert run(["solve", "--problem", "induced"]) == 2
    capsys.readouterr()


def test_oracle_command(capsys, write_file):
    assert run(["oracle", "--graph", write_file("c4.gr", C4), "--cmax", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["mu"] == 2
    assert data["mu_induced"] == 1
    assert data["mu_cdiscon"] == {"1": 2, "2": None}
    assert "witnesses" not in data


def test_oracle_witnesses(capsys, write_file):
    assert run(["oracle", "--graph", write_file("2k2.gr", TWO_K2), "--witnesses"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert sorted(data["witnesses"]["mu_induced"]) == [[0, 1], [2, 3]]


def test_gen_hitting_set_to_stdout(capsys):
    assert run(["gen", "hitting-set", "--k", "2", "--sets", "(1,1)"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "16 19"
    assert any(line.startswith("s td") for line in lines)
    sidecar = json.loads(lines[-1])
    assert sidecar["ell"] == 7 and sidecar["c"] == 2


def test_gen_hitting_set_to_directory(capsys, tmp_path):
    out = tmp_path / "instances"
    assert run(["gen", "hitting-set", "--k", "2", "--sets", "(1,1); (2,2)", "--out", str(out)]) == 0
    stem = out / "hitting-set-k2-m2"
    assert Path(f"{stem}.gr").read_text().startswith("18 ")
    assert json.loads(Path(f"{stem}.json").read_text())["ell"] == 8
    assert Path(f"{stem}.td").read_text().startswith("s td ")


@pytest.mark.slow
def test_generated_reduction_solves_yes(capsys, tmp_path):
    assert run(["gen", "hitting-set", "--k", "2", "--sets", "(1,1); (2,2)", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    stem = tmp_path / "hitting-set-k2-m2"
    code = run(
        ["solve", "--no-timing", "--problem", "disc", "--c", "2", "--ell", "8",
         "--graph", f"{stem}.gr", "--td", f"{stem}.td"]
    )
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["decomposition"] == "supplied"


def test_gen_rejects_bad_family(capsys):
    assert run(["gen", "hitting-set", "--k", "2", "--sets", "(1,1) (1,2)"]) == 2
    assert "row 1" in capsys.readouterr().err


def test_gen_grid_and_decompose(capsys, tmp_path):
    assert run(["gen", "grid", "--p", "2", "--q", "3", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    graph = str(tmp_path / "grid-2x3.gr")
    assert run(["decompose", "--graph", graph]) == 0
    assert capsys.readouterr().out.startswith("s td ")
    assert run(["decompose", "--graph", graph, "--nice"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1].startswith("root ")
    target = tmp_path / "grid.td"
    assert run(["decompose", "--graph", graph, "--out", str(target)]) == 0
    assert target.read_text().startswith("s td ")


def test_gen_ktree_stdout(capsys):
    assert run(["gen", "ktree", "--n", "8", "--k", "2", "--seed", "3"]) == 0
    assert capsys.readouterr().out.startswith("8 ")


def test_bench_empty_suite(capsys, tmp_path):
    config = tmp_path / "suite.json"
    config.write_text(json.dumps({"instances": []}))
    out = tmp_path / "bench.csv"
    assert run(["bench", "--config", str(config), "--out", str(out), "--quiet"]) == 0
    assert out.read_text().strip() == "instance,problem,join_mode,wall_time,width,n,node_count,value,answer"


def test_bench_small_suite(capsys, tmp_path, write_file):
    write_file("p4.gr", P4)
    config = tmp_path / "suite.json"
    config.write_text(
        json.dumps(
            {
                "instances": [
                    {"name": "g", "kind": "grid", "params": {"p": 2, "q": 4}, "problem": "induced", "ell": 2},
                    {"name": "f", "kind": "file", "params": {"graph": "p4.gr"}, "problem": "cdisc", "c": 2, "ell": 1},
                ]
            }
        )
    )
    out = tmp_path / "bench.csv"
    assert run(["bench", "--config", str(config), "--out", str(out), "--charts"]) == 0
    rows = out.read_text().strip().splitlines()
    assert len(rows) == 5
    assert (tmp_path / "scaling.png").exists()
    assert "BENCHMARK RESULTS SUMMARY" in capsys.readouterr().out


def test_bench_chart_name(capsys, tmp_path):
    config = tmp_path / "suite.json"
    config.write_text(json.dumps({"instances": [{"kind": "grid", "params": {"p": 2, "q": 3}}]}))
    out = tmp_path / "bench.csv"
    args = ["bench", "--config", str(config), "--out", str(out), "--charts", "--chart-name", "widths.png", "--quiet"]
    assert run(args) == 0
    assert (tmp_path / "widths.png").exists()
    assert not (tmp_path / "scaling.png").exists()


def test_bench_config_errors(capsys, tmp_path):
    config = tmp_path / "suite.json"
    config.write_text(json.dumps({"instances": [{"kind": "grid", "params": {"p": 2}}]}))
    assert run(["bench", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2
    assert "missing parameter" in capsys.readouterr().err
    config.write_text(json.dumps({"runs": []}))
    assert run(["bench", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2
