from __future__ import annotations

import json

import pytest

from antifactor.cli import main


@pytest.fixture
def k3(tmp_path):
    g = tmp_path / "k3.graph"
    g.write_text("p af 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    x = tmp_path / "k3.ex"
    x.write_text("x 1 1 0\nx 2 1 0\nx 3 1 0\n")
    return str(g), str(x)


@pytest.fixture
def k4(tmp_path):
    g = tmp_path / "k4.graph"
    g.write_text("p af 4 6\n" + "".join(f"e {u} {v}\n" for u in range(1, 5) for v in range(u + 1, 5)))
    x = tmp_path / "k4.ex"
    x.write_text("".join(f"x {v} 3 0 2 3\n" for v in range(1, 5)))
    return str(g), str(x)


def test_count_lines(k3, capsys):
    assert main(["solve", "--graph", k3[0], "--constraints", k3[1], "--mode", "count", "--algo", "dp"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "2 3" in out and "3 1" in out
    assert "width: 2" in out


@pytest.mark.parametrize("algo", ["brute", "dp", "dp-zeta"])
def test_count_algos_agree(k3, capsys, algo):
    main(["solve", "--graph", k3[0], "--constraints", k3[1], "--algo", algo, "--format", "json"])
    assert json.loads(capsys.readouterr().out)["counts"] == {"2": "3", "3": "1"}


def test_max_repset_with_witness(k4, capsys):
    assert main(["solve", "--graph", k4[0], "--constraints", k4[1], "--mode", "max", "--algo", "repset", "--witness", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["answer"] == 2 and len(rep["witness"]) == 2


def test_decide_exit_codes(k4, capsys):
    base = ["solve", "--graph", k4[0], "--constraints", k4[1], "--mode", "decide", "--algo", "repset"]
    assert main(base + ["--size", "2"]) == 0
    assert main(base + ["--size", "3"]) == 1
    assert main(base + ["--size", "99"]) == 1


def test_empty_set_without_constraints(k3, capsys):
    assert main(["solve", "--graph", k3[0], "--mode", "decide", "--size", "0", "--algo", "repset"]) == 0
    assert "answer: yes" in capsys.readouterr().out


@pytest.mark.parametrize(
    "extra",
    [
        ["--mode", "count", "--algo", "repset"],
        ["--mode", "max", "--algo", "dp", "--witness"],
        ["--mode", "decide", "--algo", "repset"],
    ],
)
def test_bad_combinations(k3, extra):
    assert main(["solve", "--graph", k3[0]] + extra) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("p af 2 1\ne 1 5\n")
    assert main(["solve", "--graph", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_budget_refusal(tmp_path):
    g = tmp_path / "big.graph"
    g.write_text("p af 8 28\n" + "".join(f"e {u} {v}\n" for u in range(1, 9) for v in range(u + 1, 9)))
    assert main(["solve", "--graph", str(g), "--algo", "brute", "--budget", "20"]) == 3


def test_supplied_td(k3, tmp_path, capsys):
    td = tmp_path / "k3.td"
    td.write_text("s td 1 3 3\nb 1 1 2 3\n")
    assert main(["solve", "--graph", k3[0], "--constraints", k3[1], "--td", str(td)]) == 0
    assert "decomposition: file" in capsys.readouterr().out
    td.write_text("s td 1 2 3\nb 1 1 2\n")
    assert main(["solve", "--graph", k3[0], "--td", str(td)]) == 2


def test_analyze_report(capsys):
    assert main(["analyze", "--ex", "2,4,6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "ap_length: 3" in out
    assert sum(line.startswith("(") for line in out) == 4


def test_gen_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["gen", "--seed", "1", "--out", str(a)])
    main(["gen", "--seed", "1", "--out", str(b)])
    for ext in (".graph", ".ex"):
        assert a.with_suffix(ext).read_bytes() == b.with_suffix(ext).read_bytes()


def test_gen_grid_then_solve(tmp_path, capsys):
    p = tmp_path / "g"
    main(["gen", "--family", "grid", "--rows", "3", "--cols", "3", "--uniform-ex", "0,2", "--out", str(p)])
    assert p.with_suffix(".graph").read_text().startswith("p af 9 12")
    capsys.readouterr()
    args = ["solve", "--graph", str(p.with_suffix(".graph")), "--constraints", str(p.with_suffix(".ex")), "--format", "json"]
    main(args + ["--td", str(p.with_suffix(".td"))])
    with_td = json.loads(capsys.readouterr().out)
    main(args + ["--algo", "brute"])
    assert json.loads(capsys.readouterr().out)["counts"] == with_td["counts"]


def test_json_is_stable(k3, capsys):
    args = ["solve", "--graph", k3[0], "--constraints", k3[1], "--format", "json"]
    main(args)
    first = capsys.readouterr().out
    main(args + ["--parallel", "4"])
    assert capsys.readouterr().out == first


def test_selftest_modes(capsys):
    assert main(["selftest", "--trials", "3"]) == 0
    assert main(["selftest", "--trials", "2", "--inject-fault"]) == 1
    capsys.readouterr()
    assert main(["selftest", "--trials", "0"]) == 0
    assert "warning" in capsys.readouterr().err
