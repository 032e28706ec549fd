"""Command-line surface: commands, exit codes, determinism, round trips."""

import json

import pytest

from dmspace.cli import main
from dmspace import jsonio
from dmspace.abelian import GroupPresentation
from dmspace.windows import Window


RANK6 = {"group": {"free_rank": 1, "torsion": [2]},
         "X": [{"free": [1], "torsion": [1]}, {"free": [2], "torsion": [1]}]}
X11 = {"group": {"free_rank": 1, "torsion": []},
       "X": [{"free": [1], "torsion": []}, {"free": [1], "torsion": []}]}


@pytest.fixture
def problem(tmp_path):
    def write(obj, name="problem.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return write


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith(("{", "[")) else out


def test_delta_rank6(problem, capsys):
    code, doc = run_cli(capsys, "delta", problem(RANK6))
    assert code == 0
    assert doc == {"delta": 3, "z_rank": 6}


def test_partition_command(problem, capsys):
    code, doc = run_cli(capsys, "partition", problem(X11), "--lambda", "3")
    assert code == 0 and doc == {"count": 4}


def test_dm_check_zero_is_member(problem, capsys, tmp_path):
    table = tmp_path / "zero.json"
    table.write_text(json.dumps({"window": {"radius": 6}, "values": []}))
    code, doc = run_cli(capsys, "dm-check", problem(X11), "--f", str(table))
    assert code == 0 and doc["member"] is True


def test_dm_check_violation_exit_code(problem, capsys, tmp_path):
    vals = [[{"free": [n], "torsion": []}, 1 if n >= 0 else 0]
            for n in range(-6, 7)]
    table = tmp_path / "h.json"
    table.write_text(json.dumps({"window": {"radius": 6}, "values": vals}))
    code, doc = run_cli(capsys, "dm-check", problem(X11), "--f", str(table))
    assert code == 2 and doc["member"] is False and "violation" in doc


def test_invalid_input_exit_code(problem, capsys, tmp_path):
    code, doc = run_cli(capsys, "delta", str(tmp_path / "missing.json"))
    assert code == 1 and doc["error"] == "invalid-input"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run_cli(capsys, "delta", str(bad))
    assert code == 1


def test_window_too_small_exit_code(problem, capsys):
    big = {"group": {"free_rank": 1, "torsion": []},
           "X": [{"free": [5], "torsion": []}, {"free": [5], "torsion": []}]}
    code, doc = run_cli(capsys, "dm-rank", problem(big), "--window", "3")
    assert code == 3 and doc["error"] == "window-too-small"


def test_determinism_byte_identical(problem, capsys):
    p = problem(RANK6)
    _, doc1 = run_cli(capsys, "dm-basis", p, "--window", "5", "--seed", "9")
    _, doc2 = run_cli(capsys, "dm-basis", p, "--window", "5", "--seed", "9")
    assert doc1 == doc2
    code = main(["dm-basis", p, "--window", "5", "--seed", "9"])
    out1 = capsys.readouterr().out
    main(["dm-basis", p, "--window", "5", "--seed", "9"])
    out2 = capsys.readouterr().out
    assert out1 == out2 and code == 0


def test_table_export_reimports_equal(problem, capsys):
    code, doc = run_cli(capsys, "dm-basis", problem(X11), "--window", "5")
    assert code == 0
    group = GroupPresentation(1, ())
    for entry in doc["elements"]:
        f, window = jsonio.table_from_json(group, entry["table"])
        again = jsonio.table_to_json(f, window)
        assert again == entry["table"]


def test_zonotope_points_with_u(problem, capsys):
    code, doc = run_cli(capsys, "zonotope-points", problem(X11), "--u", "1/2")
    assert code == 0 and doc["count"] == 2


def test_cells_and_quasipoly(problem, capsys):
    code, doc = run_cli(capsys, "cells", problem(X11))
    assert code == 0 and len(doc["cells"]) == 1
    code, doc = run_cli(capsys, "cell-quasipoly", problem(X11),
                        "--cell", "0", "--window", "6")
    assert code == 0 and sorted(doc["coefficients"]) == [0, 1]


def test_exact_seq_command(problem, capsys):
    code, doc = run_cli(capsys, "exact-seq", problem(X11), "--a", "0")
    assert code == 0 and doc["ok"] is True
    assert doc["delta"] == {"X": 2, "Z": 1, "Zt": 1}


def test_f_check_modes(problem, capsys, tmp_path):
    vals = [[{"free": [n], "torsion": []}, 1 if n >= 0 else 0]
            for n in range(-8, 9)]
    table = tmp_path / "h.json"
    table.write_text(json.dumps({"window": {"radius": 8}, "values": vals}))
    code, doc = run_cli(capsys, "f-check", problem(X11), "--f", str(table),
                        "--mode", "translated")
    assert code == 0 and doc["ok"] is True
    code, doc = run_cli(capsys, "f-check", problem(X11), "--f", str(table),
                        "--mode", "strict")
    assert code == 2 and doc["ok"] is False


def test_localize_command(problem, capsys, tmp_path):
    prob = {"group": {"free_rank": 1, "torsion": []},
            "X": [{"free": [2], "torsion": []}]}
    vals = [[{"free": [n], "torsion": []}, 1 if n % 2 == 0 else 0]
            for n in range(-8, 9)]
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"window": {"radius": 8}, "values": vals}))
    code, doc = run_cli(capsys, "localize", problem(prob), "--f", str(table),
                        "--window", "4")
    assert code == 0 and doc["cyclotomic_order"] == 2
    assert len(doc["terms"]) == 2


def test_gen_f_and_remaining_commands(problem, capsys):
    for cmd, extra in [("subspaces", []), ("cocircuits", []), ("bases", []),
                       ("points", []), ("d-space", []),
                       ("gen-f", ["--window", "4"]),
                       ("dm-rank", [])]:
        code, _ = run_cli(capsys, cmd, problem(X11), *extra)
        assert code == 0, cmd


def test_f_decompose_command(problem, capsys, tmp_path):
    # H1*H1 table: strict member, decomposes with zero remainder errors
    vals = [[{"free": [n], "torsion": []}, n + 1 if n >= 0 else 0]
            for n in range(-13, 14)]
    table = tmp_path / "hh.json"
    table.write_text(json.dumps({"window": {"radius": 13}, "values": vals}))
    code, doc = run_cli(capsys, "f-decompose", problem(X11),
                        "--f", str(table))
    assert code == 0
    assert "remainder" in doc and len(doc["components"]) == 1


def test_tsv_format(problem, capsys):
    code = main(["delta", problem(RANK6), "--format", "tsv"])
    out = capsys.readouterr().out
    assert code == 0
    assert "delta\t3" in out and "z_rank\t6" in out


def test_noncanonical_torsion_is_canonicalized(problem, capsys):
    prob = {"group": {"free_rank": 1, "torsion": [3, 2]},
            "X": [{"free": [1], "torsion": [0, 0]}]}
    code, doc = run_cli(capsys, "delta", problem(prob))
    assert code == 0 and doc == {"delta": 1, "z_rank": 6}


def test_verify_command(problem, capsys):
    code, doc = run_cli(capsys, "verify", "--suite", "rank6")
    assert code == 0 and doc["pass"] is True
