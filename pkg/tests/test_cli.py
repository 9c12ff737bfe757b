import json

import pytest

from tsol.cli import main
from tsol.core import line_pattern, parse_pattern, render_pattern
from tsol.normalform import line_with_excess
from tsol.pathfinder import parse_move_sequence, replay


@pytest.fixture
def line5(tmp_path):
    f = tmp_path / "line5.pts"
    f.write_text(render_pattern(line_pattern(5)))
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normal_form_golden(capsys, line5):
    code, out, _ = run(capsys, "normal-form", "-i", line5)
    assert code == 0
    assert out == "part 0 0 n=5 k=0\n"


def test_orbit_count(capsys):
    code, out, _ = run(capsys, "orbit", "--line", "2", "--count")
    assert code == 0
    assert out == "3\n"


def test_fill_roundtrip(capsys):
    code, out, _ = run(capsys, "fill", "--line", "3")
    assert code == 0
    from tsol.core import size_n_triangle

    assert parse_pattern(out) == size_n_triangle(3)


def test_fill_ascii(capsys):
    code, out, _ = run(capsys, "fill", "--line", "2", "--ascii")
    assert code == 0
    assert out == "# origin 0 0\n##\n.#\n"


def test_path_different_orbits(capsys, tmp_path):
    a = tmp_path / "a.pts"
    b = tmp_path / "b.pts"
    a.write_text("0 1\n1 1\n")
    b.write_text("5 0\n")
    code, _, err = run(capsys, "path", "-i", str(a), "-o", str(b))
    assert code == 2
    assert "not in the same orbit" in err


def test_path_same_orbit(capsys, tmp_path):
    a = tmp_path / "a.pts"
    b = tmp_path / "b.pts"
    a.write_text(render_pattern(line_pattern(4)))
    from tsol.explorer import random_walk

    Q = random_walk(line_pattern(4), 40, seed=9)
    b.write_text(render_pattern(Q))
    code, out, _ = run(capsys, "path", "-i", str(a), "-o", str(b))
    assert code == 0
    seq = parse_move_sequence(out)
    assert seq.start == line_pattern(4)
    assert replay(seq) == Q


def test_normalize_path_replays(capsys):
    code, out, _ = run(capsys, "normalize-path", "--pnk", "4", "1")
    assert code == 0
    seq = parse_move_sequence(out)
    assert replay(seq) == line_with_excess(4, 1)
    assert seq.moves == ()


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.pts"
    bad.write_text("1 two\n")
    code, _, err = run(capsys, "fill", "-i", str(bad))
    assert code == 1
    assert "line 1" in err


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--max-n", "3", "--json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["n"] == 2 and rows[0]["orbit_size"] == 3
    assert rows[1]["orbit_size"] == 16 and rows[1]["diameter"] == 4


def test_census_text(capsys):
    code, out, _ = run(capsys, "census", "--max-n", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n, orbit_size, lower_bound_3nfact, upper_bound_expr, diameter"
    assert lines[1].startswith("2, 3, 3,")


def test_excess_sets_cli(capsys, tmp_path):
    f = tmp_path / "t2.pts"
    f.write_text("0 1\n1 1\n1 0\n")
    code, out, _ = run(capsys, "excess-sets", "-i", str(f))
    assert code == 0
    assert out.splitlines()[0] == "(empty)"
    assert len(out.splitlines()) == 4  # empty set + three singletons


def test_tep_complete_cli(capsys, tmp_path):
    f = tmp_path / "assign.txt"
    f.write_text("0 2 1\n1 2 0\n2 2 1\n")
    code, out, _ = run(capsys, "tep-complete", "-i", str(f), "-n", "3", "--rule", "xor")
    assert code == 0
    assert out == "0 2 1\n1 2 0\n2 2 1\n1 1 1\n2 1 1\n2 0 0\n"


def test_tep_compile_cli(capsys, tmp_path):
    a = tmp_path / "a.pts"
    b = tmp_path / "b.pts"
    a.write_text("0 1\n1 1\n")
    b.write_text("0 1\n1 0\n")
    code, out, _ = run(capsys, "tep-compile", "-i", str(a), "-o", str(b), "-n", "2", "--rule", "xor")
    assert code == 0
    assert out.splitlines()[0] == "source 0,1 1,1"
    assert out.splitlines()[1] == "target 0,1 1,0"
    assert any(l.startswith("perm") for l in out.splitlines())


def test_deterministic_output(capsys):
    code1, out1, _ = run(capsys, "orbit", "--line", "3")
    code2, out2, _ = run(capsys, "orbit", "--line", "3")
    assert code1 == code2 == 0
    assert out1 == out2
