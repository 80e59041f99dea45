import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given

from conftest import spaces
from ultratree import build_representing_tree, emit_matrix, parse_matrix, parse_tree, validate
from ultratree.cli import main
from ultratree.errors import MixedLabeling, ParseError
from ultratree.formats import emit_dot, emit_sexpr
from ultratree.graphs import diametrical_graph
from ultratree.core import equilateral

HERE = Path(__file__).parent
FIX = HERE / "fixtures"
GOLD = HERE / "golden"
FIXTURES = ["three.csv", "equilateral.csv", "six.csv", "cherries.json", "lopsided.csv"]

# exit code of `check <id>` per fixture, worked out by hand
CHECK_CODES = {
    "three.csv": dict(inj=0, nary=0, u=0, tri=0, sph=0, chain=0, ham=1),
    "equilateral.csv": dict(inj=0, nary=0, u=1, tri=1, sph=0, chain=0, ham=0),
    "six.csv": dict(inj=0, nary=1, u=1, tri=1, sph=0, chain=0, ham=1),
    "cherries.json": dict(inj=0, nary=0, u=0, tri=0, sph=1, chain=1, ham=0),
    "lopsided.csv": dict(inj=0, nary=1, u=1, tri=1, sph=0, chain=0, ham=1),
}
CHECK_IDS = dict(inj="injective-labels", nary="strictly-n-ary", u="class-u", tri="no-equilateral",
                 sph="sphere", chain="chain-balls", ham="diametrical-hamiltonian")


def run(argv, stdin=""):
    out, old_out, old_in = io.StringIO(), sys.stdout, sys.stdin
    sys.stdout, sys.stdin = out, io.StringIO(stdin)
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stdin = old_out, old_in
    return code, out.getvalue()


def stem(name):
    return name.rsplit(".", 1)[0]


@pytest.mark.parametrize("name", FIXTURES)
def test_props_golden(name):
    code, out = run(["props", str(FIX / name)])
    assert code == 0
    assert out == (GOLD / f"{stem(name)}.props.json").read_text()


@pytest.mark.parametrize("name", FIXTURES)
def test_tree_dot_golden(name):
    code, out = run(["tree", "--dot", str(FIX / name)])
    assert code == 0
    assert out == (GOLD / f"{stem(name)}.tree.dot").read_text()


@pytest.mark.parametrize("name", FIXTURES)
def test_check_exit_codes(name):
    for key, expected in CHECK_CODES[name].items():
        assert run(["check", CHECK_IDS[key], str(FIX / name)])[0] == expected, key


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "ultratree.cli", "spectrum", str(FIX / "three.csv")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == ["0", "1", "2"]


def test_stdin_and_explicit_n():
    text = (FIX / "six.csv").read_text()
    assert run(["check", "strictly-n-ary:n=4", "-"], text)[0] == 1
    assert run(["check", "strictly-n-ary:n=2", str(FIX / "three.csv")])[0] == 0


def test_input_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n1,0,3\n")
    assert run(["props", str(bad)])[0] == 2
    assert run(["check", "no-such-check", str(FIX / "three.csv")])[0] == 2
    assert run(["props", str(tmp_path / "missing.csv")])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_validate_command(tmp_path):
    assert run(["validate", str(FIX / "three.csv")]) == (0, "valid: 3 points\n")
    f = tmp_path / "viol.csv"
    f.write_text("0,1,3\n1,0,1\n3,1,0\n")
    code, out = run(["validate", str(f)])
    assert code == 1 and out.startswith("invalid")


def test_pair_commands():
    three = str(FIX / "three.csv")
    assert run(["isometric", three, three])[0] == 0
    assert run(["isometric", three, str(FIX / "six.csv")])[0] == 1
    assert run(["ball-iso", str(FIX / "equilateral.csv"), str(FIX / "cherries.json")])[0] == 1


def test_weaksim_prints_spectrum_map(tmp_path):
    other = tmp_path / "o.csv"
    other.write_text("0,5,3\n5,0,5\n3,5,0\n")
    code, out = run(["weaksim", str(FIX / "three.csv"), str(other)])
    assert code == 0 and "2 => 5" in out and "1 => 3" in out


def test_tree_realize_and_random(tmp_path):
    t = tmp_path / "t.txt"
    t.write_text("(* (* * *))")
    code, out = run(["realize", "min", str(t)])
    assert code == 0 and parse_matrix(out).n == 5
    code, out = run(["realize", "hamiltonian", "--witness", str(t)])
    assert code == 0 and out.splitlines()[0].startswith("(")
    t.write_text("(2 0 (1 0 0))")
    code, out = run(["from-tree", str(t)])
    assert code == 0 and parse_matrix(out).dist == validate([[0, 2, 2], [2, 0, 1], [2, 1, 0]]).dist
    code, out = run(["random", "--n", "6", "--spectrum", "4", "--seed", "5"])
    assert code == 0 and run(["random", "--n", "6", "--spectrum", "4", "--seed", "5"])[1] == out


def test_tsi_and_iterate(tmp_path):
    code, out = run(["tsi", str(FIX / "three.csv")])
    assert (code, out) == (0, "true\n")
    t = tmp_path / "t.txt"
    t.write_text("(5 (4 (2 (1 0 0) 0) 0) (3 0 0))")
    m = tmp_path / "m.csv"
    m.write_text(run(["from-tree", str(t)])[1])
    code, out = run(["tsi", "--oracle", str(m)])
    assert code == 1 and out.startswith("false")
    code, out = run(["iterate-ballean", str(FIX / "three.csv"), "--k", "2"])
    assert code == 0 and "step 2: 7 points" in out
    assert run(["iterate-ballean", str(FIX / "three.csv"), "--k", "3", "--cap", "6"])[0] == 2


def test_ballean_listing():
    code, out = run(["ballean", str(FIX / "three.csv")])
    assert out.splitlines() == ["{x0,x1,x2} 2", "{x0,x2} 1", "{x0} 0", "{x2} 0", "{x1} 0"]


def test_parse_matrix_examples():
    X = parse_matrix("0,2,1\n2,0,2\n1,2,0")
    assert X.n == 3 and X.points == ("x0", "x1", "x2")
    assert parse_matrix("0").n == 1
    with pytest.raises(ParseError) as info:
        parse_matrix("0,1\n1,0,2\n")
    assert info.value.line == 2
    with pytest.raises(ParseError) as info:
        parse_matrix("0,1\n1, x\n")
    assert (info.value.line, info.value.col) == (2, 4)
    with pytest.raises(ParseError):
        parse_matrix('[[0, 0.5], [0.5, 0]]', "json")
    with pytest.raises(ParseError) as info:
        parse_matrix('[[0, 1],\n [1, 0]', "json")
    assert info.value.line == 2


def test_parse_tree_examples():
    t = parse_tree("(2 0 (1 0 0))")
    assert len(t) == 5 and list(t.labels) == [2, 0, 1, 0, 0]
    assert len(parse_tree("0")) == 1
    assert len(parse_tree("(0)")) == 1
    plain = parse_tree("(* * (* * *))")
    assert not hasattr(plain, "labels")
    with pytest.raises(MixedLabeling):
        parse_tree("(* 0 0)")
    with pytest.raises(ParseError):
        parse_tree("(2 0 0")
    with pytest.raises(ParseError) as info:
        parse_tree("(2 0 0)\n )")
    assert (info.value.line, info.value.col) == (2, 2)


def test_dot_examples():
    assert emit_dot(parse_tree("0")).count("[label") == 1
    assert emit_dot(parse_tree("(2 0 (1 0 0))")).count("->") == 4
    g = emit_dot(diametrical_graph(equilateral(3)))
    assert g.startswith("graph G") and g.count("--") == 3


@given(spaces())
def test_matrix_round_trip(X):
    for fmt in ("csv", "json"):
        Y = parse_matrix(emit_matrix(X, fmt), fmt)
        assert Y == X


@given(spaces())
def test_tree_round_trip(X):
    t = build_representing_tree(X)
    back = parse_tree(emit_sexpr(t))
    assert back.children == t.children and back.labels == t.labels
    plain = parse_tree(emit_sexpr(t.shape()))
    assert plain.children == t.children


@given(spaces(max_n=6))
def test_props_output_is_deterministic(X):
    text = emit_matrix(X)
    first = run(["props", "-"], text)
    assert first == run(["props", "-"], text)
    assert json.loads(first[1])["schema"] == 1
