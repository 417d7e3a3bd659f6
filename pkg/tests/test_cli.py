import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F


from shadowmarkoff.cli import approx, main
from shadowmarkoff.treewalk import serialize, tree_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_path_rows(capsys):
    code, out, _ = run(capsys, "path", "--root", "0,0,1", "--word", "lll")
    assert code == 0
    assert out.splitlines()[0] == "[[1, 0, 1, 0, 1, 1],"
    assert out.splitlines()[-1] == " [1, 1, 34, 130, 89, 420]]"
    assert len(out.splitlines()) == 6


def test_path_field_selection(capsys):
    code, out, _ = run(capsys, "path", "--root", "1,9/10,1", "--word", "rlrlrlr",
                       "--row", "9", "--field", "gamma", "--approx")
    assert code == 0
    exact, _, dec = out.strip().partition("  ~ ")
    g = F(exact)
    assert g < 0 and abs(-g / F("6.98e33") - 1) < F(1, 100)
    assert dec == "-6.98656E+33"


def test_path_double_tree(capsys):
    code, out, _ = run(capsys, "path", "--root", "1,1,1", "--word", "", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 3
    for r in rows:
        assert r[0::2] == r[1::2]


def test_tree(capsys):
    code, out, _ = run(capsys, "tree", "--root", "0,0,1", "--height", "0")
    assert (code, out) == (0, "[]\n")
    code, out, _ = run(capsys, "tree", "--root", "0,2,1", "--height", "1")
    assert out.strip() == "[[1, 1, 2, 6, 5, 16], [], []]"


def test_tree_json_round_trip(capsys):
    _, text, _ = run(capsys, "tree", "--root", "1/2,0,1", "--height", "4")
    _, js, _ = run(capsys, "tree", "--root", "1/2,0,1", "--height", "4", "--format", "json")
    assert serialize(tree_from_json(js)) == text.strip()


def test_tree_guard(capsys):
    code, _, err = run(capsys, "tree", "--height", "30")
    assert code == 2 and "guard" in err


def test_branch(capsys):
    code, out, _ = run(capsys, "branch", "--root", "0,2,1", "--direction", "l", "--count", "3")
    assert out == "5 16\n13 42\n34 110\n"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--root", "0,0,1", "--depth", "10")
    assert code == 0
    assert "equation failures: 0" in out and "negative shadows: 0" in out
    code, out, _ = run(capsys, "verify", "--root", "2,2,1", "--depth", "4", "--assert-positive")
    assert code == 1


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--point", "11/10,1", "--max-depth", "8")
    assert code == 0 and "value: -" in out
    code, out, _ = run(capsys, "witness", "--point", "11/10,1", "--assert-positive")
    assert code == 1
    code, out, _ = run(capsys, "witness", "--root", "1,1,4")
    assert code == 0 and out.startswith("no negative shadow")
    code, out, _ = run(capsys, "witness", "--point", "3/4,7/5", "--branch-length", "100")
    assert "straight branch" in out and "word: lllll" in out


def test_witness_usage_errors(capsys):
    assert run(capsys, "witness")[0] == 2
    assert run(capsys, "witness", "--root", "1,1,0")[0] == 2


def test_region_csv(capsys, tmp_path):
    out_file = tmp_path / "r.csv"
    code, _, _ = run(capsys, "region", "--bbox", "0,0,3/2,3/2", "--spacing", "1/2",
                     "--depth", "6", "-o", str(out_file))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out_file.read_text())))
    assert rows[0] == ["alpha", "beta", "inside_conjecture", "positive_to_depth", "witness_word"]
    assert rows[1] == ["0", "0", "boundary", "true", ""]
    assert len(rows) == 1 + 16
    by = {(r[0], r[1]): r for r in rows[1:]}
    assert by[("3/2", "1/2")][3:] == ["false", "(rl)"]


def test_region_deterministic_across_workers(capsys):
    args = ["region", "--bbox", "0,0,2,2", "--spacing", "1/4", "--depth", "5"]
    _, one, _ = run(capsys, *args, "--workers", "1")
    _, two, _ = run(capsys, *args, "--workers", "2")
    assert one == two


def test_region_svg(capsys):
    code, out, _ = run(capsys, "region", "--bbox", "0,0,2,2", "--spacing", "1/2", "--depth", "4",
                       "--format", "svg")
    assert code == 0
    assert out.startswith("<svg") and out.rstrip().endswith("</svg>")
    assert out.count("<circle") == 25 and out.count("<polygon") == 2


def test_constraints(capsys):
    code, out, _ = run(capsys, "constraints", "--depth", "0")
    lines = out.splitlines()
    assert lines[0] == "u,v,w" and "1,0,0" in lines and "-8,3,10" in lines
    code, out, _ = run(capsys, "constraints", "--matrix", "")
    assert out == "0,0,1\n-2,2,2\n-8,3,10\n"
    code, out, _ = run(capsys, "constraints", "--depth", "3", "--format", "polygon")
    assert code == 0 and "0,0" in out.splitlines()
    code, out, _ = run(capsys, "constraints", "--depth", "2", "--format", "svg")
    assert out.count("<polygon") == 2


def test_bad_word_is_usage_error(capsys):
    assert run(capsys, "path", "--word", "lxr")[0] == 2


def test_approx():
    assert approx(F(-388809, 5)) == "-7.77618E+4"
    assert approx(F(0)) == "0"
    assert approx(F(1234565)) == "1.23456E+6"  # half-even


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "shadowmarkoff", "path", "--root", "0,0,1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1] == " [1, 1, 2, 2, 5, 10]]"
    res = subprocess.run([sys.executable, "-m", "shadowmarkoff", "path", "--root", "1,2"],
                         capture_output=True, text=True)
    assert res.returncode == 2
