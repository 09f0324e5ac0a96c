import json

import pytest

from tropmat.bergman import bergman_fan
from tropmat.cli import main
from tropmat.fan import fan_to_json, tropical_line
from tropmat.matroid import matroid_from_json, uniform


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_matroid_info(capsys, files):
    code, out, _ = run(capsys, "matroid", "info", files("u.json", {"uniform": [2, 3]}))
    assert code == 0
    assert out.startswith("n=3 rank=2 bases=3 flats=5")
    code, out, _ = run(capsys, "matroid", "info", "--json", files("v.json", {"builtin": "vamos"}))
    info = json.loads(out)
    assert (info["n"], info["rank"], info["bases"], info["loops"]) == (8, 4, 65, 0)


def test_malformed_matroid_file(capsys, files):
    code, _, err = run(capsys, "matroid", "info", files("bad.json", "{not json"))
    assert code == 2 and "invalid matroid file" in err
    code, _, _ = run(capsys, "matroid", "info", files("missing.json", {"n": 3}))
    assert code == 2


def test_matroid_check_and_builtin(capsys, files, tmp_path):
    code, out, _ = run(capsys, "matroid", "check", files("u.json", {"uniform": [2, 4]}))
    assert (code, out) == (0, "matroid")
    target = tmp_path / "k4.json"
    code, _, _ = run(capsys, "matroid", "builtin", "k4", "-o", str(target))
    assert code == 0
    assert len(matroid_from_json(json.loads(target.read_text())).bases) == 16
    code, _, _ = run(capsys, "matroid", "builtin", "nope")
    assert code == 3


def test_bergman(capsys, files, tmp_path):
    out_path = tmp_path / "fan.json"
    code, out, _ = run(capsys, "bergman", files("u.json", {"uniform": [2, 3]}), "-o", str(out_path))
    assert (code, out) == (0, "cones=3 dim=2")
    assert json.loads(out_path.read_text())["n"] == 3
    code, out, _ = run(capsys, "bergman", files("u14.json", {"uniform": [1, 4]}), "-o", str(out_path))
    assert (code, out) == (0, "cones=1 dim=1")


def test_bergman_loops(capsys, files, tmp_path):
    loopy = files("loopy.json", {"matrix": [["1", "0", "1"], ["0", "0", "1"]]})
    code, _, err = run(capsys, "bergman", loopy, "-o", str(tmp_path / "f.json"))
    assert code == 3 and "loops {2}" in err
    code, out, _ = run(capsys, "bergman", loopy, "-o", str(tmp_path / "f.json"), "--simplify")
    assert (code, out) == (0, "cones=2 dim=2")


def test_fan_indep(capsys, files):
    f = files("b.json", fan_to_json(bergman_fan(uniform(2, 3)).fan))
    code, out, _ = run(capsys, "fan", "indep", f)
    assert (code, out) == (0, "{1,2} {1,3} {2,3}")
    line = files("line.json", {"n": 3, "lineality": [[1, 1, 1]], "cones": [{"rays": [], "weight": 1}]})
    assert run(capsys, "fan", "indep", line)[1] == "{1} {2} {3}"
    empty = files("empty.json", {"n": 3, "lineality": [], "cones": []})
    assert run(capsys, "fan", "indep", empty)[1] == "{}"


def test_fan_indep_threads_are_canonical(capsys, files, monkeypatch):
    f = files("b.json", fan_to_json(bergman_fan(uniform(3, 5)).fan))
    one = run(capsys, "fan", "indep", "--threads", "1", f)
    monkeypatch.setenv("TROPMAT_THREADS", "3")
    many = run(capsys, "fan", "indep", "--threads", "3", f)
    assert one == many


def test_fan_balance(capsys, files):
    f = files("b.json", fan_to_json(bergman_fan(uniform(2, 3)).fan))
    code, out, _ = run(capsys, "fan", "balance", f)
    assert code == 0
    assert out == "balanced; weight space dim 1\nbasis (1,1,1)"
    g = files("w.json", fan_to_json(tropical_line((1, 1, 2))))
    code, out, _ = run(capsys, "fan", "balance", g)
    assert code == 1
    assert out.startswith("unbalanced at ridge")
    code, out, _ = run(capsys, "fan", "balance", "--json", g)
    payload = json.loads(out)
    assert payload["balanced"] is False and payload["residual"] == ["-1/3", "-1/3", "2/3"]


def test_ideal_matroid(capsys, files, tmp_path):
    tc = files("tc.txt", "vars 3\nx2 - x1^2\nx3 - x1^3\n")
    code, out, _ = run(capsys, "ideal", "matroid", tc)
    assert code == 0
    assert out == "n=3 rank=1 bases=3 loops=0\n{1} {2} {3}"
    lin = files("lin.txt", "vars 3\nx1 + x2 - x3\n")
    target = tmp_path / "m.json"
    code, _, _ = run(capsys, "ideal", "matroid", lin, "-o", str(target))
    assert code == 0
    assert matroid_from_json(json.loads(target.read_text())) == uniform(2, 3)


def test_ideal_matroid_errors(capsys, files):
    tc = files("tc.txt", "vars 3\nx2 - x1^2\nx3 - x1^3\n")
    code, _, err = run(capsys, "ideal", "matroid", tc, "--max-pairs", "0")
    assert code == 4 and "inconclusive" in err
    code, _, _ = run(capsys, "ideal", "matroid", files("bad.txt", "vars 3\n2x1\n"))
    assert code == 2
    code, _, _ = run(capsys, "ideal", "matroid", files("unit.txt", "vars 2\nx1\nx1 - 1\n"))
    assert code == 3
    code, _, err = run(capsys, "ideal", "matroid", files("mono.txt", "vars 2\nx1\n"))
    assert code == 0 and "monomial generator" in err


def test_compare(capsys, files):
    u = files("u.json", {"uniform": [2, 3]})
    fan = files("b.json", fan_to_json(bergman_fan(uniform(2, 3)).fan))
    assert run(capsys, "compare", u, fan)[:2] == (0, "equal")
    assert run(capsys, "compare", u, files("i.txt", "vars 3\nx1 + x2 - x3\n"))[:2] == (0, "equal")
    code, out, _ = run(capsys, "compare", u, files("j.txt", "vars 3\nx1 - x2\n"))
    assert (code, out) == (1, "unequal; witness {1,2}")
    code, out, _ = run(capsys, "compare", "--json", u, files("j.txt", "vars 3\nx1 - x2\n"))
    assert json.loads(out) == {"equal": False, "kind": "ideal", "witness": [1, 2]}


def test_compare_size_mismatch(capsys, files):
    u = files("u.json", {"uniform": [2, 4]})
    assert run(capsys, "compare", u, files("i.txt", "vars 3\nx1 + x2 - x3\n"))[0] == 3


def test_outputs_are_deterministic(capsys, files):
    v = files("v.json", {"builtin": "vamos"})
    assert run(capsys, "matroid", "info", v) == run(capsys, "matroid", "info", v)
