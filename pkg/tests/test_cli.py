import json
import subprocess
import sys
from pathlib import Path

import pytest

from covertop.cli import main, split_labels
from covertop.formats import load_presentation

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_split_labels():
    assert split_labels("a, b") == ["a", "b"]
    assert split_labels("(a,b),[a,b],{a}") == ["(a,b)", "[a,b]", "{a}"]
    assert split_labels("") == []


def test_saturate(capsys):
    assert run(capsys, "saturate", "--input", DATA / "abc_basic.json",
               "--subset", "b,c") == (0, "a b c\n", "")
    assert run(capsys, "saturate", "--input", DATA / "free3.json")[1] == "\n"


def test_lattice_and_dot(capsys, tmp_path):
    assert run(capsys, "lattice", "--input", DATA / "free3.json")[1] == "8 points\n"
    dot = tmp_path / "vee.dot"
    code, out, _ = run(capsys, "lattice", "--input", DATA / "vee_formal.json", "--dot", dot)
    assert code == 0
    text = dot.read_text()
    assert text.startswith("digraph sat {") and text.count("->") == 5


def test_laws_monoid(capsys):
    res = run_json(capsys, "laws", "--input", DATA / "monoid_convergent.json")
    laws = res["laws"]
    assert res["mode"] == "convergent"
    assert laws["stability"]["passed"] and laws["unit"]["passed"]
    w = laws["weakening"]
    assert not w["passed"] and set(w["witness"]["elements"]) == {"b", "c"}
    assert not laws["frame_equality"]["passed"]


def test_laws_basic_and_formal(capsys):
    res = run_json(capsys, "laws", "--input", DATA / "abc_basic.json")
    assert set(res["laws"]) == {"lhd_formal", "unary"}
    res = run_json(capsys, "laws", "--input", DATA / "chain_formal.json")
    assert all(r["passed"] for r in res["laws"].values())


def test_laws_threads_deterministic(capsys):
    a = run(capsys, "--threads", "1", "laws", "--input", DATA / "monoid_formal.json")
    b = run(capsys, "--threads", "4", "laws", "--input", DATA / "monoid_formal.json")
    assert a == b and a[0] == 0


def test_checkmap(capsys, tmp_path):
    rel = tmp_path / "r.json"
    rel.write_text(json.dumps({"pairs": [["z", "z"], ["o", "o"]]}))
    for level in ("basic", "convergent", "unital", "formal"):
        res = run_json(capsys, "checkmap", "--source", DATA / "chain_formal.json",
                       "--target", DATA / "chain_formal.json", "--relation", rel,
                       "--level", level)
        assert res["passed"] and res["level"] == level
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"pairs": [["o", "z"]]}))
    res = run_json(capsys, "checkmap", "--source", DATA / "chain_basic.json",
                   "--target", DATA / "chain_basic.json", "--relation", bad,
                   "--method", "exhaustive")
    assert not res["passed"]


def test_tensor_round_trip(capsys, tmp_path):
    out = tmp_path / "t.json"
    res = run_json(capsys, "tensor", "--left", DATA / "abc_basic.json",
                   "--right", DATA / "chain_basic.json", "--out", out)
    assert res["size"] == 6
    pf = load_presentation(out)
    assert load_presentation(out) == pf
    assert json.loads(out.read_text()) == pf.to_json()


def test_convert(capsys, tmp_path):
    res = run_json(capsys, "convert", "--input", DATA / "abc_basic.json", "--to", "lhd")
    assert not res["lhd_formal"]["passed"]
    out = tmp_path / "leq.json"
    res = run_json(capsys, "convert", "--input", DATA / "monoid_formal.json", "--to", "leq",
                   "--out", out)
    assert res["leq_left"]["passed"] and sorted(res["preorder"]) == [
        ["g", "e"], ["h", "e"], ["h", "g"]]
    assert load_presentation(out).mode == "formal"
    res = run_json(capsys, "convert", "--input", DATA / "monoid_formal.json", "--to", "bullet")
    assert res["points"] >= 1
    dot = tmp_path / "dot.json"
    res = run_json(capsys, "convert", "--input", DATA / "chain_basic.json", "--to", "dot",
                   "--out", dot)
    assert res["size"] == 4
    assert load_presentation(dot).mode == "circ"
    assert run(capsys, "convert", "--input", DATA / "abc_basic.json", "--to", "bullet")[0] == 2


def test_free_pipeline(capsys, tmp_path):
    o, q, l, m = (tmp_path / f"{x}.json" for x in "oqlm")
    res = run_json(capsys, "free", "--apply", "O", "--input", DATA / "abc_basic.json",
                   "--max-len", 2, "--out", o, "--map-out", m)
    assert res["mode"] == "circ" and res["unit_map"]["passed"]
    assert json.loads(m.read_text())["pairs"][0] == [["a"], "a"]
    run_json(capsys, "free", "--apply", "Q", "--input", o, "--out", q)
    found = run_json(capsys, "derive", "--input", q, "--goal", "a.a :: b.a,c.a")
    assert found["found"] and found["tree"]["axiom_id"].startswith("locax")
    missing = run_json(capsys, "derive", "--input", o, "--goal", "a.a :: b.a,c.a")
    assert missing == {"found": False, "depth": 6}
    for f in (o, q):
        pf = load_presentation(f)
        assert pf.to_json() == json.loads(f.read_text())


def test_free_monoid_to_frame(capsys, tmp_path):
    q, l = tmp_path / "q.json", tmp_path / "l.json"
    run_json(capsys, "free", "--apply", "Q", "--input", DATA / "monoid_convergent.json",
             "--out", q)
    res = run_json(capsys, "free", "--apply", "L", "--input", q, "--out", l)
    assert res["unit_map"]["passed"]
    laws = run_json(capsys, "laws", "--input", l)["laws"]
    assert laws["frame_equality"]["passed"]


def test_implication(capsys):
    code, out, _ = run(capsys, "implication", "--input", DATA / "chain_formal.json",
                       "--left", "o", "--right", "z")
    assert (code, out) == (0, "z\n")


@pytest.mark.parametrize("content, code", [
    ("{not json", 2),
    (json.dumps({"base": ["a"], "axioms": [{"elem": "q", "cover": []}]}), 2),
    (json.dumps({"base": ["a"], "mode": "weird"}), 2),
    (json.dumps({"base": [f"x{i}" for i in range(30)]}), 3),
])
def test_exit_codes(capsys, tmp_path, content, code):
    f = tmp_path / "in.json"
    f.write_text(content)
    got, _, err = run(capsys, "lattice", "--input", f)
    assert got == code and err.startswith("error:")


def test_missing_file_and_threads(capsys, tmp_path):
    assert run(capsys, "saturate", "--input", tmp_path / "nope.json")[0] == 2
    assert run(capsys, "--threads", "0", "saturate", "--input", DATA / "free3.json")[0] == 2


def test_unexpected_exception_maps_to_4(capsys, monkeypatch):
    import covertop.cli as cli

    def boom(args):
        raise RuntimeError("x")
    monkeypatch.setattr(cli, "cmd_saturate", boom)
    code, _, err = run(capsys, "saturate", "--input", DATA / "abc_basic.json")
    assert code == 4 and err.startswith("internal error")


def test_operation_required(capsys):
    assert run(capsys, "implication", "--input", DATA / "abc_basic.json")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "covertop", "saturate", "--input",
                           str(DATA / "abc_basic.json"), "--subset", "b,c"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "a b c\n"
