import json

from clustind.cli import run
from clustind.engine import Certificate, verify_certificate
from clustind.graph import Graph
from clustind.models import RootedTwoTree, load_model


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out


def test_generate_and_roundtrip(tmp_path, capsys):
    g, mo, dot = tmp_path / "g.json", tmp_path / "m.json", tmp_path / "g.dot"
    code, out = call(capsys, "generate", "--family", "gi-chain", "--i", "2", "--out", str(g),
                     "--model", str(mo), "--dot", str(dot))
    assert code == 0 and json.loads(out)["n"] == 19
    graph = Graph.from_json(g.read_text())
    assert RootedTwoTree.from_dict(json.loads(mo.read_text())).n == 19
    assert dot.read_text().count("--") == graph.m


def test_random_family_needs_seed(tmp_path, capsys):
    assert call(capsys, "generate", "--family", "random-ktree", "--k", "2", "--n", "10")[0] == 2
    a = call(capsys, "generate", "--family", "random-ktree", "--k", "2", "--n", "10", "--seed", "4")
    b = call(capsys, "generate", "--family", "random-ktree", "--k", "2", "--n", "10", "--seed", "4")
    assert a == b and a[0] == 0


def test_alpha_exact_and_verify_set(tmp_path, capsys):
    g, mo = tmp_path / "g.json", tmp_path / "m.json"
    call(capsys, "generate", "--family", "path-clique", "--k", "3", "--c", "4", "--out", str(g), "--model", str(mo))
    code, out = call(capsys, "alpha", "exact", "--c", "4", "--graph", str(g))
    res = json.loads(out)
    assert code == 0 and res["alpha"] == 4 and res["exact"] is True
    code, out = call(capsys, "alpha-exact", "--c", "4", "--graph", str(g), "--model", str(mo), "--engine", "treedp")
    assert json.loads(out)["alpha"] == 4
    s = tmp_path / "s.json"
    s.write_text(json.dumps(res["witness"]))
    assert call(capsys, "verify-set", "--c", "4", "--graph", str(g), "--set", str(s))[0] == 0
    s.write_text(json.dumps(list(range(7))))
    assert call(capsys, "verify-set", "--c", "4", "--graph", str(g), "--set", str(s))[0] == 1


def test_alpha_bound(tmp_path, capsys):
    g, mo = tmp_path / "g.json", tmp_path / "m.json"
    call(capsys, "generate", "--family", "random-ktree", "--k", "3", "--n", "40", "--seed", "1",
         "--out", str(g), "--model", str(mo))
    for algo, c in (("general", 3), ("c2", 2)):
        code, out = call(capsys, "alpha", "bound", "--algo", algo, "--c", str(c), "--graph", str(g), "--model", str(mo))
        res = json.loads(out)
        assert code == 0 and res["size"] >= res["bound"] and len(res["set"]) == res["size"]
    assert call(capsys, "alpha-bound", "--algo", "k1", "--c", "2", "--graph", str(g), "--model", str(mo))[0] == 2


def test_validate_model(tmp_path, capsys):
    g, mo = tmp_path / "g.json", tmp_path / "m.json"
    call(capsys, "generate", "--family", "cary-tower", "--k", "2", "--c", "2", "--out", str(g), "--model", str(mo))
    assert call(capsys, "validate-model", "--graph", str(g), "--model", str(mo))[0] == 0
    load_model(json.loads(mo.read_text()))
    g.write_text(json.dumps({"n": 7, "edges": [[3, 4]]}))
    code, out = call(capsys, "validate-model", "--graph", str(g), "--model", str(mo))
    assert code == 1 and json.loads(out)["violations"]


def test_certify_exit_codes(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out = call(capsys, "certify", "--c", "3", "--ratio", "5/9", "--out", str(path))
    assert code == 0
    cert = Certificate.from_json(path.read_text())
    assert verify_certificate(cert) == [] and Certificate.from_dict(json.loads(out)).types == cert.types
    code, out = call(capsys, "certify", "--c", "3", "--ratio", "3/5")
    assert code == 1 and json.loads(out)["certified"] is False


def test_refute_exit_codes(capsys):
    code, out = call(capsys, "refute", "--c", "3", "--ratio", "3/5", "--max-n", "25")
    res = json.loads(out)
    assert code == 1 and res["found"] is True
    t = RootedTwoTree.from_dict(res["two_tree"])
    assert t.n == res["n"]
    assert call(capsys, "refute", "--c", "3", "--ratio", "1/2")[0] == 0
    assert call(capsys, "refute", "--c", "3", "--ratio", "4/7", "--budget", "1000")[0] == 3


def test_find_ratio_and_table(capsys):
    code, out = call(capsys, "find-ratio", "--c", "4", "--max-q", "20")
    res = json.loads(out)
    assert code == 0 and (res["p"], res["q"]) == (8, 13)
    code, out = call(capsys, "table", "--c-from", "2", "--c-to", "4")
    assert code == 0 and out == "c\tx2c\n2\t1/2\n3\t5/9\n4\t8/13\n"


def test_usage_errors(tmp_path, capsys):
    assert call(capsys, "nope")[0] == 2
    assert call(capsys, "certify", "--c", "3", "--ratio", "five")[0] == 2
    assert call(capsys, "certify", "--c", "3", "--ratio", "2/4")[0] == 2
    assert call(capsys, "verify-set", "--c", "2", "--graph", str(tmp_path / "missing.json"),
                "--set", str(tmp_path / "s.json"))[0] == 2
    assert call(capsys, "certify", "--c", "3", "--ratio", "5/9", "--out", str(tmp_path / "no" / "x.json"))[0] == 2
    assert call(capsys, "--help")[0] == 0
