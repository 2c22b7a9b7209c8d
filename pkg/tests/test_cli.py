import json
import subprocess
import sys

import pytest

from cremona.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_STUCK, main, run
from cremona.parsing import format_triple, format_word
from cremona.rewrite import SIGMA, Lin
from cremona.cremap import LinMap


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_relations_check():
    code, doc, _ = run(["relations-check", "--seed", "7"])
    assert code == EXIT_OK and doc["passed"]
    assert len(doc["relators"]) == 10


def test_relations_check_fp():
    code, doc, _ = run(["relations-check", "--seed", "7", "--field-mode", "fp"])
    assert code == EXIT_OK


def test_missing_seed_is_input_error():
    code, doc, _ = run(["relations-check"])
    assert code == EXIT_INPUT and "--seed" in doc["error"]


def test_bad_field_mode():
    code, doc, _ = run(["degree", "[x:y:z]", "--field-mode", "fp:101"])
    assert code == EXIT_INPUT


def test_simplify_sigma_sigma(tmp_path):
    path = write(tmp_path, "w.txt", "sigma\nsigma\n")
    code, doc, _ = run(["simplify", path, "--seed", "1"])
    assert code == EXIT_OK
    assert [s["move"] for s in doc["certificate"]["steps"]] == ["M2-sigma-sigma"]
    assert doc["certificate"]["final"] == []


def test_simplify_not_identity(tmp_path):
    path = write(tmp_path, "w.txt", "sigma\nlin [[-1,0,1],[0,-1,1],[0,0,1]]\n")
    code, doc, _ = run(["simplify", path, "--seed", "1"])
    assert code == EXIT_INPUT and "NotIdentity" in doc["error"]


def test_simplify_stuck(tmp_path):
    g = LinMap([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    d = LinMap.diag(-1, 1, 1)
    path = write(tmp_path, "w.txt", format_word((SIGMA, Lin(g), SIGMA, Lin(d)) * 2))
    code, doc, _ = run(["simplify", path, "--seed", "1"])
    assert code == EXIT_STUCK
    assert doc["stuck"]["reason"] == "InfinitelyNearBasePoint"
    assert "partial_certificate" in doc


def test_verify_cert_roundtrip(tmp_path):
    word = write(tmp_path, "w.txt", format_word((Lin(LinMap.diag(2, 3, 1)), SIGMA, Lin(LinMap.diag(2, 3, 1)), SIGMA)))
    out = tmp_path / "cert.json"
    assert main(["simplify", word, "--seed", "3", "--output", str(out)]) == EXIT_OK
    code, doc, _ = run(["verify-cert", str(out)])
    assert code == EXIT_OK and doc["valid"]
    data = json.loads(out.read_text())
    steps = data["certificate"]["steps"]
    steps[0]["after"], steps[0]["before"] = steps[0]["before"], ["sigma"]
    bad = write(tmp_path, "bad.json", json.dumps(data))
    code, doc, _ = run(["verify-cert", bad])
    assert code == EXIT_FAIL and doc["step"] == 0


def test_verify_cert_malformed(tmp_path):
    code, doc, _ = run(["verify-cert", write(tmp_path, "c.json", "{not json")])
    assert code == EXIT_INPUT and doc["line"] == 1
    code, doc, _ = run(["verify-cert", write(tmp_path, "c.json", "{}")])
    assert code == EXIT_INPUT


def test_compose_and_degree():
    code, doc, _ = run(["compose", "[y*z : x*z : x*y]", "[y*z : x*z : x*y]"])
    assert code == EXIT_OK and doc["degree"] == 1 and doc["map"] == "[x : y : z]"
    code, doc, _ = run(["degree", "[z-x : z-y : z]"])
    assert doc["degree"] == 1


def test_parse_error_diagnostics():
    code, doc, _ = run(["degree", "[x : y"])
    assert code == EXIT_INPUT
    assert doc["line"] == 1 and doc["column"] == 7 and doc["expected"]


def test_basepoints_and_mult():
    code, doc, _ = run(["basepoints", "[y*z : x*z : x*y]"])
    assert code == EXIT_OK and sorted(doc["base_points"]) == ["[0:0:1]", "[0:1:0]", "[1:0:0]"]
    code, doc, _ = run(["mult", "[y*z : x*z : x*y]", "[1:0:0]"])
    assert doc["multiplicity"] == 1
    code, doc, _ = run(["basepoints", "[x*z : y*z : x^2 + y^2]"])
    assert code == EXIT_INPUT and "IrrationalBasePoint" in doc["error"]


def test_map_from_file(tmp_path):
    path = write(tmp_path, "m.txt", "[y*z :\n x*z : x*y]\n")
    code, doc, _ = run(["degree", "@" + path])
    assert code == EXIT_OK and doc["degree"] == 2
    code, doc, _ = run(["degree", "@" + str(tmp_path / "missing")])
    assert code == EXIT_INPUT


def test_eval_word(tmp_path):
    path = write(tmp_path, "w.txt", "lin [[-1,0,1],[0,-1,1],[0,0,1]]\nsigma\n" * 3)
    code, doc, _ = run(["eval-word", path])
    assert code == EXIT_OK and doc["map"] == "[x : y : z]" and doc["letters"] == 6


def test_giz_act(tmp_path):
    from cremona.gizaction import SymTriple

    T = SymTriple(1, [[2]], [[3]], [[5]])
    w = write(tmp_path, "w.txt", "sigma\n")
    t = write(tmp_path, "t.txt", format_triple(T))
    code, doc, _ = run(["giz-act", w, t])
    assert code == EXIT_OK and doc["triple"] == "1\n1\n\n2/3\n\n2/5\n"
    t = write(tmp_path, "t.txt", "1\n0\n\n1\n\n1\n")
    code, doc, _ = run(["giz-act", w, t])
    assert code == EXIT_INPUT and "SingularComponent" in doc["error"]


def test_giz_check():
    code, doc, _ = run(["giz-check", "--seed", "2", "--n", "1", "--n", "2", "--count", "5"])
    assert code == EXIT_OK and set(doc["results"]) == {"n=1", "n=2"}


def test_unknown_command():
    code, doc, _ = run(["frobnicate"])
    assert code == EXIT_INPUT
    code, doc, _ = run([])
    assert code == EXIT_INPUT


def test_selftest_small():
    from cremona.selftest import run_selftest

    res = run_selftest(4, count=3)
    assert all(v["passed"] for v in res.values())


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cremona", "degree", "[y*z : x*z : x*y]"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["degree"] == 2
    assert proc.stderr == ""
