import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from qkquot.cli import run
from qkquot.qkring import RingTable, a2_quotient, load_external_chevalley


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_golden():
    code, out, _ = call("qk", "verify", "--suite", "golden")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("PASS s1 *")]
    assert len(lines) == 6
    assert out.strip().endswith("12/12 checks passed")


def test_product_example():
    code, out, _ = call("qk", "product", "--type", "A2", "--J", "", "--lhs", "s1", "--rhs", "s2")
    assert code == 0
    assert out == "[s1*s2] + [s2*s1] - [s1*s2*s1]\n"


def test_product_in_quotient_projects_words():
    code, out, _ = call("qk", "product", "--type", "A2", "--J", "2", "--lhs", "s1", "--rhs", "s1")
    assert code == 0
    assert out == "(1 - x^-1*y^2)*[s1] + x^-1*y^2*[s2*s1]\n"


def test_weyl_project_example():
    code, out, _ = call("weyl", "project", "--type", "A2", "--J", "2", "--element", "s2*t[0,1]")
    assert (code, out) == (0, "e * t[0,0]\n")


def test_weyl_length_and_root_info():
    assert call("weyl", "length", "--type", "A2", "--element", "t[-1,-1]")[:2] == (0, "4\n")
    code, out, _ = call("root", "info", "--type", "A2", "--format", "doc")
    assert code == 0 and json.loads(out)["rank"] == 2


def test_gr_verbs():
    code, out, _ = call("gr", "translate", "--element", "s1*t[-1,-1]", "--by", "t[-1,-1]")
    assert (code, out) == (0, "s1 * t[-2,-2]\n")
    code, out, _ = call("gr", "peterson", "--element", "s1*t[-2,-2]", "--denom", "t[-1,-1]",
                        "--format", "doc")
    assert code == 0
    doc = json.loads(out)
    assert doc["terms"] == [{"coeff": "1", "weyl": "s1", "novikov": [-1, -1]}]
    code, out, _ = call("gr", "peterson", "--element", "s2*t[-1,-1]", "--denom", "t[-1,-1]", "--J", "2")
    assert (code, out) == (0, "[e]\n")


@pytest.mark.parametrize("argv", [
    ("qk", "product", "--type", "A2", "--lhs", "s3", "--rhs", "e"),
    ("weyl", "length", "--type", "Z9", "--element", "e"),
    ("weyl", "project", "--type", "A2", "--J", "7", "--element", "e"),
    ("qk", "verify", "--bogus"),
    ("qk",),
    (),
    ("gr", "translate", "--element", "e", "--by", "t[-1,0]"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert err


def test_unsupported_exit_3():
    code, _, err = call("qk", "product", "--type", "B2", "--lhs", "s1", "--rhs", "s2")
    assert code == 3 and "unsupported" in err
    assert call("qk", "table", "--type", "G2")[0] == 3


def test_external_verification_exit_codes():
    assert call("qk", "verify", "--chevalley", str(FIXTURES / "a1_chevalley.json"))[0] == 0
    code, out, _ = call("qk", "verify", "--chevalley", str(FIXTURES / "a1_nonpolynomial.json"),
                        "--format", "doc")
    assert code == 1
    report = json.loads(out)
    assert report["passed"] is False
    (failure,) = report["failures"]
    assert failure["name"] == "A1 reconstruction" and failure["witnesses"]


def test_external_file_errors(tmp_path):
    assert call("qk", "verify", "--chevalley", str(tmp_path / "nope.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "A1", "J": []}))
    assert call("qk", "verify", "--chevalley", str(bad))[0] == 2


def test_table_entries():
    code, out, _ = call("qk", "table", "--type", "A2", "--J", "2", "--format", "doc")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["products"]) == 9
    code, out, _ = call("qk", "table", "--type", "A2", "--J", "1,2", "--format", "doc")
    doc = json.loads(out)
    assert len(doc["products"]) == 1
    (entry,) = doc["products"]
    assert entry["class"]["terms"] == [{"coeff": "1", "weyl": "e", "novikov": [0, 0]}]
    assert call("qk", "table", "--type", "A2", "--J", "")[1].count("\n") == 36


def test_table_out_roundtrip(tmp_path):
    path = tmp_path / "a2_J2.json"
    code, out, _ = call("qk", "table", "--type", "A2", "--J", "2", "--out", str(path))
    assert code == 0 and "9 products" in out
    first = path.read_bytes()
    call("qk", "table", "--type", "A2", "--J", "2", "--out", str(path))
    assert path.read_bytes() == first
    back = RingTable.from_doc(json.loads(first))
    assert back == a2_quotient({2})
    assert load_external_chevalley(path) == a2_quotient({2}).chevalley
    bad = tmp_path / "missing" / "x.json"
    code, _, err = call("qk", "table", "--type", "A2", "--out", str(bad))
    assert code == 2 and str(bad) in err


ALL_VERBS = [
    ("root", "info", "--type", "B3"),
    ("weyl", "project", "--type", "A2", "--J", "1", "--element", "s1*s2*t[1,2]"),
    ("weyl", "length", "--type", "B2", "--element", "s0*s1"),
    ("qk", "product", "--type", "A2", "--J", "1", "--lhs", "s2", "--rhs", "s1*s2"),
    ("qk", "table", "--type", "A2", "--J", "1"),
    ("qk", "verify", "--suite", "quotient"),
    ("gr", "peterson", "--element", "s2*s1*t[-3,-2]", "--denom", "t[-1,-1]"),
    ("gr", "translate", "--element", "t[-1,-1]", "--by", "t[-2,-3]"),
]


@pytest.mark.parametrize("argv", ALL_VERBS, ids=lambda a: " ".join(a[:2]))
def test_every_verb_has_doc_format_and_is_deterministic(argv):
    code, pretty, _ = call(*argv)
    assert code == 0 and pretty
    code, doc, _ = call(*argv, "--format", "doc")
    assert code == 0
    json.loads(doc)
    assert call(*argv, "--format", "doc")[1] == doc
    assert call(*argv)[1] == pretty


def test_color_env(monkeypatch):
    monkeypatch.setenv("QKP_COLOR", "1")
    out = call("qk", "verify", "--suite", "golden")[1]
    assert "\x1b[32mPASS\x1b[0m" in out
    monkeypatch.setenv("QKP_COLOR", "0")
    assert "\x1b" not in call("qk", "verify", "--suite", "golden")[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qkquot", "weyl", "length", "--type", "A2",
                           "--element", "s1*s2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2\n"
