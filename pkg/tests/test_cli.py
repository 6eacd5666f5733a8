from __future__ import annotations

import io
import json
import shutil
import subprocess
import sys

import pytest

from cordalg.cli import SCHEMA, run
from cordalg.diagram import parse_diagram

from conftest import FIXTURES
from test_diagram import SQUARE_BRAID, TREFOIL_PD

SQ = str(FIXTURES / "square_knot.json")
TR = str(FIXTURES / "trefoil.json")
BLUE1 = '{"type":"blue-box","summand":"L1"}'


def call(*argv, stdin: str | None = None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.TextIOWrapper(io.BytesIO(stdin.encode()))
        try:
            code = run(list(argv), out, err)
        finally:
            sys.stdin = old
    else:
        code = run(list(argv), out, err)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), err.getvalue()


def test_report_schema():
    code, rep, _ = call("parse", SQ)
    assert code == 0
    assert set(rep) == {"schema", "version", "subcommand", "input_digest", "payload", "timing"}
    assert rep["schema"] == SCHEMA and rep["subcommand"] == "parse"
    assert rep["input_digest"].startswith("sha256:")


def test_parse_round_trip():
    _, rep, _ = call("parse", SQ)
    doc = rep["payload"]["diagram"]
    assert parse_diagram(doc) == parse_diagram((FIXTURES / "square_knot.json").read_text())
    _, again, _ = call("parse", "-", stdin=json.dumps(doc))
    assert again["payload"] == rep["payload"]


def test_deterministic_payload():
    a = call("monodromy", SQ, "--action", BLUE1, "--certify")[1]
    b = call("monodromy", SQ, "--action", BLUE1, "--certify")[1]
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_blue_box_certificate():
    code, rep, _ = call("monodromy", SQ, "--action", BLUE1, "--certify")
    assert code == 0
    p = rep["payload"]
    assert p["verdict"] == "nontrivial"
    c = p["certificate"]
    assert (c["generator"], c["value_before"], c["value_after"]) == ("a_{2,4}", "z", "z+1")


def test_gramain_trivial():
    code, rep, _ = call("monodromy", SQ, "--action", '{"type":"gramain"}')
    assert code == 0 and rep["payload"]["verdict"] == "trivial"
    assert len(rep["payload"]["fixed"]) == 15


def test_gramain_certify_has_no_certificate():
    code, rep, _ = call("monodromy", TR, "--action", '{"type":"gramain"}', "--certify")
    assert code == 0 and "certificate" not in rep["payload"]


def test_certify_not_found():
    # The first Boolean hom is the zero map, which separates nothing.
    code, rep, _ = call("monodromy", SQ, "--action", BLUE1, "--certify",
                        "--target", "bool", "--limit", "1")
    assert code == 1
    assert rep["payload"]["verdict"] == "nontrivial" and rep["payload"]["certificate"] is None


def test_missing_file():
    code, rep, err = call("algebra", "does_not_exist.json")
    assert code == 2 and rep is None and "cannot read" in err


@pytest.mark.parametrize("argv", [
    ("monodromy", SQ),
    ("monodromy", SQ, "--action", '{"type":"blue-box","summand":"L9"}'),
    ("monodromy", SQ, "--action", "{"),
    ("reduce", SQ, "1 [7] 2"),
    ("hom", SQ, "verify"),
    ("hom", SQ, "search", "--target", "z"),
    ("cable", SQ, "--n", "2"),
    ("frobnicate",),
    (),
])
def test_input_errors(argv):
    code, rep, err = call(*argv)
    assert code == 2 and rep is None and err.startswith("cordalg:")


def test_budget_exhaustion():
    code, rep, err = call("algebra", SQ, "--budget", "3")
    assert code == 3 and rep is None and "budget" in err
    code, _, _ = call("algebra", SQ, "--time-budget", "0")
    assert code == 3


def test_algebra():
    code, rep, _ = call("algebra", SQ)
    assert code == 0 and len(rep["payload"]["generators"]) == 15


def test_reduce():
    code, rep, _ = call("reduce", SQ, "loop: 3")
    assert code == 0 and rep["payload"]["normal_form"] == "0"
    code, rep, _ = call("reduce", SQ, "1 [5] 4")
    assert rep["payload"]["raw"] == "a_{1,5}*a_{4,5}+a_{1,4}"


def test_hom_verify_and_search(tmp_path):
    code, rep, _ = call("hom", SQ, "verify", str(FIXTURES / "square_knot_table1.json"))
    assert code == 0 and rep["payload"]["verified"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"images": {"a12": "z"}}))
    code, rep, _ = call("hom", SQ, "verify", str(bad))
    assert code == 2  # incomplete assignment
    doc = json.loads((FIXTURES / "square_knot_table1.json").read_text())
    doc["images"]["a_{1,2}"] = "z"
    bad.write_text(json.dumps(doc))
    code, rep, _ = call("hom", SQ, "verify", str(bad))
    assert code == 1 and not rep["payload"]["verified"]
    code, rep, _ = call("hom", SQ, "search", "--limit", "100")
    assert code == 0 and rep["payload"]["count"] == 7


def test_formats():
    code, rep, _ = call("parse", "-", "--format", "pd", stdin=json.dumps(TREFOIL_PD))
    assert code == 0 and rep["payload"]["diagram"]["arcs"] == 3
    code, rep, _ = call("algebra", "-", "--format", "braid", stdin=SQUARE_BRAID)
    assert code == 0 and len(rep["payload"]["generators"]) == 15
    code, _, _ = call("parse", "-", "--format", "pd", stdin="[[1, 2]]")
    assert code == 2
    code, _, _ = call("parse", "-", "--format", "braid", stdin="s1 s1")
    assert code == 2


def test_cable_command():
    code, rep, _ = call("cable", SQ, "--n", "3", "--at", "3")
    assert code == 0 and rep["payload"]["crossings"] == 56
    assert parse_diagram(rep["payload"]["diagram"]) == parse_diagram(
        (FIXTURES / "square_knot_cable3.json").read_text())


def test_cable_fallback_through_projection():
    # With no room for a Groebner basis the verdict comes from pulled-back homs.
    code, rep, _ = call("monodromy", SQ, "--cable", "1", "--action", BLUE1,
                        "--certify", "--budget", "3")
    assert code == 0
    p = rep["payload"]
    assert p["method"] == "hom" and p["verdict"] == "nontrivial"
    assert p["groebner"].startswith("not built")
    assert (p["certificate"]["value_before"], p["certificate"]["value_after"]) == ("z", "z+1")


def test_cable_budget_without_certify():
    code, _, _ = call("monodromy", SQ, "--cable", "1", "--action", BLUE1, "--budget", "3")
    assert code == 3


@pytest.mark.parametrize("conv,value", [("ltr", "(1 1;0 0)"), ("rtl", "(0 1;0 1)")])
def test_nc(conv, value):
    code, rep, _ = call("nc", "--matrix-convention", conv)
    assert code == 0 and rep["payload"]["ok"]
    assert rep["payload"]["product"]["value"] == value


def test_nc_relations():
    code, rep, _ = call("nc", "--relation", "l m + m l")
    assert code == 0
    code, rep, _ = call("nc", "--relation", "1 + m")
    assert code == 1 and not rep["payload"]["relations"][0]["vanishes"]


@pytest.mark.skipif(shutil.which("cordalg") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["cordalg", "monodromy", SQ, "--action", '{"type":"gramain"}'],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["verdict"] == "trivial"
