import io as stdio
import json
import subprocess
import sys

import pytest

from qnorm import catalog, io
from qnorm.cli import run
from qnorm.exceptions import ParseError
from qnorm.qmap import QuadMap
from qnorm.words import Alphabet

from conftest import lex_phi

LEX_SPEC = {
    "generators": ["a", "b", "c"],
    "phi": [
        {"in": ["b", "a"], "out": ["a", "b"]},
        {"in": ["c", "a"], "out": ["a", "c"]},
        {"in": ["c", "b"], "out": ["b", "c"]},
    ],
}


def write(tmp_path, obj, name="sys.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def cli(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# spec files


def test_parse_lexicographic():
    alphabet, phi = io.parse_spec(json.dumps(LEX_SPEC))
    assert alphabet.letters == ("a", "b", "c")
    assert phi == lex_phi("abc")


def test_empty_phi_is_identity():
    _, phi = io.parse_spec('{"generators": ["a", "b"], "phi": []}')
    assert phi == QuadMap.identity(Alphabet("ab"))


@pytest.mark.parametrize(
    "text,where",
    [
        ('{"generators": ["a"], "phi": [{"in": ["a", "q"], "out": ["a", "a"]}]}', "phi[0].in[1]"),
        (
            '{"generators": ["a"], "phi": [{"in": ["a", "a"], "out": ["a", "a"]}, {"in": ["a", "a"], "out": ["a", "a"]}]}',
            "phi[1].in",
        ),
        ('{"generators": ["a"], "neutral": "e"}', "neutral"),
        ('{"generators": ["a", "a"]}', "generators[1]"),
        ('{"generators": []}', "generators"),
        ('{"generators": ["a"], "extra": 1}', "src"),
        ('{"generators": ["a"],\n "phi": [}', "line 2"),
        ("[1, 2]", "src"),
        ('{"generators": ["a.b"]}', "generators[0]"),
    ],
)
def test_parse_errors_locate(text, where):
    with pytest.raises(ParseError) as info:
        io.parse_spec(text, "src")
    assert where in str(info.value)


def test_non_utf8():
    with pytest.raises(ParseError, match="UTF-8"):
        io.parse_spec(b"\xff\xfe", "src")


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        io.load_spec(tmp_path / "nope.json")


@pytest.mark.parametrize("name", ["lexicographic", "termin44", "chinese3", "braid-b3"])
def test_spec_round_trip(name):
    phi = catalog.build(name).phi
    _, again = io.parse_spec(io.dump_spec(phi))
    assert again == phi
    assert again.alphabet.neutral == phi.alphabet.neutral


def test_report_round_trip():
    report = {"a": [1, 2], "b": {"c": None, "d": True}, "é": "x"}
    text = io.emit_json(report)
    assert text.endswith("}\n")
    assert io.parse_report(text) == report
    with pytest.raises(ParseError):
        io.parse_report("[]")


def test_render_text():
    text = io.render_text({"x": True, "y": None, "z": [], "w": {"k": [1, 2]}})
    assert text == "x: yes\ny: -\nz: (none)\nw:\n  k: 1, 2\n"


# ---------------------------------------------------------------------------
# command line


def test_check_lexicographic(tmp_path):
    code, out, _ = cli("check", write(tmp_path, LEX_SPEC), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["exit_code"] == 0
    assert rep["command"] == "check"
    assert rep["result"]["axioms_43"] and rep["result"]["domino"]
    assert rep["result"]["neutral"] == "c"


def test_class_command():
    code, out, _ = cli("class", "--catalog", "lexicographic", "--json")
    rep = json.loads(out)["result"]
    assert code == 0
    assert (rep["minimal_class"]["left"], rep["minimal_class"]["right"]) == (3, 3)
    code, out, _ = cli("class", "--catalog", "high3", "--p", "4", "--p", "5", "--json")
    rep = json.loads(out)["result"]
    assert rep["p_class"]["5"]["left"] == 2


def test_normalize_plain_output():
    code, out, _ = cli("normalize", "--catalog", "lexicographic", "--word", "c.b.a.c.b.a")
    assert (code, out) == (0, "a.a.b.b.c.c\n")


def test_normalize_failure_has_witness():
    code, out, _ = cli("normalize", "--catalog", "locnotquad", "--word", "a.b.a", "--strategy", "exhaustive", "--json")
    rep = json.loads(out)
    assert code == 1 and rep["exit_code"] == 1
    assert rep["result"]["witness"]


def test_rewrite_with_graph_file(tmp_path):
    out_file = tmp_path / "g.tsv"
    code, out, _ = cli("rewrite", "--catalog", "termin44", "--word", "a.b.c.d", "--graph", str(out_file), "--trace", "--json")
    rep = json.loads(out)["result"]
    assert code == 0
    assert rep["graph"]["cycle"] == ["a.b.c.d", "a.b'.c.d", "a.b'.c'.d", "a.b.c.d"]
    lines = out_file.read_text().splitlines()
    assert "a.b.c.d\t1\ta.b'.c.d" in lines
    assert rep["leftmost_trace"][0] == "a.b.c.d"


def test_termination_command():
    code, out, _ = cli("termination", "--catalog", "termin44", "--json")
    rep = json.loads(out)["result"]
    assert code == 0 and rep["verdict"] == "non-terminating"
    code, _, _ = cli("termination", "--catalog", "termin44", "--expect-terminating")
    assert code == 1
    code, out, _ = cli("termination", "--catalog", "lexicographic", "--expect-terminating", "--json")
    assert code == 0 and json.loads(out)["result"]["verdict"] == "terminating"


def test_garside_command():
    code, out, _ = cli("garside", "--catalog", "braid-b3", "--triangular", "--json")
    rep = json.loads(out)["result"]
    assert code == 0
    assert rep["verdict"]["garside_derived"] and rep["triangular"]["count"] == 6
    code, out, _ = cli("garside", "--catalog", "lexicographic", "--triangular", "--json")
    assert code == 1 and "refused" in json.loads(out)["result"]["triangular"]


def test_garside_from_fragment_file(tmp_path):
    frag = catalog._load_json("braid_b3.json")
    code, out, _ = cli("garside", "--fragment", write(tmp_path, frag, "f.json"), "--json")
    assert code == 0 and json.loads(out)["result"]["verdict"]["sides_agree"]


def test_properties_command(tmp_path):
    code, out, _ = cli("properties", "--catalog", "braid-b3", "--json")
    assert code == 0 and json.loads(out)["result"]["failed"] == 0
    # idempotency fails: a|b -> b|a -> a|b
    bad = {"generators": ["a", "b"], "phi": [{"in": ["a", "b"], "out": ["b", "a"]}, {"in": ["b", "a"], "out": ["a", "b"]}]}
    code, out, _ = cli("properties", write(tmp_path, bad), "--json")
    rep = json.loads(out)["result"]
    assert code == 1
    assert rep["first_failure"]["name"] == "idempotent_phi" and rep["first_failure"]["witness"] == "a.b"


def test_catalog_list():
    code, out, _ = cli("catalog", "list", "--json")
    names = [e["name"] for e in json.loads(out)["result"]["entries"]]
    assert code == 0 and names == catalog.names()


@pytest.mark.parametrize(
    "argv",
    [
        ["check"],
        ["check", "--catalog", "nope"],
        ["check", "--catalog", "high3", "--param", "n=99"],
        ["check", "--catalog", "high3", "--param", "broken"],
        ["normalize", "--catalog", "lexicographic", "--word", "a.q"],
        ["frobnicate"],
        ["class", "missing.json"],
    ],
)
def test_input_errors_exit_2(argv):
    code, out, err = cli(*argv)
    assert code == 2


def test_error_report_is_json():
    code, out, _ = cli("check", "--catalog", "nope", "--json")
    rep = json.loads(out)
    assert code == 2 and rep["exit_code"] == 2 and "nope" in rep["error"]


def test_plain_text_output():
    code, out, _ = cli("check", "--catalog", "lexicographic")
    assert code == 0 and "axioms_43: yes" in out


def test_module_entry_point_is_deterministic(tmp_path):
    spec = write(tmp_path, LEX_SPEC)
    cmd = [sys.executable, "-m", "qnorm.cli", "class", spec, "--p", "4", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["exit_code"] == 0
