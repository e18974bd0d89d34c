import json
import re
from pathlib import Path

import pytest

from cbtree.cli import automaton_from_json, automaton_to_json, main
from cbtree.corpus import CORPUS
from cbtree.treeauto import tree_equal
from golden_cases import DATA, GOLDEN



def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def d(name):
    return DATA / name


@pytest.mark.parametrize("argv,expected", GOLDEN, ids=[" ".join(str(a) if not isinstance(a, Path) else a.name for a in g[0]) for g in GOLDEN])
def test_golden(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_kernel_and_derive_keep_state_names(capsys):
    code, out, _ = run(capsys, "kernel", d("mixed.json"))
    assert code == 0
    k = json.loads(out)
    assert k["states"] == ["r", "f"] and k["root"] == "r"
    code, out, _ = run(capsys, "derive", d("comb.json"), "--steps", "1")
    assert json.loads(out) == {"states": ["r"], "root": "r", "edges": [{"from": "r", "label": 0, "to": "r"}]}
    code, out, _ = run(capsys, "derive", d("comb.json"), "--steps", "2")
    assert json.loads(out) == {"states": [], "root": None, "edges": []}


def test_transform_outputs_load_back(capsys):
    for argv in (
        ("explode", d("zpath.json")),
        ("tauc", d("comb.json")),
        ("taub", d("full2.json")),
        ("union", d("zpath.json"), d("comb.json")),
        ("union2", d("zpath.json"), d("full2.json")),
        ("union2const", d("zpath.json")),
        ("interleave", d("zpath.json"), d("full2.json")),
    ):
        code, out, err = run(capsys, "transform", *argv)
        if argv[0] == "taub":
            assert code == 1 and "not representable" in err
            continue
        assert code == 0, err
        automaton_from_json(json.loads(out))


def test_transform_arity(capsys):
    code, _, err = run(capsys, "transform", "interleave", d("zpath.json"))
    assert code == 1 and "takes 2" in err


def test_certify_then_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", d("two.json"), "--limit", "5")
    assert code == 0 and json.loads(out)["complete"] is True
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    assert run(capsys, "verify", d("two.json"), cert, "--depth", "6")[:2] == (0, "ok\n")
    code, out, _ = run(capsys, "certify", d("comb.json"), "--global", "--limit", "4")
    g = json.loads(out)
    assert g["kind"] == "global" and g["order"] == [1, 0]


def test_verify_reports_violations(capsys, tmp_path):
    bad = {
        "kind": "one-step",
        "budget": 3,
        "complete": True,
        "entries": [
            {"sigma": [0], "flag": 1, "point": {"prefix": [0], "cycle": [1]}},
            {"sigma": [1], "flag": 1, "point": {"prefix": [], "cycle": [1]}},
            {"sigma": [2], "flag": 0, "point": {"prefix": [], "cycle": [0]}},
        ],
    }
    cert = tmp_path / "bad.json"
    cert.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "verify", d("two.json"), cert, "--depth", "6")
    assert code == 2
    assert out.splitlines()[0] == "violations=1"
    assert out.splitlines()[1].startswith("membership:")


def test_analyze_check_and_json(capsys):
    code, out, _ = run(capsys, "analyze", "--check", d("mixed.json"))
    assert code == 0 and out.endswith("oracle_agrees=true\n")
    code, out, _ = run(capsys, "analyze", "--json", d("comb.json"))
    assert json.loads(out) == {"cardinality": "ℵ₀", "wellfounded": False, "kernel_states": 0, "rank": 2, "sccount": 0}


def test_reduce_json_and_r6(capsys):
    code, out, _ = run(capsys, "reduce", "--json", "r6", d("lassos.json"))
    rep = json.loads(out)
    assert code == 0 and rep["agrees"] is True and rep["decoded"]["set"] == [0]
    code, _, err = run(capsys, "reduce", "r1", d("comb.json"))
    assert code == 1 and "uncountable" in err


def test_dedup(capsys, tmp_path):
    f = tmp_path / "list.json"
    z = {"prefix": [], "cycle": [0]}
    o = {"prefix": [], "cycle": [1]}
    f.write_text(json.dumps({"n": 3, "entries": [{"flag": 1, "point": o}, {"flag": 1, "point": o}, {"flag": 0, "point": z}, {"flag": 1, "point": z}]}))
    assert run(capsys, "dedup", f)[:2] == (0, "n=3\n1 (1)^ω\n1 (0)^ω\n")


@pytest.mark.parametrize(
    "payload,needle",
    [
        ('{"states": ["a"], "root": "a", "edges": [', "1:"),
        ('{"states": ["a"], "edges": []}', "missing field 'root'"),
        ('{"states": ["a"], "root": "b", "edges": []}', "root"),
        ('{"states": ["a"], "root": "a", "edges": [{"from": "a", "label": -1, "to": "a"}]}', "edges[0].label"),
        ('{"states": ["a"], "root": "a", "edges": [{"from": "a", "label": 0, "to": "z"}]}', "edges[0].to"),
        (
            '{"states": ["a", "b"], "root": "a", "edges": [{"from": "a", "label": 0, "to": "a"}, {"from": "a", "label": 0, "to": "b"}]}',
            "edges[1]",
        ),
        ('{"states": ["a", "b"], "root": "a", "edges": []}', "unreachable"),
        ('{"states": ["a", "a"], "root": "a", "edges": []}', "duplicate"),
        ('[1, 2]', "object"),
    ],
)
def test_malformed_inputs(capsys, tmp_path, payload, needle):
    f = tmp_path / "bad.json"
    f.write_text(payload)
    code, out, err = run(capsys, "analyze", f)
    assert code == 1 and out == ""
    assert needle in err and str(f) in err


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "scatter", d("comb.json"), "--limit", "-1")[0] == 1
    assert run(capsys, "list", d("full2.json"))[0] == 1


def test_dot_uses_file_identifiers(capsys):
    code, out, _ = run(capsys, "dot", d("mixed.json"))
    names = set(re.findall(r'"([^"]+)"', out)) - {str(i) for i in range(10)}
    assert names == set(json.loads(d("mixed.json").read_text())["states"])


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_json_round_trip(name):
    T = CORPUS[name]
    back = automaton_from_json(json.loads(json.dumps(automaton_to_json(T))))
    assert tree_equal(back, T)
