"""CLI invocations with their exact expected output."""

from pathlib import Path

DATA = Path(__file__).parent / "data"


def d(name):
    return DATA / name


GOLDEN = [
    (("analyze", d("comb.json")), "cardinality=ℵ₀ wf=false rank=2 sccount=0\n"),
    (("analyze", d("empty.json")), "cardinality=∅ wf=true rank=0 sccount=1\n"),
    (("analyze", d("mixed.json")), "cardinality=2^ℵ₀ wf=false rank=1 sccount=0\n"),
    (("reduce", "r4", d("wf.json"), d("zpath.json")), "k=2 bits=10 agrees=true\n"),
    (("reduce", "r2", d("zpath3.json"), "--digits", "6"), "decoded=[0,1,2,0,1,2] truth=[0,1,2,0,1,2] agrees=true\n"),
    (("scatter", d("two.json"), "--limit", "3"), "sccount=3\n1 (0)^ω\n1 (1)^ω\n0 (0)^ω\n"),
    (("list", d("comb.json"), "--limit", "3"), "n=0\n1 (0)^ω\n1 (1)^ω\n1 0·(1)^ω\n"),
    (("oracle", "count", d("comb.json"), "--depth", "6", "--width", "3", "--cap", "100"), "7\n"),
    (("oracle", "prefixes", d("comb.json"), "--depth", "2", "--width", "3"), "[0,0]\n[0,1]\n[1,1]\n"),
    (("oracle", "isolated", d("zpath.json"), "--depth", "4", "--width", "2"), "[] (0)^ω\n"),
    (
        ("dot", d("two.json")),
        'digraph tree {\n  "r" [shape=doublecircle];\n  "a";\n  "b";\n'
        '  "r" -> "a" [label="0"];\n  "r" -> "b" [label="1"];\n'
        '  "a" -> "a" [label="0"];\n  "b" -> "b" [label="1"];\n}\n',
    ),
]

# Further invocations whose output must be byte-identical from run to run.
REPEATED = [g[0] for g in GOLDEN] + [
    ("kernel", d("mixed.json")),
    ("derive", d("comb.json"), "--steps", "1"),
    ("transform", "union2", d("zpath.json"), d("full2.json")),
    ("transform", "explode", d("zpath3.json")),
    ("transform", "tauc", d("comb.json")),
    ("certify", d("comb.json"), "--limit", "6"),
    ("certify", "--global", d("comb.json"), "--limit", "4"),
    ("scatter", "--json", d("mixed.json"), "--limit", "5"),
    ("reduce", "--json", "r8", d("full2.json"), d("comb.json"), d("mixed.json")),
    ("reduce", "r6", d("lassos.json")),
    ("oracle", "isolated", d("comb.json"), "--depth", "5", "--width", "3"),
    ("analyze", "--json", "--check", d("two.json")),
]
