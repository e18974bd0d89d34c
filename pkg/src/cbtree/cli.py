"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 internal disagreement (an oracle
mismatch, a failed certificate check, or a reduction that does not agree).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import cbengine, certificates, combinators, oracle, reductions
from .seqcore import Lasso
from .treeauto import (
    ALEPH0,
    CONTINUUM,
    EMPTY,
    TreeAutomaton,
    body_cardinality,
    is_wellfounded,
)


class InputError(Exception):
    pass


# file formats


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: cannot read file ({e.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: invalid JSON ({e.msg})") from None


def _natural(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def automaton_from_json(obj: Any, where: str = "<input>") -> TreeAutomaton:
    """Parse and validate ``{"states": [...], "root": id, "edges": [...]}``."""
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object")
    for key in ("states", "root", "edges"):
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")
    states, root, edges = obj["states"], obj["root"], obj["edges"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise InputError(f"{where}: states: expected a list of string ids")
    if len(set(states)) != len(states):
        raise InputError(f"{where}: states: duplicate id")
    if not isinstance(edges, list):
        raise InputError(f"{where}: edges: expected a list")
    if root is None:
        if states or edges:
            raise InputError(f"{where}: root: null root needs empty states and edges")
        return TreeAutomaton.empty()
    if root not in states:
        raise InputError(f"{where}: root: {root!r} is not a declared state")
    known = set(states)
    delta: dict[str, dict[int, str]] = {s: {} for s in states}
    for i, e in enumerate(edges):
        if not isinstance(e, dict):
            raise InputError(f"{where}: edges[{i}]: expected an object")
        for key in ("from", "label", "to"):
            if key not in e:
                raise InputError(f"{where}: edges[{i}]: missing field {key!r}")
        src, label, dst = e["from"], e["label"], e["to"]
        for key, val in (("from", src), ("to", dst)):
            if val not in known:
                raise InputError(f"{where}: edges[{i}].{key}: unknown state {val!r}")
        if not _natural(label):
            raise InputError(f"{where}: edges[{i}].label: expected a natural number")
        if label in delta[src]:
            raise InputError(f"{where}: edges[{i}]: state {src!r} already has an edge labelled {label}")
        delta[src][label] = dst
    T = TreeAutomaton(root, delta)
    unreachable = [s for s in states if s not in set(T.states)]
    if unreachable:
        raise InputError(f"{where}: states: unreachable from root: {', '.join(unreachable)}")
    return T


def automaton_to_json(T: TreeAutomaton) -> dict:
    if T.is_empty():
        return {"states": [], "root": None, "edges": []}
    if not all(isinstance(s, str) for s in T.states):
        T = T.relabel()
    return {
        "states": list(T.states),
        "root": T.root,
        "edges": [{"from": s, "label": a, "to": t} for s, a, t in T.edges()],
    }


def load_automaton(path: str) -> TreeAutomaton:
    return automaton_from_json(_read_json(path), path)


def load_lassos(path: str) -> list[Lasso]:
    obj = _read_json(path)
    items = obj if isinstance(obj, list) else [obj]
    out = []
    for i, item in enumerate(items):
        try:
            if not (isinstance(item, dict) and all(_natural(x) for x in item["prefix"] + item["cycle"])):
                raise ValueError
            out.append(Lasso.from_json(item))
        except (KeyError, TypeError, ValueError):
            raise InputError(f"{path}: [{i}]: expected {{'prefix': [...], 'cycle': [...]}} with a nonempty cycle") from None
    return out


def _dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def _compact(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _entries_json(entries) -> list[dict]:
    return [{"flag": f, "point": p.to_json()} for f, p in entries]


# subcommands


def cmd_analyze(args, out) -> int:
    T = load_automaton(args.file)
    card = body_cardinality(T)
    wf = is_wellfounded(T)
    kernel = cbengine.perfect_kernel(T)
    rank = cbengine.cb_rank(T)
    sc = cbengine.scattered_count(T)
    code = 0
    if args.check:
        code = 0 if _oracle_agrees(T, card, wf) else 2
    if args.json:
        out(_dumps({
            "cardinality": str(card),
            "wellfounded": wf,
            "kernel_states": len(kernel),
            "rank": rank,
            "sccount": sc,
            **({"oracle_agrees": code == 0} if args.check else {}),
        }))
    else:
        out(f"cardinality={card} wf={_bool(wf)} rank={rank} sccount={sc}")
        if args.check:
            out(f"oracle_agrees={_bool(code == 0)}")
    return code


def _oracle_agrees(T: TreeAutomaton, card, wf: bool) -> bool:
    """Cross-check cardinality and well-foundedness against depth-bounded counts."""
    H = max(len(T), 1)
    w = T.max_label() + 2
    if wf != (oracle.count_paths_capped(T, H, w, 1) == 0):
        return False
    if card == EMPTY:
        return oracle.count_paths_capped(T, H, w, 1) == 0
    if card.kind == "finite":
        return oracle.count_paths_capped(T, H * H + H, w, card.n + 1) == card.n
    a = oracle.count_paths_capped(T, H, w, 10**6)
    b = oracle.count_paths_capped(T, 3 * H, w, 10**6)
    if card == ALEPH0:
        return isinstance(a, int) and isinstance(b, int) and b > a
    return card == CONTINUUM


def cmd_derive(args, out) -> int:
    T = load_automaton(args.file)
    for _ in range(args.steps):
        T = cbengine.derivative(T)
    out(_dumps(automaton_to_json(T)))
    return 0


def cmd_kernel(args, out) -> int:
    out(_dumps(automaton_to_json(cbengine.perfect_kernel(load_automaton(args.file)))))
    return 0


def cmd_scatter(args, out) -> int:
    T = load_automaton(args.file)
    sc = cbengine.scattered_count(T)
    entries = cbengine.scattered_list(T, args.limit)
    if args.json:
        out(_dumps({"sccount": sc, "entries": _entries_json(entries)}))
    else:
        out(f"sccount={sc}")
        for f, p in entries:
            out(f"{f} {p}")
    return 0


def cmd_list(args, out) -> int:
    T = load_automaton(args.file)
    n, entries = cbengine.list_countable(T, args.limit)
    if args.json:
        out(_dumps({"n": n, "entries": _entries_json(entries)}))
    else:
        out(f"n={n}")
        for f, p in entries:
            out(f"{f} {p}")
    return 0


def cmd_dedup(args, out) -> int:
    obj = _read_json(args.file)
    try:
        n = obj["n"]
        entries = [(int(e["flag"]), Lasso.from_json(e["point"])) for e in obj["entries"]]
        if not _natural(n):
            raise ValueError
    except (KeyError, TypeError, ValueError):
        raise InputError(f"{args.file}: expected {{'n': natural, 'entries': [{{'flag', 'point'}}, ...]}}") from None
    points = list(cbengine.dedup_list(n, entries))
    if args.json:
        out(_dumps({"n": n, "entries": _entries_json((1, p) for p in points)}))
    else:
        out(f"n={n}")
        for p in points:
            out(f"1 {p}")
    return 0


TRANSFORMS = {
    "explode": (1, lambda ts: combinators.explode(ts[0])),
    "tauc": (1, lambda ts: combinators.translate_tree_to_binary(ts[0])),
    "taub": (1, lambda ts: combinators.translate_tree_to_baire(ts[0])),
    "union2const": (1, lambda ts: combinators.binary_disjoint_union_const(ts[0])),
    "interleave": (2, lambda ts: combinators.interleave_trees(ts[0], ts[1])),
    "union": (None, combinators.disjoint_union),
    "union2": (None, combinators.binary_disjoint_union),
}


def cmd_transform(args, out) -> int:
    arity, fn = TRANSFORMS[args.op]
    if arity is not None and len(args.files) != arity:
        raise InputError(f"transform {args.op} takes {arity} file(s), got {len(args.files)}")
    if not args.files:
        raise InputError(f"transform {args.op} needs at least one file")
    ts = [load_automaton(f) for f in args.files]
    out(_dumps(automaton_to_json(fn(ts).relabel())))
    return 0


def cmd_certify(args, out) -> int:
    T = load_automaton(args.file)
    if args.glob:
        cert = certificates.global_cert(T, args.limit, args.budget)
    else:
        cert = certificates.one_step_cert(T, args.limit, args.budget)
    out(_dumps(cert.to_json(args.limit)))
    return 0


def cmd_verify(args, out) -> int:
    T = load_automaton(args.file)
    obj = _read_json(args.cert)
    try:
        if isinstance(obj, dict) and obj.get("kind") == "global":
            cert = certificates.GlobalCert.from_json(obj)
        else:
            cert = certificates.OneStepCert.from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{args.cert}: malformed certificate ({e})") from None
    violations = certificates.verify_cert(T, cert, args.depth)
    if args.json:
        out(_dumps({"ok": not violations, "violations": [
            {"clause": v.clause, "level": v.level, "detail": v.detail} for v in violations
        ]}))
    else:
        out("ok" if not violations else f"violations={len(violations)}")
        for v in violations:
            out(str(v))
    return 0 if not violations else 2


def cmd_reduce(args, out) -> int:
    name = args.name
    if name == "r6":
        ps = [p for f in args.inputs for p in load_lassos(f)]
        report = reductions.r6_lpo_list(ps)
    else:
        ts = [load_automaton(f) for f in args.inputs]
        single = {"r1": reductions.r1_ptt_binary, "r3": reductions.r3_wf_encodings,
                  "r5": reductions.r5_wfs_pk, "r7": reductions.r7_wf_wsclist}
        if name in single or name == "r2":
            if len(ts) != 1:
                raise InputError(f"reduce {name} takes exactly one automaton")
        if name == "r2":
            report = reductions.r2_ucbaire_pst(ts[0], args.digits)
        elif name in single:
            report = single[name](ts[0])
        elif name == "r4":
            report = reductions.r4_wfstar_sccount(ts)
        else:
            report = reductions.r8_pk_slices(ts)
    if args.json:
        out(_dumps(report.to_json()))
    elif name == "r4":
        bits = "".join(str(b) for b in report.decoded_answer)
        out(f"k={report.notes['k']} bits={bits} agrees={_bool(report.agrees)}")
    else:
        data = report.to_json()
        out(f"decoded={_compact(data['decoded'])} truth={_compact(data['truth'])} agrees={_bool(report.agrees)}")
    return 0 if report.agrees else 2


def cmd_oracle(args, out) -> int:
    T = load_automaton(args.file)
    if args.query == "prefixes":
        rows = oracle.extendible_prefixes(T, args.depth, args.width)
        if args.json:
            out(_dumps([list(s) for s in rows]))
        else:
            for s in rows:
                out(_compact(list(s)))
    elif args.query == "isolated":
        rows = oracle.isolated_at_depth(T, args.depth, args.width)
        if args.json:
            out(_dumps([{"sigma": list(s), "point": p if isinstance(p, str) else p.to_json()} for s, p in rows]))
        else:
            for s, p in rows:
                out(f"{_compact(list(s))} {p}")
    else:
        n = oracle.count_paths_capped(T, args.depth, args.width, args.cap)
        out(_dumps({"count": n}) if args.json else str(n))
    return 0


def cmd_dot(args, out) -> int:
    T = load_automaton(args.file)
    lines = ["digraph tree {"]
    if not T.is_empty():
        names = {s: str(s) for s in T.states}
        lines.append(f"  {_compact(names[T.root])} [shape=doublecircle];")
        for s in T.states:
            if s != T.root:
                lines.append(f"  {_compact(names[s])};")
        for s, a, t in T.edges():
            lines.append(f"  {_compact(names[s])} -> {_compact(names[t])} [label=\"{a}\"];")
    lines.append("}")
    out("\n".join(lines))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = _Parser(prog="cbtree", description="Cantor-Bendixson analysis of regular trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="cardinality, well-foundedness, rank, scattered count")
    a.add_argument("file")
    a.add_argument("--check", action="store_true", help="cross-check against the brute-force oracle")
    a.set_defaults(fn=cmd_analyze)

    a = sub.add_parser("derive", parents=[common], help="iterate the derivative")
    a.add_argument("file")
    a.add_argument("--steps", type=int, default=1)
    a.set_defaults(fn=cmd_derive)

    a = sub.add_parser("kernel", parents=[common], help="perfect kernel")
    a.add_argument("file")
    a.set_defaults(fn=cmd_kernel)

    for name, fn, hlp in (("scatter", cmd_scatter, "flagged scattered points"),
                          ("list", cmd_list, "flagged listing of a countable body")):
        a = sub.add_parser(name, parents=[common], help=hlp)
        a.add_argument("file")
        a.add_argument("--limit", type=int, default=10)
        a.set_defaults(fn=fn)

    a = sub.add_parser("dedup", parents=[common], help="remove repeated points from a listing")
    a.add_argument("file")
    a.set_defaults(fn=cmd_dedup)

    a = sub.add_parser("transform", parents=[common], help="tree constructors")
    a.add_argument("op", choices=sorted(TRANSFORMS))
    a.add_argument("files", nargs="*")
    a.set_defaults(fn=cmd_transform)

    a = sub.add_parser("certify", parents=[common], help="one-step or global certificate")
    a.add_argument("file")
    a.add_argument("--global", dest="glob", action="store_true")
    a.add_argument("--limit", type=int, default=10, help="entries listed per level")
    a.add_argument("--budget", type=int, default=None, help="labels explored (default: largest label + 2)")
    a.set_defaults(fn=cmd_certify)

    a = sub.add_parser("verify", parents=[common], help="check a certificate")
    a.add_argument("file")
    a.add_argument("cert")
    a.add_argument("--depth", type=int, default=8)
    a.set_defaults(fn=cmd_verify)

    a = sub.add_parser("reduce", parents=[common], help="run a reduction end to end")
    a.add_argument("name", choices=[f"r{i}" for i in range(1, 9)])
    a.add_argument("inputs", nargs="+")
    a.add_argument("--digits", type=int, default=10, help="digits decoded by r2")
    a.set_defaults(fn=cmd_reduce)

    a = sub.add_parser("oracle", parents=[common], help="brute-force queries")
    a.add_argument("query", choices=["prefixes", "isolated", "count"])
    a.add_argument("file")
    a.add_argument("--depth", type=int, default=6)
    a.add_argument("--width", type=int, default=2)
    a.add_argument("--cap", type=int, default=1000)
    a.set_defaults(fn=cmd_oracle)

    a = sub.add_parser("dot", parents=[common], help="Graphviz description")
    a.add_argument("file")
    a.set_defaults(fn=cmd_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    def out(text: str) -> None:
        sys.stdout.write(text + "\n")

    try:
        args = build_parser().parse_args(argv)
        for key in ("limit", "steps", "depth", "width", "cap", "digits"):
            if getattr(args, key, 0) is not None and getattr(args, key, 0) < 0:
                raise InputError(f"--{key} must be non-negative")
        return args.fn(args, out)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
