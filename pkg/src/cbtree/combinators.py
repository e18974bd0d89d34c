"""Tree constructors as automaton transformations.

All results are built by exploring product states from the root, so they are
trimmed and deterministic like their inputs.
"""

from __future__ import annotations

from .treeauto import State, TreeAutomaton

SINK = ("zero-sink",)


def full_binary() -> TreeAutomaton:
    return TreeAutomaton("r", {"r": {0: "r", 1: "r"}})


def constant_path(label: int = 0) -> TreeAutomaton:
    """Tree of the single path ``label^ω``."""
    return TreeAutomaton("r", {"r": {label: "r"}})


def chain(labels: list[int] | tuple[int, ...] = (0,)) -> TreeAutomaton:
    """Finite tree consisting of the prefixes of one word."""
    delta = {i: {a: i + 1} for i, a in enumerate(labels)}
    return TreeAutomaton(0, delta)


def disjoint_union(ts: list[TreeAutomaton]) -> TreeAutomaton:
    """``{⟨⟩} ∪ {⟨i⟩ τ : τ ∈ ts[i]}``."""
    if not ts:
        raise ValueError("disjoint_union needs at least one tree")

    def succ(st):
        if st == "u":
            return [(i, (i, T.root)) for i, T in enumerate(ts) if not T.is_empty()]
        i, s = st
        return [(a, (i, t)) for a, t in ts[i].delta(s).items()]

    return TreeAutomaton.build("u", succ)


def binary_disjoint_union(ts: list[TreeAutomaton]) -> TreeAutomaton:
    """``{0^i 1 τ : τ ∈ ts[i]}`` together with the whole spine ``0^n``."""
    k = len(ts)

    def succ(st):
        if st[0] == "z":
            i = st[1]
            out = [(0, ("z", min(i + 1, k)))]
            if i < k and not ts[i].is_empty():
                out.append((1, (i, ts[i].root)))
            return out
        i, s = st
        return [(a, (i, t)) for a, t in ts[i].delta(s).items()]

    return TreeAutomaton.build(("z", 0), succ)


def binary_disjoint_union_const(T: TreeAutomaton) -> TreeAutomaton:
    """``{0^i 1 τ : i ∈ ℕ, τ ∈ T}`` with the spine: a 0-loop feeding copies of ``T``."""

    def succ(st):
        if st == "z":
            return [(0, "z")] + ([] if T.is_empty() else [(1, ("t", T.root))])
        return [(a, ("t", t)) for a, t in T.delta(st[1]).items()]

    return TreeAutomaton.build("z", succ)


def interleave_trees(T: TreeAutomaton, S: TreeAutomaton) -> TreeAutomaton:
    """``{σ * τ : |σ| = |τ|, σ ∈ T, τ ∈ S}`` closed under prefixes.

    A state ``(t, s, 0)`` reads the next digit of the ``T`` side, allowed only
    when the ``S`` side can also move, so every odd-length word completes.
    """
    if T.is_empty() or S.is_empty():
        return TreeAutomaton.empty()

    def succ(st):
        t, s, parity = st
        if parity == 0:
            if not S.delta(s):
                return []
            return [(a, (t2, s, 1)) for a, t2 in T.delta(t).items()]
        return [(b, (t, s2, 0)) for b, s2 in S.delta(s).items()]

    return TreeAutomaton.build((T.root, S.root, 0), succ)


def explode(T: TreeAutomaton) -> TreeAutomaton:
    """Interleave ``T`` with the full binary tree."""
    return interleave_trees(T, full_binary())


def translate_tree_to_binary(S: TreeAutomaton) -> TreeAutomaton:
    """``{τ binary : tau_b_fin(τ) ∈ S}``.

    State ``(s, n)`` means the decoded word so far leads to ``s`` and ``n``
    zeros of the current block have been read. Once ``n`` passes the largest
    label leaving ``s`` no further one can be accepted, so the run moves to a
    sink that only reads zeros.
    """
    if S.is_empty():
        return TreeAutomaton.empty()
    top = {s: max(S.delta(s), default=-1) for s in S.states}

    def succ(st):
        if st == SINK:
            return [(0, SINK)]
        s, n = st
        out = [(0, (s, n + 1) if n + 1 <= top[s] else SINK)]
        t = S.delta(s).get(n)
        if t is not None:
            out.append((1, (t, 0)))
        return out

    return TreeAutomaton.build((S.root, 0), succ)


def zero_run_successors(T: TreeAutomaton, t: State) -> dict[int, State]:
    """Labels ``n`` with ``0^n 1`` readable from ``t``, mapped to the state reached.

    Raises ``ValueError`` when the set of such ``n`` is infinite, which happens
    when the zero-walk from ``t`` enters a cycle that has a one-edge.
    """
    out: dict[int, State] = {}
    seen: dict[State, int] = {}
    s, n = t, 0
    while s is not None and s not in seen:
        seen[s] = n
        one = T.delta(s).get(1)
        if one is not None:
            out[n] = one
        s = T.delta(s).get(0)
        n += 1
    if s is not None:
        start = seen[s]
        if any(T.delta(q).get(1) is not None for q, m in seen.items() if m >= start):
            raise ValueError("infinitely many labels below one node; not representable")
    return out


def translate_tree_to_baire(T: TreeAutomaton) -> TreeAutomaton:
    """``{σ : tau_c_fin(σ) ∈ T}`` for a binary tree ``T``.

    Each digit ``n`` is run over the block ``0^n 1``. Only defined when every
    node has finitely many such digits.
    """
    if T.is_empty():
        return TreeAutomaton.empty()
    if not T.is_binary():
        raise ValueError("translate_tree_to_baire needs a binary tree")
    return TreeAutomaton.build(T.root, lambda s: sorted(zero_run_successors(T, s).items()))
