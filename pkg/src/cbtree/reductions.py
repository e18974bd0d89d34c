"""Executable reduction witnesses.

Each reduction pairs a forward instance transformation with a decoder that
reads the answer off a solution of the target problem. A report records what
was built, what the decoder produced, and the answer computed directly from
the input, so every run is checked end to end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .cbengine import derivative, perfect_kernel, scattered_count
from .combinators import (
    binary_disjoint_union_const,
    constant_path,
    disjoint_union,
    explode,
    translate_tree_to_baire,
    translate_tree_to_binary,
)
from .seqcore import FinSeq, Lasso, ZERO_OMEGA
from .treeauto import (
    CONTINUUM,
    State,
    TreeAutomaton,
    accepts_lasso,
    body_cardinality,
    determinize,
    enumerate_paths,
    finite,
    intersect,
    is_subtree,
    is_wellfounded,
    live_states,
    tree_equal,
)


@dataclass
class ReductionReport:
    name: str
    instance_summary: str
    forward_artifacts: dict[str, TreeAutomaton]
    decoded_answer: Any
    ground_truth: Any
    bounds: dict[str, int] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.decoded_answer == self.ground_truth

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance_summary,
            "artifacts": {k: len(v) for k, v in self.forward_artifacts.items()},
            "decoded": _jsonable(self.decoded_answer),
            "truth": _jsonable(self.ground_truth),
            "agrees": self.agrees,
            "bounds": dict(self.bounds),
            "notes": {k: _jsonable(v) for k, v in self.notes.items()},
        }


def _jsonable(x: Any) -> Any:
    if isinstance(x, Lasso):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _summary(T: TreeAutomaton) -> str:
    return f"{len(T)} states, body {body_cardinality(T)}"


# translations between Baire and Cantor space


def r1_ptt_binary(T: TreeAutomaton) -> ReductionReport:
    """Perfect subtree of a tree on ℕ via the binary translation and back."""
    if body_cardinality(T) != CONTINUUM:
        raise ValueError("r1 needs a tree with uncountable body")
    forward = translate_tree_to_binary(T)
    solution = perfect_kernel(forward)
    back = translate_tree_to_baire(solution)
    perfect = not back.is_empty() and tree_equal(derivative(back), back)
    inside = is_subtree(back, T)
    return ReductionReport(
        name="r1",
        instance_summary=_summary(T),
        forward_artifacts={"forward": forward, "solution": solution, "backward": back},
        decoded_answer={"perfect": perfect, "subtree": inside},
        ground_truth={"perfect": True, "subtree": True},
        notes={"backward_is_kernel": tree_equal(back, perfect_kernel(T))},
    )


# unique path from a perfect subset


def r2_forward(T: TreeAutomaton) -> TreeAutomaton:
    return translate_tree_to_binary(explode(T))


def r2_decode(P: TreeAutomaton, m: int, bound: int) -> tuple[list[int], int | None]:
    """Read ``m`` digits of the unique path from a perfect subtree ``P`` of the forward image.

    Digit ``i`` is the ``n <= bound`` such that, from every node of the current
    frontier, the only extendible binary words of length ``n + 1`` are
    ``0^n 1``. The frontier then moves past ``0^n 1`` and one encoded bit
    (``1`` or ``01``). Frontier nodes are tracked by their states in ``P``.
    Returns the digits found and the index of the first failed digit, if any.
    """
    live = live_states(P)
    frontier: set[State] = {P.root} if not P.is_empty() else set()
    digits: list[int] = []

    def only_block(s: State, n: int) -> bool:
        target = (0,) * n + (1,)
        stack: list[tuple[State, FinSeq]] = [(s, ())]
        while stack:
            q, word = stack.pop()
            if len(word) == n + 1:
                if word != target:
                    return False
                continue
            for a in (0, 1):
                t = P.step(q, a)
                if t is not None and t in live:
                    stack.append((t, word + (a,)))
        return True

    for i in range(m):
        found = None
        for n in range(bound + 1):
            if all(only_block(s, n) for s in frontier):
                found = n
                break
        if found is None:
            return digits, i
        digits.append(found)
        block = (0,) * found + (1,)
        nxt = set()
        for s in frontier:
            for xi in ((1,), (0, 1)):
                t = P.run(block + xi, s)
                if t is not None:
                    nxt.add(t)
        frontier = nxt
    return digits, None


def r2_bound(P: TreeAutomaton, T: TreeAutomaton) -> int:
    return len(P) * (T.max_label() + 2)


def adversarial_solutions(S: TreeAutomaton, count: int, rng: random.Random, size: int = 4) -> list[TreeAutomaton]:
    """Perfect subtrees of ``S`` other than its kernel: kernels of products with random binary automata."""
    base = perfect_kernel(S)
    out: list[TreeAutomaton] = []
    if base.is_empty():
        return out
    attempts = 0
    while len(out) < count and attempts < 1000 * count:
        attempts += 1
        delta = {}
        for q in range(size):
            row = {a: rng.randrange(size) for a in (0, 1) if rng.random() < 0.8}
            delta[q] = row
        cand = perfect_kernel(intersect(base, TreeAutomaton(0, delta)))
        if not cand.is_empty():
            out.append(cand)
    return out


def r2_ucbaire_pst(
    T: TreeAutomaton, m: int, solution: TreeAutomaton | None = None
) -> ReductionReport:
    """Recover the unique path of ``T`` from a perfect subset of the forward image."""
    if body_cardinality(T) != finite(1):
        raise ValueError("r2 needs a tree with exactly one path")
    S = r2_forward(T)
    P = perfect_kernel(S) if solution is None else solution
    bound = r2_bound(P, T)
    digits, failed = r2_decode(P, m, bound)
    truth = list(enumerate_paths(T, 1)[0].take(m))
    notes = {} if failed is None else {"failed_digit": failed}
    return ReductionReport(
        name="r2",
        instance_summary=_summary(T),
        forward_artifacts={"forward": S, "solution": P},
        decoded_answer=digits,
        ground_truth=truth,
        bounds={"search": bound},
        notes=notes,
    )


# well-foundedness encodings


def wf_union_encoding(T: TreeAutomaton) -> TreeAutomaton:
    """``{0^n} ⊔ T``: exactly one path iff ``T`` is well-founded."""
    return disjoint_union([constant_path(0), T])


def r3_wf_encodings(T: TreeAutomaton) -> ReductionReport:
    ex = explode(T)
    enc = wf_union_encoding(T)
    wf = is_wellfounded(T)
    return ReductionReport(
        name="r3",
        instance_summary=_summary(T),
        forward_artifacts={"explode": ex, "union": enc},
        decoded_answer={
            "explode_countable": body_cardinality(ex).countable,
            "union_unique_path": body_cardinality(enc) == finite(1),
        },
        ground_truth={"explode_countable": wf, "union_unique_path": wf},
    )


def prefixed_explosion(T: TreeAutomaton, m: int) -> TreeAutomaton:
    """``{j^n τ : j < 2^m, n ∈ ℕ, τ ∈ explode(T)}``."""
    E = explode(T)
    loops = [("loop", j) for j in range(2**m)]

    def step(q):
        if q[0] == "loop":
            j = q[1]
            out = [(j, q)]
            if not E.is_empty():
                out.append((j, ("e", E.root)))
            return out
        return [(a, ("e", t)) for a, t in E.delta(q[1]).items()]

    start = loops + ([] if E.is_empty() else [("e", E.root)])
    return determinize(start, step)


def r4_encode(ts: Sequence[TreeAutomaton]) -> TreeAutomaton:
    return disjoint_union([prefixed_explosion(T, m) for m, T in enumerate(ts)])


def r4_wfstar_sccount(ts: Sequence[TreeAutomaton]) -> ReductionReport:
    """Well-foundedness of each tree, read off the binary digits of one scattered count."""
    if not ts:
        raise ValueError("r4 needs at least one tree")
    if len(ts) > 6:
        raise ValueError("r4 takes at most six trees")
    S = r4_encode(ts)
    k = scattered_count(S)
    bits = [((k - 1) >> m) & 1 if k > 0 else None for m in range(len(ts))]
    truth = [int(is_wellfounded(T)) for T in ts]
    return ReductionReport(
        name="r4",
        instance_summary=f"{len(ts)} trees",
        forward_artifacts={"union": S},
        decoded_answer=bits,
        ground_truth=truth,
        notes={"k": k},
    )


def r5_forward(T: TreeAutomaton) -> TreeAutomaton:
    return translate_tree_to_binary(explode(T))


def r5_wfs_pk(T: TreeAutomaton) -> ReductionReport:
    """Well-foundedness from emptiness of a perfect kernel."""
    S = r5_forward(T)
    K = perfect_kernel(S)
    return ReductionReport(
        name="r5",
        instance_summary=_summary(T),
        forward_artifacts={"forward": S, "kernel": K},
        decoded_answer=K.is_empty(),
        ground_truth=is_wellfounded(T),
    )


def r7_forward(T: TreeAutomaton) -> TreeAutomaton:
    return binary_disjoint_union_const(translate_tree_to_binary(explode(T)))


def r7_wf_wsclist(T: TreeAutomaton) -> ReductionReport:
    """Well-foundedness from whether ``0^ω`` is a scattered point."""
    S = r7_forward(T)
    K = perfect_kernel(S)
    scattered_zero = accepts_lasso(S, ZERO_OMEGA) and not accepts_lasso(K, ZERO_OMEGA)
    return ReductionReport(
        name="r7",
        instance_summary=_summary(T),
        forward_artifacts={"forward": S, "kernel": K},
        decoded_answer=scattered_zero,
        ground_truth=is_wellfounded(T),
    )


def r8_pk_slices(ts: Sequence[TreeAutomaton]) -> ReductionReport:
    """Kernel of a disjoint union, sliced back into per-tree kernels."""
    if not ts:
        raise ValueError("r8 needs at least one tree")
    P = perfect_kernel(disjoint_union(list(ts)))
    decoded = []
    for i, T in enumerate(ts):
        sl = P.subtree((i,)) if P.member((i,)) else TreeAutomaton.empty()
        decoded.append(tree_equal(sl, perfect_kernel(T)))
    return ReductionReport(
        name="r8",
        instance_summary=f"{len(ts)} trees",
        forward_artifacts={"kernel": P},
        decoded_answer=decoded,
        ground_truth=[True] * len(ts),
    )


# finitely many instances of LPO against listings of a finite set


def lpo(p: Lasso) -> int:
    """1 iff ``p`` is the all-zero word."""
    return int(p == ZERO_OMEGA)


def listing_from_lpo(answers: Sequence[int]) -> list[tuple[int, int]]:
    """``(b_i, x_i)``: flag ``i`` when its LPO answer is 1, padded past ``n``."""
    n = len(answers)
    return [(1 if answers[i] == 1 else 0, i) for i in range(n)] + [(0, 0)]


def lpo_from_listing(ps: Sequence[Lasso], listing: Sequence[tuple[int, int]]) -> list[int | None]:
    """Decide each LPO instance by racing a nonzero digit against a listing entry.

    A nonzero digit of a lasso shows up within its first ``|prefix| + |cycle|``
    digits, so the race is bounded.
    """
    out: list[int | None] = []
    for j, p in enumerate(ps):
        horizon = max(len(p.prefix) + len(p.cycle), len(listing))
        ans = None
        for i in range(horizon):
            if p.digit(i) != 0:
                ans = 0
                break
            if i < len(listing) and listing[i] == (1, j):
                ans = 1
                break
        out.append(ans)
    return out


def r6_lpo_list(ps: Sequence[Lasso]) -> ReductionReport:
    if len(ps) > 8:
        raise ValueError("r6 takes at most eight instances")
    members = [j for j, p in enumerate(ps) if p == ZERO_OMEGA]
    truth = [lpo(p) for p in ps]
    # Listing of the set, as a solution of the listing problem would give it.
    given = [(1, j) for j in members] + [(0, 0)] * (len(ps) - len(members) + 1)
    decoded = lpo_from_listing(ps, given)
    built = listing_from_lpo(truth)
    listed = sorted(x for b, x in built if b == 1)
    return ReductionReport(
        name="r6",
        instance_summary=f"{len(ps)} lassos",
        forward_artifacts={},
        decoded_answer={"lpo": decoded, "set": listed},
        ground_truth={"lpo": truth, "set": members},
    )


# instance generators


def lasso_tree(p: Lasso) -> TreeAutomaton:
    """Tree whose only path is ``p``."""
    u, v = p.prefix, p.cycle
    n = len(u) + len(v)
    word = u + v
    delta = {i: {word[i]: i + 1 if i + 1 < n else len(u)} for i in range(n)}
    return TreeAutomaton(0, delta)


def random_ub_tree(rng: random.Random, max_digit: int = 3, dead: int = 3) -> TreeAutomaton:
    """Random tree with exactly one path: a lasso plus finite dead branches."""
    u = tuple(rng.randint(0, max_digit) for _ in range(rng.randint(0, 3)))
    v = tuple(rng.randint(0, max_digit) for _ in range(rng.randint(1, 3)))
    base = lasso_tree(Lasso(u, v))
    delta = {s: dict(base.delta(s)) for s in base.states}
    states = list(base.states)
    for k in range(dead):
        src = rng.choice(states)
        label = rng.randint(0, max_digit + 1)
        if label in delta[src]:
            continue
        name = f"d{k}"
        delta[src][label] = name
        delta[name] = {}
        states.append(name)
    return TreeAutomaton(0, delta)
