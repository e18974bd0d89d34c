"""Deterministic automata whose accepted finite words form a tree.

Every state accepts, so the language of an automaton is prefix-closed and its
infinite runs are the paths of the tree. A tree is well-founded exactly when
no cycle is reachable, and the number of paths is read off the strongly
connected components.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .seqcore import FinSeq, Lasso, code, is_primitive, pair

State = Hashable


class TreeAutomaton:
    """Trimmed deterministic automaton; all states are accepting.

    ``delta`` maps a state to ``{label: target}``. States unreachable from
    ``root`` are dropped. ``root=None`` gives the empty automaton, which accepts
    nothing and stands for the pruned form of a well-founded tree.
    """

    __slots__ = ("_root", "_delta", "_states")

    def __init__(self, root: State | None, delta: Mapping[State, Mapping[int, State]]):
        self._root = root
        self._delta: dict[State, dict[int, State]] = {}
        order: list[State] = []
        if root is not None:
            seen = {root}
            queue = deque([root])
            while queue:
                s = queue.popleft()
                order.append(s)
                row = delta.get(s, {})
                out: dict[int, State] = {}
                for a in sorted(row):
                    if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                        raise ValueError(f"label {a!r} is not a natural number")
                    t = row[a]
                    out[a] = t
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
                self._delta[s] = out
        self._states = tuple(order)

    # construction helpers

    @classmethod
    def empty(cls) -> "TreeAutomaton":
        return cls(None, {})

    @classmethod
    def from_edges(cls, root: State, edges: Iterable[tuple[State, int, State]]) -> "TreeAutomaton":
        delta: dict[State, dict[int, State]] = {}
        for src, a, dst in edges:
            row = delta.setdefault(src, {})
            if a in row and row[a] != dst:
                raise ValueError(f"nondeterministic edge: state {src!r} label {a}")
            row[a] = dst
        return cls(root, delta)

    @classmethod
    def build(
        cls, root: State | None, succ: Callable[[State], Iterable[tuple[int, State]]]
    ) -> "TreeAutomaton":
        """Explore ``succ`` breadth-first from ``root``."""
        if root is None:
            return cls.empty()
        delta: dict[State, dict[int, State]] = {}
        queue = deque([root])
        while queue:
            s = queue.popleft()
            if s in delta:
                continue
            row = dict(succ(s))
            delta[s] = row
            queue.extend(t for t in row.values() if t not in delta)
        return cls(root, delta)

    # accessors

    @property
    def root(self) -> State | None:
        return self._root

    @property
    def states(self) -> tuple[State, ...]:
        """States in breadth-first order from the root, labels ascending."""
        return self._states

    def __len__(self) -> int:
        return len(self._states)

    def is_empty(self) -> bool:
        return self._root is None

    def delta(self, s: State) -> Mapping[int, State]:
        return self._delta[s]

    def step(self, s: State | None, a: int) -> State | None:
        if s is None:
            return None
        return self._delta[s].get(a)

    def run(self, seq: Sequence[int], start: State | None = None) -> State | None:
        """State reached on ``seq`` (from the root by default), or None."""
        s = self._root if start is None else start
        for a in seq:
            if s is None:
                return None
            s = self._delta[s].get(a)
        return s

    def member(self, seq: Sequence[int]) -> bool:
        return self.run(seq) is not None

    __contains__ = member

    def edges(self) -> Iterator[tuple[State, int, State]]:
        for s in self._states:
            for a, t in self._delta[s].items():
                yield s, a, t

    def labels(self) -> set[int]:
        return {a for _, a, _ in self.edges()}

    def max_label(self) -> int:
        """Largest label on any edge, -1 if there are none."""
        return max(self.labels(), default=-1)

    def is_binary(self) -> bool:
        return self.labels() <= {0, 1}

    def subtree(self, seq: Sequence[int]) -> "TreeAutomaton":
        """The tree of extensions of ``seq``."""
        s = self.run(seq)
        if s is None:
            raise ValueError(f"{tuple(seq)} is not in tree")
        return TreeAutomaton(s, self._delta)

    def restrict(self, keep: Iterable[State]) -> "TreeAutomaton":
        """Sub-automaton on ``keep``; empty when the root is dropped."""
        keep = set(keep)
        if self._root not in keep:
            return TreeAutomaton.empty()
        delta = {
            s: {a: t for a, t in row.items() if t in keep}
            for s, row in self._delta.items()
            if s in keep
        }
        return TreeAutomaton(self._root, delta)

    def relabel(self, prefix: str = "q") -> "TreeAutomaton":
        """Copy with states renamed ``q0, q1, ...`` in breadth-first order."""
        if self.is_empty():
            return self
        name = {s: f"{prefix}{i}" for i, s in enumerate(self._states)}
        delta = {name[s]: {a: name[t] for a, t in row.items()} for s, row in self._delta.items()}
        return TreeAutomaton(name[self._root], delta)

    def __repr__(self) -> str:
        return f"TreeAutomaton(states={len(self)}, edges={sum(1 for _ in self.edges())})"


# graph structure


def sccs(T: TreeAutomaton) -> list[list[State]]:
    """Strongly connected components, sinks first (Tarjan, iterative)."""
    index: dict[State, int] = {}
    low: dict[State, int] = {}
    on_stack: set[State] = set()
    stack: list[State] = []
    out: list[list[State]] = []
    counter = 0
    for start in T.states:
        if start in index:
            continue
        work = [(start, iter(T.delta(start).values()))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(T.delta(w).values())))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def is_cyclic_component(T: TreeAutomaton, comp: Sequence[State]) -> bool:
    if len(comp) > 1:
        return True
    s = comp[0]
    return s in T.delta(s).values()


@dataclass(frozen=True)
class Cardinality:
    """Size of a set of paths: empty, finite with ``n >= 1`` points, countably infinite, or continuum."""

    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("empty", "finite", "aleph0", "continuum"):
            raise ValueError(f"unknown cardinality kind {self.kind!r}")
        if self.kind == "finite" and self.n < 1:
            raise ValueError("finite cardinality needs n >= 1")

    def _key(self) -> tuple[int, int]:
        return {"empty": 0, "finite": 1, "aleph0": 2, "continuum": 3}[self.kind], self.n

    def __lt__(self, other: "Cardinality") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "Cardinality") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "Cardinality") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "Cardinality") -> bool:
        return self._key() >= other._key()

    def __add__(self, other: "Cardinality") -> "Cardinality":
        if CONTINUUM in (self, other):
            return CONTINUUM
        if ALEPH0 in (self, other):
            return ALEPH0
        return finite(self.n + other.n)

    def times(self, k: int) -> "Cardinality":
        """Cardinality of ``k`` disjoint copies."""
        if k == 0 or self.kind in ("empty", "aleph0", "continuum"):
            return EMPTY if k == 0 else self
        return finite(self.n * k)

    def times_omega(self) -> "Cardinality":
        """Cardinality of countably many disjoint copies."""
        if self.kind in ("empty", "continuum"):
            return self
        return ALEPH0

    @property
    def countable(self) -> bool:
        return self.kind != "continuum"

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.n)
        return {"empty": "∅", "aleph0": "ℵ₀", "continuum": "2^ℵ₀"}[self.kind]


EMPTY = Cardinality("empty")
ALEPH0 = Cardinality("aleph0")
CONTINUUM = Cardinality("continuum")


def finite(n: int) -> Cardinality:
    """``Finite(n)``, or ``EMPTY`` when ``n == 0``."""
    return EMPTY if n == 0 else Cardinality("finite", n)


def card_sum(cards: Iterable[Cardinality]) -> Cardinality:
    total = EMPTY
    for c in cards:
        total = total + c
    return total


def state_classes(T: TreeAutomaton) -> dict[State, Cardinality]:
    """Cardinality of the set of infinite runs from each state.

    Components are solved sinks first. A component with more internal edges
    than states contains a state on two cycles, so it carries a perfect set.
    A simple cycle contributes one path plus countably many if it has a live
    exit. A non-cyclic state sums its successors.
    """
    cls: dict[State, Cardinality] = {}
    for comp in sccs(T):
        members = set(comp)
        internal = 0
        exits: list[Cardinality] = []
        for s in comp:
            for t in T.delta(s).values():
                if t in members:
                    internal += 1
                else:
                    exits.append(cls[t])
        if not is_cyclic_component(T, comp):
            c = card_sum(exits)
        elif internal > len(comp) or CONTINUUM in exits:
            c = CONTINUUM
        elif any(e != EMPTY for e in exits):
            c = ALEPH0
        else:
            c = finite(1)
        for s in comp:
            cls[s] = c
    return cls


def live_states(T: TreeAutomaton) -> set[State]:
    """States with at least one infinite run."""
    return {s for s, c in state_classes(T).items() if c != EMPTY}


def prune(T: TreeAutomaton) -> TreeAutomaton:
    """Largest pruned subtree: keep the words that extend to a path."""
    return T.restrict(live_states(T))


def is_wellfounded(T: TreeAutomaton) -> bool:
    return prune(T).is_empty()


def body_cardinality(T: TreeAutomaton) -> Cardinality:
    if T.is_empty():
        return EMPTY
    return state_classes(T)[T.root]


# languages


def tree_equal(A: TreeAutomaton, B: TreeAutomaton) -> bool:
    """Language equality by walking the product of the two automata."""
    return _compare(A, B, lambda x, y: x == y)


def is_subtree(A: TreeAutomaton, B: TreeAutomaton) -> bool:
    """Language inclusion ``L(A) ⊆ L(B)``."""
    return _compare(A, B, lambda x, y: x <= y)


def _compare(A: TreeAutomaton, B: TreeAutomaton, ok: Callable[[set, set], bool]) -> bool:
    # The empty automaton accepts nothing, not even the empty word.
    if A.is_empty() or B.is_empty():
        return ok(set() if A.is_empty() else {()}, set() if B.is_empty() else {()})
    seen = {(A.root, B.root)}
    queue = deque(seen)
    while queue:
        a, b = queue.popleft()
        da, db = A.delta(a), B.delta(b)
        if not ok(set(da), set(db)):
            return False
        for label in da.keys() & db.keys():
            nxt = (da[label], db[label])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def intersect(A: TreeAutomaton, B: TreeAutomaton) -> TreeAutomaton:
    """Product automaton for ``L(A) ∩ L(B)``."""
    if A.is_empty() or B.is_empty():
        return TreeAutomaton.empty()

    def succ(st):
        a, b = st
        db = B.delta(b)
        return [(x, (t, db[x])) for x, t in A.delta(a).items() if x in db]

    return TreeAutomaton.build((A.root, B.root), succ)


def determinize(
    start: Iterable[Hashable], step: Callable[[Hashable], Iterable[tuple[int, Hashable]]]
) -> TreeAutomaton:
    """Subset construction for a prefix-closed language given by a nondeterministic ``step``."""
    root = frozenset(start)
    if not root:
        return TreeAutomaton.empty()

    def succ(subset):
        out: dict[int, set] = {}
        for q in subset:
            for a, r in step(q):
                out.setdefault(a, set()).add(r)
        return [(a, frozenset(rs)) for a, rs in sorted(out.items())]

    return TreeAutomaton.build(root, succ)


# paths


def accepts_lasso(T: TreeAutomaton, p: Lasso, start: State | None = None) -> bool:
    """Whether the infinite word ``p`` is a path (from ``start``, default the root)."""
    if T.is_empty():
        return False
    s = T.run(p.prefix, start)
    seen: set[State] = set()
    while s is not None and s not in seen:
        seen.add(s)
        s = T.run(p.cycle, s)
    return s is not None


def _periodic_words(P: TreeAutomaton, s: State) -> list[FinSeq]:
    """Primitive ``v`` with ``v^ω`` a path from ``s``, sorted by code.

    The tail of any path cycles through a simple cycle, so its primitive period
    is at most the number of states.
    """
    bound = len(P)
    found: set[FinSeq] = set()
    stack: list[tuple[State, FinSeq]] = [(s, ())]
    while stack:
        q, word = stack.pop()
        if word and is_primitive(word) and accepts_lasso(P, Lasso((), word), s):
            found.add(word)
        if len(word) < bound:
            for a, t in P.delta(q).items():
                stack.append((t, word + (a,)))
    return sorted(found, key=code)


def iter_paths(T: TreeAutomaton) -> Iterator[Lasso]:
    """All paths of a tree with countable body, ordered by (code of prefix, code of cycle).

    Each path is produced once, at the node equal to the prefix of its normal
    form. Nodes are visited in code order, which a heap gives because a child's
    code always exceeds its parent's.
    """
    P = prune(T)
    if P.is_empty():
        return
    card = state_classes(P)[P.root]
    if card == CONTINUUM:
        raise ValueError("body is uncountable; paths cannot be enumerated")
    total = card.n if card.kind == "finite" else None
    cache: dict[State, list[FinSeq]] = {}
    emitted = 0
    heap: list[tuple[int, FinSeq, int]] = [(0, (), 0)]
    where: list[State] = [P.root]
    while heap:
        c, seq, idx = heapq.heappop(heap)
        s = where[idx]
        if s not in cache:
            cache[s] = _periodic_words(P, s)
        for v in cache[s]:
            if seq and seq[-1] == v[-1]:
                continue
            yield Lasso(seq, v)
            emitted += 1
            if total is not None and emitted == total:
                return
        for a, t in P.delta(s).items():
            where.append(t)
            heapq.heappush(heap, (pair(c, a) + 1, seq + (a,), len(where) - 1))


def enumerate_paths(T: TreeAutomaton, k: int) -> list[Lasso]:
    """First ``k`` paths in canonical order (all of them if fewer)."""
    out: list[Lasso] = []
    if k <= 0:
        if body_cardinality(T) == CONTINUUM:
            raise ValueError("body is uncountable; paths cannot be enumerated")
        return out
    for p in iter_paths(T):
        out.append(p)
        if len(out) == k:
            break
    return out
