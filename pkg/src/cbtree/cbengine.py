"""Cantor-Bendixson analysis of regular trees.

After pruning, whether a node has at least two paths above it depends only on
its state, so the derivative, the perfect kernel and the scattered part are
all computed state by state.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator

from .seqcore import FinSeq, Lasso, ZERO_OMEGA, pair
from .treeauto import (
    ALEPH0,
    CONTINUUM,
    EMPTY,
    Cardinality,
    State,
    TreeAutomaton,
    finite,
    is_cyclic_component,
    iter_paths,
    prune,
    sccs,
    state_classes,
    tree_equal,
)

Entry = tuple[int, Lasso]


def derivative(T: TreeAutomaton) -> TreeAutomaton:
    """Remove the isolated paths: keep states with at least two paths, then prune."""
    cls = state_classes(T)
    return prune(T.restrict(s for s, c in cls.items() if c >= finite(2)))


def perfect_kernel(T: TreeAutomaton) -> TreeAutomaton:
    """Keep the states with continuum many paths; the result is already pruned."""
    cls = state_classes(T)
    return prune(T.restrict(s for s, c in cls.items() if c == CONTINUUM))


def derivative_chain(T: TreeAutomaton) -> list[TreeAutomaton]:
    """``[T', T'', ...]`` up to and including the first repeated tree."""
    chain = []
    current = prune(T)
    while True:
        nxt = derivative(current)
        chain.append(nxt)
        if tree_equal(nxt, current):
            return chain
        current = nxt


def cb_rank(T: TreeAutomaton) -> int:
    """Least ``r`` with the ``r``-th derivative a fixed point."""
    rank = 0
    current = prune(T)
    while True:
        nxt = derivative(current)
        if tree_equal(nxt, current):
            return rank
        current = nxt
        rank += 1


def _split(T: TreeAutomaton) -> tuple[TreeAutomaton, dict[State, Cardinality]]:
    P = prune(T)
    return P, state_classes(P)


def scattered_cardinality(T: TreeAutomaton) -> Cardinality:
    """Size of ``[T]`` minus its perfect kernel.

    Each edge from a continuum state into a countable state starts a region of
    scattered points. The region is reached by as many nodes as there are walks
    from the root to the edge's source inside the continuum part; a cycle on
    such a walk makes that number infinite.
    """
    P, cls = _split(T)
    if P.is_empty():
        return EMPTY
    if cls[P.root] != CONTINUUM:
        return cls[P.root]
    core = P.restrict(s for s, c in cls.items() if c == CONTINUUM)
    # Number of walks root -> s inside the continuum part, None meaning infinite.
    walks: dict[State, int | None] = {s: 0 for s in core.states}
    walks[core.root] = 1
    for comp in reversed(sccs(core)):  # sources first
        if is_cyclic_component(core, comp):
            for s in comp:
                walks[s] = None
        for s in comp:
            for t in core.delta(s).values():
                if t in comp:
                    continue
                if walks[s] is None:
                    walks[t] = None
                elif walks[t] is not None:
                    walks[t] += walks[s]
    total = EMPTY
    for s in core.states:
        for t in P.delta(s).values():
            c = cls[t]
            if c == CONTINUUM:
                continue
            if walks[s] is None:
                total = total + c.times_omega()
            else:
                total = total + c.times(walks[s])
    return total


def scattered_count(T: TreeAutomaton) -> int:
    """0 when the scattered part is infinite, otherwise its size plus one."""
    c = scattered_cardinality(T)
    if c == ALEPH0:
        return 0
    return c.n + 1


def scattered_regions(T: TreeAutomaton) -> Iterator[tuple[FinSeq, TreeAutomaton]]:
    """Minimal nodes whose subtree has a nonempty countable body, in code order."""
    P, cls = _split(T)
    if P.is_empty():
        return
    if cls[P.root] != CONTINUUM:
        yield (), P
        return
    remaining = scattered_region_count(T)
    heap: list[tuple[int, FinSeq, int]] = [(0, (), 0)]
    where = [P.root]
    while heap and remaining != 0:
        c, seq, idx = heapq.heappop(heap)
        s = where[idx]
        if cls[s] != CONTINUUM:
            yield seq, P.subtree(seq)
            if remaining is not None:
                remaining -= 1
            continue
        for a, t in P.delta(s).items():
            where.append(t)
            heapq.heappush(heap, (pair(c, a) + 1, seq + (a,), len(where) - 1))


def scattered_region_count(T: TreeAutomaton) -> int | None:
    """Number of minimal countable nodes below the kernel, None if infinite."""
    P, cls = _split(T)
    if P.is_empty():
        return 0
    if cls[P.root] != CONTINUUM:
        return 1
    # Reuse the walk counting with every region counted as one point.
    leaf = object()
    delta = {s: {a: (t if cls[t] == CONTINUUM else leaf) for a, t in P.delta(s).items()} for s in P.states}
    delta[leaf] = {0: leaf}
    marker = TreeAutomaton(P.root, delta)
    c = scattered_cardinality(marker)
    return None if c == ALEPH0 else c.n


@dataclass
class ScatteredStream:
    """Flagged stream of scattered points, padded with ``(0, 0^ω)`` once exhausted.

    ``total`` is the number of flagged points, None when infinite.
    """

    total: int | None
    _source: Iterator[Lasso] = field(repr=False)

    def __iter__(self) -> Iterator[Entry]:
        for p in self._source:
            yield 1, p
        while True:
            yield 0, ZERO_OMEGA

    def take(self, k: int) -> list[Entry]:
        return list(islice(iter(self), k))


def _dovetail(regions: Iterable[tuple[FinSeq, TreeAutomaton]]) -> Iterator[Lasso]:
    """Round-robin over the path streams of the regions, one new region per round."""
    region_iter = iter(regions)
    active: list[tuple[FinSeq, Iterator[Lasso]]] = []
    more = True
    while more or active:
        if more:
            nxt = next(region_iter, None)
            if nxt is None:
                more = False
            else:
                active.append((nxt[0], iter_paths(nxt[1])))
        still = []
        for seq, it in active:
            p = next(it, None)
            if p is not None:
                yield p.prepend(seq)
                still.append((seq, it))
        active = still


def scattered_stream(T: TreeAutomaton) -> ScatteredStream:
    c = scattered_cardinality(T)
    total = None if c == ALEPH0 else (0 if c == EMPTY else c.n)
    return ScatteredStream(total, _dovetail(scattered_regions(T)))


def scattered_list(T: TreeAutomaton, k: int) -> list[Entry]:
    """First ``k`` entries of the flagged scattered stream."""
    return scattered_stream(T).take(k)


@dataclass(frozen=True)
class CBReport:
    kernel: TreeAutomaton
    rank: int
    scattered_count: Cardinality
    sccount_code: int
    entries: tuple[Entry, ...]


def cb_full(T: TreeAutomaton, k: int) -> CBReport:
    c = scattered_cardinality(T)
    return CBReport(
        kernel=perfect_kernel(T),
        rank=cb_rank(T),
        scattered_count=c,
        sccount_code=0 if c == ALEPH0 else (c.n + 1),
        entries=tuple(scattered_list(T, k)),
    )


def list_countable(T: TreeAutomaton, k: int) -> tuple[int, list[Entry]]:
    """``(n, entries)`` with ``n = 0`` for infinitely many paths, else the count plus one."""
    P, cls = _split(T)
    c = EMPTY if P.is_empty() else cls[P.root]
    if c == CONTINUUM:
        raise ValueError("body is uncountable; it cannot be listed")
    tag = 0 if c == ALEPH0 else c.n + 1
    return tag, ScatteredStream(None if tag == 0 else tag - 1, iter_paths(P)).take(k)


def dedup_list(n: int, entries: Iterable[Entry]) -> Iterator[Lasso]:
    """Injective listing of the flagged points: ``n - 1`` of them when ``n > 0``."""
    seen: set[Lasso] = set()
    for flag, p in entries:
        if n > 0 and len(seen) == n - 1:
            return
        if flag == 1 and p not in seen:
            seen.add(p)
            yield p
