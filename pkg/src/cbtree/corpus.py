"""Standard small automata used by the tests and the CLI examples."""

from __future__ import annotations

import random

from .combinators import binary_disjoint_union, chain, constant_path, explode, full_binary
from .treeauto import TreeAutomaton


def _edges(root, *triples) -> TreeAutomaton:
    return TreeAutomaton.from_edges(root, triples)


EMPTY_TREE = TreeAutomaton("r", {"r": {}})
CHAIN = chain([0, 1])
ZPATH = constant_path(0)
ZPATH3 = _edges("a", ("a", 0, "b"), ("b", 1, "c"), ("c", 2, "a"))
# One path 1^ω plus one 0^a 1^ω for every a: infinitely many points, rank 2.
COMB = _edges("r", ("r", 0, "r"), ("r", 1, "o"), ("o", 1, "o"))
DOUBLE_COMB = _edges("r", ("r", 0, "r"), ("r", 1, "c"), ("c", 0, "c"), ("c", 1, "o"), ("o", 1, "o"))
FULL2 = full_binary()
TWO = _edges("r", ("r", 0, "a"), ("a", 0, "a"), ("r", 1, "b"), ("b", 1, "b"))
THREE = _edges("r", ("r", 0, "a"), ("a", 0, "a"), ("r", 1, "b"), ("b", 1, "b"), ("r", 2, "c"), ("c", 2, "c"))
# A perfect part, a countable spine feeding into it, and one isolated point.
MIXED = _edges("r", ("r", 0, "r"), ("r", 1, "f"), ("f", 0, "f"), ("f", 1, "f"), ("r", 2, "z"), ("z", 0, "z"))
U2_ZF = binary_disjoint_union([ZPATH, FULL2])
ZPATH3_DEAD = _edges("a", ("a", 0, "b"), ("b", 1, "c"), ("c", 2, "a"), ("a", 5, "d"), ("d", 0, "e"))
SPARSE = _edges("r", ("r", 1, "r"), ("r", 0, "o"), ("o", 1, "r"))
FULL2_DEAD = _edges("r", ("r", 0, "r"), ("r", 1, "r"), ("r", 3, "d"))
EXPLODED_ZPATH3 = explode(ZPATH3)
# Countable but with infinitely many isolated points below a continuum part.
KERNEL_COMB = _edges("r", ("r", 0, "f"), ("f", 0, "f"), ("f", 1, "f"), ("r", 1, "c"), ("c", 0, "c"), ("c", 1, "o"), ("o", 1, "o"))

CORPUS: dict[str, TreeAutomaton] = {
    "empty": EMPTY_TREE,
    "chain": CHAIN,
    "zpath": ZPATH,
    "zpath3": ZPATH3,
    "comb": COMB,
    "double_comb": DOUBLE_COMB,
    "full2": FULL2,
    "two": TWO,
    "three": THREE,
    "mixed": MIXED,
    "u2_zf": U2_ZF,
    "zpath3_dead": ZPATH3_DEAD,
    "sparse": SPARSE,
    "full2_dead": FULL2_DEAD,
    "exploded_zpath3": EXPLODED_ZPATH3,
    "kernel_comb": KERNEL_COMB,
}


def binary_corpus() -> dict[str, TreeAutomaton]:
    return {k: T for k, T in CORPUS.items() if T.is_binary()}


def random_automaton(rng: random.Random, max_states: int = 5, max_label: int = 1, density: float = 0.6) -> TreeAutomaton:
    """Random deterministic automaton, trimmed to the part reachable from state 0."""
    n = rng.randint(1, max_states)
    delta = {
        s: {a: rng.randrange(n) for a in range(max_label + 1) if rng.random() < density}
        for s in range(n)
    }
    return TreeAutomaton(0, delta)


def random_corpus(seed: int, count: int, **kw) -> list[TreeAutomaton]:
    rng = random.Random(seed)
    return [random_automaton(rng, **kw) for _ in range(count)]
