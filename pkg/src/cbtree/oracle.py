"""Brute-force ground truth from membership queries alone.

A tree is given as a membership function together with a horizon ``H``: an
upper bound on the number of states of some automaton for it. By pumping, a
word extends to an infinite path exactly when it extends by ``H`` more
letters, so every depth-bounded question below is answered exactly. Apart from
evaluating membership, nothing in this module looks at automaton structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Union

from .seqcore import FinSeq, Lasso
from .treeauto import TreeAutomaton

Membership = Callable[[FinSeq], bool]
INCONCLUSIVE = "inconclusive"


def membership(T: TreeAutomaton) -> Membership:
    """Membership function of ``T``, run incrementally from the parent word."""

    @lru_cache(maxsize=None)
    def run(seq: FinSeq):
        if not seq:
            return T.root
        s = run(seq[:-1])
        return None if s is None else T.step(s, seq[-1])

    return lambda seq: run(tuple(seq)) is not None


@dataclass(frozen=True)
class Oracle:
    """Memoised membership function with its pumping horizon and label width."""

    member: Membership
    horizon: int
    width: int

    @classmethod
    def of(cls, T: Union[TreeAutomaton, Membership, "Oracle"], width: int, horizon: int | None = None) -> "Oracle":
        if isinstance(T, Oracle):
            return cls(T.member, T.horizon if horizon is None else horizon, width)
        if isinstance(T, TreeAutomaton):
            return cls(membership(T), max(len(T), 1), width)
        if horizon is None:
            raise ValueError("a bare membership function needs an explicit horizon")
        return cls(lru_cache(maxsize=None)(T), horizon, width)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_known", {})

    def _ext(self, seq: FinSeq, more: int) -> bool:
        # Extendibility is monotone in ``more``, so one record per word serves
        # every depth: the longest extension found and the shortest ruled out.
        known = self._known.get(seq)
        if known is None:
            if not self.member(seq):
                self._known[seq] = (-1, 0)
                return False
            known = (0, None)
        good, bad = known
        if more <= good:
            return True
        if bad is not None and more >= bad:
            return False
        ok = False
        for a in range(self.width):
            if self._ext(seq + (a,), more - 1):
                ok = True
                break
        if ok:
            self._known[seq] = (more, bad)
        else:
            self._known[seq] = (good, more)
        return ok

    def extendible(self, seq: Sequence[int]) -> bool:
        """Whether ``seq`` lies on an infinite path with labels below the width."""
        return self._ext(tuple(seq), self.horizon)

    def branching(self, seq: Sequence[int]) -> bool:
        """Whether at least two paths pass through ``seq``.

        Follow the forced continuation looking for a node with two extendible
        children. After ``H + 1`` forced steps a state has repeated, so from
        then on the continuation stays forced and the path is unique.
        """
        cur = tuple(seq)
        if not self.extendible(cur):
            return False
        for _ in range(self.horizon + 1):
            kids = [a for a in range(self.width) if self.extendible(cur + (a,))]
            if len(kids) >= 2:
                return True
            cur += (kids[0],)
        return False

    def derived(self) -> "Oracle":
        """Oracle for the tree of the set with its isolated points removed.

        A word is kept when it and all its prefixes carry at least two paths.
        Whether a node does depends only on its state, so a sub-automaton of
        the original recognises the kept words and the horizon carries over;
        extendibility in the new oracle then prunes the dead ends.
        """
        base = self

        @lru_cache(maxsize=None)
        def member(seq: FinSeq) -> bool:
            seq = tuple(seq)
            if seq and not member(seq[:-1]):
                return False
            return base.extendible(seq) and base.branching(seq)

        return Oracle(member, self.horizon, self.width)


def extendible_prefixes(
    T: TreeAutomaton | Membership | Oracle, d: int, w: int, horizon: int | None = None
) -> list[FinSeq]:
    """All ``σ`` of length ``d`` with labels ``< w`` that extend to an infinite path."""
    o = Oracle.of(T, w, horizon)
    level: list[FinSeq] = [()] if o.extendible(()) else []
    for _ in range(d):
        level = [s + (a,) for s in level for a in range(w) if o.extendible(s + (a,))]
    return level


def count_paths_capped(
    T: TreeAutomaton | Membership | Oracle, d: int, w: int, cap: int, horizon: int | None = None
) -> int | str:
    """Number of extendible prefixes at depth ``d``, or ``"≥cap"`` once it reaches ``cap``."""
    o = Oracle.of(T, w, horizon)
    level: list[FinSeq] = [()] if o.extendible(()) else []
    for _ in range(d):
        nxt: list[FinSeq] = []
        for s in level:
            nxt.extend(s + (a,) for a in range(w) if o.extendible(s + (a,)))
            if len(nxt) >= cap:
                return f"≥{cap}"
        level = nxt
    return len(level) if len(level) < cap else f"≥{cap}"


def fold_lasso(word: Sequence[int], bound: int) -> tuple[int, int] | None:
    """Smallest ``(i, p)`` with ``i + p <= bound`` such that ``word[i:]`` has period ``p``.

    With ``len(word) >= 3 * bound`` a match is the true eventual period of any
    word known to have one within the bound.
    """
    n = len(word)
    for total in range(1, bound + 1):
        for i in range(total):
            p = total - i
            if all(word[j] == word[j + p] for j in range(i, n - p)):
                return i, p
    return None


def forced_word(o: Oracle, seq: FinSeq, length: int) -> FinSeq:
    """The unique continuation of an isolated node, ``length`` letters long."""
    out: list[int] = []
    cur = seq
    for _ in range(length):
        nxt = [a for a in range(o.width) if o.extendible(cur + (a,))]
        if len(nxt) != 1:
            raise AssertionError(f"node {cur} is not isolated")
        out.append(nxt[0])
        cur += (nxt[0],)
    return tuple(out)


def isolated_at_depth(
    T: TreeAutomaton | Membership | Oracle, d: int, w: int, horizon: int | None = None
) -> list[tuple[FinSeq, Lasso | str]]:
    """Minimal ``σ`` of length ``<= d`` with exactly one path through it, with that path.

    The path is returned as a lasso when its forced continuation folds within
    the horizon, otherwise as ``"inconclusive"``.
    """
    o = Oracle.of(T, w, horizon)
    H = o.horizon
    out: list[tuple[FinSeq, Lasso | str]] = []
    level: list[FinSeq] = [()] if o.extendible(()) else []
    for depth in range(d + 1):
        survivors = []
        for s in level:
            if o.branching(s):
                survivors.append(s)
                continue
            tail = forced_word(o, s, 3 * H)
            fold = fold_lasso(tail, H)
            if fold is None:
                out.append((s, INCONCLUSIVE))
            else:
                i, p = fold
                out.append((s, Lasso(s + tail[:i], tail[i : i + p])))
        if depth == d:
            break
        level = [s + (a,) for s in survivors for a in range(w) if o.extendible(s + (a,))]
    return out


def derived_stages(
    T: TreeAutomaton | Membership | Oracle, w: int, horizon: int | None = None
) -> list[Oracle]:
    """Oracles for ``T, T', T'', ...`` up to the first stage without isolated points.

    A set recognised with at most ``H`` states has an isolated point iff it has
    an isolated node of length below ``H`` (every state is reached by such a
    word), so that check is exact and the last oracle describes the perfect
    kernel.
    """
    o = Oracle.of(T, w, horizon)
    stages = [o]
    while isolated_at_depth(o, o.horizon - 1, w):
        o = o.derived()
        stages.append(o)
    return stages


def isolated_closure(
    T: TreeAutomaton | Membership | Oracle, d: int, w: int, horizon: int | None = None
) -> list[tuple[int, FinSeq, Lasso | str]]:
    """Points isolated at some stage of repeated removal of isolated points.

    Returns ``(stage, σ, point)`` for the minimal isolating ``σ`` of length
    ``<= d``.
    """
    out: list[tuple[int, FinSeq, Lasso | str]] = []
    for stage, o in enumerate(derived_stages(T, w, horizon)[:-1]):
        out.extend((stage, s, p) for s, p in isolated_at_depth(o, d, w))
    return out
