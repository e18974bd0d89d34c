"""Certificates for single derivative steps and for the whole derivative chain.

A one-step certificate lists, in increasing code order, the minimal nodes
``σ`` above which the set has at most one point: with flag 1 and that point,
or with flag 0 and the placeholder ``0^ω`` when nothing lies above ``σ``.
Removing the flagged points leaves the derivative.

Labels are explored below a label budget, by default the largest label plus
two. Words using a larger label are never in the tree, so they are left out
rather than listed as infinitely many dead entries.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .cbengine import derivative
from .oracle import Oracle
from .seqcore import FinSeq, Lasso, ZERO_OMEGA, code, is_prefix, pair
from .treeauto import (
    CONTINUUM,
    EMPTY,
    State,
    TreeAutomaton,
    finite,
    iter_paths,
    prune,
    state_classes,
    tree_equal,
)


@dataclass(frozen=True)
class CertEntry:
    sigma: FinSeq
    flag: int
    point: Lasso

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "flag": self.flag, "point": self.point.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "CertEntry":
        flag = obj["flag"]
        if flag not in (0, 1):
            raise ValueError(f"flag must be 0 or 1, got {flag!r}")
        return cls(tuple(obj["sigma"]), flag, Lasso.from_json(obj["point"]))


@dataclass(frozen=True)
class Backing:
    """Symbolic description of a generated certificate: the automaton and its cut states.

    A node is listed exactly when its run first leaves the non-cut states.
    """

    automaton: TreeAutomaton
    cut: frozenset

    def residue(self) -> TreeAutomaton:
        return prune(self.automaton.restrict(s for s in self.automaton.states if s not in self.cut))

    def entry_end(self, sigma: Sequence[int]) -> bool:
        """Whether ``sigma`` is a minimal node whose run leaves the non-cut states."""
        T = self.automaton
        s = T.root
        for a in sigma:
            if s is None or s in self.cut:
                return False
            s = T.step(s, a)
        return s is None or s in self.cut


class OneStepCert:
    """Stream of certificate entries, materialised on demand.

    ``complete`` means the stream is known to be finite and fully listed.
    Generated certificates also carry their :class:`Backing`.
    """

    def __init__(
        self,
        entries: Iterable[CertEntry],
        *,
        budget: int,
        backing: Backing | None = None,
        complete: bool = False,
    ):
        self._source: Iterator[CertEntry] = iter(entries)
        self._seen: list[CertEntry] = []
        self._done = False
        self.budget = budget
        self.backing = backing
        self.complete = complete

    def _pull(self) -> bool:
        if self._done:
            return False
        nxt = next(self._source, None)
        if nxt is None:
            self._done = True
            if self.backing is not None:
                self.complete = True
            return False
        self._seen.append(nxt)
        return True

    def take(self, k: int) -> list[CertEntry]:
        while len(self._seen) < k and self._pull():
            pass
        return self._seen[:k]

    def entries_through(self, bound: int) -> list[CertEntry]:
        """All entries with ``code(sigma) <= bound``."""
        while (not self._seen or code(self._seen[-1].sigma) <= bound) and self._pull():
            pass
        return [e for e in self._seen if code(e.sigma) <= bound]

    def first_isolated(self, limit: int = 100_000) -> CertEntry | None:
        """First flag-1 entry, searching at most ``limit`` entries."""
        i = 0
        while i < limit:
            if i >= len(self._seen) and not self._pull():
                return None
            if self._seen[i].flag == 1:
                return self._seen[i]
            i += 1
        return None

    @property
    def materialised(self) -> list[CertEntry]:
        return list(self._seen)

    def residue(self, A: TreeAutomaton) -> TreeAutomaton | None:
        """Tree of the points of ``A`` above no entry, None when undeterminable."""
        if self.backing is not None:
            return self.backing.residue()
        if not self.complete:
            return None
        return avoid(A, [e.sigma for e in self._seen])

    def to_json(self, k: int) -> dict:
        entries = self.take(k)
        self.take(k + 1)
        complete = self.complete and len(self._seen) <= k
        return {
            "kind": "one-step",
            "budget": self.budget,
            "complete": complete,
            "entries": [e.to_json() for e in entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OneStepCert":
        if obj.get("kind", "one-step") != "one-step":
            raise ValueError("not a one-step certificate")
        entries = [CertEntry.from_json(e) for e in obj["entries"]]
        cert = cls(entries, budget=int(obj["budget"]), complete=bool(obj.get("complete", False)))
        cert.take(len(entries))
        return cert


def avoid(A: TreeAutomaton, sigmas: Sequence[FinSeq]) -> TreeAutomaton:
    """Pruned tree of the paths of ``A`` extending none of ``sigmas``."""
    cuts = set(sigmas)
    inner = {s[:i] for s in cuts for i in range(len(s))}
    if A.is_empty() or () in cuts:
        return TreeAutomaton.empty()

    def succ(st):
        q, node = st
        out = []
        for a, t in A.delta(q).items():
            if node is None:
                out.append((a, (t, None)))
                continue
            nxt = node + (a,)
            if nxt in cuts:
                continue
            out.append((a, (t, nxt if nxt in inner else None)))
        return out

    return prune(TreeAutomaton.build((A.root, () if () in inner else None), succ))


def _default_budget(T: TreeAutomaton) -> int:
    return T.max_label() + 2


def _entries(T: TreeAutomaton, cls: dict, cut: frozenset, budget: int) -> Iterator[CertEntry]:
    """Minimal nodes with labels below ``budget`` that reach a cut state or leave ``T``."""

    def entry(seq: FinSeq, s: State | None) -> CertEntry:
        if s is None or cls[s] == EMPTY:
            return CertEntry(seq, 0, ZERO_OMEGA)
        return CertEntry(seq, 1, next(iter_paths(T.subtree(seq))).prepend(seq))

    if T.root in cut:
        yield entry((), T.root)
        return
    where: list[State | None] = [T.root]
    heap: list[tuple[int, FinSeq, int]] = [(0, (), 0)]
    while heap:
        c, seq, idx = heapq.heappop(heap)
        s = where[idx]
        if seq and (s is None or s in cut):
            yield entry(seq, s)
            continue
        for a in range(budget):
            where.append(T.step(s, a))
            heapq.heappush(heap, (pair(c, a) + 1, seq + (a,), len(where) - 1))


def one_step_cert(T: TreeAutomaton, k: int = 0, budget: int | None = None) -> OneStepCert:
    """Certificate for removing the isolated points of ``[T]``.

    Needs a countable nonempty body. The first ``k`` entries are materialised
    eagerly; the rest stream on demand.
    """
    cls = state_classes(T)
    card = EMPTY if T.is_empty() else cls[T.root]
    if card == EMPTY:
        raise ValueError("body is empty; nothing to certify")
    if card == CONTINUUM:
        raise ValueError("body is uncountable; no certificate of this kind")
    budget = _default_budget(T) if budget is None else budget
    if budget <= T.max_label():
        raise ValueError(f"label budget {budget} does not cover label {T.max_label()}")
    cut = frozenset(s for s, c in cls.items() if c <= finite(1))
    cert = OneStepCert(_entries(T, cls, cut, budget), budget=budget, backing=Backing(T, cut))
    cert.take(k)
    return cert


@dataclass
class GlobalCert:
    """One-step certificates for the derivative chain.

    ``levels`` is indexed so that first flag-1 witnesses increase in code;
    ``order`` lists level indices in the order the steps are applied.
    """

    levels: list[OneStepCert]
    order: list[int]
    witnesses: list[FinSeq] = field(default_factory=list)

    def to_json(self, k: int) -> dict:
        return {
            "kind": "global",
            "order": list(self.order),
            "levels": [lv.to_json(k) for lv in self.levels],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GlobalCert":
        if obj.get("kind") != "global":
            raise ValueError("not a global certificate")
        levels = [OneStepCert.from_json(lv) for lv in obj["levels"]]
        order = [int(i) for i in obj["order"]]
        if sorted(order) != list(range(len(levels))):
            raise ValueError("order must be a permutation of the level indices")
        return cls(levels, order)


def global_cert(T: TreeAutomaton, k: int = 0, budget: int | None = None) -> GlobalCert:
    """Certificates along the derivative chain of a countable nonempty ``[T]``."""
    current = prune(T)
    if current.is_empty():
        raise ValueError("body is empty; nothing to certify")
    budget = _default_budget(T) if budget is None else budget
    chain: list[OneStepCert] = []
    while not current.is_empty():
        chain.append(one_step_cert(current, k, budget))
        current = derivative(current)
    witnesses = []
    for lv in chain:
        first = lv.first_isolated()
        assert first is not None, "a countable nonempty closed set has an isolated point"
        witnesses.append(first.sigma)
    by_code = sorted(range(len(chain)), key=lambda i: code(witnesses[i]))
    position = {old: new for new, old in enumerate(by_code)}
    return GlobalCert(
        levels=[chain[i] for i in by_code],
        order=[position[i] for i in range(len(chain))],
        witnesses=[witnesses[i] for i in by_code],
    )


# verification


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str
    level: int | None = None

    def __str__(self) -> str:
        where = "" if self.level is None else f"level {self.level}: "
        return f"{where}{self.clause}: {self.detail}"


def _check_one_step(A: TreeAutomaton, c: OneStepCert, depth: int, level: int | None) -> list[Violation]:
    out: list[Violation] = []

    def bad(clause: str, detail: str) -> None:
        out.append(Violation(clause, detail, level))

    w = c.budget
    if w <= A.max_label():
        bad("budget", f"label budget {w} does not cover label {A.max_label()}")
        return out
    o = Oracle.of(A, w)
    # Coverage: walk the nodes above no entry, up to the depth. A truncated
    # explicit certificate only speaks for codes up to its last entry.
    truncated = c.backing is None and not c.complete
    limit = None
    if truncated:
        while c._pull():  # explicit certificates are finite lists
            pass
        limit = code(c.materialised[-1].sigma) if c.materialised else -1
    listed: dict[FinSeq, CertEntry] = {}
    frontier: list[FinSeq] = [()]
    for n in range(depth + 1):
        nxt: list[FinSeq] = []
        for s in frontier:
            if limit is not None and code(s) > limit:
                continue
            for e in c.entries_through(code(s)):
                listed.setdefault(e.sigma, e)
            if any(s[:i] in listed for i in range(len(s) + 1)):
                continue
            if not o.branching(s):
                bad("coverage", f"{list(s)} extends no entry but has fewer than two points above it")
                continue
            if n < depth:
                nxt.extend(s + (a,) for a in range(w))
        frontier = nxt
    seen = c.materialised
    entries = seen if c.complete else [e for e in seen if len(e.sigma) <= depth]
    for a, b in zip(seen, seen[1:]):
        if not code(a.sigma) < code(b.sigma):
            bad("increasing", f"{list(a.sigma)} listed before {list(b.sigma)}")
    sigmas = {e.sigma for e in seen}
    for e in seen:
        for i in range(len(e.sigma)):
            if e.sigma[:i] in sigmas:
                bad("incomparable", f"{list(e.sigma[:i])} is a prefix of {list(e.sigma)}")
    if c.first_isolated() is None:
        bad("has-isolated", "no entry has flag 1")
    for e in entries:
        s = e.sigma
        if e.flag == 1:
            if not is_prefix(s, e.point.take(len(s))):
                bad("membership", f"point {e.point} does not extend {list(s)}")
            elif not o.extendible(e.point.take(len(s) + depth)):
                bad("membership", f"point {e.point} above {list(s)} is not in the set")
        else:
            if o.extendible(s):
                bad("emptiness", f"flag-0 entry {list(s)} has points above it")
            if e.point != ZERO_OMEGA:
                bad("emptiness", f"flag-0 entry {list(s)} carries {e.point} instead of 0^ω")
        if o.branching(s):
            bad("uniqueness", f"more than one point above {list(s)}")
    if c.backing is not None:
        if not tree_equal(prune(c.backing.automaton), A):
            bad("backing", "backing automaton does not describe the certified set")
        for e in seen:
            if not c.backing.entry_end(e.sigma):
                bad("backing", f"{list(e.sigma)} is not a cut point of the backing")
    residue = c.residue(A)
    if residue is not None and not tree_equal(residue, derivative(A)):
        bad("residue", "residue differs from the derivative")
    return out


def verify_cert(T: TreeAutomaton, c: OneStepCert | GlobalCert, depth: int) -> list[Violation]:
    """Violated certificate clauses, empty when all hold to the given depth."""
    A = prune(T)
    if isinstance(c, OneStepCert):
        if A.is_empty():
            return [Violation("has-isolated", "the certified set is empty")]
        return _check_one_step(A, c, depth, None)
    out: list[Violation] = []
    current = A
    for j, idx in enumerate(c.order):
        lv = c.levels[idx]
        if current.is_empty():
            out.append(Violation("chain", "set already exhausted before this level", idx))
            break
        out.extend(_check_one_step(current, lv, depth, idx))
        nxt = lv.residue(current)
        if nxt is None:
            out.append(Violation("chain", "residue cannot be determined from a truncated level", idx))
            break
        current = nxt
    else:
        if not current.is_empty():
            out.append(Violation("global-coverage", "points remain after the last level"))
    witnesses = []
    for i, lv in enumerate(c.levels):
        first = lv.first_isolated()
        witnesses.append(None if first is None else code(first.sigma))
    for i in range(len(witnesses) - 1):
        a, b = witnesses[i], witnesses[i + 1]
        if a is not None and b is not None and not a < b:
            out.append(Violation("ordering", f"first witness codes {a} and {b} do not increase", i + 1))
    return out
