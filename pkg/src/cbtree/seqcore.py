"""Finite sequences over the naturals, their numeric coding, and lassos.

A finite sequence is a plain ``tuple`` of non-negative ints. An eventually
periodic infinite word ``u v v v ...`` is a :class:`Lasso`; lassos are kept in
a normal form so that ``==`` on lassos is equality of the denoted words.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterable, Sequence

FinSeq = tuple[int, ...]


def pair(a: int, b: int) -> int:
    """Cantor pairing ``(a+b)(a+b+1)/2 + b``."""
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def code(seq: Iterable[int]) -> int:
    """Number of a finite sequence; a proper prefix always gets a smaller number.

    ``code(()) == 0`` and ``code(s + (n,)) == pair(code(s), n) + 1``.
    """
    c = 0
    for n in seq:
        if n < 0:
            raise ValueError(f"negative digit {n}")
        c = pair(c, n) + 1
    return c


def decode(c: int) -> FinSeq:
    """Inverse of :func:`code`."""
    if c < 0:
        raise ValueError(f"negative code {c}")
    out: list[int] = []
    while c:
        c, n = unpair(c - 1)
        out.append(n)
    return tuple(reversed(out))


def is_prefix(s: Sequence[int], t: Sequence[int]) -> bool:
    return len(s) <= len(t) and tuple(t[: len(s)]) == tuple(s)


def comparable(s: Sequence[int], t: Sequence[int]) -> bool:
    return is_prefix(s, t) or is_prefix(t, s)


def interleave_fin(s: Sequence[int], t: Sequence[int]) -> FinSeq:
    """``<s0, t0, s1, t1, ...>`` for equal-length ``s`` and ``t``."""
    if len(s) != len(t):
        raise ValueError(f"length mismatch: {len(s)} != {len(t)}")
    out: list[int] = []
    for a, b in zip(s, t):
        out += (a, b)
    return tuple(out)


def ell(seq: Sequence[int]) -> int:
    """Least ``i`` with ``pair(i, 0) >= len(seq)``: the streams laid out in ``seq``."""
    i = 0
    while pair(i, 0) < len(seq):
        i += 1
    return i


def project(i: int, seq: Sequence[int]) -> FinSeq:
    """Digits of stream ``i`` in a pairing layout: ``seq[pair(i, j)]`` for ``j = 0, 1, ...``."""
    if not 0 <= i < ell(seq):
        raise ValueError(f"stream index {i} out of range for length {len(seq)}")
    out: list[int] = []
    j = 0
    while pair(i, j) < len(seq):
        out.append(seq[pair(i, j)])
        j += 1
    return tuple(out)


def join_streams(digit: Callable[[int, int], int], length: int) -> FinSeq:
    """Lay out streams in pairing order: position ``pair(i, j)`` holds ``digit(i, j)``."""
    return tuple(digit(*unpair(n)) for n in range(length))


def tau_c_fin(seq: Iterable[int]) -> FinSeq:
    """Binary block encoding: each digit ``n`` becomes ``0^n 1``."""
    out: list[int] = []
    for n in seq:
        out += [0] * n
        out.append(1)
    return tuple(out)


def tau_b_fin(bits: Sequence[int]) -> FinSeq:
    """Decode complete ``0^n 1`` blocks; the trailing run of zeros is dropped."""
    out: list[int] = []
    run = 0
    for b in bits:
        if b == 1:
            out.append(run)
            run = 0
        elif b == 0:
            run += 1
        else:
            raise ValueError(f"non-binary digit {b}")
    return tuple(out)


def _primitive_root(word: FinSeq) -> FinSeq:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def is_primitive(word: Sequence[int]) -> bool:
    word = tuple(word)
    return len(word) > 0 and _primitive_root(word) == word


@dataclass(frozen=True)
class Lasso:
    """The infinite word ``prefix + cycle + cycle + ...``.

    Construction normalises: the cycle is replaced by its primitive root and the
    prefix is rolled back into the cycle as far as possible. Two lassos compare
    equal exactly when they denote the same word.
    """

    prefix: FinSeq
    cycle: FinSeq

    def __post_init__(self) -> None:
        u, v = tuple(self.prefix), tuple(self.cycle)
        if not v:
            raise ValueError("lasso cycle must be nonempty")
        if any(d < 0 for d in u + v):
            raise ValueError("lasso digits must be natural numbers")
        v = _primitive_root(v)
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1:] + v[:-1]
        object.__setattr__(self, "prefix", u)
        object.__setattr__(self, "cycle", v)

    @classmethod
    def constant(cls, n: int) -> "Lasso":
        return cls((), (n,))

    def digit(self, i: int) -> int:
        u, v = self.prefix, self.cycle
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    def take(self, n: int) -> FinSeq:
        """First ``n`` digits."""
        return tuple(self.digit(i) for i in range(n))

    def shift(self, n: int) -> "Lasso":
        """The word with its first ``n`` digits removed."""
        u, v = self.prefix, self.cycle
        if n <= len(u):
            return Lasso(u[n:], v)
        k = (n - len(u)) % len(v)
        return Lasso((), v[k:] + v[:k])

    def prepend(self, seq: Sequence[int]) -> "Lasso":
        return Lasso(tuple(seq) + self.prefix, self.cycle)

    def sort_key(self) -> tuple[int, int]:
        return code(self.prefix), code(self.cycle)

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}

    @classmethod
    def from_json(cls, obj: dict) -> "Lasso":
        return cls(tuple(obj["prefix"]), tuple(obj["cycle"]))

    def __str__(self) -> str:
        cyc = "(" + ",".join(map(str, self.cycle)) + ")^ω"
        if not self.prefix:
            return cyc
        return ",".join(map(str, self.prefix)) + "·" + cyc


ZERO_OMEGA = Lasso.constant(0)


def is_normal(prefix: Sequence[int], cycle: Sequence[int]) -> bool:
    """Whether ``(prefix, cycle)`` is already a lasso normal form."""
    return is_primitive(cycle) and not (prefix and prefix[-1] == cycle[-1])


def lasso_eq(p: Lasso, q: Lasso) -> bool:
    return p == q


def tau_c_lasso(p: Lasso) -> Lasso:
    """Digit-wise block encoding of an infinite word over the naturals."""
    return Lasso(tau_c_fin(p.prefix), tau_c_fin(p.cycle))


def tau_b_lasso(q: Lasso) -> Lasso:
    """Decode a binary word with infinitely many ones into blocks."""
    u, v = q.prefix, q.cycle
    if any(d not in (0, 1) for d in u + v):
        raise ValueError("tau_b_lasso needs a binary lasso")
    if 1 not in v:
        raise ValueError("tau_b_lasso needs infinitely many ones")
    # Rotate so that both parts end right after a one.
    j = max(i for i, b in enumerate(v) if b == 1)
    head = u + v[: j + 1]
    loop = v[j + 1 :] + v[: j + 1]
    return Lasso(tau_b_fin(head), tau_b_fin(loop))
