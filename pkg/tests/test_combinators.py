import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbtree.cbengine import perfect_kernel
from cbtree.combinators import (
    binary_disjoint_union,
    binary_disjoint_union_const,
    chain,
    constant_path,
    disjoint_union,
    explode,
    interleave_trees,
    translate_tree_to_baire,
    translate_tree_to_binary,
)
from cbtree.corpus import FULL2, ZPATH, random_automaton
from cbtree.oracle import count_paths_capped
from cbtree.seqcore import Lasso, ZERO_OMEGA, tau_b_fin, tau_c_lasso
from cbtree.treeauto import (
    ALEPH0,
    CONTINUUM,
    accepts_lasso,
    body_cardinality,
    enumerate_paths,
    finite,
    is_wellfounded,
    prune,
    tree_equal,
)


def words(width, depth):
    for n in range(depth + 1):
        yield from itertools.product(range(width), repeat=n)


def test_disjoint_union_examples():
    assert count_paths_capped(disjoint_union([ZPATH, ZPATH]), 8, 2, 100) == 2
    assert body_cardinality(disjoint_union([ZPATH, ZPATH])) == finite(2)
    assert is_wellfounded(disjoint_union([chain([0, 0])]))
    assert body_cardinality(disjoint_union([FULL2, ZPATH])) == CONTINUUM


def test_binary_disjoint_union_examples():
    assert body_cardinality(binary_disjoint_union([ZPATH, ZPATH])) == finite(3)
    wf = binary_disjoint_union_const(chain([1, 1]))
    assert body_cardinality(wf) == finite(1)
    assert enumerate_paths(wf, 2) == [ZERO_OMEGA]
    perfect = binary_disjoint_union_const(FULL2)
    assert body_cardinality(perfect) == CONTINUUM
    assert tree_equal(perfect_kernel(perfect), prune(perfect))


def test_binary_disjoint_union_membership():
    ts = [ZPATH, FULL2, chain([1])]
    U = binary_disjoint_union(ts)
    for w in words(2, 7):
        i = w.index(1) if 1 in w else None
        expected = i is None or (i < len(ts) and ts[i].member(w[i + 1:]))
        assert U.member(w) == expected, w


def test_interleave_examples():
    assert enumerate_paths(interleave_trees(ZPATH, ZPATH), 3) == [ZERO_OMEGA]
    assert is_wellfounded(explode(chain([0, 0, 0])))
    e = explode(constant_path(3))
    assert body_cardinality(e) == CONTINUUM
    assert tree_equal(perfect_kernel(e), prune(e))
    for w in words(4, 6):
        assert e.member(w) == all(
            (a == 3) if i % 2 == 0 else a in (0, 1) for i, a in enumerate(w)
        ), w


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_interleave_membership(seed):
    rng = random.Random(seed)
    T, S = random_automaton(rng, 3), random_automaton(rng, 3)
    I = interleave_trees(T, S)
    for w in words(2, 6):
        # Positions of w split into the T stream (even) and the S stream (odd).
        expected = T.member(w[0::2]) and S.member(w[1::2])
        if len(w) % 2 == 1:
            expected = expected and any(S.member(w[1::2] + (a,)) for a in range(2))
        assert I.member(w) == expected, w


def test_translate_zero_path():
    T = translate_tree_to_binary(ZPATH)
    for w in words(2, 7):
        assert T.member(w) == (tau_b_fin(w) == (0,) * len(tau_b_fin(w))), w
    assert enumerate_paths(T, 3) == [ZERO_OMEGA, Lasso((), (1,)), Lasso((1,), (0,))]


def test_translate_rejects_infinite_labels():
    with pytest.raises(ValueError):
        translate_tree_to_baire(FULL2)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_translate_to_binary_membership(seed):
    S = random_automaton(random.Random(seed), max_states=5, max_label=3)
    C = translate_tree_to_binary(S)
    assert C.is_binary()
    for w in words(2, 8):
        assert C.member(w) == S.member(tau_b_fin(w)), w


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_translation_round_trip(seed):
    S = random_automaton(random.Random(seed), max_states=5, max_label=3)
    assert tree_equal(translate_tree_to_baire(translate_tree_to_binary(S)), S)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_translation_preserves_countability(seed):
    S = random_automaton(random.Random(seed), max_states=4, max_label=2)
    C = translate_tree_to_binary(S)
    assert body_cardinality(C).countable == body_cardinality(S).countable
    if body_cardinality(S) != CONTINUUM:
        assert all(accepts_lasso(C, tau_c_lasso(p)) for p in enumerate_paths(S, 4))


def test_explode_countability():
    assert body_cardinality(explode(chain([0]))).countable
    assert body_cardinality(explode(ZPATH)) == CONTINUUM
    assert body_cardinality(explode(binary_disjoint_union([ZPATH]))) == CONTINUUM
    assert body_cardinality(binary_disjoint_union([ZPATH, ZPATH, ZPATH])) == finite(4)
    assert body_cardinality(binary_disjoint_union([explode(ZPATH)])) == CONTINUUM
    assert body_cardinality(binary_disjoint_union_const(ZPATH)) == ALEPH0
    assert Lasso((1,), (0,)) in enumerate_paths(binary_disjoint_union_const(ZPATH), 3)
