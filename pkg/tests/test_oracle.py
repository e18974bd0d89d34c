import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbtree.cbengine import cb_rank, derivative, perfect_kernel
from cbtree.corpus import COMB, CORPUS, FULL2, ZPATH, random_automaton
from cbtree.oracle import (
    INCONCLUSIVE,
    Oracle,
    count_paths_capped,
    derived_stages,
    extendible_prefixes,
    fold_lasso,
    isolated_at_depth,
    isolated_closure,
)
from cbtree.seqcore import Lasso, ZERO_OMEGA


def test_extendible_prefix_examples():
    assert len(extendible_prefixes(FULL2, 2, 2)) == 4
    assert extendible_prefixes(ZPATH, 3, 2) == [(0, 0, 0)]
    assert set(extendible_prefixes(COMB, 2, 3)) == {(0, 0), (0, 1), (1, 1)}


def test_isolated_examples():
    assert isolated_at_depth(ZPATH, 4, 2) == [((), ZERO_OMEGA)]
    assert ((1,), Lasso((), (1,))) in isolated_at_depth(COMB, 4, 3)
    assert isolated_at_depth(FULL2, 4, 2) == []


def test_count_examples():
    assert count_paths_capped(ZPATH, 10, 2, 100) == 1
    assert count_paths_capped(FULL2, 7, 2, 100) == "≥100"
    assert count_paths_capped(COMB, 6, 3, 100) == 7


def test_bare_membership_needs_horizon():
    with pytest.raises(ValueError):
        Oracle.of(lambda s: True, 2)
    o = Oracle.of(lambda s: all(a == 0 for a in s), 2, horizon=1)
    assert o.extendible((0, 0)) and not o.extendible((1,))


def test_fold_lasso():
    assert fold_lasso((1, 2, 0, 0, 0, 0, 0, 0, 0), 3) == (2, 1)
    assert fold_lasso((0, 1) * 6, 2) == (0, 2)
    assert fold_lasso((0, 1, 2, 3, 4, 5), 2) is None


def test_inconclusive_when_horizon_is_too_small():
    # The only path is (0,1,2)^ω but the horizon claims one state.
    o = Oracle.of(CORPUS["zpath3"].member, 3, horizon=1)
    assert isolated_at_depth(o, 0, 3) == [((), INCONCLUSIVE)]


def test_oracle_is_deterministic():
    a = isolated_closure(COMB, 8, 2)
    b = isolated_closure(COMB, 8, 2)
    assert a == b and len(a) == 9


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_stages_match_rank(name):
    T = CORPUS[name]
    assert len(derived_stages(T, T.max_label() + 1)) - 1 == cb_rank(T)


seeds = st.integers(0, 10**9)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_final_stage_is_the_kernel(seed):
    T = random_automaton(random.Random(seed), max_states=4)
    final = derived_stages(T, 2)[-1]
    K = perfect_kernel(T)
    for n in range(8):
        for w in itertools.product(range(2), repeat=n):
            assert K.member(w) == final.extendible(w), w


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_isolated_nodes_match_structure(seed):
    T = random_automaton(random.Random(seed), max_states=4)
    D = derivative(T)
    for s, p in isolated_at_depth(T, 6, 2):
        assert p != INCONCLUSIVE
        assert not D.member(s)
        assert T.member(p.take(len(s) + 10)) and p.take(len(s)) == s
