from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from amalgamkit.gf2 import Gf2Matrix
from amalgamkit.mataction import N4_POSITIONS, VectorAction, build_generators, root_element

# |B_n|, |C_n| and |B_n cap C_n| for the parabolic pair in L_{n+1}(2)
ORDERS = {
    3: (192, 192, 64),
    4: (21504, 9216, 3072),
    5: (10321920, 2064384, 688128),
}


@pytest.mark.parametrize("n", sorted(ORDERS))
def test_parabolic_orders(n):
    t = build_generators(n)
    b, c, bc = ORDERS[n]
    assert t.group(t.b_names).order() == b
    assert t.group(t.c_names).order() == c
    assert t.group(t.shared).order() == bc


def test_n4_table():
    t = build_generators(4)
    assert t.names == list(N4_POSITIONS)
    assert t.entries["a13"] == (4, 5) and t.entries["a12"] == (3, 4)
    assert all(m.order() == 2 for m in t.matrices.values())
    assert t.matrix("a1") == root_element(5, 2, 1)


def test_range_checked():
    with pytest.raises(ValueError):
        build_generators(2)


@given(st.lists(st.integers(0, 31), min_size=5, max_size=5).map(lambda r: Gf2Matrix(tuple(r), 5))
       .filter(lambda m: m.is_invertible()))
def test_vector_action_roundtrip(m):
    act = VectorAction(5)
    p = act.to_permutation(m)
    assert act.to_matrix(p) == m
    assert all(act.vector(p[act.point(v)]) == m.apply(v) for v in range(1, 32))


def test_vector_action_rejects_singular():
    with pytest.raises(ValueError):
        VectorAction(3).to_permutation(Gf2Matrix((1, 1, 0), 3))


def test_action_is_homomorphism():
    t = build_generators(4)
    act = t.action
    a, b = t.matrix("a3"), t.matrix("a12")
    assert act.to_permutation(a @ b) == act.to_permutation(a) * act.to_permutation(b)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_factor_element_roundtrip(rnd):
    t = build_generators(4)
    g = Gf2Matrix.identity(5)
    for _ in range(rnd.randint(0, 12)):
        g = g @ t.matrix(rnd.choice(t.shared))
    w = t.factor_element(g)
    assert t.eval_word(w, t.shared) == g


def test_factor_outside_shared_group():
    t = build_generators(4)
    with pytest.raises(ValueError):
        t.factor_element(t.matrix("a13"))
