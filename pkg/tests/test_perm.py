from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from amalgamkit.perm import (GenMap, Permutation, PermGroup, center, centralizer, conjugacy_classes,
                             derived_length, derived_subgroup, extend_homomorphism, fingerprint,
                             frattini_2group, intersection, normal_closure, pcore, quotient,
                             subgroup_conjugacy_classes)


def perms(n: int):
    return st.permutations(range(n)).map(Permutation)


def sym(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])])


def dihedral(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles(n, [tuple(range(n))]), Permutation([(-i) % n for i in range(n)])])


def test_right_action_convention():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    # p*q applies p first: 0 -> 1 -> 2
    assert (p * q)[0] == 2


@given(perms(7), perms(7))
def test_product_and_inverse(p, q):
    assert ((p * q)[3]) == q[p[3]]
    assert (p * p.inverse()).is_identity()
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert p.conj(q) == q.inverse() * p * q


@given(perms(8))
def test_order_and_parity(p):
    assert (p ** p.order()).is_identity()
    assert p.order() == math.lcm(*p.cycle_type()) if p.cycle_type() else p.order() == 1
    assert p.is_even() == (sum(len(c) - 1 for c in p.cycles()) % 2 == 0)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 9])
def test_symmetric_orders(n):
    assert sym(n).order() == math.factorial(n)


@settings(max_examples=40, deadline=None)
@given(st.lists(perms(6), min_size=1, max_size=3))
def test_schreier_sims_matches_closure(gens):
    g = PermGroup(gens, 6)
    assert g.order() == g.closure_order()


@settings(max_examples=30, deadline=None)
@given(st.lists(perms(7), min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_membership(gens, rnd):
    g = PermGroup(gens, 7)
    x = g.identity()
    for _ in range(10):
        x = x * rnd.choice(gens)
    assert x in g
    assert g.stabilizer([0]).order() * len(g.orbit(0)) == g.order()


def test_alternating_excludes_transposition():
    a5 = PermGroup([Permutation.from_cycles(5, [(0, 1, 2)]), Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])])
    assert a5.order() == 60
    assert Permutation.from_cycles(5, [(0, 1)]) not in a5


def test_base_change_stabilizer():
    g = sym(6)
    assert g.stabilizer([3, 5]).order() == 24
    assert all(x[3] == 3 and x[5] == 5 for x in g.stabilizer([3, 5]).generators)


def test_small_structure():
    d8 = dihedral(4)
    assert d8.order() == 8
    assert center(d8).order() == 2
    assert derived_subgroup(d8).order() == 2
    assert frattini_2group(d8).order() == 2
    assert pcore(sym(4), 2).order() == 4
    assert derived_length(sym(4)) == 3
    assert derived_length(PermGroup(sym(5).generators).subgroup(
        [Permutation.from_cycles(5, [(0, 1, 2)]), Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])])) is None
    assert len(conjugacy_classes(sym(4))) == 5
    assert centralizer(sym(4), [Permutation.from_cycles(4, [(0, 1)])]).order() == 4


def test_normal_closure_and_quotient():
    s4 = sym(4)
    v4 = normal_closure(s4, [Permutation.from_cycles(4, [(0, 1), (2, 3)])])
    assert v4.order() == 4
    q = quotient(s4, v4)
    assert q.group.order() == 6
    assert fingerprint(q.group) == fingerprint(sym(3))
    with pytest.raises(ValueError):
        quotient(s4, PermGroup([Permutation.from_cycles(4, [(0, 1)])]))


def test_intersection():
    s4 = sym(4)
    a = s4.subgroup([Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(2, 3)])])
    b = s4.subgroup([Permutation.from_cycles(4, [(0, 1), (2, 3)]), Permutation.from_cycles(4, [(0, 2), (1, 3)])])
    assert intersection(a, b).order() == 2


def test_fingerprints_separate():
    assert fingerprint(dihedral(4)) != fingerprint(PermGroup([Permutation.from_cycles(4, [(0, 1, 2, 3)])]))
    assert fingerprint(sym(4)).order == 24


def test_homomorphism_extension():
    s3 = sym(3)
    sign = [Permutation.from_cycles(2, [(0, 1)]), Permutation.identity(2)]
    h = extend_homomorphism(GenMap(s3.generators, sign), s3)
    assert h is not None and not h.is_injective()
    bad = [Permutation.from_cycles(2, [(0, 1)]), Permutation.from_cycles(2, [(0, 1)])]
    # a 3-cycle cannot map to an involution
    assert extend_homomorphism(GenMap(s3.generators, bad), s3) is None


def test_subgroup_conjugacy_classes():
    s4 = sym(4)
    subs = [s4.subgroup([Permutation.from_cycles(4, [(i, j)])]) for i in range(4) for j in range(i + 1, 4)]
    classes = subgroup_conjugacy_classes(s4, subs)
    assert len(classes) == 1 and len(classes[0].members) == 6


def test_random_conjugate_is_conjugate():
    rnd = random.Random(1)
    g = sym(5)
    x = Permutation(rnd.sample(range(5), 5))
    h = g.subgroup([Permutation.from_cycles(5, [(0, 1, 2)])])
    assert h.conjugate(x).order() == 3
