from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from amalgamkit.perm import Permutation
from amalgamkit.repmod import L32_PRESENTATION
from amalgamkit.words import ParseError, Presentation, Word, parse_presentation

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


@given(letters)
def test_free_reduction(xs):
    w = Word(tuple(xs))
    assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))
    assert len(w * w.inverse()) == 0


@given(letters, letters)
def test_reduction_is_confluent(xs, ys):
    assert Word(tuple(xs)) * Word(tuple(ys)) == Word(tuple(xs + ys))


@given(letters, letters)
def test_evaluation_is_homomorphism(xs, ys):
    imgs = [Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(1, 2, 3)]),
            Permutation.from_cycles(4, [(0, 3)])]

    def ev(w):
        return w.evaluate(imgs, lambda a, b: a * b, lambda a: a.inverse(), Permutation.identity(4))

    u, v = Word(tuple(xs)), Word(tuple(ys))
    assert ev(u * v) == ev(u) * ev(v)
    assert ev(u.inverse()) == ev(u).inverse()


def test_commutator_convention():
    x, y = Word.gen(1), Word.gen(2)
    assert x.commutator(y).letters == (-1, -2, 1, 2)


def test_parse_l32():
    p = parse_presentation(L32_PRESENTATION)
    assert p.names == ("x", "y") and len(p.relators) == 4
    assert p.relators[3] == (Word.gen(1).commutator(Word.gen(2))) ** 4


def test_parse_relator_power():
    p = parse_presentation("gens: a3 a11\nrel: (a3*a11)^3\n")
    assert p.relators == [Word((1, 2, 1, 2, 1, 2))]


def test_roundtrip():
    p = parse_presentation("gens: x y z  # three\nrel: [x,y*z]^2 # c\nrel: x^-2*y\n")
    q = parse_presentation(p.to_text())
    assert q == p
    assert q.labels == p.labels


def test_unclosed_parenthesis_position():
    with pytest.raises(ParseError) as e:
        parse_presentation("gens: x y\nrel: (x*")
    assert (e.value.line, e.value.col) == (2, 6)


def test_unknown_generator():
    with pytest.raises(ParseError) as e:
        parse_presentation("gens: x\nrel: x*q")
    assert "q" in str(e.value)


def test_empty_relator():
    with pytest.raises((ParseError, ValueError)):
        parse_presentation("gens: x\nrel: x*x^-1")


def test_restrict_renumbers():
    p = parse_presentation("gens: a b c\nrel: a^2\nrel: c^2\nrel: (a*c)^3\nrel: (a*b)^2\n")
    q = p.restrict(["a", "c"])
    assert q.names == ("a", "c")
    assert q.relators == [Word((1, 1)), Word((2, 2)), Word((1, 2)) ** 3]


def test_involutions():
    p = Presentation(("x", "y"), [Word((1, 1)), Word((2, 2, 2))])
    assert p.involutions() == {1}
