from __future__ import annotations

import pytest

from amalgamkit.completion import PRINTED_RELATORS, involution_form, presentations_suite, relator
from amalgamkit.mataction import build_generators
from amalgamkit.presentations import (L16_NAMES, NAMES, derive_presentation, self_test, side_presentation,
                                      twist)
from amalgamkit.words import parse_presentation

TWISTS = ("id", "alpha", "beta", "alphabeta")


@pytest.fixture(scope="module")
def table():
    return build_generators(4)


@pytest.mark.parametrize("name", TWISTS)
def test_relators_hold_in_matrices(table, name):
    p = derive_presentation(name, table)
    assert self_test(p, twist(name), table) == []
    assert p.names == NAMES


@pytest.mark.parametrize("key", sorted(PRINTED_RELATORS))
def test_printed_twisted_relators(table, key):
    name, label = key
    p = derive_presentation(name, table)
    assert relator(p, label) == p.parse_word(PRINTED_RELATORS[key])


def test_a10_a11_commute(table):
    # (a10 a11)^3 is not a relation: a10 a11 has order 2
    m = table.matrices
    assert (m["a10"] @ m["a11"]).order() == 2
    cube = (m["a10"] @ m["a11"]) ** 3
    assert cube != cube @ cube
    p = derive_presentation("id", table)
    assert involution_form(relator(p, "R(10,11)")) == (10, 11, 10, 11)


def test_twist_images():
    a, b = twist("alpha"), twist("beta")
    assert a.images["a3"].format(NAMES) == "a7*a3"
    assert b.images["a1"].format(NAMES) == "a1*a7*a9"
    assert b.word_image(4).format(NAMES) == "a4"
    ab = twist("alphabeta")
    assert set(ab.images) == {"a1", "a2", "a3", "a11"}


def test_twist_changes_only_13_relators(table):
    p = derive_presentation("id", table)
    q = derive_presentation("beta", table)
    g1 = side_presentation(p, "g1")
    assert g1 == side_presentation(q, "g1")
    assert len(g1.relators) == 12 + 66


def test_text_roundtrip(table):
    p = derive_presentation("alphabeta", table)
    assert parse_presentation(p.to_text()) == p


def test_l16_names():
    assert len(L16_NAMES) == 9 and "a13" in L16_NAMES


def test_presentations_suite():
    r = presentations_suite()
    assert r.ok, [(c.check, c.actual) for c in r.failed()]
