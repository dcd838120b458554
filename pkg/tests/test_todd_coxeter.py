from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from amalgamkit.repmod import L32_PRESENTATION
from amalgamkit.todd_coxeter import (EnumerationExhausted, cache_key, enumerate_cached, load_table,
                                     save_table, todd_coxeter)
from amalgamkit.words import Word, parse_presentation

S3 = parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: (x*y)^3\n")


def triangle(l: int, m: int, n: int):
    return parse_presentation(f"gens: x y\nrel: x^{l}\nrel: y^{m}\nrel: (x*y)^{n}\n")


# finite (l, m, n) triangle groups: orders of <x, y | x^l, y^m, (xy)^n>
TRIANGLES = {(2, 2, 5): 10, (2, 3, 3): 12, (2, 3, 4): 24, (2, 3, 5): 60, (3, 3, 2): 12, (2, 2, 7): 14}


@pytest.mark.parametrize("strategy", ["hlt", "felsch"])
def test_s3(strategy):
    assert todd_coxeter(S3, [Word.gen(1)], strategy=strategy).index == 3
    t = todd_coxeter(S3, strategy=strategy)
    assert t.index == 6
    img = t.permutation_image()
    assert img.order() == 6 and img.is_transitive()


@pytest.mark.parametrize("lmn", sorted(TRIANGLES))
def test_triangle_groups_both_strategies(lmn):
    p = triangle(*lmn)
    a = todd_coxeter(p, strategy="hlt")
    b = todd_coxeter(p, strategy="felsch")
    assert a.index == b.index == TRIANGLES[lmn]
    assert np.array_equal(a.table, b.table)


def test_l32_presentation():
    p = parse_presentation(L32_PRESENTATION)
    t = todd_coxeter(p)
    assert t.index == 168
    assert t.permutation_image().order() == 168
    h = [Word.gen(1), Word.gen(2) * Word.gen(1) * Word.gen(2) ** 2]
    sub = t.permutation_image().subgroup(
        [w.evaluate(t.permutations(), lambda a, b: a * b, lambda a: a.inverse(), t.permutations()[0] ** 2)
         for w in h])
    assert todd_coxeter(p, h).index * sub.order() == 168


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(TRIANGLES)), st.lists(st.sampled_from([1, 2, -2]), min_size=1, max_size=5))
def test_strategies_agree_over_subgroups(lmn, letters):
    p = triangle(*lmn)
    h = [Word(tuple(letters))]
    a = todd_coxeter(p, h, strategy="hlt")
    b = todd_coxeter(p, h, strategy="felsch")
    assert a.index == b.index
    assert np.array_equal(a.table, b.table)
    assert TRIANGLES[lmn] % a.index == 0
    assert a.trace_coset(h[0]) == 0


def test_standardized_first_appearance():
    t = todd_coxeter(triangle(2, 3, 5))
    seen = [0]
    for row in t.table:
        for c in row:
            if c not in seen:
                seen.append(int(c))
    assert seen == list(range(t.index))


def test_exhaustion_reports_statistics():
    with pytest.raises(EnumerationExhausted) as e:
        todd_coxeter(triangle(2, 3, 5), max_cosets=20)
    assert e.value.max_cosets == 20 and e.value.total >= e.value.live > 0
    with pytest.raises(EnumerationExhausted):
        todd_coxeter(triangle(2, 3, 7), max_cosets=5000, strategy="felsch")


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        todd_coxeter(S3, strategy="nope")
    with pytest.raises(ValueError):
        todd_coxeter(S3, max_cosets=0)


def test_cache_roundtrip(tmp_path):
    p = triangle(2, 3, 5)
    t = enumerate_cached(p, [], tmp_path)
    files = list(tmp_path.glob("*.ctb"))
    assert len(files) == 1
    again = enumerate_cached(p, [], tmp_path)
    assert again.from_cache and np.array_equal(again.table, t.table)


def test_cache_revalidation(tmp_path):
    p = triangle(2, 3, 5)
    t = todd_coxeter(p)
    path = tmp_path / "t.ctb"
    save_table(path, t)
    assert load_table(path, p, []) is not None
    # other presentation: hash mismatch
    assert load_table(path, triangle(2, 3, 4), []) is None
    # other subgroup: hash mismatch
    assert load_table(path, p, [Word.gen(1)]) is None
    # corrupt one table entry but keep the hash: the relator check must catch it
    data = bytearray(path.read_bytes())
    data[12:16] = (int.from_bytes(data[12:16], "little") ^ 1).to_bytes(4, "little")
    path.write_bytes(bytes(data))
    assert load_table(path, p, []) is None
    # truncated
    path.write_bytes(bytes(data[:20]))
    assert load_table(path, p, []) is None


def test_cache_key_ignores_labels():
    a = parse_presentation("gens: x y\nrel: x^2 # first\nrel: y^3\n")
    b = parse_presentation("gens: x y\nrel: x^2\nrel: y^3 # other\n")
    assert cache_key(a, []) == cache_key(b, [])
