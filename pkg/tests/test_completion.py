from __future__ import annotations

import pytest

from amalgamkit.completion import (completion_suite, enumerate_target, image_order, stabilizer_order,
                                   target_presentation)
from amalgamkit.perm import Permutation


def test_side_indices(cache_dir):
    assert enumerate_target("b", cache_dir).index == 3072


@pytest.mark.parametrize("target", ["g2", "b", "a16"])
def test_strategies_agree(target):
    r = completion_suite(target, None, strategies=("hlt", "felsch"))
    assert r.ok, [(c.check, c.actual) for c in r.failed()]


def test_stabilizer_order_bound_is_only_an_early_exit():
    g = [Permutation.from_cycles(7, [(0, 1)]), Permutation.from_cycles(7, [(0, 1, 2)]),
         Permutation.from_cycles(7, [(4, 5, 6)])]
    assert stabilizer_order(g, 7) == 18
    assert stabilizer_order(g, 7, bound=18) == 18
    # a wrong bound never produces a wrong answer, only a longer search
    assert stabilizer_order(g, 7, bound=10**6) == 18


def test_m24_image_order(cache_dir):
    t = enumerate_target("m24", cache_dir)
    assert image_order(t, 21504) == (244823040, 21504)


def test_unknown_target():
    with pytest.raises(ValueError):
        target_presentation("m23")
