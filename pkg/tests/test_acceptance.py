"""Acceptance criteria 1-10, one test each, with a printed pass/fail line.

Run with ``pytest tests/test_acceptance.py -v``; the criterion lines are
printed even when output capture is on.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from amalgamkit import amalgamlab as L
from amalgamkit import cosetgraph as C
from amalgamkit.completion import (A16_ORDER, HE_ORDER, M24_ORDER, completion_suite, enumerate_target,
                                   image_order, presentations_suite)
from amalgamkit.perm import PermGroup
from amalgamkit.report import render
from amalgamkit.todd_coxeter import load_table, save_table


@pytest.fixture
def criterion(capsys):
    """Collect (name, ok) results for one criterion and print a line at the end."""
    results: list[tuple[str, bool, object]] = []
    t0 = time.perf_counter()

    def check(name: str, ok: bool, detail: object = "") -> None:
        results.append((name, bool(ok), detail))

    def finish(number: int, title: str, budget: float) -> None:
        elapsed = time.perf_counter() - t0
        check(f"runtime {elapsed:.1f}s <= {budget:.0f}s", elapsed <= budget)
        ok = all(r[1] for r in results)
        with capsys.disabled():
            print(f"\ncriterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title} ({elapsed:.1f}s)")
            for name, good, detail in results:
                if not good:
                    print(f"    failed: {name} {detail}")
        assert ok, [r for r in results if not r[1]]

    check.finish = finish
    return check


def suite_checks(check, suite, prefix=""):
    for c in suite.checks:
        check(prefix + c.check, c.status == "pass", (c.expected, c.actual))


def test_criterion_01_orders(criterion):
    s = L.Setting()
    g1, g2, b = s.g1.order(), s.g2.order(), s.b.order()
    criterion("|G1| = 21504", g1 == 21504, g1)
    criterion("|G2| = 9216", g2 == 9216, g2)
    criterion("|B| = 3072", b == 3072, b)
    criterion("[G1:B] = 7", g1 // b == 7 and g1 % b == 0)
    criterion("[G2:B] = 3", g2 // b == 3 and g2 % b == 0)
    criterion("B inside both", s.b.is_subgroup_of(s.g1) and s.b.is_subgroup_of(s.g2))
    criterion.finish(1, "orders and indices", 1)


def test_criterion_02_structure(criterion):
    s = L.Setting()
    for fn in (L.structure_suite_g1, L.structure_suite_g2, L.structure_suite_b):
        suite = fn(s)
        suite_checks(criterion, suite, suite.name + ":")
    criterion.finish(2, "structure suites", 5)


def test_criterion_03_modules(criterion):
    suite = L.modules_suite()
    suite_checks(criterion, suite)
    criterion.finish(3, "module checks", 30)


def test_criterion_04_complements(criterion):
    suite = L.complements_suite()
    suite_checks(criterion, suite)
    criterion.finish(4, "complement classification", 60)


def test_criterion_05_twists(criterion):
    s = L.Setting()
    _, suite = L.build_twists(s)
    suite_checks(criterion, suite, "twists:")
    suite_checks(criterion, L.distinct_coset_check(s), "distinct:")
    criterion.finish(5, "twists and inner-equivalence sweep", 30)


def test_criterion_06_faithfulness(criterion):
    suite = L.faithfulness_suite()
    suite_checks(criterion, suite)
    criterion.finish(6, "faithfulness", 5)


def test_criterion_07_presentations(criterion, tmp_path):
    suite_checks(criterion, presentations_suite(), "presentations:")
    for target, want in (("g1", 21504), ("g2", 9216)):
        t = enumerate_target(target, None)
        criterion(f"{target} side enumerates to {want}", t.index == want, t.index)
    criterion.finish(7, "presentations", 60)


def test_criterion_08_completions(criterion, tmp_path):
    t0 = time.perf_counter()
    m24 = completion_suite("m24", tmp_path)
    suite_checks(criterion, m24, "m24:")
    t = m24.artifacts["table.hlt"]
    full = PermGroup(t.permutations(), t.index).order()
    criterion("m24 image order by full Schreier-Sims", full == M24_ORDER, full)
    criterion("m24 within 120s", time.perf_counter() - t0 <= 120)

    t0 = time.perf_counter()
    he = completion_suite("he", tmp_path)
    suite_checks(criterion, he, "he:")
    criterion("he index 187425", he.artifacts["table.hlt"].index == HE_ORDER // 21504)
    criterion("he within 1200s", time.perf_counter() - t0 <= 1200)

    t0 = time.perf_counter()
    a16 = completion_suite("a16", tmp_path)
    suite_checks(criterion, a16, "a16:")
    criterion("a16 image order 16!/2", a16.status_of("image.order") == "pass", A16_ORDER)
    criterion("a16 within 10s", time.perf_counter() - t0 <= 10)
    criterion.finish(8, "completions M24, He, A16", 120 + 1200 + 10)


def test_criterion_09_coset_graph(criterion, tmp_path):
    d = C.build_graph("m24", tmp_path)
    suite = C.check_axioms(d)
    suite_checks(criterion, suite)
    criterion("delta tower", suite.artifacts["delta_tower"] == [168, 8, 8, 1, 2, 1], suite.artifacts["delta_tower"])
    criterion("gamma tower", suite.artifacts["gamma_tower"][1:] == [16, 2, 1], suite.artifacts["gamma_tower"])
    criterion.finish(9, "M24 coset graph", 300)


def test_criterion_10_engine(criterion, tmp_path):
    for target in ("g1", "g2", "b", "a16", "m24", "he"):
        r = completion_suite(target, None, strategies=("hlt", "felsch"))
        criterion(f"hlt = felsch on {target}", r.status_of("strategies_agree") == "pass")
    t = enumerate_target("m24", tmp_path)
    path = next(tmp_path.glob("*.ctb"))
    back = load_table(path, t.presentation, t.subgroup)
    criterion("cache reloads and revalidates", back is not None and np.array_equal(back.table, t.table))
    data = bytearray(path.read_bytes())
    data[100] ^= 1
    path.write_bytes(bytes(data))
    criterion("corrupted cache rejected", load_table(path, t.presentation, t.subgroup) is None)
    save_table(path, t)

    def report():
        s = L.Setting()
        suites = [L.faithfulness_suite(s), presentations_suite()]
        for x in suites:
            for c in x.checks:
                c.elapsed = 0.0
        return render(suites)

    criterion("reports byte-stable", report() == report())
    criterion.finish(10, "engine self-consistency", 600)
