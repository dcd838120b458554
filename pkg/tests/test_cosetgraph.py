from __future__ import annotations

import numpy as np
import pytest

from amalgamkit import cosetgraph as C
from amalgamkit.completion import A16_ORDER, g1_table
from amalgamkit.todd_coxeter import todd_coxeter
from amalgamkit.words import Word, parse_presentation


def test_toy_incidence_graph():
    # S3 with subgroups <x> and <y>: the incidence graph is a hexagon
    p = parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: (x*y)^3\n")
    t1 = todd_coxeter(p, [Word.gen(1)])
    t2 = todd_coxeter(p, [Word.gen(2)])
    d = C.build_delta(t1, t2)
    assert (d.n1, d.n2, d.edge_count) == (3, 3, 6)
    assert d.adj1.shape == (3, 2)


def test_mismatched_tables():
    p = parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: (x*y)^3\n")
    q = parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: (x*y)^4\n")
    with pytest.raises(ValueError):
        C.build_delta(todd_coxeter(p, [Word.gen(1)]), todd_coxeter(q, [Word.gen(2)]))


def test_m24_delta(m24_graph):
    d = m24_graph
    assert (d.n1, d.n2) == (11385, 26565)
    assert d.edge_count == 11385 * 7 == 26565 * 3
    # adjacency agrees in both directions
    u = 5
    for w in d.adj1[u]:
        assert u in d.adj2[w]


def test_m24_gamma(m24_graph):
    g = C.gamma_component(m24_graph)
    assert g.valency == 14 and C.is_connected(g.adj)
    assert C.unique_triangle_per_edge(g)
    assert C.triangle_count(g) == 26565


def test_balls_and_towers(m24_graph):
    d = m24_graph
    assert len(C.delta_ball(d, 0, 1)) == 8
    assert C.quotients(C.delta_tower(d, 0)) == list(C.DELTA_TOWER)
    g = C.gamma_component(d)
    assert C.gamma_tower(d, g, 0)[1:] == list(C.GAMMA_TOWER)


def test_conjugating_element(m24_graph):
    c = C.conjugating_element(m24_graph, 1234)
    assert c[0] == 1234


def test_edge_list_export(m24_graph, tmp_path):
    path = tmp_path / "e.txt"
    m24_graph.write_edge_list(path)
    e = np.loadtxt(path, dtype=np.int64)
    assert e.shape == (79695, 2)
    assert path.read_text().startswith("# parts 11385 26565")


def test_axiom_suite(m24_graph):
    r = C.check_axioms(m24_graph)
    assert r.ok, [(c.check, c.actual) for c in r.failed()]


def test_a16_part_sizes():
    assert C.a16_part_sizes(A16_ORDER) == (A16_ORDER // 21504, A16_ORDER // 9216)


def test_he_graph(cache_dir):
    d = C.build_graph("he", cache_dir)
    assert (d.n1, d.n2) == (187425, 437325)
    r = C.check_axioms(d, name="graph.he")
    assert r.ok, [(c.check, c.actual) for c in r.failed()]
