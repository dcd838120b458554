"""The incidence graph Delta of a completion and its distance-two graph Gamma.

Vertices of Delta are the cosets of the images of G1 (valency 7) and G2
(valency 3); two cosets are adjacent when they intersect.  The edges are the
orbit of the base edge (G1, G2) under the completion.  Gamma is the graph on
the G1-cosets at distance two in Delta; its triangles are the G2-cosets.

The group acts on the disjoint union of both parts, G1-cosets first.  Ball
stabiliser orders come from restricting the vertex stabiliser to the ball:
|G_i(x)| = |G(x)| / |G(x) restricted to the ball of radius i|.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .completion import SIDE_ORDERS, g1_table, g2_table, stabilizer_order
from .perm import Permutation, PermGroup
from .presentations import G1_NAMES, G2_NAMES
from .report import Suite
from .todd_coxeter import DEFAULT_MAX_COSETS, CosetTable

DELTA_TOWER = (168, 8, 8, 1, 2, 1)
GAMMA_TOWER = (16, 2, 1)


@dataclass
class CosetGraph:
    """Bipartite graph with flat adjacency arrays.

    ``adj1[u]`` lists the 7 G2-cosets meeting G1-coset u; ``adj2[w]`` the 3
    G1-cosets meeting G2-coset w.  ``gens`` are the completion generators on
    the n1 + n2 vertices (G1-cosets first).
    """

    n1: int
    n2: int
    adj1: np.ndarray
    adj2: np.ndarray
    gens: list[np.ndarray] = field(repr=False)
    stab1: list[str] = field(default_factory=lambda: list(G1_NAMES))
    stab2: list[str] = field(default_factory=lambda: list(G2_NAMES))
    names: list[str] = field(default_factory=list)

    @property
    def edge_count(self) -> int:
        return int(self.adj1.size)

    def neighbours(self, v: int) -> np.ndarray:
        """Delta-neighbours in combined numbering."""
        if v < self.n1:
            return self.adj1[v] + self.n1
        return self.adj2[v - self.n1]

    def permutations(self, names: Sequence[str]) -> list[Permutation]:
        idx = {nm: k for k, nm in enumerate(self.names)}
        return [Permutation(self.gens[idx[nm]], check=False) for nm in names]

    def edges(self) -> np.ndarray:
        """(u, w) pairs, u a G1-coset and w a G2-coset, sorted."""
        u = np.repeat(np.arange(self.n1), self.adj1.shape[1])
        return np.stack([u, self.adj1.ravel()], axis=1)

    def write_edge_list(self, path: Path | str) -> None:
        """One edge per line: ``u w`` with u in part 1 and w in part 2."""
        e = self.edges()
        with open(path, "w") as fh:
            fh.write(f"# parts {self.n1} {self.n2}\n")
            np.savetxt(fh, e, fmt="%d")


def build_delta(t1: CosetTable, t2: CosetTable) -> CosetGraph:
    """Incidence graph from coset tables over the G1 and G2 generators."""
    if t1.presentation.to_text_plain() != t2.presentation.to_text_plain():
        raise ValueError("coset tables come from different presentations")
    p1 = t1.generator_images()
    p2 = t2.generator_images()
    n1, n2 = t1.index, t2.index
    visited = np.array([0], dtype=np.int64)
    frontier = visited
    while frontier.size:
        u, w = frontier // n2, frontier % n2
        cand = np.unique(np.concatenate([a[u].astype(np.int64) * n2 + b[w] for a, b in zip(p1, p2)]))
        frontier = cand[~np.isin(cand, visited, assume_unique=True)]
        visited = np.union1d(visited, frontier)
    edges = visited
    u, w = edges // n2, edges % n2
    deg1 = np.bincount(u, minlength=n1)
    deg2 = np.bincount(w, minlength=n2)
    if deg1.min() != deg1.max() or deg2.min() != deg2.max():
        raise AssertionError("valency is not constant on a part")
    adj1 = w.reshape(n1, deg1[0]).astype(np.int32)
    order = np.lexsort((u, w))
    adj2 = u[order].reshape(n2, deg2[0]).astype(np.int32)
    gens = [np.concatenate([a, b + n1]).astype(np.int32) for a, b in zip(p1, p2)]
    return CosetGraph(n1, n2, adj1, adj2, gens, names=list(t1.presentation.names))


@dataclass
class Gamma:
    """Distance-two graph on the G1-cosets, with the triangle of each edge."""

    adj: np.ndarray        # n1 x 14, sorted rows
    tri: np.ndarray        # n1 x 14, the G2-coset through each edge

    @property
    def order(self) -> int:
        return int(self.adj.shape[0])

    @property
    def valency(self) -> int:
        return int(self.adj.shape[1])


def gamma_component(d: CosetGraph) -> Gamma:
    k1 = d.adj1.shape[1]
    k2 = d.adj2.shape[1]
    nbr = d.adj2[d.adj1]                                # n1 x k1 x k2
    tri = np.broadcast_to(d.adj1[:, :, None], nbr.shape)
    mask = nbr != np.arange(d.n1)[:, None, None]
    nb = nbr[mask].reshape(d.n1, k1 * (k2 - 1))
    tr = tri[mask].reshape(d.n1, k1 * (k2 - 1))
    order = np.argsort(nb, axis=1, kind="stable")
    return Gamma(np.take_along_axis(nb, order, 1).astype(np.int32),
                 np.take_along_axis(tr, order, 1).astype(np.int32))


def is_connected(adj: np.ndarray) -> bool:
    return int(bfs_layers(adj, 0)[-1][1]) == adj.shape[0]


def bfs_layers(adj: np.ndarray, start: int, radius: int | None = None) -> list[tuple[np.ndarray, int]]:
    """(layer, cumulative size) per distance, up to ``radius``."""
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    layer = np.array([start])
    out = [(layer, 1)]
    total = 1
    r = 0
    while layer.size and (radius is None or r < radius):
        nxt = np.unique(adj[layer].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        if not nxt.size:
            break
        total += nxt.size
        out.append((nxt, total))
        layer = nxt
        r += 1
    return out


def delta_ball(d: CosetGraph, v: int, radius: int) -> list[int]:
    """Vertices within ``radius`` of v in Delta, combined numbering, by distance."""
    seen = {v}
    out = [v]
    layer = [v]
    for _ in range(radius):
        nxt = []
        for x in layer:
            for y in d.neighbours(x).tolist():
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        out += nxt
        layer = nxt
    return out


def gamma_ball(g: Gamma, v: int, radius: int) -> list[int]:
    pts: list[int] = []
    for layer, _ in bfs_layers(g.adj, v, radius):
        pts += layer.tolist()
    return pts


def triangle_count(g: Gamma) -> int:
    return int(np.unique(g.tri).size)


def unique_triangle_per_edge(g: Gamma) -> bool:
    """Each Gamma-edge has exactly one common neighbour, so lies in exactly one triangle."""
    a = g.adj
    if (np.diff(a, axis=1) == 0).any():
        return False
    for lo in range(0, a.shape[0], 8192):
        rows = a[lo:lo + 8192]
        nb = a[rows]                                       # m x k x k
        common = (nb[:, :, :, None] == rows[:, None, None, :]).sum(axis=(2, 3))
        if not (common == 1).all():
            return False
    return True


def conjugating_element(d: CosetGraph, v: int) -> Permutation:
    """An element of the completion taking vertex 0 to G1-coset v."""
    parent = {0: None}
    layer = [0]
    while v not in parent:
        nxt = []
        for x in layer:
            for k, gk in enumerate(d.gens):
                y = int(gk[x])
                if y not in parent:
                    parent[y] = (x, k)
                    nxt.append(y)
        if not nxt:
            raise ValueError("vertex not in the orbit of the base vertex")
        layer = nxt
    word = []
    x = v
    while parent[x] is not None:
        x, k = parent[x]
        word.append(k)
    g = Permutation.identity(d.n1 + d.n2)
    for k in reversed(word):
        g = g * Permutation(d.gens[k], check=False)
    return g


def vertex_stabilizer(d: CosetGraph, v: int = 0) -> PermGroup:
    """G(x) for the G1-coset v as a group on all Delta-vertices."""
    gens = d.permutations(d.stab1)
    if v:
        c = conjugating_element(d, v)
        gens = [x.conj(c) for x in gens]
    return PermGroup(gens, d.n1 + d.n2)


def restricted_order(g: PermGroup, pts: Sequence[int]) -> int:
    return g.setwise_image_group(pts).order()


def delta_tower(d: CosetGraph, v: int = 0, radius: int = 6, full: int | None = None) -> list[int]:
    """Orders |G_i(x)| for i = 0..radius, pointwise stabilisers of Delta-balls."""
    gx = vertex_stabilizer(d, v)
    full = full or _exact_order(gx, d)
    return [full // restricted_order(gx, delta_ball(d, v, i)) if i else full for i in range(radius + 1)]


def gamma_tower(d: CosetGraph, g: Gamma, v: int = 0, radius: int = 3, full: int | None = None) -> list[int]:
    gx = vertex_stabilizer(d, v)
    full = full or _exact_order(gx, d)
    return [full // restricted_order(gx, gamma_ball(g, v, i)) if i else full for i in range(radius + 1)]


def _exact_order(gx: PermGroup, d: CosetGraph) -> int:
    """|G(x)|, with |G1| as the upper bound that stops the orbit search."""
    return stabilizer_order(gx.generators, gx.degree, SIDE_ORDERS["g1"])


def quotients(tower: Sequence[int]) -> list[int]:
    return [a // b for a, b in zip(tower, tower[1:])]


def is_two_transitive(g: PermGroup) -> bool:
    return g.is_transitive() and (g.degree < 2 or len(g.stabilizer([0]).orbit(1)) == g.degree - 1)


def check_axioms(d: CosetGraph, g: Gamma | None = None, base: int = 0, spot: int = 5,
                 seed: int = 0, name: str = "graph") -> Suite:
    r = Suite(name)
    g = g or gamma_component(d)
    r.expect("delta.parts", [d.n1, d.n2], lambda: [d.n1, d.n2])
    r.expect("delta.valencies", [7, 3], lambda: [d.adj1.shape[1], d.adj2.shape[1]])
    r.expect("delta.edges_double_count", True, lambda: d.n1 * 7 == d.n2 * 3 == d.edge_count)
    r.expect("A1.valency", 14, lambda: g.valency)
    r.expect("A1.connected", True, lambda: is_connected(g.adj))
    r.expect("A2.unique_triangle_per_edge", True, lambda: unique_triangle_per_edge(g))
    r.expect("A2.triangle_count", d.n2, lambda: triangle_count(g), note="one triangle per valency-3 vertex")

    gx = vertex_stabilizer(d, base)
    full = r.expect("G(x).order", SIDE_ORDERS["g1"], lambda: _exact_order(gx, d))
    nb = d.neighbours(base).tolist()
    gnb = g.adj[base].tolist()
    r.expect("A3.vertex_transitive", True,
             lambda: PermGroup([Permutation(a[: d.n1], check=False) for a in d.gens], d.n1).is_transitive())
    r.expect("A3.G(x)_transitive_on_Gamma(x)", True,
             lambda: len(gx.setwise_image_group(gnb).orbit(0)) == len(gnb))
    tri_act = gx.setwise_image_group(nb)
    r.expect("A4.triangle_action.order", 168, tri_act.order)
    r.expect("A4.triangle_action.2-transitive", True, lambda: is_two_transitive(tri_act))
    stab_t = PermGroup(d.permutations(d.stab2), d.n1 + d.n2)
    r.expect("A5.triangle_stabilizer_induces_S3", 6,
             lambda: stab_t.setwise_image_group(d.neighbours(d.n1).tolist()).order())
    r.expect("A6.kernel_on_triangles", 8,
             lambda: gx.setwise_image_group(gnb).order() // tri_act.order())
    gt = r.expect("A7.gamma_tower", list((SIDE_ORDERS["g1"],) + GAMMA_TOWER),
                  lambda: gamma_tower(d, g, base, 3, full))
    dt = r.expect("delta_tower.quotients", list(DELTA_TOWER),
                  lambda: quotients(delta_tower(d, base, 6, full)))
    r.artifacts["gamma_tower"] = gt
    r.artifacts["delta_tower"] = dt
    rng = random.Random(seed)
    others = rng.sample(range(1, d.n1), min(spot, d.n1 - 1))
    r.expect("towers_at_other_vertices", True,
             lambda: all(quotients(delta_tower(d, v, 6, full)) == list(DELTA_TOWER) for v in others),
             note=f"vertices {others}")
    return r


def build_graph(target: str, cache: Path | str | None = None, max_cosets: int = DEFAULT_MAX_COSETS,
                strategy: str = "hlt") -> CosetGraph:
    t1 = g1_table(target, cache, max_cosets, strategy)
    t2 = g2_table(target, cache, max_cosets, strategy)
    return build_delta(t1, t2)


def a16_part_sizes(order: int) -> tuple[int, int]:
    """Part sizes of Delta for a completion of the given order (arithmetic only)."""
    return order // SIDE_ORDERS["g1"], order // SIDE_ORDERS["g2"]
