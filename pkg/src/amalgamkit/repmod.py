"""GF(2)-modules from sections of 2-groups, the twisted module W, and complements.

A section P/K with P/K elementary abelian is coordinatized by a basis of coset
representatives: vector bit i stands for basis element i.  Group elements
act by conjugation, giving matrices that act on row vectors from the right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gf2 import (Gf2Matrix, QuadraticForm, Subspace, all_subspaces, is_totally_isotropic,
                  is_totally_singular, subspace_sum)
from .perm import (ConjugacyClass, Permutation, PermGroup, StructureFingerprint, fingerprint,
                   subgroup_conjugacy_classes)
from .words import Presentation, Word, parse_presentation

L32_PRESENTATION = "gens: x y\nrel: x^2\nrel: y^3\nrel: (x*y)^7\nrel: [x,y]^4\n"


class ModuleError(ValueError):
    pass


@dataclass
class GroupModule:
    """The section ``p/k`` under conjugation by ``actors``."""

    p: PermGroup
    k: PermGroup
    actors: list[Permutation]
    basis: list[Permutation] = field(init=False)
    _coord: dict[bytes, int] = field(init=False, repr=False)

    def __post_init__(self):
        kel = self.k.elements()
        kset = {x.key() for x in kel}
        if not self.k.is_subgroup_of(self.p) or not self.k.is_normal_in(self.p):
            raise ModuleError("k must be a normal subgroup of p")
        ident = self.p.identity()
        span = {ident.key(): (0, ident)}   # key -> (vector, element) over coset reps
        for x in kel:
            span[x.key()] = (0, x)
        basis: list[Permutation] = []
        for x in self.p.elements():
            if x.key() in span:
                continue
            if not ((x * x).key() in kset):
                raise ModuleError("p/k is not elementary abelian")
            bit = 1 << len(basis)
            basis.append(x)
            for key, (v, e) in list(span.items()):
                y = e * x
                span[y.key()] = (v | bit, y)
        if len(span) != self.p.order():
            raise ModuleError("p/k is not elementary abelian")
        self.basis = basis
        self._coord = {key: v for key, (v, _) in span.items()}
        for g in self.actors:
            if any(b.conj(g) not in self.p for b in basis):
                raise ModuleError("actor does not normalize p")
        # abelian quotient check: commutators of basis elements lie in k
        for a, b in itertools.combinations(basis, 2):
            if (a.inverse() * b.inverse() * a * b).key() not in kset:
                raise ModuleError("p/k is not abelian")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: Permutation) -> int:
        return self._coord[x.key()]

    def element(self, v: int) -> Permutation:
        out = self.p.identity()
        for i, b in enumerate(self.basis):
            if (v >> i) & 1:
                out = out * b
        return out

    def matrix(self, g: Permutation) -> Gf2Matrix:
        return Gf2Matrix(tuple(self.coords(b.conj(g)) for b in self.basis), self.dim)

    def matrices(self) -> list[Gf2Matrix]:
        return [self.matrix(g) for g in self.actors]

    def subspace(self, h: PermGroup | Sequence[Permutation]) -> Subspace:
        gens = h.generators if isinstance(h, PermGroup) else h
        return Subspace.spanned_by([self.coords(x) for x in gens], self.dim)

    def preimage(self, s: Subspace) -> PermGroup:
        return PermGroup([self.element(v) for v in s.basis] + list(self.k.generators), self.p.degree)

    def invariant_subspaces(self, method: str = "auto") -> list[Subspace]:
        mats = self.matrices()
        if method == "auto":
            method = "enumerate" if self.dim <= 7 else "spin"
        if method == "enumerate":
            return [s for s in all_subspaces(self.dim) if all(s.is_invariant(m) for m in mats)]
        return spin_submodules(mats, self.dim)


def spin(v: int, mats: Sequence[Gf2Matrix], dim: int) -> Subspace:
    """Smallest invariant subspace containing v."""
    s = Subspace.spanned_by([v], dim)
    frontier = [v]
    while frontier:
        nxt = []
        for w in frontier:
            for m in mats:
                y = m.apply(w)
                if y not in s:
                    s = Subspace.spanned_by(list(s.basis) + [y], dim)
                    nxt.append(y)
        frontier = nxt
    return s


def spin_submodules(mats: Sequence[Gf2Matrix], dim: int) -> list[Subspace]:
    """All invariant subspaces: cyclic submodules of every nonzero seed, closed under sums."""
    cyclic: dict[Subspace, None] = {}
    for v in range(1, 1 << dim):
        cyclic.setdefault(spin(v, mats, dim))
    found = {Subspace.zero(dim): None}
    found.update(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for a in frontier:
            for b in cyclic:
                c = subspace_sum(a, b)
                if c not in found:
                    found[c] = None
                    nxt.append(c)
        frontier = nxt
    return sorted(found, key=lambda s: (s.dim, s.basis))


def squaring_form(m: GroupModule, z: Permutation) -> QuadraticForm:
    """q(a K) = 1 iff a^2 = z, for a section P/<z> with z central of order 2."""
    if m.k.order() != 2 or z not in m.k or z.is_identity():
        raise ModuleError("section must be taken modulo a subgroup of order 2 generated by z")
    if any(z * g != g * z for g in m.p.generators):
        raise ModuleError("z is not central")
    zk, one = z.key(), m.p.identity().key()
    values = [0] * (1 << m.dim)
    seen = [None] * (1 << m.dim)
    for x in m.p.elements():
        sq = (x * x).key()
        if sq not in (zk, one):
            raise ModuleError("square outside <z>")
        v = m.coords(x)
        q = int(sq == zk)
        if seen[v] is not None and seen[v] != q:
            raise ModuleError("squaring is not constant on cosets")
        seen[v] = q
        values[v] = q
    return QuadraticForm.from_values(values, m.dim)


def commutator_form_matches(m: GroupModule, q: QuadraticForm, z: Permutation) -> bool:
    """Polar form of q agrees with [a,b] = z on all pairs of coset representatives."""
    for u in range(1 << m.dim):
        a = m.element(u)
        for v in range(u, 1 << m.dim):
            b = m.element(v)
            c = a.inverse() * b.inverse() * a * b
            if int(c == z) != q.polar(u, v):
                return False
    return True


# ---------------------------------------------------------------------------
# the module W


def _dot(a: int, v: int) -> int:
    return (a & v).bit_count() & 1


def _eps(a: int, b: int) -> int:
    """Nonzero vector of ker a ∩ ker b when a, b are distinct and nonzero, else 0."""
    if a == 0 or b == 0 or a == b:
        return 0
    hits = [v for v in range(1, 8) if _dot(a, v) == 0 and _dot(b, v) == 0]
    assert len(hits) == 1
    return hits[0]


def _gl3_elements() -> list[Gf2Matrix]:
    out = []
    for rows in itertools.product(range(1, 8), repeat=3):
        m = Gf2Matrix(rows, 3)
        if m.is_invertible():
            out.append(m)
    return out


@dataclass
class WModule:
    """Pairs (v, a) with v in V = F_2^3 and a in the dual, a read as v -> a.v."""

    elements: list[tuple[int, int]]
    actors: list[Gf2Matrix]
    basis: list[tuple[int, int]]
    coord: dict[tuple[int, int], int]

    @staticmethod
    def add(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        return (x[0] ^ y[0] ^ _eps(x[1], y[1]), x[1] ^ y[1])

    @staticmethod
    def act(x: tuple[int, int], g: Gf2Matrix) -> tuple[int, int]:
        """(v, a) -> (v g, a g^-T)."""
        return (g.apply(x[0]), g.inverse().transpose().apply(x[1]))

    @staticmethod
    def q(x: tuple[int, int]) -> int:
        v, a = x
        return int(a != 0 and _dot(a, v) == 0)

    def vector(self, x: tuple[int, int]) -> int:
        return self.coord[x]

    def point(self, vec: int) -> tuple[int, int]:
        out = (0, 0)
        for i, b in enumerate(self.basis):
            if (vec >> i) & 1:
                out = self.add(out, b)
        return out

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, g: Gf2Matrix) -> Gf2Matrix:
        return Gf2Matrix(tuple(self.vector(self.act(b, g)) for b in self.basis), self.dim)

    def form(self) -> QuadraticForm:
        return QuadraticForm.from_values([self.q(self.point(v)) for v in range(1 << self.dim)], self.dim)

    def subspace(self, pts: Iterable[tuple[int, int]]) -> Subspace:
        return Subspace.spanned_by([self.vector(x) for x in pts], self.dim)

    def is_closed(self, pts: Iterable[tuple[int, int]]) -> bool:
        s = set(pts)
        return all(self.add(a, b) in s for a in s for b in s)

    def check_axioms(self) -> list[str]:
        """Names of failed checks (empty when all hold)."""
        bad = []
        E = self.elements
        zero = (0, 0)
        if any(self.add(a, b) != self.add(b, a) for a in E for b in E):
            bad.append("commutative")
        if any(self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) for a in E for b in E for c in E):
            bad.append("associative")
        if any(self.add(a, zero) != a or self.add(a, a) != zero for a in E):
            bad.append("identity-and-exponent-2")
        for g in self.actors:
            if any(self.act(self.add(a, b), g) != self.add(self.act(a, g), self.act(b, g)) for a in E for b in E):
                bad.append("action-additive")
                break
        for g in self.actors:
            if any(self.q(self.act(a, g)) != self.q(a) for a in E):
                bad.append("form-invariant")
                break
        return bad


def build_w_module() -> WModule:
    elements = [(v, a) for a in range(8) for v in range(8)]
    actors = [Gf2Matrix.elementary(3, i, j) for i in range(3) for j in range(3) if i != j]
    basis: list[tuple[int, int]] = []
    span = {(0, 0): 0}
    for x in [(1, 0), (2, 0), (4, 0), (0, 1), (0, 2), (0, 4)]:
        if x in span:
            continue
        bit = 1 << len(basis)
        basis.append(x)
        for y, v in list(span.items()):
            span[WModule.add(y, x)] = v | bit
    if len(span) != 64:
        raise AssertionError("W basis does not span")
    return WModule(elements, actors, basis, span)


def w_witnesses(w: WModule) -> dict[str, object]:
    """The S-invariant pieces U_1, U_2, U_3 for v = e1 and U = <e2, e3>.

    S is the stabiliser in GL_3(2) of v and of U.  alpha_i is the functional
    whose kernel is <v, u_i>.
    """
    v = 1
    us = [2, 4, 6]
    alphas = []
    for u in us:
        ker = {0, v, u, v ^ u}
        a = [a for a in range(1, 8) if all(_dot(a, x) == 0 for x in ker)]
        alphas.append(a[0])
    u1 = [(0, 0)] + [(u, 0) for u in us]
    u2 = [(0, 0)] + [(v, a) for a in alphas]
    u3 = [(0, 0)] + [(u ^ v, a) for u, a in zip(us, alphas)]
    S = [g for g in _gl3_elements() if g.apply(v) == v and {g.apply(u) for u in us} == set(us)]
    out: dict[str, object] = {"S_order": len(S)}
    for name, pts in (("U1", u1), ("U2", u2), ("U3", u3)):
        closed = w.is_closed(pts)
        inv = all({w.act(x, g) for x in pts} == set(pts) for g in S)
        out[name] = {"subspace": closed, "S_invariant": inv,
                     "q_nonzero": any(w.q(x) for x in pts), "dim": w.subspace(pts).dim}
    return out


# ---------------------------------------------------------------------------
# the invariant-isotropic count


def q_module(n: int):
    """(module Q_n / <r> under B_n ∩ C_n, squaring form, r) from the generator table."""
    from .mataction import build_generators

    if not 4 <= n <= 6:
        raise ValueError("n must lie in 4..6")
    t = build_generators(n)
    d = n + 1
    qpos = [(i, 1) for i in range(2, d + 1)] + [(d, j) for j in range(2, n + 1)]
    pos_name = {v: k for k, v in t.entries.items()}
    qnames = [pos_name[p] for p in qpos]
    Q = t.group(qnames, name=f"Q{n}")
    r = t.perms[pos_name[(d, 1)]]
    mod = GroupModule(Q, PermGroup([r], Q.degree), [t.perms[k] for k in t.shared])
    return mod, squaring_form(mod, r), r


def count_invariant_isotropic(n: int, vanishing: str = "quadratic") -> int:
    """Invariant subspaces of dimension n-1 of Q_n/<r> on which the squaring
    form vanishes.  ``vanishing="polar"`` asks only for the polar form to
    vanish, which is weaker in characteristic 2."""
    mod, q, _ = q_module(n)
    subs = mod.invariant_subspaces("enumerate" if n == 4 else "spin")
    test = {"quadratic": is_totally_singular, "polar": is_totally_isotropic}[vanishing]
    return sum(1 for s in subs if s.dim == n - 1 and test(s, q))


# ---------------------------------------------------------------------------
# complements


@dataclass
class ComplementClass:
    representative: PermGroup      # preimage in g of a class representative
    size: int
    fingerprint: StructureFingerprint
    flags: dict[str, bool]
    generators: tuple[Permutation, Permutation]


@dataclass
class ComplementReport:
    pairs_tested: int
    pairs_valid: int
    complements: int
    classes: list[ComplementClass]
    lifts: tuple[Permutation, Permutation]


def _relators_hold_mod(words: Sequence[Word], x: Permutation, y: Permutation, z: PermGroup) -> bool:
    one = Permutation.identity(x.degree)
    for w in words:
        val = w.evaluate([x, y], lambda a, b: a * b, lambda a: a.inverse(), one)
        if val not in z:
            return False
    return True


def find_lifts(complement: PermGroup, pres: Presentation, z: PermGroup) -> tuple[Permutation, Permutation]:
    """First (x, y) in element order of ``complement`` satisfying ``pres`` mod z and generating it."""
    el = complement.elements()
    one = complement.identity()
    invols = [e for e in el if (e * e) in z and e not in z]
    thirds = [e for e in el if (e ** 3) in z and e not in z]
    for x in invols:
        for y in thirds:
            if _relators_hold_mod(pres.relators, x, y, z):
                if PermGroup([x, y] + z.generators, complement.degree).order() == complement.order() * (
                        1 if all(g in complement for g in z.generators) else z.order()):
                    return x, y
    raise ModuleError("no generating pair satisfies the presentation")


def classify_complements(g: PermGroup, q: PermGroup, z: PermGroup, complement: PermGroup,
                         pres: Presentation | None = None,
                         flag_subgroups: dict[str, PermGroup] | None = None) -> ComplementReport:
    """Complements to q/z in g/z, as preimages in g, up to g-conjugacy.

    Sweeps (u x, v y) over u, v in q, where (x, y) are fixed lifts from a known
    complement.  Every complement contains exactly one pair mapping onto the
    images of (x, y) in g/q, and that pair is of this form, so the sweep is
    exhaustive.  ``flag_subgroups`` name elementary abelian normal subgroups
    E containing z; the flag records whether z has a complement in E that
    is invariant under the class representative.
    """
    pres = pres or parse_presentation(L32_PRESENTATION)
    x0, y0 = find_lifts(complement, pres, z)
    qel = q.elements()
    zset = z.element_keys()
    # one representative per coset of z in q
    reps, seen = [], set()
    for u in qel:
        if u.key() in seen:
            continue
        reps.append(u)
        for c in z.elements():
            seen.add((c * u).key())
    valid_pairs = 0
    found: dict[frozenset, tuple[Permutation, Permutation]] = {}
    for u in qel:
        for v in qel:
            x, y = u * x0, v * y0
            if not _relators_hold_mod(pres.relators, x, y, z):
                continue
            valid_pairs += 1
            h = PermGroup([x, y] + z.generators, g.degree)
            if h.order() != complement.order() * z.order() // _common(complement, z):
                raise ModuleError("pair does not generate a complement")
            key = frozenset(h.element_keys())
            found.setdefault(key, (x, y))
    subs = [PermGroup([x, y] + z.generators, g.degree) for x, y in found.values()]
    gens_list = list(found.values())
    classes = subgroup_conjugacy_classes(g, subs)
    out = []
    for cls in classes:
        rep = subs[cls.representative]
        flags = {}
        for name, e in (flag_subgroups or {}).items():
            flags[name] = has_invariant_complement(e, z, rep.generators)
        out.append(ComplementClass(rep, len(cls.members), fingerprint(rep), flags,
                                   gens_list[cls.representative]))
    return ComplementReport(len(qel) ** 2, valid_pairs, len(subs), out, (x0, y0))


def _common(a: PermGroup, b: PermGroup) -> int:
    return sum(1 for x in b.elements() if x in a)


def has_invariant_complement(e: PermGroup, z: PermGroup, actors: Sequence[Permutation]) -> bool:
    """Does z have a complement in the elementary abelian group e invariant under actors?"""
    triv = PermGroup([], e.degree)
    mod = GroupModule(e, triv, list(actors))
    zs = mod.subspace(z)
    for s in mod.invariant_subspaces():
        if s.dim == mod.dim - zs.dim and subspace_sum(s, zs).dim == mod.dim:
            return True
    return False
