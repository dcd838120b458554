"""Permutation groups with a base and strong generating set.

Permutations act on the right: ``p * q`` applies ``p`` first, and the image of
point ``i`` under ``p`` is ``p[i]``.  Point sets are ``range(degree)``.

The chain is built by deterministic Schreier-Sims.  Exhaustive element work
(centres, conjugacy classes, quotients, homomorphism checks) is only done for
groups of order at most ``EXHAUSTIVE_LIMIT``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

EXHAUSTIVE_LIMIT = 2**16
FINGERPRINT_LIMIT = 2**20
# explicit transversal storage budget per level, in array entries (int32)
_EXPLICIT_BUDGET = 150_000_000


class GroupTooLarge(ValueError):
    pass


class Permutation:
    __slots__ = ("_a", "_key")

    def __init__(self, images, check: bool = True):
        a = np.array(images, dtype=np.int32, copy=True) if not isinstance(images, np.ndarray) else images
        if a.dtype != np.int32:
            a = a.astype(np.int32)
        if check:
            n = a.shape[0]
            seen = np.zeros(n, dtype=bool)
            if n and (a.min() < 0 or a.max() >= n):
                raise ValueError("images out of range")
            seen[a] = True
            if not seen.all():
                raise ValueError("not a permutation")
        a.flags.writeable = False
        self._a = a
        self._key = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int32), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        a = np.arange(n, dtype=np.int32)
        for c in cycles:
            for i, x in enumerate(c):
                a[x] = c[(i + 1) % len(c)]
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def degree(self) -> int:
        return self._a.shape[0]

    def key(self) -> bytes:
        if self._key is None:
            self._key = self._a.tobytes()
        return self._key

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.key() == other.key()

    def __getitem__(self, i: int) -> int:
        return int(self._a[i])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(other._a[self._a], check=False)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._a)
        inv[self._a] = np.arange(self._a.shape[0], dtype=np.int32)
        return Permutation(inv, check=False)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Permutation.identity(self.degree)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(self.degree, dtype=np.int32)))

    def cycles(self) -> list[list[int]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        a = self._a
        for i in range(self.degree):
            if seen[i]:
                continue
            c = [i]
            seen[i] = True
            j = int(a[i])
            while j != i:
                c.append(j)
                seen[j] = True
                j = int(a[j])
            out.append(c)
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def support(self) -> np.ndarray:
        return np.nonzero(self._a != np.arange(self.degree, dtype=np.int32))[0]

    def __repr__(self) -> str:
        cs = [c for c in self.cycles() if len(c) > 1]
        return "Permutation(" + ("".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()") + ")"


def _commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


class _Level:
    """One level of a stabiliser chain.

    ``uinv`` rows are stored explicitly while ``orbit * degree`` stays within
    the budget; beyond it the level keeps only the Schreier tree and rebuilds
    representatives by walking to the root.
    """

    __slots__ = ("point", "degree", "gens", "orbit", "idx", "parent", "edge", "_U", "explicit")

    def __init__(self, point: int, degree: int, explicit: bool = True):
        self.point = point
        self.degree = degree
        self.gens: list[Permutation] = []
        self.orbit: list[int] = [point]
        self.idx = np.full(degree, -1, dtype=np.int32)
        self.idx[point] = 0
        # Schreier tree: parent[beta] = gamma and edge[beta] = i with gamma^gens[i] = beta
        self.parent = np.full(degree, -1, dtype=np.int32)
        self.edge = np.full(degree, -1, dtype=np.int32)
        self.explicit = explicit
        self._U = None
        if explicit:
            self._U = np.empty((min(degree, 16), degree), dtype=np.int32)
            self._U[0] = np.arange(degree, dtype=np.int32)

    def __contains__(self, beta: int) -> bool:
        return self.idx[beta] >= 0

    def uinv_array(self, beta: int) -> np.ndarray:
        if self.explicit:
            return self._U[self.idx[beta]]
        return _inverse_array(self.u_array(beta))

    def u_array(self, beta: int) -> np.ndarray:
        if self.explicit:
            return _inverse_array(self._U[self.idx[beta]])
        path = []
        while beta != self.point:
            path.append(int(self.edge[beta]))
            beta = int(self.parent[beta])
        out = np.arange(self.degree, dtype=np.int32)
        for gi in reversed(path):
            out = self.gens[gi].array[out]
        return out

    def u(self, beta: int) -> Permutation:
        """Coset representative with point^u = beta."""
        return Permutation(self.u_array(beta), check=False)

    def uinv(self, beta: int) -> Permutation:
        return Permutation(self.uinv_array(beta), check=False)

    def extend(self) -> None:
        """Close the orbit under the current gens."""
        queue = list(self.orbit)
        qi = 0
        arrays = [g.array for g in self.gens]
        invs = [None] * len(arrays)
        idx = self.idx
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            for gi, a in enumerate(arrays):
                beta = int(a[gamma])
                if idx[beta] >= 0:
                    continue
                k = len(self.orbit)
                idx[beta] = k
                self.parent[beta] = gamma
                self.edge[beta] = gi
                self.orbit.append(beta)
                queue.append(beta)
                if not self.explicit:
                    continue
                if (k + 1) * self.degree > _EXPLICIT_BUDGET:
                    self.explicit = False
                    self._U = None
                    continue
                if k >= self._U.shape[0]:
                    grown = np.empty((min(self.degree, 2 * k), self.degree), dtype=np.int32)
                    grown[:k] = self._U[:k]
                    self._U = grown
                if invs[gi] is None:
                    invs[gi] = _inverse_array(a)
                self._U[k] = self._U[idx[gamma]][invs[gi]]

    def copy(self) -> "_Level":
        c = _Level.__new__(_Level)
        c.point, c.degree, c.gens, c.orbit = self.point, self.degree, list(self.gens), list(self.orbit)
        c.idx, c.parent, c.edge = self.idx.copy(), self.parent.copy(), self.edge.copy()
        c.explicit = self.explicit
        c._U = None if self._U is None else self._U[: len(self.orbit)].copy()
        return c


def _inverse_array(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(a.shape[0], dtype=a.dtype)
    return out


class PermGroup:
    """A permutation group given by generators; the chain is built lazily."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 base: Sequence[int] = (), name: str | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree needed for the trivial group with no generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators of different degrees")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._base_prefix = tuple(base)
        self._levels: list[_Level] | None = None
        self._elements: list[Permutation] | None = None
        self._element_set: set[bytes] | None = None

    # -- chain -----------------------------------------------------------
    @classmethod
    def from_transitive_action(cls, generators: Sequence[Permutation],
                               stabilizer_generators: Sequence[Permutation],
                               name: str | None = None) -> "PermGroup":
        """Group acting transitively with a known stabiliser of point 0.

        Valid when ``stabilizer_generators`` generate the full stabiliser of
        point 0, as in a coset action where they are the images of the
        subgroup generators.  The top level of the chain is then the orbit of 0
        and the rest is the chain of the stabiliser.
        """
        g = cls(generators, name=name)
        n = g.degree
        top = _Level(0, n, explicit=n * n <= _EXPLICIT_BUDGET)
        top.gens = list(generators)
        top.extend()
        if len(top.orbit) != n:
            raise ValueError("action is not transitive")
        stab = cls([s for s in stabilizer_generators if not s.is_identity()], degree=n)
        if any(s[0] != 0 for s in stab.generators):
            raise ValueError("stabiliser generators must fix point 0")
        g._levels = [top] + stab._chain()
        return g

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = _schreier_sims(self.generators, self.degree, self._base_prefix)
        return self._levels

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(l.point for l in self._chain())

    def strong_generators(self) -> list[Permutation]:
        seen, out = set(), []
        for l in self._chain():
            for g in l.gens:
                if g.key() not in seen:
                    seen.add(g.key())
                    out.append(g)
        return out

    def basic_orbit_lengths(self) -> list[int]:
        return [len(l.orbit) for l in self._chain()]

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        levels = self._chain()
        h, j = _sift_array(levels, g.array, start)
        return Permutation(h, check=False), j

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        if self._element_set is not None:
            return g.key() in self._element_set
        r, _ = self.sift(g)
        return r.is_identity()

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    # -- orbits and stabilisers -----------------------------------------
    def orbit(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        arrays = [g.array for g in self.generators]
        i = 0
        while i < len(out):
            x = out[i]
            i += 1
            for a in arrays:
                y = int(a[x])
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for p in range(self.degree):
            if not seen[p]:
                o = self.orbit(p)
                seen[o] = True
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def with_base(self, points: Sequence[int]) -> "PermGroup":
        """Same group, chain rebuilt with ``points`` as base prefix."""
        return PermGroup(self.strong_generators() or self.generators, self.degree, base=points, name=self.name)

    def stabilizer(self, points: Sequence[int]) -> "PermGroup":
        """Pointwise stabiliser of ``points`` via base change."""
        pts = list(points)
        if not pts:
            return self
        h = self.with_base(pts)
        levels = h._chain()
        k = len(pts)
        if [l.point for l in levels[:k]] != pts[: len(levels)]:
            raise AssertionError("base change failed")
        gens = []
        seen = set()
        for l in levels[k:]:
            for g in l.gens:
                if g.key() not in seen:
                    seen.add(g.key())
                    gens.append(g)
        sub = PermGroup(gens, self.degree, name=None)
        sub._levels = [l.copy() for l in levels[k:]]
        return sub

    def setwise_image_group(self, points: Sequence[int]) -> "PermGroup":
        """Permutation group induced on an invariant point list (relabelled 0..k-1)."""
        pts = list(points)
        idx = {p: i for i, p in enumerate(pts)}
        gens = []
        for g in self.generators:
            img = g.array[np.array(pts, dtype=np.int64)]
            try:
                gens.append(Permutation([idx[int(x)] for x in img]))
            except KeyError:
                raise ValueError("point set is not invariant") from None
        return PermGroup(gens, len(pts))

    # -- elements -------------------------------------------------------
    def element_array(self, limit: int = EXHAUSTIVE_LIMIT) -> np.ndarray:
        """All elements as rows of an (order x degree) array, in chain order."""
        n = self.order()
        if n > limit:
            raise GroupTooLarge(f"group of order {n} exceeds the exhaustive limit {limit}")
        e = np.arange(self.degree, dtype=np.int32)[None, :]
        for lvl in reversed(self._chain()):
            reps = [lvl.u_array(b) for b in lvl.orbit]
            e = np.concatenate([r[e] for r in reps])
        return e

    def elements(self, limit: int = EXHAUSTIVE_LIMIT) -> list[Permutation]:
        if self._elements is None:
            arr = self.element_array(limit)
            self._elements = [Permutation(row, check=False) for row in arr]
            self._element_set = {e.key() for e in self._elements}
        return self._elements

    def element_keys(self) -> set[bytes]:
        self.elements()
        return self._element_set

    def closure_order(self, limit: int = EXHAUSTIVE_LIMIT) -> int:
        """Order by breadth-first closure; independent of the chain."""
        return len(closure(self.generators, self.degree, limit))

    # -- subgroup helpers -----------------------------------------------
    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> "PermGroup":
        return PermGroup(list(gens), self.degree, name=name)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    __hash__ = None

    def is_normal_in(self, g: "PermGroup") -> bool:
        return all(h.conj(x) in self for h in self.generators for x in g.generators)

    def normalizes(self, h: "PermGroup") -> bool:
        return h.is_normal_in(PermGroup(self.generators + h.generators, self.degree))

    def conjugate(self, x: Permutation) -> "PermGroup":
        return PermGroup([g.conj(x) for g in self.generators], self.degree)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])

    def is_elementary_abelian(self, p: int = 2) -> bool:
        return self.is_abelian() and all((g ** p).is_identity() for g in self.generators)

    def is_p_group(self, p: int = 2) -> bool:
        n = self.order()
        while n % p == 0:
            n //= p
        return n == 1

    def __repr__(self) -> str:
        nm = f"{self.name} " if self.name else ""
        return f"<PermGroup {nm}degree={self.degree} gens={len(self.generators)}>"


def _sift_array(levels: list[_Level], h: np.ndarray, start: int) -> tuple[np.ndarray, int]:
    for j in range(start, len(levels)):
        lvl = levels[j]
        beta = int(h[lvl.point])
        if lvl.idx[beta] < 0:
            return h, j
        if beta != lvl.point:
            h = lvl.uinv_array(beta)[h]
    return h, len(levels)


def _schreier_sims(generators: Sequence[Permutation], degree: int, base_prefix: Sequence[int]) -> list[_Level]:
    """Deterministic Schreier-Sims: every Schreier generator is sifted once."""
    gens = [g for g in generators if not g.is_identity()]
    ident = np.arange(degree, dtype=np.int32)
    levels: list[_Level] = [_Level(p, degree) for p in base_prefix]

    def new_base_point(h: np.ndarray) -> int:
        used = {l.point for l in levels}
        for p in np.nonzero(h != ident)[0]:
            if int(p) not in used:
                return int(p)
        raise AssertionError("non-identity element fixes the whole base")

    def add_gen(g: Permutation, lo: int, hi: int) -> None:
        for l in range(lo, hi):
            levels[l].gens.append(g)
            levels[l].extend()

    for g in gens:
        j = 0
        while j < len(levels) and g[levels[j].point] == levels[j].point:
            j += 1
        if j == len(levels):
            levels.append(_Level(new_base_point(g.array), degree))
        add_gen(g, 0, j + 1)

    checked: list[set[tuple[int, int]]] = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        lvl = levels[i]
        restart = False
        for beta in list(lvl.orbit):
            if restart:
                break
            ub = None
            for xi, x in enumerate(list(lvl.gens)):
                if (beta, xi) in checked[i]:
                    continue
                checked[i].add((beta, xi))
                gamma = x[beta]
                # tree edges give trivial Schreier generators
                if lvl.parent[gamma] == beta and lvl.edge[gamma] == xi:
                    continue
                if ub is None:
                    ub = lvl.u_array(beta)
                h = lvl.uinv_array(gamma)[x.array[ub]]
                y, j = _sift_array(levels, h, i + 1)
                if np.array_equal(y, ident):
                    continue
                if j == len(levels):
                    levels.append(_Level(new_base_point(y), degree))
                    checked.append(set())
                add_gen(Permutation(y, check=False), i + 1, j + 1)
                i = j
                restart = True
                break
        if not restart:
            i -= 1
    while levels and len(levels[-1].orbit) == 1 and not levels[-1].gens and len(levels) > len(base_prefix):
        levels.pop()
    return levels


def closure(gens: Sequence[Permutation], degree: int, limit: int = EXHAUSTIVE_LIMIT) -> list[Permutation]:
    """All elements by breadth-first multiplication."""
    ident = np.arange(degree, dtype=np.int32)
    seen = {ident.tobytes()}
    out = [ident]
    frontier = ident[None, :]
    while frontier.shape[0]:
        new = []
        for g in gens:
            for row in g.array[frontier]:
                k = row.tobytes()
                if k not in seen:
                    seen.add(k)
                    new.append(row)
        if len(out) + len(new) > limit:
            raise GroupTooLarge(f"closure exceeds {limit} elements")
        out += new
        frontier = np.array(new, dtype=np.int32).reshape(len(new), degree)
    return [Permutation(r, check=False) for r in out]


class _RowIndex:
    """Row lookup in a fixed integer array via a sorted void view."""

    def __init__(self, arr: np.ndarray):
        self._dt = np.dtype((np.void, arr.dtype.itemsize * arr.shape[1]))
        v = np.ascontiguousarray(arr).view(self._dt).ravel()
        self._order = np.argsort(v)
        self._sorted = v[self._order]

    def find(self, rows: np.ndarray) -> np.ndarray:
        v = np.ascontiguousarray(rows).view(self._dt).ravel()
        pos = np.searchsorted(self._sorted, v)
        pos[pos == len(self._sorted)] = 0
        hit = self._sorted[pos] == v
        return np.where(hit, self._order[pos], -1)


# ---------------------------------------------------------------------------
# structural subgroups


def _require_small(g: PermGroup, limit: int = EXHAUSTIVE_LIMIT) -> None:
    if g.order() > limit:
        raise GroupTooLarge(f"order {g.order()} exceeds exhaustive limit {limit}")


def normal_closure(g: PermGroup, subset: Iterable[Permutation]) -> PermGroup:
    gens: list[Permutation] = []
    n = PermGroup([], g.degree)
    queue = [s for s in subset]
    while queue:
        x = queue.pop()
        if x in n:
            continue
        gens.append(x)
        n = PermGroup(gens, g.degree)
        queue.extend(x.conj(t) for t in g.generators)
    return n


def derived_subgroup(g: PermGroup) -> PermGroup:
    gs = g.generators
    comms = [_commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]]
    return normal_closure(g, [c for c in comms if not c.is_identity()])


def frattini_2group(g: PermGroup) -> PermGroup:
    """Frattini subgroup of a 2-group: normal closure of squares and commutators."""
    if not g.is_p_group(2):
        raise ValueError("frattini_2group needs a 2-group")
    gs = g.generators
    items = [x * x for x in gs] + [_commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]]
    return normal_closure(g, [c for c in items if not c.is_identity()])


def centralizer(g: PermGroup, h: PermGroup | Sequence[Permutation]) -> PermGroup:
    """Centraliser in a small group of a subgroup or element list (exhaustive)."""
    _require_small(g)
    hs = h.generators if isinstance(h, PermGroup) else list(h)
    gens = [x for x in g.elements() if all(x * y == y * x for y in hs)]
    return _subgroup_from_elements(gens, g.degree)


def center(g: PermGroup) -> PermGroup:
    return centralizer(g, g)


def _subgroup_from_elements(elems: Sequence[Permutation], degree: int) -> PermGroup:
    """Subgroup equal to a given closed element list, with a small generating set."""
    gens: list[Permutation] = []
    h = PermGroup([], degree)
    for e in elems:
        if e not in h:
            gens.append(e)
            h = PermGroup(gens, degree)
    if h.order() != len(elems):
        raise AssertionError("element list is not a subgroup")
    return h


def intersection(a: PermGroup, b: PermGroup) -> PermGroup:
    small, big = (a, b) if a.order() <= b.order() else (b, a)
    _require_small(small)
    return _subgroup_from_elements([x for x in small.elements() if x in big], a.degree)


def conjugacy_classes(g: PermGroup) -> list[list[Permutation]]:
    """Classes as element lists, ordered by their first element in ``g.elements()``."""
    _require_small(g)
    elems = g.elements()
    arr = np.stack([e.array for e in elems]) if elems else np.zeros((0, g.degree), np.int32)
    index = _RowIndex(arr)
    moves = []
    for t in g.generators:
        ti = _inverse_array(t.array)
        m = index.find(t.array[arr[:, ti]])
        if (m < 0).any():
            raise AssertionError("conjugate outside the group")
        moves.append(m)
    label = np.arange(len(elems))
    while True:
        new = label.copy()
        for m in moves:
            np.minimum(new, new[m], out=new)
            np.minimum.at(new, m, label)
        if np.array_equal(new, label):
            break
        label = new
    classes: dict[int, list[Permutation]] = {}
    for i, lab in enumerate(label.tolist()):
        classes.setdefault(lab, []).append(elems[i])
    return list(classes.values())


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _p_normal_closure(g: PermGroup, x: Permutation, p: int) -> PermGroup | None:
    """Normal closure of x, or None as soon as it is seen not to be a p-group."""
    gens: list[Permutation] = []
    n = PermGroup([], g.degree)
    queue = [x]
    while queue:
        y = queue.pop()
        if y in n:
            continue
        gens.append(y)
        n = PermGroup(gens, g.degree)
        if not _is_p_power(n.order(), p):
            return None
        queue.extend(y.conj(t) for t in g.generators)
    return n


def pcore(g: PermGroup, p: int = 2) -> PermGroup:
    """Largest normal p-subgroup: generated by the elements whose normal closure is a p-group."""
    _require_small(g)
    core = PermGroup([], g.degree)
    for cls in conjugacy_classes(g):
        x = cls[0]
        if x.is_identity() or not _is_p_power(x.order(), p) or x in core:
            continue
        if _p_normal_closure(g, x, p) is not None:
            core = normal_closure(g, core.generators + [x])
    return core


def derived_series(g: PermGroup, max_len: int = 32) -> list[PermGroup]:
    series = [g]
    while len(series) <= max_len:
        d = derived_subgroup(series[-1])
        if d.order() == series[-1].order():
            break
        series.append(d)
    return series


def derived_length(g: PermGroup) -> int | None:
    """Derived length, or None when the group is not soluble."""
    s = derived_series(g)
    return len(s) - 1 if s[-1].order() == 1 else None


# ---------------------------------------------------------------------------
# quotients


@dataclass
class Quotient:
    """Regular action of G/N on the right cosets of N."""

    group: PermGroup
    coset_of: dict[bytes, int]
    reps: list[Permutation]

    def image(self, x: Permutation) -> Permutation:
        if x.key() not in self.coset_of:
            raise ValueError("element not in the group")
        return Permutation([self.coset_of[(r * x).key()] for r in self.reps], check=False)

    def image_subgroup(self, h: PermGroup) -> PermGroup:
        return PermGroup([self.image(x) for x in h.generators], self.group.degree)


def quotient(g: PermGroup, n: PermGroup) -> Quotient:
    _require_small(g)
    if not n.is_normal_in(g):
        raise ValueError("subgroup is not normal")
    nel = n.elements()
    coset_of: dict[bytes, int] = {}
    reps: list[Permutation] = []
    for e in g.elements():
        if e.key() in coset_of:
            continue
        c = len(reps)
        reps.append(e)
        for m in nel:
            coset_of[(m * e).key()] = c
    k = len(reps)
    gens = [Permutation([coset_of[(r * s).key()] for r in reps]) for s in g.generators]
    qg = PermGroup(gens, k)
    return Quotient(qg, coset_of, reps)


def abelian_invariants(g: PermGroup) -> tuple[int, ...]:
    """Invariants (prime powers, sorted) of an abelian group, from element orders."""
    _require_small(g)
    if not g.is_abelian():
        raise ValueError("group is not abelian")
    orders = Counter(x.order() for x in g.elements())
    n = g.order()
    out = []
    for p in _primes(n):
        # omega_k = #{x : x^(p^k) = 1}; number of cyclic factors of order >= p^k
        # is log_p(omega_k / omega_{k-1})
        prev = 1
        k = 1
        counts = []
        while True:
            om = sum(c for o, c in orders.items() if (p ** k) % o == 0)
            if om == prev:
                break
            counts.append(round(math.log(om // prev, p)))
            prev = om
            k += 1
        # counts[k-1] = number of factors of order >= p^k
        counts.append(0)
        for k in range(len(counts) - 1):
            out.extend([p ** (k + 1)] * (counts[k] - counts[k + 1]))
    return tuple(sorted(out))


def _primes(n: int) -> list[int]:
    ps, d = [], 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    return ps


def abelianization_invariants(g: PermGroup) -> tuple[int, ...]:
    d = derived_subgroup(g)
    if d.order() == g.order():
        return ()
    return abelian_invariants(quotient(g, d).group)


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class StructureFingerprint:
    order: int
    element_order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_length: int | None
    abelianization_invariants: tuple[int, ...]
    involution_count: int

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "element_orders": {str(k): v for k, v in self.element_order_histogram},
            "center_order": self.center_order,
            "derived_length": self.derived_length,
            "abelianization": list(self.abelianization_invariants),
            "involutions": self.involution_count,
        }


def fingerprint(g: PermGroup) -> StructureFingerprint:
    _require_small(g, FINGERPRINT_LIMIT)
    hist = Counter(x.order() for x in g.elements(limit=FINGERPRINT_LIMIT))
    return StructureFingerprint(
        order=g.order(),
        element_order_histogram=tuple(sorted(hist.items())),
        center_order=center(g).order() if g.order() <= EXHAUSTIVE_LIMIT else -1,
        derived_length=derived_length(g),
        abelianization_invariants=abelianization_invariants(g),
        involution_count=hist.get(2, 0),
    )


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class GenMap:
    """Generator images; ``images[i]`` is the image of ``source[i]``."""

    source: list[Permutation]
    images: list[Permutation]
    name: str = ""

    def __post_init__(self):
        if len(self.source) != len(self.images):
            raise ValueError("source and image lists differ in length")


@dataclass
class Homomorphism:
    domain: PermGroup
    table: dict[bytes, Permutation] = field(repr=False)

    def __call__(self, x: Permutation) -> Permutation:
        return self.table[x.key()]

    def image_of(self, h: PermGroup) -> PermGroup:
        return PermGroup([self(x) for x in h.generators], self.table[h.identity().key()].degree)

    def is_injective(self) -> bool:
        return len({v.key() for v in self.table.values()}) == len(self.table)

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """x -> other(self(x)); needs self's image inside other's domain."""
        return Homomorphism(self.domain, {k: other(v) for k, v in self.table.items()})

    def equals(self, other: "Homomorphism") -> bool:
        return all(other.table[k] == v for k, v in self.table.items())


def extend_homomorphism(m: GenMap, domain: PermGroup) -> Homomorphism | None:
    """Breadth-first extension of a generator map; None if inconsistent."""
    _require_small(domain)
    if domain.order() > EXHAUSTIVE_LIMIT:
        raise GroupTooLarge("use presentation-based checking for large domains")
    src = [s for s in m.source]
    if not all(s in domain for s in src) or PermGroup(src, domain.degree).order() != domain.order():
        raise ValueError("source elements must generate the domain")
    tdeg = m.images[0].degree if m.images else domain.degree
    ident = domain.identity()
    table = {ident.key(): Permutation.identity(tdeg)}
    queue = [ident]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        fx = table[x.key()]
        for s, t in zip(src, m.images):
            y = x * s
            fy = fx * t
            k = y.key()
            prev = table.get(k)
            if prev is None:
                table[k] = fy
                queue.append(y)
            elif prev != fy:
                return None
    return Homomorphism(domain, table)


def verify_homomorphism(m: GenMap, domain: PermGroup) -> bool:
    return extend_homomorphism(m, domain) is not None


# ---------------------------------------------------------------------------
# conjugacy of subgroups


@dataclass
class ConjugacyClass:
    representative: int
    members: list[int]
    witnesses: dict[int, Permutation]


def subgroup_key(h: PermGroup) -> frozenset:
    return frozenset(h.element_keys())


def subgroup_conjugacy_classes(g: PermGroup, subs: Sequence[PermGroup]) -> list[ConjugacyClass]:
    """Partition ``subs`` into g-classes; witnesses satisfy rep^w == member."""
    _require_small(g)
    keys = [subgroup_key(h) for h in subs]
    where: dict[frozenset, list[int]] = {}
    for i, k in enumerate(keys):
        where.setdefault(k, []).append(i)
    assigned = [False] * len(subs)
    classes = []
    for i, h in enumerate(subs):
        if assigned[i]:
            continue
        # orbit of h under conjugation, tracking conjugators
        start = keys[i]
        orbit = {start: g.identity()}
        queue = [(h.elements(), g.identity())]
        qi = 0
        while qi < len(queue):
            elems, w = queue[qi]
            qi += 1
            for t in g.generators:
                ti = t.inverse()
                conj = [ti * e * t for e in elems]
                k = frozenset(e.key() for e in conj)
                if k not in orbit:
                    orbit[k] = w * t
                    queue.append((conj, w * t))
        cls = ConjugacyClass(i, [], {})
        for k, w in orbit.items():
            for j in where.get(k, []):
                if not assigned[j]:
                    assigned[j] = True
                    cls.members.append(j)
                    cls.witnesses[j] = w
        classes.append(cls)
    return classes
