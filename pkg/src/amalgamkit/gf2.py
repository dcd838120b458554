"""Linear algebra over GF(2) on int bitsets.

A vector of dimension ``d`` is a Python ``int`` whose bit ``j`` holds
coordinate ``j`` (bit 0 is the first coordinate).  Matrices store one such
int per row and act on row vectors from the right, so ``v @ M`` is the xor of
the rows of ``M`` selected by the bits of ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

MAX_DIM = 64
MAX_ENUM_DIM = 7


def parity(x: int) -> int:
    return x.bit_count() & 1


def vec_from_bits(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence (first coordinate first) into an int."""
    v = 0
    for j, b in enumerate(bits):
        if b & 1:
            v |= 1 << j
    return v


def vec_to_bits(v: int, dim: int) -> tuple[int, ...]:
    return tuple((v >> j) & 1 for j in range(dim))


def vec_mat(v: int, rows: Sequence[int]) -> int:
    out = 0
    j = 0
    while v:
        if v & 1:
            out ^= rows[j]
        v >>= 1
        j += 1
    return out


def span(basis: Iterable[int]) -> list[int]:
    """All vectors in the span of ``basis`` (the basis need not be independent)."""
    out = {0}
    for b in basis:
        if b not in out:
            out |= {x ^ b for x in out}
    return sorted(out)


def _check_dim(d: int) -> None:
    if not 0 <= d <= MAX_DIM:
        raise ValueError(f"dimension {d} outside 0..{MAX_DIM}")


def _reduce_rows(rows: Iterable[int]) -> list[int]:
    """Fully reduced echelon basis: pivot = lowest set bit, pivots ascending."""
    piv: dict[int, int] = {}
    for r in rows:
        for p, b in piv.items():
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            for q in list(piv):
                if (piv[q] >> p) & 1:
                    piv[q] ^= r
            piv[p] = r
    return [piv[p] for p in sorted(piv)]


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        _check_dim(self.ncols)
        mask = (1 << self.ncols) - 1
        if any(r & ~mask for r in self.rows):
            raise ValueError("row has bits beyond ncols")

    @classmethod
    def identity(cls, d: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(d)), d)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        ncols = len(entries[0]) if entries else 0
        return cls(tuple(vec_from_bits(r) for r in entries), ncols)

    @classmethod
    def elementary(cls, d: int, i: int, j: int) -> "Gf2Matrix":
        """Identity plus a single 1 at (i, j), 0-indexed."""
        if i == j:
            raise ValueError("root element needs an off-diagonal position")
        rows = [1 << k for k in range(d)]
        rows[i] |= 1 << j
        return cls(tuple(rows), d)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [list(vec_to_bits(r, self.ncols)) for r in self.rows]

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return Gf2Matrix(tuple(vec_mat(r, other.rows) for r in self.rows), other.ncols)

    __mul__ = __matmul__

    def apply(self, v: int) -> int:
        """Row vector times matrix."""
        return vec_mat(v, self.rows)

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(
            tuple(
                reduce(lambda acc, i: acc | (((self.rows[i] >> j) & 1) << i), range(self.nrows), 0)
                for j in range(self.ncols)
            ),
            self.nrows,
        )

    def rank(self) -> int:
        return len(_reduce_rows(self.rows))

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.ncols

    def inverse(self) -> "Gf2Matrix":
        if not self.is_square:
            raise ValueError("non-square matrix")
        d = self.ncols
        aug = [r | (1 << (d + i)) for i, r in enumerate(self.rows)]
        red = _reduce_rows(aug)
        low = (1 << d) - 1
        if len(red) < d or any((red[i] & low) != (1 << i) for i in range(d)):
            raise ValueError("singular matrix")
        return Gf2Matrix(tuple(r >> d for r in red), d)

    def __pow__(self, k: int) -> "Gf2Matrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Gf2Matrix.identity(self.ncols)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def order(self) -> int:
        ident = Gf2Matrix.identity(self.ncols)
        g, k = self, 1
        while g != ident:
            g = g @ self
            k += 1
        return k

    def __str__(self) -> str:
        return "\n".join("".join(str(b) for b in vec_to_bits(r, self.ncols)) for r in self.rows)


def rref(m: Gf2Matrix) -> tuple[Gf2Matrix, int]:
    red = _reduce_rows(m.rows)
    rank = len(red)
    return Gf2Matrix(tuple(red) + (0,) * (m.nrows - rank), m.ncols), rank


@dataclass(frozen=True)
class Subspace:
    """Row space in canonical reduced echelon form; equality is basis equality."""

    basis: tuple[int, ...]
    ambient_dim: int

    @classmethod
    def spanned_by(cls, vectors: Iterable[int], ambient_dim: int) -> "Subspace":
        _check_dim(ambient_dim)
        vs = list(vectors)
        if any(v >> ambient_dim for v in vs):
            raise ValueError("vector outside ambient space")
        return cls(tuple(_reduce_rows(vs)), ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls((), ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(tuple(1 << i for i in range(ambient_dim)), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple((b & -b).bit_length() - 1 for b in self.basis)

    def reduce(self, v: int) -> int:
        for p, b in zip(self.pivots, self.basis):
            if (v >> p) & 1:
                v ^= b
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def vectors(self) -> list[int]:
        return span(self.basis)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vectors())

    def __len__(self) -> int:
        return 1 << self.dim

    def __le__(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(b in other for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def image(self, m: Gf2Matrix) -> "Subspace":
        return Subspace.spanned_by((m.apply(b) for b in self.basis), m.ncols)

    def is_invariant(self, m: Gf2Matrix) -> bool:
        return all(m.apply(b) in self for b in self.basis)

    def __repr__(self) -> str:
        w = self.ambient_dim
        return f"Subspace<{','.join(''.join(str(x) for x in vec_to_bits(b, w)) for b in self.basis)}>"


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return Subspace.spanned_by(a.basis + b.basis, a.ambient_dim)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rows (x|x) for x in a and (y|0) for y in b, low block first."""
    _same_ambient(a, b)
    d = a.ambient_dim
    low = (1 << d) - 1
    red = _reduce_rows([x | (x << d) for x in a.basis] + list(b.basis))
    inter = [r >> d for r in red if r & low == 0]
    return Subspace.spanned_by(inter, d)


def project(s: Subspace, k: Subspace) -> Subspace:
    """Image of ``s`` in ``V/k``, coordinatised by the non-pivot columns of ``k``."""
    _same_ambient(s, k)
    free = [j for j in range(k.ambient_dim) if j not in set(k.pivots)]
    coords = []
    for v in s.basis:
        r = k.reduce(v)
        coords.append(sum(((r >> j) & 1) << t for t, j in enumerate(free)))
    return Subspace.spanned_by(coords, len(free))


def lift(t: Subspace, k: Subspace) -> Subspace:
    """Preimage in ``V`` of a subspace of ``V/k`` given in :func:`project` coordinates."""
    free = [j for j in range(k.ambient_dim) if j not in set(k.pivots)]
    if t.ambient_dim != len(free):
        raise ValueError("quotient dimension mismatch")
    vecs = [sum(((c >> i) & 1) << j for i, j in enumerate(free)) for c in t.basis]
    return Subspace.spanned_by(vecs + list(k.basis), k.ambient_dim)


def quotient_lift(a: Subspace, b: Subspace) -> Subspace:
    """Preimage of the image of ``a`` in ``V/b``; equals ``a + b``."""
    return lift(project(a, b), b)


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def all_subspaces(ambient_dim: int) -> list[Subspace]:
    """Every subspace of GF(2)^d exactly once, by enumerating echelon shapes."""
    if ambient_dim > MAX_ENUM_DIM:
        raise ValueError(f"all_subspaces limited to dimension <= {MAX_ENUM_DIM}")
    if ambient_dim < 0:
        raise ValueError("negative dimension")
    d = ambient_dim
    out = []
    for k in range(d + 1):
        for piv in combinations(range(d), k):
            pset = set(piv)
            free_slots = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, d) if j not in pset]
            for fill in product((0, 1), repeat=len(free_slots)):
                rows = [1 << p for p in piv]
                for (i, j), bit in zip(free_slots, fill):
                    if bit:
                        rows[i] |= 1 << j
                out.append(Subspace(tuple(rows), d))
    return out


@dataclass(frozen=True)
class QuadraticForm:
    """q(v) = sum_i v_i q(e_i) + sum_{i<j} v_i v_j B(e_i, e_j).

    ``gram`` holds the polar form (symmetric, zero diagonal) one int per row;
    ``diag`` has bit i set iff q(e_i) = 1.
    """

    dim: int
    gram: tuple[int, ...]
    diag: int

    def __post_init__(self):
        if len(self.gram) != self.dim:
            raise ValueError("gram size mismatch")
        for i, r in enumerate(self.gram):
            if (r >> i) & 1:
                raise ValueError("polar form must be alternating")
            for j in range(self.dim):
                if ((r >> j) & 1) != ((self.gram[j] >> i) & 1):
                    raise ValueError("polar form must be symmetric")

    @classmethod
    def from_values(cls, value: "Sequence[int] | callable", dim: int) -> "QuadraticForm":
        """Recover a form from its values; raises if the function is not quadratic."""
        f = value if callable(value) else (lambda v: value[v])
        diag = sum((f(1 << i) & 1) << i for i in range(dim))
        gram = []
        for i in range(dim):
            row = 0
            for j in range(dim):
                if i != j and (f((1 << i) | (1 << j)) ^ f(1 << i) ^ f(1 << j)) & 1:
                    row |= 1 << j
            gram.append(row)
        q = cls(dim, tuple(gram), diag)
        if dim <= 16:
            bad = next((v for v in range(1 << dim) if q(v) != (f(v) & 1)), None)
            if bad is not None:
                raise ValueError(f"values are not a quadratic form (fails at {bad:b})")
        return q

    def __call__(self, v: int) -> int:
        acc = parity(self.diag & v)
        w = v
        i = 0
        while w:
            if w & 1:
                acc ^= parity(self.gram[i] & v & ~((2 << i) - 1))
            w >>= 1
            i += 1
        return acc

    def polar(self, u: int, v: int) -> int:
        return parity(vec_mat(u, self.gram) & v)

    def radical(self) -> Subspace:
        rows = [v for v in range(1 << self.dim) if vec_mat(v, self.gram) == 0] if self.dim <= 12 else None
        if rows is None:
            raise ValueError("radical only for dim <= 12")
        return Subspace.spanned_by(rows, self.dim)

    def zero_count(self) -> int:
        return sum(1 for v in range(1 << self.dim) if self(v) == 0)

    def witt_type(self) -> str:
        """'plus' or 'minus' for a non-degenerate form of even dimension."""
        if self.dim % 2 or self.radical().dim:
            raise ValueError("form is degenerate or odd-dimensional")
        m = self.dim // 2
        z = self.zero_count()
        if z == 2 ** (2 * m - 1) + 2 ** (m - 1):
            return "plus"
        if z == 2 ** (2 * m - 1) - 2 ** (m - 1):
            return "minus"
        raise AssertionError("zero count inconsistent with a non-degenerate form")

    def transformed(self, m: Gf2Matrix) -> "QuadraticForm":
        """The form v -> q(v @ m)."""
        return QuadraticForm.from_values(lambda v: self(m.apply(v)), self.dim)

    def is_invariant(self, m: Gf2Matrix) -> bool:
        return self.transformed(m) == self


def is_totally_singular(s: Subspace, q: QuadraticForm) -> bool:
    if s.ambient_dim != q.dim:
        raise ValueError("subspace not in the form's space")
    b = s.basis
    return all(q(x) == 0 for x in b) and all(q.polar(x, y) == 0 for x, y in combinations(b, 2))


def is_totally_isotropic(s: Subspace, q: QuadraticForm) -> bool:
    if s.ambient_dim != q.dim:
        raise ValueError("subspace not in the form's space")
    return all(q.polar(x, y) == 0 for x, y in combinations(s.basis, 2))
