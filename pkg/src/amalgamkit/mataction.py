"""Root-element generators inside AGL_n(2) <= L_{n+1}(2) and their actions.

Positions are 1-indexed ``(row, col)`` pairs.  The affine group is the
stabiliser of the row vector ``e_1``; the translations sit in column 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .gf2 import Gf2Matrix
from .perm import Permutation, PermGroup
from .words import Word

N4_POSITIONS = {
    "a1": (2, 1), "a2": (3, 1), "a3": (3, 2), "a4": (4, 1), "a5": (4, 2),
    "a6": (4, 3), "a7": (5, 1), "a8": (5, 2), "a9": (5, 3), "a10": (5, 4),
    "a11": (2, 3), "a12": (3, 4), "a13": (4, 5),
}

WORD_TABLE_LIMIT = 2**16


def root_element(d: int, row: int, col: int) -> Gf2Matrix:
    return Gf2Matrix.elementary(d, row - 1, col - 1)


def _positions(n: int) -> list[tuple[int, int]]:
    """Shared positions first (lower roots row-major, then the upper chain),
    then the extra root of B_n, then that of C_n."""
    d = n + 1
    lower = [(i, j) for i in range(2, d + 1) for j in range(1, i)]
    upper = [(i, i + 1) for i in range(2, n - 1)]
    return lower + upper + [(n - 1, n), (n, n + 1)]


@dataclass
class GeneratorTable:
    n: int
    entries: dict[str, tuple[int, int]]
    names: list[str]
    shared: list[str]
    b_extra: str
    c_extra: str
    matrices: dict[str, Gf2Matrix] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def b_names(self) -> list[str]:
        return self.shared + [self.b_extra]

    @property
    def c_names(self) -> list[str]:
        return self.shared + [self.c_extra]

    def matrix(self, name: str) -> Gf2Matrix:
        return self.matrices[name]

    @cached_property
    def action(self) -> "VectorAction":
        return VectorAction(self.dim)

    @cached_property
    def perms(self) -> dict[str, Permutation]:
        return {k: self.action.to_permutation(m) for k, m in self.matrices.items()}

    def group(self, names: Iterable[str], name: str | None = None) -> PermGroup:
        return PermGroup([self.perms[k] for k in names], self.action.degree, name=name)

    def eval_word(self, w: Word, names: Sequence[str] | None = None,
                  images: dict[str, Gf2Matrix] | None = None) -> Gf2Matrix:
        """Evaluate a word; letter k refers to ``names[k-1]`` (default: ``self.names``)."""
        names = self.names if names is None else names
        images = self.matrices if images is None else images
        out = Gf2Matrix.identity(self.dim)
        for x in w.letters:
            m = images[names[abs(x) - 1]]
            out = out @ (m if x > 0 else m.inverse())
        return out

    @cached_property
    def _word_table(self) -> "WordTable":
        return WordTable(self)

    def factor_element(self, g: Gf2Matrix) -> Word:
        """A word in the shared generators (letters index ``self.names``) equal to ``g``."""
        return self._word_table.factor(g)


def build_generators(n: int) -> GeneratorTable:
    if not 3 <= n <= 8:
        raise ValueError("n must lie in 3..8")
    pos = _positions(n)
    if n == 4:
        names = list(N4_POSITIONS)
        assert list(N4_POSITIONS.values()) == pos
    else:
        names = [f"a{k + 1}" for k in range(len(pos))]
    entries = dict(zip(names, pos))
    d = n + 1
    mats = {k: root_element(d, *entries[k]) for k in names}
    return GeneratorTable(n, entries, names, names[:-2], names[-2], names[-1], mats)


class VectorAction:
    """Action of GL_d(2) on the nonzero row vectors, labelled by value minus one."""

    def __init__(self, d: int):
        if not 1 <= d <= 20:
            raise ValueError("dimension out of range for a point action")
        self.d = d
        self.degree = (1 << d) - 1
        self._vecs = np.arange(1, self.degree + 1, dtype=np.int64)

    def point(self, v: int) -> int:
        return v - 1

    def vector(self, p: int) -> int:
        return p + 1

    def to_permutation(self, m: Gf2Matrix) -> Permutation:
        if m.nrows != self.d or m.ncols != self.d:
            raise ValueError("matrix dimension does not match the action")
        if not m.is_invertible():
            raise ValueError("singular matrix")
        img = np.zeros_like(self._vecs)
        for j, r in enumerate(m.rows):
            img ^= ((self._vecs >> j) & 1) * r
        return Permutation((img - 1).astype(np.int32), check=False)

    def to_matrix(self, p: Permutation) -> Gf2Matrix:
        """Inverse of ``to_permutation`` for permutations that come from matrices."""
        rows = tuple(p[(1 << j) - 1] + 1 for j in range(self.d))
        m = Gf2Matrix(rows, self.d)
        if self.to_permutation(m) != p:
            raise ValueError("permutation is not linear")
        return m


class WordTable:
    """Breadth-first words for every element of the shared subgroup."""

    def __init__(self, table: GeneratorTable, limit: int = WORD_TABLE_LIMIT):
        gens = [(table.names.index(k) + 1, table.matrices[k]) for k in table.shared]
        ident = Gf2Matrix.identity(table.dim)
        words: dict[tuple[int, ...], tuple[int, ...]] = {ident.rows: ()}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            wx = words[x.rows]
            for idx, g in gens:
                y = x @ g
                if y.rows not in words:
                    words[y.rows] = wx + (idx,)
                    if len(words) > limit:
                        raise ValueError("shared subgroup too large for a word table")
                    queue.append(y)
        self.words = words

    def __len__(self) -> int:
        return len(self.words)

    def factor(self, g: Gf2Matrix) -> Word:
        try:
            return Word(self.words[g.rows])
        except KeyError:
            raise ValueError("element does not lie in the shared subgroup") from None
