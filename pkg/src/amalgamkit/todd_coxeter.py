"""Todd-Coxeter coset enumeration with HLT+lookahead and Felsch strategies.

A generator whose square is a relator gets a single self-inverse column;
any other generator gets a forward and an inverse column.  Closed tables are
standardized, so two strategies that close on the same input produce the
same table.
"""

from __future__ import annotations

import hashlib
import struct
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _tc_kernel as K
from .perm import Permutation, PermGroup
from .words import Presentation, Word

DEFAULT_MAX_COSETS = 5_000_000
STRATEGIES = ("hlt", "felsch")
CACHE_MAGIC = b"CTB1"
_DEDUCTION_STACK = 1 << 16


class EnumerationExhausted(RuntimeError):
    """Coset limit reached; carries live/total statistics."""

    def __init__(self, max_cosets: int, live: int, total: int):
        super().__init__(f"coset limit {max_cosets} exceeded (live {live}, defined {total})")
        self.max_cosets = max_cosets
        self.live = live
        self.total = total


@dataclass
class _Columns:
    ngens: int
    col_of: dict[int, int]  # signed letter -> column
    inv: np.ndarray
    forward: list[int]      # column of generator k+1

    @classmethod
    def build(cls, p: Presentation) -> "_Columns":
        invol = p.involutions()
        col_of: dict[int, int] = {}
        inv: list[int] = []
        fwd: list[int] = []
        for k in range(1, p.ngens + 1):
            c = len(inv)
            fwd.append(c)
            if k in invol:
                col_of[k] = col_of[-k] = c
                inv.append(c)
            else:
                col_of[k], col_of[-k] = c, c + 1
                inv += [c + 1, c]
        return cls(p.ngens, col_of, np.array(inv, dtype=np.int32), fwd)

    @property
    def ncols(self) -> int:
        return len(self.inv)

    def word(self, w: Word, cyclic: bool) -> list[int]:
        out: list[int] = []
        for x in w.letters:
            c = self.col_of[x]
            if out and self.inv[out[-1]] == c:
                out.pop()
            else:
                out.append(c)
        if cyclic:
            while len(out) > 1 and self.inv[out[-1]] == out[0]:
                out = out[1:-1]
        return out


def _flatten(words: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    starts = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        starts[i + 1] = starts[i] + len(w)
    flat = np.array([c for w in words for c in w], dtype=np.int32)
    return flat, starts


@dataclass
class CosetTable:
    presentation: Presentation
    subgroup: list[Word]
    table: np.ndarray = field(repr=False)        # standardized, cosets x columns
    columns: _Columns = field(repr=False)
    strategy: str = "hlt"
    total_defined: int = 0
    max_live: int = 0
    elapsed: float = 0.0
    trace: np.ndarray | None = field(default=None, repr=False)
    from_cache: bool = False

    @property
    def index(self) -> int:
        return int(self.table.shape[0])

    @property
    def closed(self) -> bool:
        return True

    def generator_images(self) -> list[np.ndarray]:
        return [self.table[:, c] for c in self.columns.forward]

    def permutations(self) -> list[Permutation]:
        return [Permutation(np.ascontiguousarray(a)) for a in self.generator_images()]

    def verify(self) -> bool:
        """Complete, relators trivial on all cosets, subgroup fixes coset 0."""
        rels, rs = _flatten([self.columns.word(r, True) for r in self.presentation.relators])
        sub, ss = _flatten([self.columns.word(w, False) for w in self.subgroup])
        return bool(K.check_closed(self.table, rels, rs, sub, ss))

    def permutation_image(self) -> PermGroup:
        if not self.verify():
            raise AssertionError("coset table fails the relator check")
        return PermGroup(self.permutations(), self.index)

    def subgroup_permutations(self) -> list[Permutation]:
        perms = self.permutations()
        n = self.index
        out = []
        for w in self.subgroup:
            out.append(w.evaluate(perms, lambda a, b: a * b, lambda a: a.inverse(),
                                  Permutation.identity(n)))
        return out

    def trace_coset(self, w: Word, start: int = 0) -> int:
        c = start
        for col in self.columns.word(w, False):
            c = int(self.table[c, col])
        return c


def todd_coxeter(p: Presentation, subgroup: Sequence[Word] = (), max_cosets: int = DEFAULT_MAX_COSETS,
                 strategy: str = "hlt") -> CosetTable:
    """Enumerate the cosets of ``subgroup``; raises EnumerationExhausted at the limit."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    t0 = time.perf_counter()
    cols = _Columns.build(p)
    relw = [cols.word(r, True) for r in p.relators]
    relw = [w for w in relw if w]
    rels, rstart = _flatten(relw)
    subw = [w for w in (cols.word(s, False) for s in subgroup) if w]
    sub, sstart = _flatten(subw)

    tab = np.full((max_cosets, cols.ncols), -1, dtype=np.int32)
    par = np.zeros(max_cosets, dtype=np.int32)
    queue = np.zeros(max_cosets, dtype=np.int32)
    ded = np.zeros((_DEDUCTION_STACK, 2), dtype=np.int32)
    trace = np.zeros((K.TRACE_CAP, 3), dtype=np.int64)
    st = np.zeros(K.S_LEN, dtype=np.int64)
    st[K.S_NALLOC] = st[K.S_NLIVE] = st[K.S_TOTAL] = 1
    st[K.S_TRACE_EVERY] = 1
    max_live = 1

    if strategy == "felsch":
        conj, cstart, bycol, bcstart = _conjugates(relw, cols)

    pos = 0
    first = True
    while True:
        if strategy == "hlt":
            r = K.hlt_run(tab, par, cols.inv, st, queue, ded, trace, rels, rstart, sub, sstart, pos)
        else:
            r = K.felsch_run(tab, par, cols.inv, st, queue, ded, trace, rels, rstart, conj, cstart,
                             bycol, bcstart, sub, sstart, pos, first)
        max_live = max(max_live, int(st[K.S_NALLOC]))
        if r < 0:
            break
        first = False
        # out of rows: look ahead, then compress
        K.lookahead(tab, par, cols.inv, st, queue, ded, trace, rels, rstart, 0)
        live = int(st[K.S_NLIVE])
        if live >= max_cosets - max(1, max_cosets // 200):
            raise EnumerationExhausted(max_cosets, live, int(st[K.S_TOTAL]))
        nalloc = int(st[K.S_NALLOC])
        newidx = K.compress(tab, par, st)
        st[K.S_FULL] = 0
        if strategy == "hlt":
            pos = _next_live(newidx, r, nalloc)
        else:
            pos = 0

    n = int(st[K.S_NALLOC])
    if strategy == "hlt" or int(st[K.S_NLIVE]) != n:
        K.compress(tab, par, st)
        n = int(st[K.S_NALLOC])
    std = K.standardize(tab[:n], np.arange(cols.ncols, dtype=np.int32))
    del tab
    ct = CosetTable(p, list(subgroup), std, cols, strategy, int(st[K.S_TOTAL]), max_live,
                    time.perf_counter() - t0, trace[: int(st[K.S_TRACE_N])].copy())
    if std.shape[0] != n or not ct.verify():
        raise AssertionError("enumeration finished with an inconsistent table")
    return ct


def _next_live(newidx: np.ndarray, r: int, nalloc: int) -> int:
    while r < nalloc and newidx[r] < 0:
        r += 1
    if r >= nalloc:
        return int(np.count_nonzero(newidx >= 0))
    return int(newidx[r])


def _conjugates(relw: list[list[int]], cols: _Columns):
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for w in relw:
        winv = [int(cols.inv[c]) for c in reversed(w)]
        for v in (w, winv):
            for i in range(len(v)):
                rot = tuple(v[i:] + v[:i])
                if rot not in seen:
                    seen.add(rot)
                    out.append(rot)
    out.sort(key=lambda t: t[0])
    conj, cstart = _flatten(out)
    bycol = np.arange(len(out), dtype=np.int64)
    bcstart = np.zeros(cols.ncols + 1, dtype=np.int64)
    for t in out:
        bcstart[t[0] + 1] += 1
    bcstart = np.cumsum(bcstart)
    return conj, cstart, bycol, bcstart


# ---------------------------------------------------------------------------
# cache


def cache_key(p: Presentation, subgroup: Sequence[Word]) -> bytes:
    h = hashlib.sha256(p.to_text_plain().encode())
    for w in subgroup:
        h.update(b"|" + ",".join(map(str, w.letters)).encode())
    return h.digest()


def save_table(path: Path | str, t: CosetTable) -> None:
    imgs = np.stack(t.generator_images(), axis=1).astype("<u4")
    head = CACHE_MAGIC + struct.pack("<II", len(t.columns.forward), t.index)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(str(path) + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(head)
        fh.write(np.ascontiguousarray(imgs).tobytes())
        fh.write(cache_key(t.presentation, t.subgroup))
    tmp.replace(path)


def load_table(path: Path | str, p: Presentation, subgroup: Sequence[Word]) -> CosetTable | None:
    """Cached table if the file is intact, matches the presentation and still
    passes the relator check; otherwise None."""
    try:
        data = Path(path).read_bytes()
    except OSError:
        return None
    if len(data) < 12 + 32 or data[:4] != CACHE_MAGIC:
        return None
    ngens, n = struct.unpack("<II", data[4:12])
    body = 12 + 4 * ngens * n
    if ngens != p.ngens or len(data) != body + 32 or data[body:] != cache_key(p, subgroup):
        return None
    imgs = np.frombuffer(data[12:body], dtype="<u4").reshape(n, ngens).astype(np.int32)
    cols = _Columns.build(p)
    tab = np.empty((n, cols.ncols), dtype=np.int32)
    for k, c in enumerate(cols.forward):
        col = imgs[:, k]
        tab[:, c] = col
        ic = int(cols.inv[c])
        if ic != c:
            invcol = np.empty(n, dtype=np.int32)
            invcol[col] = np.arange(n, dtype=np.int32)
            tab[:, ic] = invcol
    if (tab < 0).any() or (tab >= n).any():
        return None
    ct = CosetTable(p, list(subgroup), tab, cols, "cache", from_cache=True)
    return ct if ct.verify() else None


def enumerate_cached(p: Presentation, subgroup: Sequence[Word], cache_dir: Path | str | None,
                     max_cosets: int = DEFAULT_MAX_COSETS, strategy: str = "hlt") -> CosetTable:
    if cache_dir is None:
        return todd_coxeter(p, subgroup, max_cosets, strategy)
    path = Path(cache_dir) / (cache_key(p, subgroup).hex()[:24] + ".ctb")
    t0 = time.perf_counter()
    ct = load_table(path, p, subgroup)
    if ct is not None:
        ct.elapsed = time.perf_counter() - t0
        return ct
    ct = todd_coxeter(p, subgroup, max_cosets, strategy)
    save_table(path, ct)
    return ct
