"""numba kernels for coset enumeration.

State is a flat int32 table ``tab[coset, column]`` (-1 = undefined), a
union-find parent array ``p`` (``p[c] == c`` for live cosets) and a small
int64 ``st`` vector of counters, indexed by the ``S_*`` constants.  Cosets are
allocated sequentially and never reused; when the allocation runs out the
driver does a lookahead pass and compresses the table.
"""

from __future__ import annotations

import numpy as np
from numba import njit

S_NALLOC = 0   # next unused row
S_NLIVE = 1
S_TOTAL = 2    # cosets ever defined
S_FULL = 3     # set when a definition was refused
S_DSTACK = 4   # deduction stack height
S_DOVER = 5    # deduction stack overflowed
S_TRACE_N = 6
S_TRACE_EVERY = 7
S_STEPS = 8
S_LEN = 9

TRACE_CAP = 4096


@njit(cache=True)
def _rep(p, c):
    r = c
    while p[r] != r:
        r = p[r]
    while p[c] != r:
        t = p[c]
        p[c] = r
        c = t
    return r


@njit(cache=True)
def _trace(st, trace):
    st[S_STEPS] += 1
    if st[S_STEPS] % st[S_TRACE_EVERY] != 0:
        return
    n = st[S_TRACE_N]
    if n == TRACE_CAP:
        for i in range(TRACE_CAP // 2):
            trace[i, 0] = trace[2 * i + 1, 0]
            trace[i, 1] = trace[2 * i + 1, 1]
            trace[i, 2] = trace[2 * i + 1, 2]
        n = TRACE_CAP // 2
        st[S_TRACE_EVERY] *= 2
    trace[n, 0] = st[S_STEPS]
    trace[n, 1] = st[S_NLIVE]
    trace[n, 2] = st[S_TOTAL]
    st[S_TRACE_N] = n + 1


@njit(cache=True)
def _push_deduction(st, ded, c, x):
    h = st[S_DSTACK]
    if h < ded.shape[0]:
        ded[h, 0] = c
        ded[h, 1] = x
        st[S_DSTACK] = h + 1
    else:
        st[S_DOVER] = 1


@njit(cache=True)
def _define(tab, p, inv, st, trace, ded, c, x):
    n = st[S_NALLOC]
    if n >= tab.shape[0]:
        st[S_FULL] = 1
        return -1
    st[S_NALLOC] = n + 1
    st[S_NLIVE] += 1
    st[S_TOTAL] += 1
    p[n] = n
    for y in range(tab.shape[1]):
        tab[n, y] = -1
    tab[c, x] = n
    tab[n, inv[x]] = c
    _push_deduction(st, ded, c, x)
    _trace(st, trace)
    return n


@njit(cache=True)
def _merge(p, queue, qlen, st, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a == b:
        return qlen
    if b < a:
        a, b = b, a
    p[b] = a
    queue[qlen] = b
    st[S_NLIVE] -= 1
    return qlen + 1


@njit(cache=True)
def _coincidence(tab, p, inv, st, queue, ded, a, b):
    qlen = _merge(p, queue, 0, st, a, b)
    i = 0
    ncols = tab.shape[1]
    while i < qlen:
        g = queue[i]
        i += 1
        for x in range(ncols):
            d = tab[g, x]
            if d < 0:
                continue
            tab[d, inv[x]] = -1
            mu = _rep(p, g)
            nu = _rep(p, d)
            if tab[mu, x] >= 0:
                qlen = _merge(p, queue, qlen, st, nu, tab[mu, x])
            elif tab[nu, inv[x]] >= 0:
                qlen = _merge(p, queue, qlen, st, mu, tab[nu, inv[x]])
            else:
                tab[mu, x] = nu
                tab[nu, inv[x]] = mu
                _push_deduction(st, ded, mu, x)


@njit(cache=True)
def _scan(tab, p, inv, st, queue, ded, trace, a, w, lo, hi, fill):
    """Scan word w[lo:hi] at coset a; define cosets when ``fill``.

    Returns 0 normally, 1 when a coincidence was processed, 2 when the table
    ran out of rows.
    """
    f = a
    i = lo
    b = a
    j = hi - 1
    while True:
        while i <= j and tab[f, w[i]] >= 0:
            f = tab[f, w[i]]
            i += 1
        if i > j:
            if f != a:
                _coincidence(tab, p, inv, st, queue, ded, f, a)
                return 1
            return 0
        while j >= i and tab[b, inv[w[j]]] >= 0:
            b = tab[b, inv[w[j]]]
            j -= 1
        if j < i:
            _coincidence(tab, p, inv, st, queue, ded, f, b)
            return 1
        if i == j:
            tab[f, w[i]] = b
            tab[b, inv[w[i]]] = f
            _push_deduction(st, ded, f, w[i])
            return 0
        if not fill:
            return 0
        if _define(tab, p, inv, st, trace, ded, f, w[i]) < 0:
            return 2


@njit(cache=True)
def compress(tab, p, st):
    """Renumber live cosets 0..nlive-1 keeping their order; returns the map."""
    n = st[S_NALLOC]
    newidx = np.full(n, -1, dtype=np.int32)
    k = 0
    for c in range(n):
        if p[c] == c:
            newidx[c] = k
            k += 1
    ncols = tab.shape[1]
    for c in range(n):
        nc = newidx[c]
        if nc < 0:
            continue
        for x in range(ncols):
            t = tab[c, x]
            tab[nc, x] = newidx[t] if t >= 0 else -1
    for c in range(k):
        p[c] = c
    st[S_NALLOC] = k
    st[S_NLIVE] = k
    return newidx


@njit(cache=True)
def lookahead(tab, p, inv, st, queue, ded, trace, rels, rstart, start):
    """Scan every live coset from ``start`` against all relators without defining."""
    c = start
    nrel = rstart.shape[0] - 1
    while c < st[S_NALLOC]:
        if p[c] == c:
            for r in range(nrel):
                _scan(tab, p, inv, st, queue, ded, trace, c, rels, rstart[r], rstart[r + 1], False)
                if p[c] != c:
                    break
        c += 1
    st[S_DSTACK] = 0
    st[S_DOVER] = 0


@njit(cache=True)
def hlt_run(tab, p, inv, st, queue, ded, trace, rels, rstart, sub, sstart, a):
    """HLT from coset ``a``; returns -1 when closed, else the coset to resume at
    after the driver has made room."""
    nsub = sstart.shape[0] - 1
    nrel = rstart.shape[0] - 1
    ncols = tab.shape[1]
    if a == 0:
        for s in range(nsub):
            if _scan(tab, p, inv, st, queue, ded, trace, 0, sub, sstart[s], sstart[s + 1], True) == 2:
                return 0
    while a < st[S_NALLOC]:
        st[S_DSTACK] = 0
        if p[a] == a:
            for r in range(nrel):
                code = _scan(tab, p, inv, st, queue, ded, trace, a, rels, rstart[r], rstart[r + 1], True)
                if code == 2:
                    return a
                if p[a] != a:
                    break
            if p[a] == a:
                for x in range(ncols):
                    if tab[a, x] < 0:
                        if _define(tab, p, inv, st, trace, ded, a, x) < 0:
                            return a
        a += 1
    return -1


@njit(cache=True)
def _process_deductions(tab, p, inv, st, queue, ded, trace, conj, cstart, bycol, bcstart):
    while st[S_DSTACK] > 0:
        h = st[S_DSTACK] - 1
        st[S_DSTACK] = h
        a = ded[h, 0]
        x = ded[h, 1]
        if p[a] != a:
            continue
        for k in range(bcstart[x], bcstart[x + 1]):
            ci = bycol[k]
            _scan(tab, p, inv, st, queue, ded, trace, a, conj, cstart[ci], cstart[ci + 1], False)
            if p[a] != a:
                break
        if p[a] != a:
            continue
        b = tab[a, x]
        if b < 0:
            continue
        y = inv[x]
        for k in range(bcstart[y], bcstart[y + 1]):
            ci = bycol[k]
            _scan(tab, p, inv, st, queue, ded, trace, b, conj, cstart[ci], cstart[ci + 1], False)
            if p[b] != b:
                break


@njit(cache=True)
def felsch_run(tab, p, inv, st, queue, ded, trace, rels, rstart, conj, cstart, bycol, bcstart,
               sub, sstart, ptr, init):
    """Felsch strategy; returns -1 when closed, else a resume pointer."""
    ncols = tab.shape[1]
    nsub = sstart.shape[0] - 1
    if init:
        for s in range(nsub):
            if _scan(tab, p, inv, st, queue, ded, trace, 0, sub, sstart[s], sstart[s + 1], True) == 2:
                return 0
            _process_deductions(tab, p, inv, st, queue, ded, trace, conj, cstart, bycol, bcstart)
    rescanned = False
    while True:
        # next undefined entry in row-major order
        found = False
        while ptr < st[S_NALLOC]:
            if p[ptr] == ptr:
                for x in range(ncols):
                    if tab[ptr, x] < 0:
                        found = True
                        break
            if found:
                break
            ptr += 1
        if not found:
            if st[S_DOVER] == 1 or not rescanned:
                # recover lost deductions, then make sure nothing was skipped
                lookahead(tab, p, inv, st, queue, ded, trace, rels, rstart, 0)
                rescanned = True
                ptr = 0
                continue
            return -1
        rescanned = False
        for x in range(ncols):
            if tab[ptr, x] < 0:
                if _define(tab, p, inv, st, trace, ded, ptr, x) < 0:
                    return ptr
                _process_deductions(tab, p, inv, st, queue, ded, trace, conj, cstart, bycol, bcstart)
                if st[S_DOVER] == 1:
                    lookahead(tab, p, inv, st, queue, ded, trace, rels, rstart, 0)
                if p[ptr] != ptr:
                    break


@njit(cache=True)
def check_closed(tab, rels, rstart, sub, sstart):
    """True iff the table is complete, every relator closes at every coset and
    every subgroup word fixes coset 0."""
    n = tab.shape[0]
    for c in range(n):
        for x in range(tab.shape[1]):
            if tab[c, x] < 0:
                return False
    for c in range(n):
        for r in range(rstart.shape[0] - 1):
            f = c
            for i in range(rstart[r], rstart[r + 1]):
                f = tab[f, rels[i]]
            if f != c:
                return False
    for s in range(sstart.shape[0] - 1):
        f = 0
        for i in range(sstart[s], sstart[s + 1]):
            f = tab[f, sub[i]]
        if f != 0:
            return False
    return True


@njit(cache=True)
def standardize(tab, colorder):
    """Renumber cosets in first-appearance order scanning rows in order."""
    n = tab.shape[0]
    ncols = tab.shape[1]
    newidx = np.full(n, -1, dtype=np.int32)
    order = np.empty(n, dtype=np.int32)
    newidx[0] = 0
    order[0] = 0
    k = 1
    i = 0
    while i < k:
        c = order[i]
        i += 1
        for xi in range(ncols):
            d = tab[c, colorder[xi]]
            if d >= 0 and newidx[d] < 0:
                newidx[d] = k
                order[k] = d
                k += 1
    out = np.empty((k, ncols), dtype=np.int32)
    for j in range(k):
        c = order[j]
        for x in range(ncols):
            d = tab[c, x]
            out[j, x] = newidx[d] if d >= 0 else -1
    return out
