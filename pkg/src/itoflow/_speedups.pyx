# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled combinatorial kernels.

Function-for-function mirror of the pure-Python module; the package picks
whichever imports.  Words are tuples of blocks, blocks are sorted tuples of
ints, surjections are tuples of values covering 1..k.
"""

from itertools import combinations

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def pack_word(values):
    """Rank-normalize a sequence of ints onto 1..k preserving order."""
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(values)))}
    return tuple(ranks[v] for v in values)


def is_surjection(values):
    """True when values is onto 1..k for k = max(values) (empty is onto [0])."""
    if not values:
        return True
    k = max(values)
    return min(values) >= 1 and len(set(values)) == k


def descent_count(f):
    """Number of positions i with f[i] >= f[i+1] (ties count as descents)."""
    cdef Py_ssize_t i, n = len(f)
    cdef int cnt = 0
    for i in range(n - 1):
        if f[i] >= f[i + 1]:
            cnt += 1
    return cnt


def descent_set(f):
    """Positions i (1-based) with f[i-1] >= f[i], as a sorted tuple."""
    cdef Py_ssize_t i, n = len(f)
    out = []
    for i in range(n - 1):
        if f[i] >= f[i + 1]:
            out.append(i + 1)
    return tuple(out)


cdef void _surj_rec(int pos, int missing, int n, int k, int max_fiber,
                    int *counts, int *buf, list out):
    cdef int v, c, i
    if missing > n - pos:
        return
    if pos == n:
        out.append(tuple([buf[i] for i in range(n)]))
        return
    for v in range(1, k + 1):
        c = counts[v]
        if max_fiber and c >= max_fiber:
            continue
        counts[v] = c + 1
        buf[pos] = v
        _surj_rec(pos + 1, missing - (1 if c == 0 else 0), n, k,
                  max_fiber, counts, buf, out)
        counts[v] = c


def surjections(int n, int k, int max_fiber=0):
    """All surjections [n] -> [k] as value tuples, lexicographically sorted.

    max_fiber > 0 restricts every preimage to at most that many elements.
    """
    if k > n or k < 0 or (max_fiber and k * max_fiber < n):
        return []
    if n == 0:
        return [()]
    cdef int *counts = <int *> malloc((k + 1) * sizeof(int))
    cdef int *buf = <int *> malloc(n * sizeof(int))
    if counts == NULL or buf == NULL:
        if counts != NULL:
            free(counts)
        if buf != NULL:
            free(buf)
        raise MemoryError()
    cdef int i
    for i in range(k + 1):
        counts[i] = 0
    out = []
    try:
        _surj_rec(0, k, n, k, max_fiber, counts, buf, out)
    finally:
        free(counts)
        free(buf)
    return out


def qsh_words(u, v):
    """Quasi-shuffle of two block words, as a dict word -> multiplicity."""
    cdef Py_ssize_t nu = len(u), nv = len(v)
    cdef Py_ssize_t i, j
    if nu == 0:
        return {tuple(v): 1}
    if nv == 0:
        return {tuple(u): 1}
    prev = [None] * (nv + 1)
    prev[0] = {(): 1}
    for j in range(1, nv + 1):
        prev[j] = {tuple(v[:j]): 1}
    for i in range(1, nu + 1):
        cur = [None] * (nv + 1)
        cur[0] = {tuple(u[:i]): 1}
        bu = u[i - 1]
        for j in range(1, nv + 1):
            bv = v[j - 1]
            merged = tuple(sorted(bu + bv))
            acc = {}
            for w, c in (<dict> cur[j - 1]).items():
                key = w + (bv,)
                acc[key] = acc.get(key, 0) + c
            for w, c in (<dict> prev[j]).items():
                key = w + (bu,)
                acc[key] = acc.get(key, 0) + c
            for w, c in (<dict> prev[j - 1]).items():
                key = w + (merged,)
                acc[key] = acc.get(key, 0) + c
            cur[j] = acc
        prev = cur
    return prev[nv]


def apply_to_blocks(f, blocks):
    """Merge a tuple of blocks along the fibers of a surjection f."""
    if not f:
        return ()
    cdef int k = max(f)
    cdef Py_ssize_t pos
    fibers = [[] for _ in range(k)]
    for pos in range(len(f)):
        fibers[<Py_ssize_t> f[pos] - 1].extend(blocks[pos])
    return tuple(tuple(sorted(fb)) for fb in fibers)


def diamond_words(f, g):
    """All terms of the surjection product f diamond g, coefficient 1 each."""
    if not f:
        return [tuple(g)]
    if not g:
        return [tuple(f)]
    cdef int k = max(f)
    cdef int l = max(g)
    cdef int r, x
    out = []
    for r in range(max(k, l), k + l + 1):
        universe = list(range(1, r + 1))
        for alpha in combinations(universe, k):
            aset = set(alpha)
            need = [x for x in universe if x not in aset]
            if len(need) > l:
                continue
            free_vals = [x for x in universe if x in aset]
            for extra in combinations(free_vals, l - len(need)):
                beta = tuple(sorted(need + list(extra)))
                term = tuple([alpha[x - 1] for x in f]) + tuple(
                    [beta[y - 1] for y in g]
                )
                out.append(term)
    return out
