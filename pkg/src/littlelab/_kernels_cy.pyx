# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the hot recursions over bitmask row sets.

Row masks must fit in 64 bits (the selector falls back to the pure-Python
twin for wider domains).
"""

from libc.stdint cimport uint64_t

BACKEND = "cython"


cdef int _ldim(tuple masks, int domain_size, dict memo):
    cdef int n = len(masks)
    if n == 0:
        return -1
    if n == 1:
        return 0
    cached = memo.get(masks)
    if cached is not None:
        return <int>cached
    cdef int best = 0, x, i, cand, other
    cdef uint64_t row
    cdef list zeros, ones
    for x in range(domain_size):
        zeros = []
        ones = []
        for i in range(n):
            row = <uint64_t>masks[i]
            if (row >> x) & 1:
                ones.append(masks[i])
            else:
                zeros.append(masks[i])
        if not zeros or not ones:
            continue
        cand = _ldim(tuple(zeros), domain_size, memo)
        other = _ldim(tuple(ones), domain_size, memo)
        if other < cand:
            cand = other
        cand += 1
        if cand > best:
            best = cand
    memo[masks] = best
    return best


cdef int _game(tuple masks, int domain_size, dict memo):
    cdef int n = len(masks)
    if n <= 1:
        return 0
    cached = memo.get(masks)
    if cached is not None:
        return <int>cached
    cdef int best = 0, x, i, v0, v1, predict1, predict0, cand
    cdef uint64_t row
    cdef list zeros, ones
    for x in range(domain_size):
        zeros = []
        ones = []
        for i in range(n):
            row = <uint64_t>masks[i]
            if (row >> x) & 1:
                ones.append(masks[i])
            else:
                zeros.append(masks[i])
        if not zeros or not ones:
            continue
        v0 = _game(tuple(zeros), domain_size, memo)
        v1 = _game(tuple(ones), domain_size, memo)
        predict1 = 1 + v0 if 1 + v0 > v1 else v1
        predict0 = v0 if v0 > 1 + v1 else 1 + v1
        cand = predict1 if predict1 < predict0 else predict0
        if cand > best:
            best = cand
    memo[masks] = best
    return best


def ldim_masks(rows, int domain_size):
    return _ldim(tuple(sorted(rows)), domain_size, {})


def game_value_masks(rows, int domain_size):
    return _game(tuple(sorted(rows)), domain_size, {})
