# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pykernel``. Symbols must be < 64."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef int _lex_order(int n, const int* seq, const u64* masks, int* out) nogil:
    cdef int* rem = <int*> malloc(n * sizeof(int))
    if rem == NULL:
        return -1
    cdef int m = n, k, idx, best, best_sym, s, pos = 0
    cdef u64 earlier
    for k in range(n):
        rem[k] = k
    while m > 0:
        earlier = 0
        best = -1
        best_sym = -1
        for idx in range(m):
            s = seq[rem[idx]]
            if (earlier & ~masks[s]) == 0 and (best < 0 or s < best_sym):
                best = idx
                best_sym = s
            earlier |= (<u64> 1) << s
        out[pos] = rem[best]
        pos += 1
        for idx in range(best, m - 1):
            rem[idx] = rem[idx + 1]
        m -= 1
    free(rem)
    return 0


def lex_order(seq, masks):
    cdef int n = len(seq), nm = len(masks), i
    if n == 0:
        return []
    cdef int* cseq = <int*> malloc(n * sizeof(int))
    cdef int* out = <int*> malloc(n * sizeof(int))
    cdef u64* cmask = <u64*> malloc(nm * sizeof(u64))
    if cseq == NULL or out == NULL or cmask == NULL:
        free(cseq); free(out); free(cmask)
        raise MemoryError()
    try:
        for i in range(n):
            cseq[i] = seq[i]
        for i in range(nm):
            cmask[i] = masks[i]
        with nogil:
            i = _lex_order(n, cseq, cmask, out)
        if i < 0:
            raise MemoryError()
        return [out[i] for i in range(n)]
    finally:
        free(cseq); free(out); free(cmask)


def merge_target(seq, masks, int v):
    cdef u64 mv = masks[v]
    cdef int j, s
    for j in range(len(seq) - 1, -1, -1):
        s = seq[j]
        if s == v:
            return j
        if not ((mv >> s) & 1):
            return -1
    return -1


def normal_word(word, masks):
    cdef list order = lex_order(word, masks)
    return tuple([word[p] for p in order])
