# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled 64-bit versions of the loops in ``_pykernels``.

Any input that does not fit in a signed 64-bit word, and any intermediate
sum or product that would overflow, raises ``OverflowError``; the caller is
expected to retry with the pure-Python kernels.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int tri_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int tri_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    """
    int tri_add(long long a, long long b, long long *r) nogil
    int tri_mul(long long a, long long b, long long *r) nogil


cdef long long* _to_c(seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef long long* buf = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            buf[i] = seq[i]
    except OverflowError:
        free(buf)
        raise
    return buf


cdef list _from_c(long long* buf, Py_ssize_t n):
    return [buf[i] for i in range(n)]


cdef long long _binom(int a, int b):
    cdef long long r = 1
    cdef int i
    if b < 0 or b > a:
        return 0
    if b > a - b:
        b = a - b
    for i in range(b):
        r = r * (a - i) // (i + 1)
    return r


cdef int _elements(unsigned long long mask, int* out):
    cdef int m = 0, e = 0
    while mask:
        if mask & 1:
            out[m] = e
            m += 1
        mask >>= 1
        e += 1
    return m


cdef int _next_comb(int* idx, int w, int m):
    # advance idx (strictly increasing, values < m) to the next combination
    cdef int i = w - 1
    while i >= 0 and idx[i] == m - w + i:
        i -= 1
    if i < 0:
        return 0
    idx[i] += 1
    i += 1
    while i < w:
        idx[i] = idx[i - 1] + 1
        i += 1
    return 1


cdef long long* _binom_table(int n, int k):
    cdef long long* t = <long long*> malloc((n + 1) * (k + 2) * sizeof(long long))
    cdef int a, b
    for a in range(n + 1):
        for b in range(k + 2):
            t[a * (k + 2) + b] = _binom(a, b)
    return t


def matmul(a, b, Py_ssize_t rows, Py_ssize_t inner, Py_ssize_t cols):
    cdef long long* ca = _to_c(a)
    cdef long long* cb
    cdef long long* out
    cdef Py_ssize_t i, j, k
    cdef long long aik, p
    cdef int bad = 0
    try:
        cb = _to_c(b)
    except OverflowError:
        free(ca)
        raise
    out = <long long*> malloc((rows * cols if rows * cols > 0 else 1) * sizeof(long long))
    for i in range(rows * cols):
        out[i] = 0
    with nogil:
        for i in range(rows):
            for k in range(inner):
                aik = ca[i * inner + k]
                if aik == 0:
                    continue
                for j in range(cols):
                    if tri_mul(aik, cb[k * cols + j], &p) or tri_add(out[i * cols + j], p, &out[i * cols + j]):
                        bad = 1
                        break
                if bad:
                    break
            if bad:
                break
    free(ca)
    free(cb)
    if bad:
        free(out)
        raise OverflowError("int64 overflow in matmul")
    res = _from_c(out, rows * cols)
    free(out)
    return res


def scatter_down(big_masks, values, int w, int n):
    cdef Py_ssize_t nb = len(big_masks), i, nout = _binom(n, w)
    cdef long long* vals = _to_c(values)
    cdef long long* out = <long long*> malloc((nout if nout > 0 else 1) * sizeof(long long))
    cdef long long* bt = _binom_table(n, w)
    cdef int elems[64]
    cdef int idx[64]
    cdef int m, j, bad = 0
    cdef long long r, v
    cdef unsigned long long mask
    for i in range(nout):
        out[i] = 0
    for i in range(nb):
        v = vals[i]
        if v == 0:
            continue
        mask = big_masks[i]
        m = _elements(mask, elems)
        if w > m:
            continue
        for j in range(w):
            idx[j] = j
        while True:
            r = 0
            for j in range(w):
                r += bt[elems[idx[j]] * (w + 2) + j + 1]
            if tri_add(out[r], v, &out[r]):
                bad = 1
                break
            if not _next_comb(idx, w, m):
                break
        if bad:
            break
    free(vals)
    free(bt)
    if bad:
        free(out)
        raise OverflowError("int64 overflow in scatter_down")
    res = _from_c(out, nout)
    free(out)
    return res


def gather_up(small_values, big_masks, int w, int n):
    cdef Py_ssize_t nb = len(big_masks), i
    cdef long long* vals = _to_c(small_values)
    cdef long long* out = <long long*> malloc((nb if nb > 0 else 1) * sizeof(long long))
    cdef long long* bt = _binom_table(n, w)
    cdef int elems[64]
    cdef int idx[64]
    cdef int m, j, bad = 0
    cdef long long r, tot
    cdef unsigned long long mask
    for i in range(nb):
        mask = big_masks[i]
        m = _elements(mask, elems)
        tot = 0
        if w <= m:
            for j in range(w):
                idx[j] = j
            while True:
                r = 0
                for j in range(w):
                    r += bt[elems[idx[j]] * (w + 2) + j + 1]
                if tri_add(tot, vals[r], &tot):
                    bad = 1
                    break
                if not _next_comb(idx, w, m):
                    break
        if bad:
            break
        out[i] = tot
    free(vals)
    free(bt)
    if bad:
        free(out)
        raise OverflowError("int64 overflow in gather_up")
    res = _from_c(out, nb)
    free(out)
    return res


def split_gather(prod, Py_ssize_t cols, d_masks, int half, int n):
    cdef Py_ssize_t nd = len(d_masks), i
    cdef long long* p = _to_c(prod)
    cdef long long* out = <long long*> malloc((nd if nd > 0 else 1) * sizeof(long long))
    cdef long long* bt = _binom_table(n, half)
    cdef int elems[64]
    cdef int idx[64]
    cdef char chosen[64]
    cdef int m, j, c, bad = 0
    cdef long long ri, rj, tot
    cdef unsigned long long mask
    for i in range(nd):
        mask = d_masks[i]
        m = _elements(mask, elems)
        tot = 0
        if half <= m:
            for j in range(half):
                idx[j] = j
            while True:
                for j in range(m):
                    chosen[j] = 0
                ri = 0
                for j in range(half):
                    chosen[idx[j]] = 1
                    ri += bt[elems[idx[j]] * (half + 2) + j + 1]
                rj = 0
                c = 0
                for j in range(m):
                    if not chosen[j]:
                        rj += bt[elems[j] * (half + 2) + c + 1]
                        c += 1
                if tri_add(tot, p[ri * cols + rj], &tot):
                    bad = 1
                    break
                if not _next_comb(idx, half, m):
                    break
        if bad:
            break
        out[i] = tot
    free(p)
    free(bt)
    if bad:
        free(out)
        raise OverflowError("int64 overflow in split_gather")
    res = _from_c(out, nd)
    free(out)
    return res
