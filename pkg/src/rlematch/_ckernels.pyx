# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels over multi-word bit vectors.

Tables arrive as C-contiguous ``uint64`` arrays of shape ``(rows, nwords)``
with bit ``i`` of a row stored in word ``i // 64``. Signatures and results
match ``_pykernels``.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

NAME = "compiled"
ROWS = "word_rows"

ctypedef const unsigned char[::1] bytes_view
ctypedef const uint64_t[:, ::1] rows_view


cdef inline uint64_t top_mask(Py_ssize_t width) nogil:
    cdef Py_ssize_t r = width % 64
    if r == 0:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return (<uint64_t>1 << r) - 1


cdef inline void shl1(uint64_t* d, Py_ssize_t nw, uint64_t inject, uint64_t top) nogil:
    cdef Py_ssize_t k
    cdef uint64_t carry = inject, nxt
    for k in range(nw):
        nxt = d[k] >> 63
        d[k] = (d[k] << 1) | carry
        carry = nxt
    d[nw - 1] &= top


cdef inline bint any_set(const uint64_t* d, Py_ssize_t nw) nogil:
    cdef Py_ssize_t k
    for k in range(nw):
        if d[k]:
            return True
    return False


cdef uint64_t* alloc_words(Py_ssize_t nw) except NULL:
    cdef uint64_t* d = <uint64_t*>malloc(nw * sizeof(uint64_t))
    if d == NULL:
        raise MemoryError()
    memset(d, 0, nw * sizeof(uint64_t))
    return d


def shift_and(rows_view b, Py_ssize_t m, bytes_view text):
    cdef Py_ssize_t n = text.shape[0], nw = b.shape[1], j, k
    cdef Py_ssize_t hw = (m - 1) // 64
    cdef uint64_t hbit = <uint64_t>1 << ((m - 1) % 64)
    cdef uint64_t top = top_mask(m)
    cdef uint64_t d0 = 0
    cdef unsigned char c
    cdef uint64_t* d
    out = []
    if nw == 1:
        for j in range(n):
            d0 = ((d0 << 1) | 1) & b[text[j], 0]
            if d0 & hbit:
                out.append(j - m + 1)
        return out, n
    d = alloc_words(nw)
    try:
        for j in range(n):
            c = text[j]
            shl1(d, nw, 1, top)
            for k in range(nw):
                d[k] &= b[c, k]
            if d[hw] & hbit:
                out.append(j - m + 1)
    finally:
        free(d)
    return out, n


def bndm(rows_view b, Py_ssize_t m, bytes_view text):
    cdef Py_ssize_t n = text.shape[0], nw = b.shape[1]
    cdef Py_ssize_t hw = (m - 1) // 64
    cdef uint64_t hbit = <uint64_t>1 << ((m - 1) % 64)
    cdef uint64_t top = top_mask(m)
    cdef Py_ssize_t pos = 0, j, last, k, steps = 0
    cdef unsigned char c
    cdef uint64_t d0
    cdef uint64_t* d
    out = []
    if nw == 1:
        while pos <= n - m:
            d0 = top
            j = m
            last = m
            while True:
                j -= 1
                d0 &= b[text[pos + j], 0]
                steps += 1
                if d0 & hbit:
                    if j > 0:
                        last = j
                    else:
                        out.append(pos)
                        break
                if j == 0:
                    break
                d0 = (d0 << 1) & top
                if d0 == 0:
                    break
            pos += last
        return out, steps
    d = alloc_words(nw)
    try:
        while pos <= n - m:
            for k in range(nw):
                d[k] = <uint64_t>0xFFFFFFFFFFFFFFFF
            d[nw - 1] = top
            j = m
            last = m
            while True:
                j -= 1
                c = text[pos + j]
                for k in range(nw):
                    d[k] &= b[c, k]
                steps += 1
                if d[hw] & hbit:
                    if j > 0:
                        last = j
                    else:
                        out.append(pos)
                        break
                if j == 0:
                    break
                shl1(d, nw, 0, top)
                if not any_set(d, nw):
                    break
            pos += last
    finally:
        free(d)
    return out, steps


def rl_shift_and_text(rows_view b1, rows_view b2, Py_ssize_t rho, Py_ssize_t m,
                      Py_ssize_t ell, bytes_view text):
    cdef Py_ssize_t n = text.shape[0], nw = b1.shape[1]
    cdef Py_ssize_t hw = (rho - 1) // 64
    cdef uint64_t hbit = <uint64_t>1 << ((rho - 1) % 64)
    cdef uint64_t top = top_mask(rho)
    cdef Py_ssize_t i = 0, e, l, k, steps = 0
    cdef unsigned char c
    cdef uint64_t d0 = 0
    cdef uint64_t* d
    out = []
    if nw == 1:
        while i < n:
            c = text[i]
            e = i + 1
            while e < n and text[e] == c:
                e += 1
            l = e - i
            if l > m:
                l = m + 1
            d0 = ((d0 << 1) | 1) & b1[c, 0] & b2[l, 0]
            if d0 & hbit:
                out.append(i + ell - m)
            steps += 1
            i = e
        return out, steps
    d = alloc_words(nw)
    try:
        while i < n:
            c = text[i]
            e = i + 1
            while e < n and text[e] == c:
                e += 1
            l = e - i
            if l > m:
                l = m + 1
            shl1(d, nw, 1, top)
            for k in range(nw):
                d[k] &= b1[c, k] & b2[l, k]
            if d[hw] & hbit:
                out.append(i + ell - m)
            steps += 1
            i = e
    finally:
        free(d)
    return out, steps


def rl_shift_and_runs(rows_view b1, rows_view b2, Py_ssize_t rho, Py_ssize_t m,
                      Py_ssize_t ell, const unsigned char[::1] syms,
                      const uint64_t[::1] lens, d_in, j_in):
    """Batch form over pre-split runs; ``d_in`` is the carried state as an int."""
    cdef Py_ssize_t nw = b1.shape[1], nr = syms.shape[0], r, k
    cdef Py_ssize_t hw = (rho - 1) // 64
    cdef uint64_t hbit = <uint64_t>1 << ((rho - 1) % 64)
    cdef uint64_t top = top_mask(rho)
    cdef uint64_t l, lc
    cdef unsigned char c
    cdef uint64_t* d = alloc_words(nw)
    out = []
    j = j_in
    try:
        for k in range(nw):
            d[k] = (d_in >> (64 * k)) & 0xFFFFFFFFFFFFFFFF
        for r in range(nr):
            c = syms[r]
            l = lens[r]
            lc = l if l <= <uint64_t>m else <uint64_t>(m + 1)
            shl1(d, nw, 1, top)
            for k in range(nw):
                d[k] &= b1[c, k] & b2[lc, k]
            if d[hw] & hbit:
                out.append(j + ell - m)
            j += l
        d_out = 0
        for k in range(nw):
            d_out |= (<object>d[k]) << (64 * k)
    finally:
        free(d)
    return out, nr, d_out, j


def rl_bndm(rows_view b1, rows_view b2, Py_ssize_t rho, Py_ssize_t m,
            Py_ssize_t ell, bytes_view text):
    cdef Py_ssize_t n = text.shape[0], nw = b1.shape[1]
    cdef Py_ssize_t hw = (rho - 1) // 64
    cdef uint64_t hbit = <uint64_t>1 << ((rho - 1) % 64)
    cdef uint64_t top = top_mask(rho)
    cdef Py_ssize_t s = m - 1, b, j, kk, p, q, l, lc, w, steps = 0
    cdef unsigned char c
    cdef uint64_t d0
    cdef uint64_t* d
    out = []
    d = alloc_words(nw)
    try:
        while s < n:
            b = s - m + 1
            while s + 1 < n and text[s] == text[s + 1]:
                s += 1
            j = 0
            kk = 1
            p = s
            if nw == 1:
                d0 = top
                while p >= b:
                    c = text[p]
                    q = p - 1
                    while q >= b and text[q] == c:
                        q -= 1
                    l = p - q
                    lc = l if l <= m else m + 1
                    d0 &= b1[c, 0] & b2[lc, 0]
                    steps += 1
                    if d0 & hbit:
                        if j + ell >= m:
                            out.append(s - j - ell + 1)
                        else:
                            kk = j + ell
                    d0 = (d0 << 1) & top
                    if d0 == 0:
                        break
                    j += l
                    p = q
            else:
                for w in range(nw):
                    d[w] = <uint64_t>0xFFFFFFFFFFFFFFFF
                d[nw - 1] = top
                while p >= b:
                    c = text[p]
                    q = p - 1
                    while q >= b and text[q] == c:
                        q -= 1
                    l = p - q
                    lc = l if l <= m else m + 1
                    for w in range(nw):
                        d[w] &= b1[c, w] & b2[lc, w]
                    steps += 1
                    if d[hw] & hbit:
                        if j + ell >= m:
                            out.append(s - j - ell + 1)
                        else:
                            kk = j + ell
                    shl1(d, nw, 0, top)
                    if not any_set(d, nw):
                        break
                    j += l
                    p = q
            s += m - kk
    finally:
        free(d)
    return out, steps
