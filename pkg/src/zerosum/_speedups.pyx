# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; exact mirrors of _kernel_py.

Hot path of the orderly search: for every node, the sorted image of the
node's index string under each symmetry table is compared against the node
itself. Sequences are non-decreasing byte strings, tables live in one
contiguous blob of P rows of m bytes.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

COMPILED = True

DEF MAX_LEN = 96


cdef inline int _sorted_image(const unsigned char* row, const unsigned char* seq,
                              Py_ssize_t d, unsigned char* buf) nogil:
    # insertion sort of the mapped values (d is tiny)
    cdef Py_ssize_t i, j
    cdef unsigned char v
    for i in range(d):
        v = row[seq[i]]
        j = i
        while j > 0 and buf[j - 1] > v:
            buf[j] = buf[j - 1]
            j -= 1
        buf[j] = v
    return 0


cdef inline int _cmp(const unsigned char* a, const unsigned char* b, Py_ssize_t d) nogil:
    cdef Py_ssize_t i
    for i in range(d):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


cdef inline unsigned char _row_min(const unsigned char* row, const unsigned char* sup,
                                   Py_ssize_t ns) nogil:
    cdef unsigned char mn = 255
    cdef unsigned char v
    cdef Py_ssize_t i
    for i in range(ns):
        v = row[sup[i]]
        if v < mn:
            mn = v
    return mn


def is_lex_min(const unsigned char[::1] seq, const unsigned char[::1] support, perms):
    """True iff no permutation image of seq sorts strictly below seq."""
    cdef const unsigned char[::1] blob = perms.blob
    cdef Py_ssize_t m = perms.m
    cdef Py_ssize_t P = perms.P
    cdef Py_ssize_t d = seq.shape[0]
    cdef Py_ssize_t ns = support.shape[0]
    if d == 0:
        return True
    if d > MAX_LEN:
        raise ValueError("sequence too long for compiled kernel")
    cdef const unsigned char* base = &blob[0]
    cdef const unsigned char* s = &seq[0]
    cdef const unsigned char* sup = &support[0]
    cdef unsigned char s0 = s[0]
    cdef unsigned char buf[MAX_LEN]
    cdef unsigned char mn
    cdef const unsigned char* row
    cdef Py_ssize_t p
    with nogil:
        for p in range(P):
            row = base + p * m
            mn = _row_min(row, sup, ns)
            if mn > s0:
                continue
            if mn < s0:
                with gil:
                    return False
            _sorted_image(row, s, d, buf)
            if _cmp(buf, s, d) < 0:
                with gil:
                    return False
    return True


def min_scan_ok(const unsigned char[::1] seq, const unsigned char[::1] support, perms):
    """First-position test only: no row maps the support below seq[0]."""
    cdef const unsigned char[::1] blob = perms.blob
    cdef Py_ssize_t m = perms.m
    cdef Py_ssize_t P = perms.P
    cdef Py_ssize_t ns = support.shape[0]
    cdef const unsigned char* base = &blob[0]
    cdef const unsigned char* sup = &support[0]
    cdef unsigned char s0 = seq[0]
    cdef Py_ssize_t p
    with nogil:
        for p in range(P):
            if _row_min(base + p * m, sup, ns) < s0:
                with gil:
                    return False
    return True


def compare_rows(const unsigned char[::1] seq, perms, row_indices):
    """Full image comparison against a subset of rows; returns (ok, ties)."""
    cdef const unsigned char[::1] blob = perms.blob
    cdef Py_ssize_t m = perms.m
    cdef Py_ssize_t d = seq.shape[0]
    if d > MAX_LEN:
        raise ValueError("sequence too long for compiled kernel")
    cdef const unsigned char* base = &blob[0]
    cdef const unsigned char* s = &seq[0]
    cdef unsigned char buf[MAX_LEN]
    cdef Py_ssize_t i
    cdef int c
    ties = []
    for i in row_indices:
        _sorted_image(base + i * m, s, d, buf)
        c = _cmp(buf, s, d)
        if c < 0:
            return False, ties
        if c == 0:
            ties.append(i)
    return True, ties


def collect_tight(const unsigned char[::1] seq, const unsigned char[::1] support, perms):
    """Exact minimality check that also collects the rows fixing seq."""
    cdef const unsigned char[::1] blob = perms.blob
    cdef Py_ssize_t m = perms.m
    cdef Py_ssize_t P = perms.P
    cdef Py_ssize_t d = seq.shape[0]
    cdef Py_ssize_t ns = support.shape[0]
    if d == 0 or d > MAX_LEN:
        if d == 0:
            return True, list(range(P))
        raise ValueError("sequence too long for compiled kernel")
    cdef const unsigned char* base = &blob[0]
    cdef const unsigned char* s = &seq[0]
    cdef const unsigned char* sup = &support[0]
    cdef unsigned char s0 = s[0]
    cdef unsigned char buf[MAX_LEN]
    cdef unsigned char mn
    cdef const unsigned char* row
    cdef Py_ssize_t p
    cdef int c
    ties = []
    for p in range(P):
        row = base + p * m
        mn = _row_min(row, sup, ns)
        if mn > s0:
            continue
        if mn < s0:
            return False, []
        _sorted_image(row, s, d, buf)
        c = _cmp(buf, s, d)
        if c < 0:
            return False, []
        if c == 0:
            ties.append(p)
    return True, ties


def lex_min_image(const unsigned char[::1] seq, perms):
    """Lexicographically least sorted image of seq over all rows."""
    cdef const unsigned char[::1] blob = perms.blob
    cdef Py_ssize_t m = perms.m
    cdef Py_ssize_t P = perms.P
    cdef Py_ssize_t d = seq.shape[0]
    if d == 0:
        return b""
    if d > MAX_LEN:
        raise ValueError("sequence too long for compiled kernel")
    cdef const unsigned char* base = &blob[0]
    cdef const unsigned char* s = &seq[0]
    cdef unsigned char buf[MAX_LEN]
    cdef unsigned char best[MAX_LEN]
    cdef bint have = False
    cdef const unsigned char* row
    cdef Py_ssize_t p, i
    with nogil:
        for p in range(P):
            row = base + p * m
            _sorted_image(row, s, d, buf)
            if not have or _cmp(buf, best, d) < 0:
                for i in range(d):
                    best[i] = buf[i]
                have = True
    return PyBytes_FromStringAndSize(<const char*> best, d)
