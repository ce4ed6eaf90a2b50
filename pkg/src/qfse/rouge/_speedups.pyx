# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""C kernels for the hot token-matching loops of the ROUGE scorer.

Mirrors the semantics of ``_speedups_py.py`` exactly; the test suite checks
parity between the two backends.
"""

from cython.operator cimport dereference, preincrement
from libcpp.unordered_map cimport unordered_map

import numpy as np


def lcs_length(a_in, b_in):
    """Length of the longest common subsequence of two int-id sequences."""
    cdef long long[::1] a = np.ascontiguousarray(a_in, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(b_in, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0]
    if n == 0 or m == 0:
        return 0
    if m > n:
        a, b = b, a
        n, m = m, n
    cdef long long[::1] prev = np.zeros(m + 1, dtype=np.int64)
    cdef long long[::1] cur = np.zeros(m + 1, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef long long x, left, up
    for i in range(n):
        x = a[i]
        for j in range(m):
            if x == b[j]:
                cur[j + 1] = prev[j] + 1
            else:
                left = cur[j]
                up = prev[j + 1]
                cur[j + 1] = left if left >= up else up
        prev, cur = cur, prev
    return int(prev[m])


cdef long long _clipped_matches(unordered_map[long long, long long] &ca,
                                unordered_map[long long, long long] &cb):
    cdef long long match = 0
    cdef unordered_map[long long, long long].iterator it = ca.begin()
    cdef unordered_map[long long, long long].iterator hit
    while it != ca.end():
        hit = cb.find(dereference(it).first)
        if hit != cb.end():
            if dereference(it).second < dereference(hit).second:
                match += dereference(it).second
            else:
                match += dereference(hit).second
        preincrement(it)
    return match


cdef long long _max_id(long long[::1] a, long long[::1] b):
    cdef long long base = 1
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        if a[i] >= base:
            base = a[i] + 1
    for i in range(b.shape[0]):
        if b[i] >= base:
            base = b[i] + 1
    return base + 1


def ngram_overlap(a_in, b_in, int n):
    """Clipped n-gram match count plus per-side totals (fast path: n in {1, 2})."""
    if n > 2:
        from . import _speedups_py
        return _speedups_py.ngram_overlap(list(a_in), list(b_in), n)
    cdef long long[::1] a = np.ascontiguousarray(a_in, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(b_in, dtype=np.int64)
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef long long base = _max_id(a, b)
    cdef unordered_map[long long, long long] ca, cb
    cdef long long key
    cdef Py_ssize_t i
    cdef Py_ssize_t ta = la - n + 1, tb = lb - n + 1
    if ta < 0:
        ta = 0
    if tb < 0:
        tb = 0
    for i in range(ta):
        key = a[i] if n == 1 else (a[i] + 1) * base + a[i + 1]
        ca[key] += 1
    for i in range(tb):
        key = b[i] if n == 1 else (b[i] + 1) * base + b[i + 1]
        cb[key] += 1
    return int(_clipped_matches(ca, cb)), int(ta), int(tb)


def skip_overlap(a_in, b_in, int max_gap):
    """Clipped skip-bigram matches with at most ``max_gap`` words in between."""
    cdef long long[::1] a = np.ascontiguousarray(a_in, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(b_in, dtype=np.int64)
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef long long base = _max_id(a, b)
    cdef unordered_map[long long, long long] ca, cb
    cdef long long total_a = 0, total_b = 0
    cdef Py_ssize_t i, j, upper
    for i in range(la):
        upper = i + max_gap + 2
        if upper > la:
            upper = la
        for j in range(i + 1, upper):
            ca[(a[i] + 1) * base + a[j]] += 1
            total_a += 1
    for i in range(lb):
        upper = i + max_gap + 2
        if upper > lb:
            upper = lb
        for j in range(i + 1, upper):
            cb[(b[i] + 1) * base + b[j]] += 1
            total_b += 1
    return int(_clipped_matches(ca, cb)), int(total_a), int(total_b)
