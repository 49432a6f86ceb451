# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: ordered tree edit distance and LCS length.

Mirrors `_pure` exactly; array conventions are documented there.
"""

import numpy as np

IMPL = "compiled"


def ted_from_arrays(labels1, lml1, keyroots1, labels2, lml2, keyroots2):
    cdef long[::1] lab1 = np.ascontiguousarray(labels1, dtype=np.int64)
    cdef long[::1] ll1 = np.ascontiguousarray(lml1, dtype=np.int64)
    cdef long[::1] kr1 = np.ascontiguousarray(keyroots1, dtype=np.int64)
    cdef long[::1] lab2 = np.ascontiguousarray(labels2, dtype=np.int64)
    cdef long[::1] ll2 = np.ascontiguousarray(lml2, dtype=np.int64)
    cdef long[::1] kr2 = np.ascontiguousarray(keyroots2, dtype=np.int64)

    cdef Py_ssize_t n1 = lab1.shape[0] - 1
    cdef Py_ssize_t n2 = lab2.shape[0] - 1
    td_arr = np.zeros((n1 + 1, n2 + 1), dtype=np.int64)
    cdef long[:, ::1] td = td_arr
    fd_arr = np.zeros((n1 + 2, n2 + 2), dtype=np.int64)
    cdef long[:, ::1] fd = fd_arr

    cdef Py_ssize_t a, b, i, j, li, lj, rows, cols, x, y, node1, node2, p, q
    cdef long cost, d, alt

    for a in range(kr1.shape[0]):
        i = kr1[a]
        li = ll1[i]
        for b in range(kr2.shape[0]):
            j = kr2[b]
            lj = ll2[j]
            rows = i - li + 2
            cols = j - lj + 2
            fd[0, 0] = 0
            for x in range(1, rows):
                fd[x, 0] = fd[x - 1, 0] + 1
            for y in range(1, cols):
                fd[0, y] = fd[0, y - 1] + 1
            for x in range(1, rows):
                node1 = x + li - 1
                for y in range(1, cols):
                    node2 = y + lj - 1
                    d = fd[x - 1, y] + 1
                    alt = fd[x, y - 1] + 1
                    if alt < d:
                        d = alt
                    if ll1[node1] == li and ll2[node2] == lj:
                        cost = 0 if lab1[node1] == lab2[node2] else 1
                        alt = fd[x - 1, y - 1] + cost
                        if alt < d:
                            d = alt
                        fd[x, y] = d
                        td[node1, node2] = d
                    else:
                        p = ll1[node1] - li
                        q = ll2[node2] - lj
                        alt = fd[p, q] + td[node1, node2]
                        if alt < d:
                            d = alt
                        fd[x, y] = d
    return int(td[n1, n2])


def lcs_length(a, b):
    cdef long[::1] xs = np.ascontiguousarray(a, dtype=np.int64)
    cdef long[::1] ys = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t m = ys.shape[0]
    if n == 0 or m == 0:
        return 0
    prev_arr = np.zeros(m + 1, dtype=np.int64)
    curr_arr = np.zeros(m + 1, dtype=np.int64)
    cdef long[::1] prev = prev_arr
    cdef long[::1] curr = curr_arr
    cdef Py_ssize_t i, j
    cdef long best
    for i in range(n):
        for j in range(1, m + 1):
            if xs[i] == ys[j - 1]:
                curr[j] = prev[j - 1] + 1
            else:
                best = prev[j]
                if curr[j - 1] > best:
                    best = curr[j - 1]
                curr[j] = best
        prev, curr = curr, prev
    return int(prev[m])
