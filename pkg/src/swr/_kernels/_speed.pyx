# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: damped power iteration and pairwise relaxed
transport distances. Mirrors swr._kernels._pure exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def pagerank(indptr, indices, weights, bias, double alpha, double tol,
             int max_iter):
    cdef cnp.int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(bias, dtype=np.float64)
    cdef Py_ssize_t n = b.shape[0]
    cdef cnp.ndarray[double, ndim=1] x_arr = np.full(n, 1.0 / n)
    cdef cnp.ndarray[double, ndim=1] y_arr = np.empty(n)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double residual = float("inf")
    cdef double beta = 1.0 - alpha
    cdef double acc
    cdef Py_ssize_t i, k, it
    cdef int iterations = 0

    for it in range(max_iter):
        iterations = it + 1
        residual = 0.0
        for i in range(n):
            acc = 0.0
            for k in range(ptr[i], ptr[i + 1]):
                acc += w[k] * x[idx[k]]
            y[i] = alpha * acc + beta * b[i]
            residual += fabs(y[i] - x[i])
        x_arr, y_arr = y_arr, x_arr
        x = x_arr
        y = y_arr
        if residual <= tol:
            break
    return x_arr, iterations, residual


def rwmd_pairwise(vectors, offsets, masses):
    cdef double[:, ::1] v = np.ascontiguousarray(vectors, dtype=np.float64)
    cdef cnp.int64_t[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef double[::1] m = np.ascontiguousarray(masses, dtype=np.float64)
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t dim = v.shape[1]
    cdef cnp.ndarray[double, ndim=2] out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, a, c, d
    cdef Py_ssize_t ai, aj, bi, bj
    cdef double r1, r2, best, dist, diff, acc
    cdef double[::1] col_min
    cdef cnp.ndarray[double, ndim=1] col_buf

    for i in range(n):
        ai, bi = off[i], off[i + 1]
        for j in range(i + 1, n):
            aj, bj = off[j], off[j + 1]
            col_buf = np.full(bj - aj, np.inf)
            col_min = col_buf
            r1 = 0.0
            for a in range(ai, bi):
                best = -1.0
                for c in range(aj, bj):
                    acc = 0.0
                    for d in range(dim):
                        diff = v[a, d] - v[c, d]
                        acc += diff * diff
                    dist = sqrt(acc)
                    if best < 0.0 or dist < best:
                        best = dist
                    if dist < col_min[c - aj]:
                        col_min[c - aj] = dist
                r1 += m[a] * best
            r2 = 0.0
            for c in range(bj - aj):
                r2 += m[aj + c] * col_min[c]
            out[i, j] = out[j, i] = r1 if r1 > r2 else r2
    return out_arr
