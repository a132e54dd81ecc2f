# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport calloc, free
from libc.math cimport sqrt

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int64_t i64


cdef inline i64 _mod(i64 a, i64 n) nogil:
    cdef i64 r = a % n
    return r + n if r < 0 else r


cdef void _fill_joint(const i64[:] w1, const i64[:] w2, i64 t, i64 N, i64* J) nogil:
    cdef i64 x1, x2, a
    for x1 in range(N):
        a = w1[x1]
        if a == 0:
            continue
        for x2 in range(N):
            if w2[x2] != 0:
                J[((x1 + x2) % N) * N + (x1 + t * x2) % N] += a * w2[x2]


def joint_witness(w1, w2, t, N):
    cdef const i64[:] a = np.ascontiguousarray(w1, dtype=np.int64)
    cdef const i64[:] b = np.ascontiguousarray(w2, dtype=np.int64)
    cdef i64 n = N
    cdef i64 tt = _mod(t, n)
    cdef i64* J = <i64*> calloc(n * n, sizeof(i64))
    if J == NULL:
        raise MemoryError()
    cdef i64 l, s, d, first = -1, worst = 0
    try:
        _fill_joint(a, b, tt, n, J)
        for l in range(n):
            for s in range(n):
                d = J[l * n + s] - J[l * n + (n - s) % n]
                if d < 0:
                    d = -d
                if d != 0 and first < 0:
                    first = l * n + s
                if d > worst:
                    worst = d
    finally:
        free(J)
    return first, worst


def fourier_residual(f, g, t, N, double tol):
    cdef const double complex[:] F = np.ascontiguousarray(f, dtype=np.complex128)
    cdef const double complex[:] G = np.ascontiguousarray(g, dtype=np.complex128)
    cdef i64 n = N
    cdef i64 tt = _mod(t, n)
    cdef i64 u, v, first = -1
    cdef double complex lhs, rhs, z
    cdef double r, worst = 0.0
    for u in range(n):
        for v in range(n):
            lhs = F[(u + v) % n] * G[(u + tt * v) % n]
            rhs = F[_mod(u - v, n)] * G[_mod(u - tt * v, n)]
            z = lhs - rhs
            r = sqrt(z.real * z.real + z.imag * z.imag)
            if r > worst:
                worst = r
            if r > tol and first < 0:
                first = u * n + v
    return worst, first


def exact_fourier_witness(F, G, t, N):
    cdef const i64[:] a = np.ascontiguousarray(F, dtype=np.int64)
    cdef const i64[:] b = np.ascontiguousarray(G, dtype=np.int64)
    cdef i64 n = N
    cdef i64 tt = _mod(t, n)
    cdef i64 u, v, d, first = -1, worst = 0
    for u in range(n):
        for v in range(n):
            d = a[(u + v) % n] * b[(u + tt * v) % n] - a[_mod(u - v, n)] * b[_mod(u - tt * v, n)]
            if d < 0:
                d = -d
            if d != 0 and first < 0:
                first = u * n + v
            if d > worst:
                worst = d
    return first, worst


def enumerate_pairs(W1, W2, t, N, start, stop):
    cdef const i64[:, :] A = np.ascontiguousarray(W1, dtype=np.int64)
    cdef const i64[:, :] B = np.ascontiguousarray(W2, dtype=np.int64)
    cdef i64 n = N
    cdef i64 tt = _mod(t, n)
    cdef i64 m2 = B.shape[0]
    cdef i64 i, j, l, s, k
    cdef bint ok
    cdef i64* J = <i64*> calloc(n * n, sizeof(i64))
    if J == NULL:
        raise MemoryError()
    out = []
    try:
        for i in range(start, stop):
            for j in range(m2):
                for k in range(n * n):
                    J[k] = 0
                _fill_joint(A[i], B[j], tt, n, J)
                ok = True
                for l in range(n):
                    for s in range(1, n):
                        if J[l * n + s] != J[l * n + n - s]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    out.append((i, j))
    finally:
        free(J)
    return np.array(out, dtype=np.int64).reshape(-1, 2)
