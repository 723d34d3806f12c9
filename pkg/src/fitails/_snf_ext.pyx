# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 diagonalization kernel.

Same pivot rule as ``_snf_py.diagonalize``.  Every multiply and subtract is
overflow-checked; on overflow ``OverflowError`` is raised and the caller
redoes the work with arbitrary precision.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef extern from *:
    """
    #include <limits.h>
    static inline int fit_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int fit_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint fit_mul_ovf(i64 a, i64 b, i64 *r) nogil
    bint fit_sub_ovf(i64 a, i64 b, i64 *r) nogil
    i64 LLONG_MIN


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 iabs(i64 a) nogil:
    return -a if a < 0 else a


cdef int axpy_row(i64[:, ::1] M, Py_ssize_t dst, Py_ssize_t src, i64 q,
                  Py_ssize_t start, Py_ssize_t stop) nogil:
    """M[dst, start:stop] -= q * M[src, start:stop]; returns 1 on overflow."""
    cdef Py_ssize_t k
    cdef i64 prod, res, s
    for k in range(start, stop):
        s = M[src, k]
        if s != 0:
            if fit_mul_ovf(q, s, &prod) or fit_sub_ovf(M[dst, k], prod, &res):
                return 1
            if res == LLONG_MIN:
                return 1
            M[dst, k] = res
    return 0


cdef int axpy_col(i64[:, ::1] M, Py_ssize_t dst, Py_ssize_t src, i64 q,
                  Py_ssize_t start, Py_ssize_t stop) nogil:
    """M[start:stop, dst] -= q * M[start:stop, src]; returns 1 on overflow."""
    cdef Py_ssize_t k
    cdef i64 prod, res, s
    for k in range(start, stop):
        s = M[k, src]
        if s != 0:
            if fit_mul_ovf(q, s, &prod) or fit_sub_ovf(M[k, dst], prod, &res):
                return 1
            if res == LLONG_MIN:
                return 1
            M[k, dst] = res
    return 0


cdef void swap_rows(i64[:, ::1] M, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t k
    cdef i64 tmp
    if a == b:
        return
    for k in range(M.shape[1]):
        tmp = M[a, k]
        M[a, k] = M[b, k]
        M[b, k] = tmp


cdef void swap_cols(i64[:, ::1] M, Py_ssize_t a, Py_ssize_t b, Py_ssize_t start) nogil:
    cdef Py_ssize_t k
    cdef i64 tmp
    if a == b:
        return
    for k in range(start, M.shape[0]):
        tmp = M[k, a]
        M[k, a] = M[k, b]
        M[k, b] = tmp


def diagonalize_int64(cnp.ndarray[i64, ndim=2, mode="c"] A_arr,
                      cnp.ndarray U_arr, cnp.ndarray V_arr):
    """Diagonalize ``A`` in place, updating ``U`` (rows) and ``V`` (columns).

    ``U_arr``/``V_arr`` may be empty (shape ``(0, 0)``) to skip tracking.
    Returns the list of nonzero diagonal entries.
    """
    cdef i64[:, ::1] A = A_arr
    cdef i64[:, ::1] U = U_arr
    cdef i64[:, ::1] V = V_arr
    cdef Py_ssize_t nr = A.shape[0], nc = A.shape[1]
    cdef bint tu = U.shape[0] > 0, tv = V.shape[0] > 0
    cdef Py_ssize_t t = 0, i, j, bi, bj, limit = min(nr, nc)
    cdef i64 best, a, p, q
    cdef bint dirty, is_row
    cdef int ovf = 0
    diag = []

    with nogil:
        while t < limit:
            best = 0
            bi = -1
            bj = -1
            for i in range(t, nr):
                for j in range(t, nc):
                    a = A[i, j]
                    if a != 0:
                        if a == LLONG_MIN:
                            ovf = 1
                            break
                        a = iabs(a)
                        if best == 0 or a < best:
                            best = a
                            bi = i
                            bj = j
                            if best == 1:
                                break
                if ovf or best == 1:
                    break
            if ovf:
                break
            if best == 0:
                break
            swap_rows(A, t, bi)
            if tu:
                swap_rows(U, t, bi)
            swap_cols(A, t, bj, t)
            if tv:
                swap_cols(V, t, bj, 0)

            while True:
                p = A[t, t]
                for i in range(t + 1, nr):
                    a = A[i, t]
                    if a != 0:
                        q = floordiv(a, p)
                        if q != 0:
                            if axpy_row(A, i, t, q, t, nc):
                                ovf = 1
                                break
                            if tu and axpy_row(U, i, t, q, 0, nr):
                                ovf = 1
                                break
                if ovf:
                    break
                for j in range(t + 1, nc):
                    a = A[t, j]
                    if a != 0:
                        q = floordiv(a, p)
                        if q != 0:
                            if axpy_col(A, j, t, q, t, nr):
                                ovf = 1
                                break
                            if tv and axpy_col(V, j, t, q, 0, nc):
                                ovf = 1
                                break
                if ovf:
                    break
                best = 0
                is_row = False
                bi = -1
                for i in range(t + 1, nr):
                    a = iabs(A[i, t])
                    if a != 0 and (best == 0 or a < best):
                        best = a
                        bi = i
                        is_row = True
                for j in range(t + 1, nc):
                    a = iabs(A[t, j])
                    if a != 0 and (best == 0 or a < best):
                        best = a
                        bi = j
                        is_row = False
                if best == 0:
                    break
                if is_row:
                    swap_rows(A, t, bi)
                    if tu:
                        swap_rows(U, t, bi)
                else:
                    swap_cols(A, t, bi, t)
                    if tv:
                        swap_cols(V, t, bi, 0)
            if ovf:
                break
            with gil:
                diag.append(int(A[t, t]))
            t += 1

    if ovf:
        raise OverflowError("int64 overflow during elimination")
    return diag
