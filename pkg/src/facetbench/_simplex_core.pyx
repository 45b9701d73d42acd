# cython: language_level=3
"""Compiled simplex pivot kernel.

Twin of ``_simplex_py``: identical entering rule, ratio test, and pivot
arithmetic (compiled with -ffp-contract=off so multiply/subtract rounds
exactly like the NumPy fallback).  See that module for the tableau layout.
"""

OPTIMAL = 0
UNBOUNDED = 1
MAXITER = 2

KERNEL_NAME = "cython"


cdef inline void _pivot(double[:, ::1] T, long long[::1] basis, Py_ssize_t row, Py_ssize_t col) noexcept nogil:
    cdef Py_ssize_t nr = T.shape[0]
    cdef Py_ssize_t nc = T.shape[1]
    cdef Py_ssize_t i, k
    cdef double piv = T[row, col]
    cdef double f
    for k in range(nc):
        T[row, k] = T[row, k] / piv
    T[row, col] = 1.0
    for i in range(nr):
        if i == row:
            continue
        f = T[i, col]
        if f != 0.0:
            for k in range(nc):
                T[i, k] = T[i, k] - f * T[row, k]
        T[i, col] = 0.0
    basis[row] = col


def pivot(double[:, ::1] T, long long[::1] basis, Py_ssize_t row, Py_ssize_t col):
    """Exchange basis[row] for col with a full tableau update in place."""
    _pivot(T, basis, row, col)


def run(double[:, ::1] T, long long[::1] basis, Py_ssize_t enter_limit, double tol, long maxiter):
    """Iterate Bland pivots until optimal or unbounded.

    Columns at index >= enter_limit never enter.  Returns
    (status code, pivot count).
    """
    cdef Py_ssize_t nrows = T.shape[0] - 1
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef Py_ssize_t col, row, i
    cdef long iters = 0
    cdef double a, ratio, best
    cdef int status = 2  # MAXITER
    with nogil:
        while iters < maxiter:
            col = -1
            for i in range(enter_limit):
                if T[nrows, i] < -tol:
                    col = i
                    break
            if col < 0:
                status = 0  # OPTIMAL
                break
            row = -1
            best = 0.0
            for i in range(nrows):
                a = T[i, col]
                if a > tol:
                    ratio = T[i, rhs] / a
                    if row < 0 or ratio < best:
                        best = ratio
                        row = i
                    elif ratio == best and basis[i] < basis[row]:
                        row = i
            if row < 0:
                status = 1  # UNBOUNDED
                break
            _pivot(T, basis, row, col)
            iters += 1
    return status, iters
