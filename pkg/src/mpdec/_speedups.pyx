# cython: boundscheck=False, wraparound=False, cdivision=True
"""C implementation of the correction kernels.

Semantics must match ``mpdec._pykernels`` exactly (the test suite checks
the two backends against each other).  Matrices here are a handful of rows,
so the solver is a straight partial-pivoting elimination on the stack
buffers, skipping BLAS/LAPACK call overhead that dominates at this size.
"""

import numpy as np

cimport numpy as cnp

from .exceptions import SingularMatrixError

cnp.import_array()

BACKEND_NAME = "compiled"


cdef void _assemble(const double[:] theta_row, double dt,
                    const double[:, :, :] p_stack, const double[:, :, :] d_stack,
                    const double[:] denom, double[:, :] out) noexcept nogil:
    cdef Py_ssize_t nodes = theta_row.shape[0]
    cdef Py_ssize_t dim = denom.shape[0]
    cdef Py_ssize_t r, i, j
    cdef double theta, w, acc

    for i in range(dim):
        for j in range(dim):
            out[i, j] = 1.0 if i == j else 0.0

    for r in range(nodes):
        theta = theta_row[r]
        if theta > 0.0:
            w = dt * theta
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    out[i, j] -= w * p_stack[r, i, j] / denom[j]
                    acc += d_stack[r, i, j]
                out[i, i] += w * acc / denom[i]
        elif theta < 0.0:
            w = dt * theta
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    out[i, j] += w * d_stack[r, i, j] / denom[j]
                    acc += p_stack[r, i, j]
                out[i, i] -= w * acc / denom[i]


cdef int _solve_inplace(double[:, :] a, double[:] x) noexcept nogil:
    """Partial-pivoting elimination; returns -1 on a zero pivot."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t col, row, k, pivot_row
    cdef double pivot, factor, tmp

    for col in range(n):
        pivot_row = col
        pivot = a[col, col]
        if pivot < 0.0:
            pivot = -pivot
        for row in range(col + 1, n):
            tmp = a[row, col]
            if tmp < 0.0:
                tmp = -tmp
            if tmp > pivot:
                pivot = tmp
                pivot_row = row
        if pivot == 0.0:
            return -1
        if pivot_row != col:
            for k in range(col, n):
                tmp = a[col, k]
                a[col, k] = a[pivot_row, k]
                a[pivot_row, k] = tmp
            tmp = x[col]
            x[col] = x[pivot_row]
            x[pivot_row] = tmp
        for row in range(col + 1, n):
            factor = a[row, col] / a[col, col]
            if factor != 0.0:
                for k in range(col + 1, n):
                    a[row, k] -= factor * a[col, k]
                x[row] -= factor * x[col]
    for col in range(n - 1, -1, -1):
        tmp = x[col]
        for k in range(col + 1, n):
            tmp -= a[col, k] * x[k]
        x[col] = tmp / a[col, col]
    return 0


def assemble_mass_matrix(theta_row, double dt, p_stack, d_stack, denom):
    cdef const double[:] theta_mv = np.ascontiguousarray(theta_row, dtype=np.float64)
    cdef const double[:, :, :] p_mv = np.ascontiguousarray(p_stack, dtype=np.float64)
    cdef const double[:, :, :] d_mv = np.ascontiguousarray(d_stack, dtype=np.float64)
    cdef const double[:] denom_mv = np.ascontiguousarray(denom, dtype=np.float64)
    out = np.empty((denom_mv.shape[0], denom_mv.shape[0]), dtype=np.float64)
    cdef double[:, :] out_mv = out
    _assemble(theta_mv, dt, p_mv, d_mv, denom_mv, out_mv)
    return out


def sweep_solve(theta, double dt, p_stack, d_stack, prev_states, c0):
    cdef const double[:, :] theta_mv = np.ascontiguousarray(theta, dtype=np.float64)
    cdef const double[:, :, :] p_mv = np.ascontiguousarray(p_stack, dtype=np.float64)
    cdef const double[:, :, :] d_mv = np.ascontiguousarray(d_stack, dtype=np.float64)
    cdef const double[:, :] prev_mv = np.ascontiguousarray(prev_states, dtype=np.float64)
    cdef const double[:] c0_mv = np.ascontiguousarray(c0, dtype=np.float64)
    cdef Py_ssize_t nodes = prev_mv.shape[0]
    cdef Py_ssize_t dim = prev_mv.shape[1]

    new_states = np.empty((nodes, dim), dtype=np.float64)
    cdef double[:, :] new_mv = new_states
    scratch = np.empty((dim, dim), dtype=np.float64)
    cdef double[:, :] scratch_mv = scratch
    cdef Py_ssize_t m, i
    cdef int status = 0

    with nogil:
        for i in range(dim):
            new_mv[0, i] = c0_mv[i]
        for m in range(1, nodes):
            _assemble(theta_mv[m], dt, p_mv, d_mv, prev_mv[m], scratch_mv)
            for i in range(dim):
                new_mv[m, i] = c0_mv[i]
            status = _solve_inplace(scratch_mv, new_mv[m])
            if status != 0:
                break
    if status != 0:
        raise SingularMatrixError(
            f"zero pivot in correction solve at subtimestep {m}")
    return new_states
