# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernel backend.

Twin of invop._kernels._fallback: every public function performs the
same IEEE-754 operation sequence as its pure-Python counterpart, so the
two backends produce bitwise-identical results. Keep any change here in
lockstep with the fallback module.
"""

from libc.math cimport INFINITY


def plan_apply(const long long[::1] col_ptr,
               const double[::1] group_coeff,
               const long long[::1] group_ptr,
               const int[::1] entry_rows,
               const signed char[::1] entry_signs,
               const double[::1] x,
               double[::1] out):
    """Execute a grouped-coefficient apply plan.

    One multiplication per (column, group), one signed addition per
    covered entry. Returns (multiplications, additions).
    """
    cdef Py_ssize_t n = col_ptr.shape[0] - 1
    cdef Py_ssize_t j, g, e, g0, g1, e0, e1
    cdef double t, xj
    cdef long long mults = 0
    cdef long long adds = 0
    for j in range(n):
        g0 = col_ptr[j]
        g1 = col_ptr[j + 1]
        if g0 == g1:
            continue
        xj = x[j]
        for g in range(g0, g1):
            t = group_coeff[g] * xj
            e0 = group_ptr[g]
            e1 = group_ptr[g + 1]
            for e in range(e0, e1):
                if entry_signs[e] > 0:
                    out[entry_rows[e]] += t
                else:
                    out[entry_rows[e]] -= t
            adds += e1 - e0
        mults += g1 - g0
    return mults, adds


def naive_apply(const long long[::1] col_ptr,
                const int[::1] rows,
                const double[::1] vals,
                const double[::1] x,
                double[::1] out):
    """Column-by-column quantized multiply; one product and one addition
    per stored nonzero. Returns (multiplications, additions)."""
    cdef Py_ssize_t n = col_ptr.shape[0] - 1
    cdef Py_ssize_t j, e, e0, e1
    cdef double xj
    cdef long long ops = 0
    for j in range(n):
        e0 = col_ptr[j]
        e1 = col_ptr[j + 1]
        if e0 == e1:
            continue
        xj = x[j]
        for e in range(e0, e1):
            out[rows[e]] += vals[e] * xj
        ops += e1 - e0
    return ops, ops


def dense_matvec(const double[:, ::1] mat,
                 const double[::1] x,
                 double[::1] out):
    """Conventional dense multiply, accumulated in ascending column order.

    Returns (rows*cols, rows*(cols-1)): the first product of each row
    initializes the accumulator and is not counted as an addition.
    """
    cdef Py_ssize_t n_rows = mat.shape[0]
    cdef Py_ssize_t n_cols = mat.shape[1]
    cdef Py_ssize_t r, j
    cdef double acc
    for r in range(n_rows):
        acc = mat[r, 0] * x[0]
        for j in range(1, n_cols):
            acc += mat[r, j] * x[j]
        out[r] = acc
    return <long long>(n_rows * n_cols), <long long>(n_rows * (n_cols - 1))


def relax_solve(double[::1] u,
                const double[::1] b,
                Py_ssize_t nx,
                Py_ssize_t ny,
                double omega,
                double tol,
                long long max_iter):
    """Lexicographic relaxation sweeps over the interior of an nx-by-ny grid.

    ``u`` is updated in place; boundary entries are never touched. Stops
    when the per-sweep max correction drops to tol * max(1, max|u|).
    Returns (iterations, final_correction, converged).
    """
    cdef Py_ssize_t i, j, p, base
    cdef double s, cand, d, v, corr, umax, bmax, a
    cdef long long iterations = 0
    cdef bint converged = False

    bmax = 0.0
    for i in range(ny):
        for j in range(nx):
            if i == 0 or i == ny - 1 or j == 0 or j == nx - 1:
                a = u[i * nx + j]
                if a < 0.0:
                    a = -a
                if a > bmax:
                    bmax = a

    corr = INFINITY
    while iterations < max_iter:
        iterations += 1
        corr = 0.0
        umax = bmax
        for i in range(1, ny - 1):
            base = i * nx
            for j in range(1, nx - 1):
                p = base + j
                s = ((u[p - nx] + u[p + nx]) + u[p - 1]) + u[p + 1]
                cand = 0.25 * s + b[p]
                d = omega * (cand - u[p])
                v = u[p] + d
                u[p] = v
                if d < 0.0:
                    d = -d
                if d > corr:
                    corr = d
                if v < 0.0:
                    v = -v
                if v > umax:
                    umax = v
        if corr <= tol * (umax if umax > 1.0 else 1.0):
            converged = True
            break

    return iterations, corr, converged
