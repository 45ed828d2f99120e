"""Pure-Python kernel backend.

Mirrors the compiled backend operation for operation: every float is
produced by the same sequence of IEEE-754 double operations, so outputs
are bitwise identical across backends. Accumulation orders are part of
the contract here, not an implementation detail.
"""

from __future__ import annotations

import numpy as np


def plan_apply(col_ptr, group_coeff, group_ptr, entry_rows, entry_signs, x, out):
    """Execute a grouped-coefficient apply plan.

    One multiplication per (column, group), one signed addition per
    covered entry. Returns (multiplications, additions).
    """
    n = col_ptr.shape[0] - 1
    signs = entry_signs.astype(np.float64)
    mults = 0
    adds = 0
    for j in range(n):
        g0 = int(col_ptr[j])
        g1 = int(col_ptr[j + 1])
        if g0 == g1:
            continue
        e0 = int(group_ptr[g0])
        e1 = int(group_ptr[g1])
        shared = group_coeff[g0:g1] * x[j]
        spread = np.repeat(shared, np.diff(group_ptr[g0 : g1 + 1]))
        out[entry_rows[e0:e1]] += signs[e0:e1] * spread
        mults += g1 - g0
        adds += e1 - e0
    return mults, adds


def naive_apply(col_ptr, rows, vals, x, out):
    """Column-by-column quantized multiply; one product and one addition
    per stored nonzero. Returns (multiplications, additions)."""
    n = col_ptr.shape[0] - 1
    ops = 0
    for j in range(n):
        e0 = int(col_ptr[j])
        e1 = int(col_ptr[j + 1])
        if e0 == e1:
            continue
        out[rows[e0:e1]] += vals[e0:e1] * x[j]
        ops += e1 - e0
    return ops, ops


def dense_matvec(mat, x, out):
    """Conventional dense multiply, accumulated in ascending column order.

    Returns (rows*cols, rows*(cols-1)): the first product of each row
    initializes the accumulator and is not counted as an addition.
    """
    n_rows, n_cols = mat.shape
    acc = mat[:, 0] * x[0]
    for j in range(1, n_cols):
        acc += mat[:, j] * x[j]
    out[:] = acc
    return n_rows * n_cols, n_rows * (n_cols - 1)


def relax_solve(u, b, nx, ny, omega, tol, max_iter):
    """Lexicographic relaxation sweeps over the interior of an nx-by-ny grid.

    ``u`` is updated in place; boundary entries are never touched. Stops
    when the per-sweep max correction drops to tol * max(1, max|u|).
    Returns (iterations, final_correction, converged).
    """
    ul = u.tolist()
    bl = b.tolist()

    bmax = 0.0
    for i in range(ny):
        for j in range(nx):
            if i == 0 or i == ny - 1 or j == 0 or j == nx - 1:
                a = abs(ul[i * nx + j])
                if a > bmax:
                    bmax = a

    iterations = 0
    corr = float("inf")
    converged = False
    while iterations < max_iter:
        iterations += 1
        corr = 0.0
        umax = bmax
        for i in range(1, ny - 1):
            base = i * nx
            for j in range(1, nx - 1):
                p = base + j
                s = ((ul[p - nx] + ul[p + nx]) + ul[p - 1]) + ul[p + 1]
                cand = 0.25 * s + bl[p]
                d = omega * (cand - ul[p])
                v = ul[p] + d
                ul[p] = v
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

    u[:] = ul
    return iterations, corr, converged
