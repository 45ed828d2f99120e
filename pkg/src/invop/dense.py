"""Dense inversion of the operator matrix and counted dense apply."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from . import _kernels
from .counting import OpCounters
from .errors import SingularMatrixError

# A pivot this small relative to the largest entry is treated as zero.
PIVOT_RTOL = 1e-13


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable dense N x N real matrix, row-major."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        ent = np.ascontiguousarray(self.entries, dtype=np.float64)
        if ent.shape != (self.n, self.n):
            raise ValueError("entries shape %s does not match n=%d" % (ent.shape, self.n))
        if not np.isfinite(ent).all():
            raise ValueError("matrix entries must be finite")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)


def invert(a) -> DenseMatrix:
    """Invert a square matrix container (anything with .n and .entries)
    by LU factorization with partial pivoting.

    Raises SingularMatrixError when a pivot falls below
    PIVOT_RTOL * max|entry|, i.e. the matrix is singular to working
    precision.
    """
    n = a.n
    mat = np.asarray(a.entries, dtype=np.float64)
    scale = float(np.abs(mat).max()) if n else 0.0
    if scale == 0.0:
        raise SingularMatrixError("matrix is identically zero")
    with warnings.catch_warnings():
        # The pivot check below is the real diagnostic; the factorization
        # warning would just duplicate it on stderr.
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(mat, check_finite=False)
    pivots = np.abs(np.diag(lu))
    smallest = float(pivots.min())
    if smallest < PIVOT_RTOL * scale:
        raise SingularMatrixError(
            "pivot %.3e below threshold %.3e; matrix is singular to working precision"
            % (smallest, PIVOT_RTOL * scale)
        )
    inv = lu_solve((lu, piv), np.eye(n, dtype=np.float64), check_finite=False)
    return DenseMatrix(n=n, entries=inv)


def residual_check(a, ainv) -> float:
    """Max-norm of A * Ainv - I, the inversion quality metric."""
    if a.n != ainv.n:
        raise ValueError("dimension mismatch: %d vs %d" % (a.n, ainv.n))
    prod = np.asarray(a.entries) @ np.asarray(ainv.entries)
    np.fill_diagonal(prod, np.diagonal(prod) - 1.0)
    return float(np.abs(prod).max())


def apply_dense(m: DenseMatrix, x) -> tuple:
    """Conventional dense matrix-vector product with exact operation
    counters: N*N multiplications, N*(N-1) additions."""
    vec = np.ascontiguousarray(x, dtype=np.float64)
    if vec.shape != (m.n,):
        raise ValueError("vector length %s does not match n=%d" % (vec.shape, m.n))
    out = np.empty(m.n, dtype=np.float64)
    mults, adds = _kernels.dense_matvec(m.entries, vec, out)
    return out, OpCounters(int(mults), int(adds))
