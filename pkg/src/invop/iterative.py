"""Relaxation baselines (Gauss-Seidel and SOR) with operation accounting.

Sweeps run directly on the 5-point stencil, so one interior update costs
exactly 5 elementary operations and a sweep over the grid is booked as
5 * N. Boundary entries are pinned to their right-hand-side values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .grid import Grid2D

LN10 = math.log(10.0)


@dataclass(frozen=True)
class IterativeReport:
    """Outcome of a relaxation solve."""

    solution: np.ndarray
    iterations: int
    operations: int
    converged: bool
    final_correction: float

    def __post_init__(self):
        sol = np.ascontiguousarray(self.solution, dtype=np.float64)
        if self.operations != 5 * sol.shape[0] * self.iterations:
            raise ValueError("operations must equal 5 * N * iterations")
        sol.setflags(write=False)
        object.__setattr__(self, "solution", sol)


def _auto_omega(grid: Grid2D) -> float:
    # Optimal relaxation factor from the scheme's Jacobi spectral radius;
    # reduces to 2 / (1 + sin(pi * h)) on square grids.
    mu = 0.5 * (math.cos(math.pi / (grid.nx - 1)) + math.cos(math.pi / (grid.ny - 1)))
    return 2.0 / (1.0 + math.sqrt(1.0 - mu * mu))


def sor_solve(grid: Grid2D, rhs, omega: float, tol: float, max_iter: int) -> IterativeReport:
    """Relaxation sweeps in lexicographic point order until the per-sweep
    max correction drops to tol * max(1, max|u|).

    Pass omega <= 0 to use the grid's optimal factor. Non-convergence
    within max_iter is reported, not raised.
    """
    if omega <= 0.0:
        omega = _auto_omega(grid)
    elif omega >= 2.0:
        raise ValueError("omega must lie in (0, 2), got %g" % omega)
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 0:
        raise ValueError("max_iter must be non-negative")

    b = np.ascontiguousarray(rhs, dtype=np.float64)
    if b.shape != (grid.n,):
        raise ValueError("rhs length %s does not match grid size %d" % (b.shape, grid.n))

    u = np.where(grid.boundary_mask(), b, 0.0)
    iterations, corr, converged = _kernels.relax_solve(
        u, b, grid.nx, grid.ny, float(omega), float(tol), int(max_iter)
    )
    return IterativeReport(
        solution=u,
        iterations=int(iterations),
        operations=5 * grid.n * int(iterations),
        converged=bool(converged),
        final_correction=float(corr),
    )


def gauss_seidel_solve(grid: Grid2D, rhs, tol: float, max_iter: int) -> IterativeReport:
    """Plain Gauss-Seidel: SOR with the relaxation factor fixed at 1."""
    return sor_solve(grid, rhs, 1.0, tol, max_iter)


def predict_iterations(n_total: int, digits: int) -> float:
    """Reference iteration-count model: (2 ln 10 / pi) * m * N."""
    if n_total < 1:
        raise ValueError("n_total must be at least 1")
    if digits < 0:
        raise ValueError("digits must be non-negative")
    return (2.0 * LN10 / math.pi) * digits * n_total


def predict_iterative_total(n_total: int, digits: int) -> float:
    """Reference total-cost model: (10 ln 10 / pi) * m * N^2, i.e. the
    5N-per-sweep cost times the predicted iteration count."""
    return 5.0 * n_total * predict_iterations(n_total, digits)
