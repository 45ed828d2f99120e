"""Grid geometry, operator assembly, and the built-in test problem.

The domain is the square [0, L] x [0, L] sampled on an nx-by-ny lattice.
Points are numbered p(i, j) = (i - 1) * nx + (j - 1) with 1-based i along
y (slow) and j along x (fast), giving flat indices 0 .. N-1, N = nx * ny.
A point is boundary iff it lies on any lattice edge; the discrete
operator pins those unknowns with identity rows and couples each interior
unknown to its four axis neighbors with weight -0.25.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import CapacityError

# Largest dimension we will materialize as a dense N x N matrix.
MAX_DENSE_N = 8192

FieldSpec = Optional[Union[Callable, np.ndarray, list, tuple]]


@dataclass(frozen=True)
class Grid2D:
    """Uniform rectangular grid on [0, length]^2."""

    nx: int
    ny: int
    length: float = 1.0

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis, got (%d, %d)" % (self.nx, self.ny))
        if not (self.length > 0.0 and np.isfinite(self.length)):
            raise ValueError("domain length must be positive and finite")

    @property
    def n(self) -> int:
        return self.nx * self.ny

    @property
    def hx(self) -> float:
        return self.length / (self.nx - 1)

    @property
    def hy(self) -> float:
        return self.length / (self.ny - 1)

    def index(self, i: int, j: int) -> int:
        """Flat 0-based index of the point at 1-based (i, j), i along y."""
        if not (1 <= i <= self.ny and 1 <= j <= self.nx):
            raise ValueError("point (%d, %d) outside grid (%d, %d)" % (i, j, self.nx, self.ny))
        return (i - 1) * self.nx + (j - 1)

    def coords(self, p: int) -> tuple:
        """(x, y) coordinates of flat point p."""
        if not 0 <= p < self.n:
            raise ValueError("point index %d outside 0..%d" % (p, self.n - 1))
        i, j = divmod(p, self.nx)
        return self.hx * j, self.hy * i

    def boundary_mask(self) -> np.ndarray:
        """Boolean mask over flat indices, True on lattice edges."""
        i, j = np.divmod(np.arange(self.n), self.nx)
        return (i == 0) | (i == self.ny - 1) | (j == 0) | (j == self.nx - 1)

    def interior_mask(self) -> np.ndarray:
        return ~self.boundary_mask()

    def sample(self, fn: Callable) -> np.ndarray:
        """Evaluate fn(x, y) at every grid point, in point order."""
        out = np.empty(self.n, dtype=np.float64)
        for p in range(self.n):
            x, y = self.coords(p)
            out[p] = fn(x, y)
        return out


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense N x N system matrix with boundary-identity rows.

    is_boundary tags each row: True rows are exact identity rows, False
    rows carry the interior stencil.
    """

    n: int
    entries: np.ndarray
    is_boundary: np.ndarray

    def __post_init__(self):
        ent = np.ascontiguousarray(self.entries, dtype=np.float64)
        tags = np.ascontiguousarray(self.is_boundary, dtype=np.bool_)
        if ent.shape != (self.n, self.n):
            raise ValueError("entries shape %s does not match n=%d" % (ent.shape, self.n))
        if tags.shape != (self.n,):
            raise ValueError("row tag vector must have length n")
        object.__setattr__(self, "entries", _freeze(ent))
        object.__setattr__(self, "is_boundary", _freeze(tags))


@dataclass(frozen=True)
class CoefficientField:
    """Per-point coefficients for the variable-weight scheme."""

    beta: np.ndarray

    def __post_init__(self):
        b = np.ascontiguousarray(self.beta, dtype=np.float64)
        if b.ndim != 1:
            raise ValueError("beta must be a flat per-point vector")
        if not np.isfinite(b).all():
            raise ValueError("beta values must be finite")
        object.__setattr__(self, "beta", _freeze(b))


@dataclass(frozen=True)
class SourceField:
    """Problem data: source term f and Dirichlet boundary values g.

    Either field may be a callable of (x, y) or a length-N vector of
    per-point samples; g may be None for homogeneous boundary data.
    Array-valued g is read only at boundary slots.
    """

    f: FieldSpec
    g: FieldSpec = None


def _point_values(grid: Grid2D, spec, what: str) -> np.ndarray:
    if spec is None:
        return np.zeros(grid.n, dtype=np.float64)
    if callable(spec):
        return grid.sample(spec)
    vals = np.ascontiguousarray(spec, dtype=np.float64)
    if vals.shape != (grid.n,):
        raise ValueError("%s samples must have length %d, got shape %s" % (what, grid.n, vals.shape))
    return vals


def _check_capacity(grid: Grid2D) -> None:
    if grid.n > MAX_DENSE_N:
        raise CapacityError(
            "dense operator for %dx%d grid needs N=%d > limit %d"
            % (grid.nx, grid.ny, grid.n, MAX_DENSE_N)
        )


def build_uniform(grid: Grid2D) -> OperatorMatrix:
    """Assemble the uniform 5-point operator: u - 0.25 * (sum of the four
    neighbors) on interior rows, identity on boundary rows."""
    _check_capacity(grid)
    n = grid.n
    nx = grid.nx
    mask = grid.boundary_mask()
    entries = np.eye(n, dtype=np.float64)
    for p in np.nonzero(~mask)[0]:
        # p is interior, so all four neighbor offsets stay in range.
        for q in (p - nx, p + nx, p - 1, p + 1):
            entries[p, q] = -0.25
    return OperatorMatrix(n=n, entries=entries, is_boundary=mask)


def build_variable(grid: Grid2D, coeffs: CoefficientField) -> OperatorMatrix:
    """Assemble the variable-coefficient operator: each interior row takes
    -0.25 * beta at a neighbor, with beta read at that neighbor's point."""
    _check_capacity(grid)
    n = grid.n
    if coeffs.beta.shape != (n,):
        raise ValueError("coefficient field has %d values, grid has %d points" % (coeffs.beta.size, n))
    nx = grid.nx
    mask = grid.boundary_mask()
    entries = np.eye(n, dtype=np.float64)
    beta = coeffs.beta
    for p in np.nonzero(~mask)[0]:
        for q in (p - nx, p + nx, p - 1, p + 1):
            entries[p, q] = -0.25 * beta[q]
    return OperatorMatrix(n=n, entries=entries, is_boundary=mask)


def assemble_rhs(grid: Grid2D, source: SourceField) -> np.ndarray:
    """Right-hand-side vector: g at boundary slots, -f * hx * hy / 4 at
    interior slots (the scaled form whose interior rows have unit diagonal)."""
    mask = grid.boundary_mask()
    fv = _point_values(grid, source.f, "source")
    gv = _point_values(grid, source.g, "boundary")
    rhs = np.empty(grid.n, dtype=np.float64)
    rhs[mask] = gv[mask]
    rhs[~mask] = -fv[~mask] * (grid.hx * grid.hy / 4.0)
    return rhs


def analytic_solution(x: float, y: float) -> float:
    """Closed-form solution of the built-in test problem."""
    return (x ** 4 - x ** 3) * (y ** 3 - y ** 2)


def test_source(x: float, y: float) -> float:
    """Source term whose exact solution is analytic_solution."""
    return (12.0 * x ** 2 - 6.0 * x) * (y ** 3 - y ** 2) + (x ** 4 - x ** 3) * (6.0 * y - 2.0)
