"""Fast quantized apply via per-column sharing of equal coefficient
magnitudes.

For each column j, the nonzero mantissas are grouped by absolute value.
One group costs one real multiplication t = (|mantissa| * 10^(-m)) * x_j;
every covered row then absorbs +t or -t with one addition. Contributions
reach a given output row in ascending column order, the same order as the
naive column-major oracle, so the two produce bitwise-identical vectors.

The plan is stored flattened: columns index into a group table, groups
index into an entry table. All arrays are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .counting import OpCounters
from .iterative import predict_iterations, predict_iterative_total
from .quant import QuantizedMatrix

__all__ = [
    "ApplyPlan",
    "OpCounters",
    "CostPrediction",
    "build_plan",
    "apply",
    "apply_naive_quantized",
    "predict_direct_costs",
]


def _frozen(arr: np.ndarray, dtype) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ApplyPlan:
    """Precomputed grouping of a quantized matrix for counted fast apply.

    col_ptr[j]:col_ptr[j+1] are column j's groups; group_ptr[g]:group_ptr[g+1]
    are group g's entries. group_coeff[g] is the exact double
    group_abs_mantissa[g] * 10^(-scale_digits).
    """

    n: int
    scale_digits: int
    col_ptr: np.ndarray
    group_abs_mantissa: np.ndarray
    group_coeff: np.ndarray
    group_ptr: np.ndarray
    entry_rows: np.ndarray
    entry_signs: np.ndarray

    def __post_init__(self):
        col_ptr = _frozen(self.col_ptr, np.int64)
        gabs = _frozen(self.group_abs_mantissa, np.int64)
        gcoeff = _frozen(self.group_coeff, np.float64)
        gptr = _frozen(self.group_ptr, np.int64)
        rows = _frozen(self.entry_rows, np.int32)
        signs = _frozen(self.entry_signs, np.int8)
        groups = gabs.shape[0]
        if col_ptr.shape != (self.n + 1,) or col_ptr[0] != 0 or col_ptr[-1] != groups:
            raise ValueError("column pointer table inconsistent with group count")
        if np.any(np.diff(col_ptr) < 0) or np.any(np.diff(gptr) < 0):
            raise ValueError("pointer tables must be non-decreasing")
        if gptr.shape != (groups + 1,) or gptr[0] != 0 or gptr[-1] != rows.shape[0]:
            raise ValueError("group pointer table inconsistent with entry count")
        if gcoeff.shape != (groups,):
            raise ValueError("coefficient table size mismatch")
        if groups and gabs.min() <= 0:
            raise ValueError("group mantissas must be positive magnitudes")
        if rows.shape != signs.shape:
            raise ValueError("entry tables size mismatch")
        if signs.size and not np.isin(signs, (-1, 1)).all():
            raise ValueError("entry signs must be +1 or -1")
        for name, val in (
            ("col_ptr", col_ptr),
            ("group_abs_mantissa", gabs),
            ("group_coeff", gcoeff),
            ("group_ptr", gptr),
            ("entry_rows", rows),
            ("entry_signs", signs),
        ):
            object.__setattr__(self, name, val)

    @property
    def planned_multiplications(self) -> int:
        return int(self.group_abs_mantissa.shape[0])

    @property
    def planned_additions(self) -> int:
        return int(self.entry_rows.shape[0])


@dataclass(frozen=True)
class CostPrediction:
    """Reference cost-model values reported next to measured counts."""

    direct_products: float
    direct_sums: float
    iterative_total: float
    iterations: float

    def __post_init__(self):
        for name in ("direct_products", "direct_sums", "iterative_total", "iterations"):
            if getattr(self, name) < 0:
                raise ValueError("%s must be non-negative" % name)


def build_plan(q: QuantizedMatrix) -> ApplyPlan:
    """Group each column's nonzero entries by absolute mantissa.

    Groups are ordered by ascending magnitude within a column; entries
    keep ascending row order within a group. Zero entries contribute
    nothing. The result is deterministic for a given matrix.
    """
    n = q.n
    mant_t = q.mantissas.T
    cols, rows = np.nonzero(mant_t)
    vals = mant_t[cols, rows]
    absvals = np.abs(vals)

    if vals.size == 0:
        return ApplyPlan(
            n=n,
            scale_digits=q.scale_digits,
            col_ptr=np.zeros(n + 1, dtype=np.int64),
            group_abs_mantissa=np.empty(0, dtype=np.int64),
            group_coeff=np.empty(0, dtype=np.float64),
            group_ptr=np.zeros(1, dtype=np.int64),
            entry_rows=np.empty(0, dtype=np.int32),
            entry_signs=np.empty(0, dtype=np.int8),
        )

    # Stable lexsort: primary key column, secondary key |mantissa|; the
    # pre-existing ascending-row order survives within each group.
    order = np.lexsort((absvals, cols))
    cols_s = cols[order]
    abs_s = absvals[order]
    rows_s = rows[order]
    signs = np.where(vals[order] > 0, 1, -1).astype(np.int8)

    starts = np.empty(abs_s.shape[0], dtype=bool)
    starts[0] = True
    starts[1:] = (cols_s[1:] != cols_s[:-1]) | (abs_s[1:] != abs_s[:-1])
    start_idx = np.nonzero(starts)[0]

    group_ptr = np.empty(start_idx.shape[0] + 1, dtype=np.int64)
    group_ptr[:-1] = start_idx
    group_ptr[-1] = abs_s.shape[0]
    group_abs = abs_s[start_idx].astype(np.int64)
    group_cols = cols_s[start_idx]

    col_ptr = np.zeros(n + 1, dtype=np.int64)
    col_ptr[1:] = np.cumsum(np.bincount(group_cols, minlength=n))

    return ApplyPlan(
        n=n,
        scale_digits=q.scale_digits,
        col_ptr=col_ptr,
        group_abs_mantissa=group_abs,
        group_coeff=group_abs.astype(np.float64) * q.scale,
        group_ptr=group_ptr,
        entry_rows=rows_s.astype(np.int32),
        entry_signs=signs,
    )


def apply(plan: ApplyPlan, x) -> tuple:
    """Execute the plan on x. Returns (y, OpCounters); the counters always
    equal the planned counts, and y is bitwise equal to the naive oracle."""
    vec = np.ascontiguousarray(x, dtype=np.float64)
    if vec.shape != (plan.n,):
        raise ValueError("vector length %s does not match n=%d" % (vec.shape, plan.n))
    out = np.zeros(plan.n, dtype=np.float64)
    mults, adds = _kernels.plan_apply(
        plan.col_ptr,
        plan.group_coeff,
        plan.group_ptr,
        plan.entry_rows,
        plan.entry_signs,
        vec,
        out,
    )
    return out, OpCounters(int(mults), int(adds))


def apply_naive_quantized(q: QuantizedMatrix, x) -> tuple:
    """Oracle apply: walk columns ascending, rows ascending within each
    column, spending one multiplication and one addition per nonzero."""
    vec = np.ascontiguousarray(x, dtype=np.float64)
    if vec.shape != (q.n,):
        raise ValueError("vector length %s does not match n=%d" % (vec.shape, q.n))
    mant_t = q.mantissas.T
    cols, rows = np.nonzero(mant_t)
    vals = mant_t[cols, rows].astype(np.float64) * q.scale
    col_ptr = np.zeros(q.n + 1, dtype=np.int64)
    col_ptr[1:] = np.cumsum(np.bincount(cols, minlength=q.n))
    out = np.zeros(q.n, dtype=np.float64)
    mults, adds = _kernels.naive_apply(
        col_ptr, rows.astype(np.int32), vals, vec, out
    )
    return out, OpCounters(int(mults), int(adds))


def predict_direct_costs(m: int, n_total: int) -> CostPrediction:
    """Reference cost model for the rounded direct method at m digits,
    with the iterative-side predictions filled in for comparison."""
    if m < 1:
        raise ValueError("m must be at least 1, got %d" % m)
    if n_total < 1:
        raise ValueError("n_total must be at least 1, got %d" % n_total)
    factor = float(m) ** 2.5 * n_total
    return CostPrediction(
        direct_products=2.5 * factor,
        direct_sums=14.2 * factor,
        iterative_total=predict_iterative_total(n_total, m),
        iterations=predict_iterations(n_total, m),
    )
