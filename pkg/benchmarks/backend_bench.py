"""Time the compiled kernel backend against the pure-Python fallback.

Runs the four hot kernels on identical inputs, checks that both backends
produce bitwise-identical results, and prints a timing table. Usage:

    python3 benchmarks/backend_bench.py [--grid 41] [--digits 3] [--repeat 5]
"""

import argparse
import sys
import time

import numpy as np

import invop
from invop._kernels import _fallback

try:
    from invop._kernels import _native
except ImportError:
    _native = None


def _best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _naive_tables(q):
    mant_t = q.mantissas.T
    cols, rows = np.nonzero(mant_t)
    vals = mant_t[cols, rows].astype(np.float64) * q.scale
    col_ptr = np.zeros(q.n + 1, dtype=np.int64)
    col_ptr[1:] = np.cumsum(np.bincount(cols, minlength=q.n))
    return col_ptr, rows.astype(np.int32), vals


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", type=int, default=41, help="square grid side")
    parser.add_argument("--digits", type=int, default=3, help="quantization digits")
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions, best kept")
    args = parser.parse_args(argv)

    if _native is None:
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    grid = invop.Grid2D(args.grid, args.grid)
    print("problem: %dx%d grid (N=%d), m=%d, best of %d runs"
          % (grid.nx, grid.ny, grid.n, args.digits, args.repeat))
    ainv = invop.invert(invop.build_uniform(grid))
    rhs = invop.assemble_rhs(grid, invop.SourceField(invop.test_source))
    q = invop.quantize(ainv, args.digits)
    plan = invop.build_plan(q)
    col_ptr, rows, vals = _naive_tables(q)
    mat = np.ascontiguousarray(ainv.entries)
    u0 = np.where(grid.boundary_mask(), rhs, 0.0)

    benches = []

    def plan_case(impl):
        out = np.zeros(grid.n)
        impl.plan_apply(plan.col_ptr, plan.group_coeff, plan.group_ptr,
                        plan.entry_rows, plan.entry_signs, rhs, out)
        return out

    def naive_case(impl):
        out = np.zeros(grid.n)
        impl.naive_apply(col_ptr, rows, vals, rhs, out)
        return out

    def dense_case(impl):
        out = np.zeros(grid.n)
        impl.dense_matvec(mat, rhs, out)
        return out

    def relax_case(impl):
        u = u0.copy()
        impl.relax_solve(u, rhs, grid.nx, grid.ny, 1.0, 1e-6, 100000)
        return u

    benches.append(("plan_apply", plan_case))
    benches.append(("naive_apply", naive_case))
    benches.append(("dense_matvec", dense_case))
    benches.append(("relax_solve", relax_case))

    print("%-14s %12s %12s %9s" % ("kernel", "python [s]", "native [s]", "speedup"))
    for name, case in benches:
        out_py = case(_fallback)
        out_nat = case(_native)
        if out_py.tobytes() != out_nat.tobytes():
            print("%s: BACKEND MISMATCH, results differ" % name, file=sys.stderr)
            return 1
        t_py = _best_of(args.repeat, lambda: case(_fallback))
        t_nat = _best_of(args.repeat, lambda: case(_native))
        print("%-14s %12.6f %12.6f %8.1fx" % (name, t_py, t_nat, t_py / t_nat))
    return 0


if __name__ == "__main__":
    sys.exit(main())
