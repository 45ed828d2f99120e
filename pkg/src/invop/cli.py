"""Command-line front end.

Subcommands cover the pipeline stages (assemble, invert, quantize,
apply), the end-to-end solvers (solve-direct, solve-sor), and the
benchmark harness (bench-table1, bench-scaling). Inverses are cached on
disk under --cache (default ./cache, overridable via INVOP_CACHE) so the
one-time inversion is reused across solves; cache state never changes
what gets printed, only how fast it appears.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import applyplan, bench, cache, dense, quant
from .dense import DenseMatrix
from .errors import CacheError, InvopError
from .grid import Grid2D, SourceField, assemble_rhs, build_uniform, test_source
from .iterative import sor_solve
from .quant import QuantizedMatrix

DEFAULT_GRIDS = (5, 11, 21, 41)
LARGE_GRID = 81
DEFAULT_TABLE_DIGITS = (1, 2, 3, 5, 6, "none")
DEFAULT_SCALING_DIGITS = (2, 4, 6)


def _int_list(text: str) -> list:
    return [int(t) for t in text.split(",") if t.strip()]


def _digit_list(text: str) -> list:
    out = []
    for t in text.split(","):
        t = t.strip()
        if not t:
            continue
        out.append("none" if t.lower() == "none" else int(t))
    return out


def _resolve_grid(args) -> Grid2D:
    if args.grid is not None:
        if args.nx is not None or args.ny is not None:
            raise ValueError("pass either --grid or --nx/--ny, not both")
        return Grid2D(args.grid, args.grid)
    if args.nx is None or args.ny is None:
        raise ValueError("grid size missing: pass --grid N or both --nx and --ny")
    return Grid2D(args.nx, args.ny)


def _cached_dense_inverse(cache_dir, grid: Grid2D) -> DenseMatrix:
    entry = cache.entry_for(cache_dir, grid.nx, grid.ny, "uniform", None)
    if entry.path.exists():
        mat = cache.read_matrix(entry.path)
        if not isinstance(mat, DenseMatrix):
            raise CacheError("%s: expected a dense inverse, found quantized" % entry.path)
        return mat
    ainv = dense.invert(build_uniform(grid))
    cache.write_matrix(entry.path, ainv)
    return ainv


def _cached_quantized_inverse(cache_dir, grid: Grid2D, digits: int) -> QuantizedMatrix:
    entry = cache.entry_for(cache_dir, grid.nx, grid.ny, "uniform", digits)
    if entry.path.exists():
        mat = cache.read_matrix(entry.path)
        if not isinstance(mat, QuantizedMatrix) or mat.scale_digits != digits:
            raise CacheError("%s: does not hold a %d-digit quantized inverse" % (entry.path, digits))
        return mat
    q = quant.quantize(_cached_dense_inverse(cache_dir, grid), digits)
    cache.write_matrix(entry.path, q)
    return q


def _inverse_provider(cache_dir):
    return lambda n: _cached_dense_inverse(cache_dir, Grid2D(n, n))


def _test_rhs(grid: Grid2D):
    return assemble_rhs(grid, SourceField(f=test_source))


def _cmd_assemble(args) -> int:
    grid = _resolve_grid(args)
    op = build_uniform(grid)
    cache.write_matrix(args.out, DenseMatrix(n=op.n, entries=op.entries))
    print("wrote %s" % args.out)
    return 0


def _cmd_invert(args) -> int:
    grid = _resolve_grid(args)
    ainv = _cached_dense_inverse(args.cache, grid)
    if args.out:
        cache.write_matrix(args.out, ainv)
        print("wrote %s" % args.out)
    else:
        print("wrote %s" % cache.entry_for(args.cache, grid.nx, grid.ny, "uniform", None).path)
    return 0


def _cmd_quantize(args) -> int:
    grid = _resolve_grid(args)
    q = _cached_quantized_inverse(args.cache, grid, args.digits)
    if args.out:
        cache.write_matrix(args.out, q)
        print("wrote %s" % args.out)
    else:
        print("wrote %s" % cache.entry_for(args.cache, grid.nx, grid.ny, "uniform", args.digits).path)
    return 0


def _cmd_apply(args) -> int:
    mat = cache.read_matrix(args.matrix)
    vec = cache.read_vector(args.vector)
    if isinstance(mat, DenseMatrix):
        result, counters = dense.apply_dense(mat, vec)
    else:
        plan = applyplan.build_plan(mat)
        result, counters = applyplan.apply(plan, vec)
    if args.out:
        cache.write_vector(args.out, result)
        print("wrote %s" % args.out)
    else:
        for v in result:
            print(repr(float(v)))
    print("# multiplications=%d additions=%d" % counters.as_tuple())
    return 0


def _cmd_solve_direct(args) -> int:
    grid = _resolve_grid(args)
    rhs = _test_rhs(grid)
    if args.digits is None:
        ainv = _cached_dense_inverse(args.cache, grid)
        u, _ = dense.apply_dense(ainv, rhs)
        label = "none"
    else:
        q = _cached_quantized_inverse(args.cache, grid, args.digits)
        plan = applyplan.build_plan(q)
        u, _ = applyplan.apply(plan, rhs)
        label = "%d" % args.digits
    if args.out:
        cache.write_vector(args.out, u)
    err = bench.relative_error(u, grid)
    print("grid %dx%d digits=%s relative error: %.6g" % (grid.nx, grid.ny, label, err))
    return 0


def _cmd_solve_sor(args) -> int:
    grid = _resolve_grid(args)
    rhs = _test_rhs(grid)
    report = sor_solve(grid, rhs, args.omega, args.tol, args.max_iter)
    if args.out:
        cache.write_vector(args.out, report.solution)
    err = bench.relative_error(report.solution, grid)
    omega_label = "auto" if args.omega <= 0 else "%.6g" % args.omega
    print(
        "grid %dx%d omega=%s iterations=%d operations=%d converged=%s"
        % (grid.nx, grid.ny, omega_label, report.iterations, report.operations, report.converged)
    )
    print("grid %dx%d relative error: %.6g" % (grid.nx, grid.ny, err))
    return 0


def _bench_grids(args) -> list:
    if args.grids is not None:
        return args.grids
    sides = list(DEFAULT_GRIDS)
    if args.large:
        sides.append(LARGE_GRID)
    return sides


def _emit(report, args, default_stem: str) -> int:
    path = args.out or ("%s.%s" % (default_stem, args.format))
    if args.format == "svg":
        bench.emit_svg(report, path)
    else:
        bench.emit_csv(report, path)
    print("wrote %s" % path)
    return 0


def _cmd_bench_table1(args) -> int:
    digits = args.digits if args.digits is not None else list(DEFAULT_TABLE_DIGITS)
    rows = bench.run_table1(_bench_grids(args), digits, _inverse_provider(args.cache))
    return _emit(rows, args, "table1")


def _cmd_bench_scaling(args) -> int:
    digits = args.digits if args.digits is not None else list(DEFAULT_SCALING_DIGITS)
    report = bench.run_scaling(_bench_grids(args), digits, _inverse_provider(args.cache))
    return _emit(report, args, "scaling")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invop",
        description="Direct elliptic solver toolkit: invert once, quantize, fast-apply.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    grid_p = argparse.ArgumentParser(add_help=False)
    grid_p.add_argument("--grid", type=int, default=None, help="square grid side (nx = ny)")
    grid_p.add_argument("--nx", type=int, default=None, help="points along x")
    grid_p.add_argument("--ny", type=int, default=None, help="points along y")

    cache_p = argparse.ArgumentParser(add_help=False)
    cache_p.add_argument(
        "--cache",
        default=os.environ.get("INVOP_CACHE", "./cache"),
        help="cache directory (default ./cache, env INVOP_CACHE)",
    )

    p = sub.add_parser("assemble", parents=[grid_p], help="write the operator matrix")
    p.add_argument("--out", required=True, help="output matrix file")
    p.set_defaults(func=_cmd_assemble)

    p = sub.add_parser("invert", parents=[grid_p, cache_p], help="invert the operator (cached)")
    p.add_argument("--out", default=None, help="also write the inverse here")
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("quantize", parents=[grid_p, cache_p], help="quantize the inverse (cached)")
    p.add_argument("--digits", type=int, required=True, help="decimal digits to keep")
    p.add_argument("--out", default=None, help="also write the quantized matrix here")
    p.set_defaults(func=_cmd_quantize)

    p = sub.add_parser("apply", help="apply a stored matrix to a vector file")
    p.add_argument("--matrix", required=True, help="matrix file (dense or quantized)")
    p.add_argument("--vector", required=True, help="text vector file, one value per line")
    p.add_argument("--out", default=None, help="write the result vector here instead of stdout")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser(
        "solve-direct", parents=[grid_p, cache_p], help="solve the test problem via the inverse"
    )
    p.add_argument("--digits", type=int, default=None, help="quantize the inverse to this many digits")
    p.add_argument("--problem", choices=["eq4"], default="eq4", help="built-in problem")
    p.add_argument("--out", default=None, help="write the solution vector here")
    p.set_defaults(func=_cmd_solve_direct)

    p = sub.add_parser(
        "solve-sor", parents=[grid_p, cache_p], help="solve the test problem by relaxation"
    )
    p.add_argument("--omega", type=float, default=0.0, help="relaxation factor; <= 0 for auto")
    p.add_argument("--tol", type=float, default=1e-6, help="stopping tolerance")
    p.add_argument("--max-iter", type=int, default=100000, help="sweep limit")
    p.add_argument("--problem", choices=["eq4"], default="eq4", help="built-in problem")
    p.add_argument("--out", default=None, help="write the solution vector here")
    p.set_defaults(func=_cmd_solve_sor)

    for name, fn, digit_parser in (
        ("bench-table1", _cmd_bench_table1, _digit_list),
        ("bench-scaling", _cmd_bench_scaling, _int_list),
    ):
        p = sub.add_parser(name, parents=[cache_p], help="run the %s study" % name.split("-")[1])
        p.add_argument("--grids", type=_int_list, default=None, help="comma-separated grid sides")
        p.add_argument("--digits", type=digit_parser, default=None, help="comma-separated digit settings")
        p.add_argument("--large", action="store_true", help="include the 81-point grid")
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", choices=["csv", "svg"], default="csv")
        p.set_defaults(func=fn)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvopError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
