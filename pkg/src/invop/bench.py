"""Benchmark harness: error table regeneration, operation-count scaling
studies, and CSV/SVG emission.

All outputs are deterministic: identical inputs produce byte-identical
files, so reruns can be diffed directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import applyplan, dense, quant
from .errors import DegenerateProblemError
from .grid import Grid2D, SourceField, analytic_solution, assemble_rhs, build_uniform, test_source

# Palette for SVG series, cycled in order.
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")

SCALING_HEADER = (
    "n,N,m,n_mult,n_add,alpha_mult,alpha_add,naive_mult,naive_add,"
    "pred_prod_eq9,pred_sum_eq10,pred_iter_eq7,pred_iter_total_eq8"
)
TABLE_HEADER = "n,digits,error"


@dataclass(frozen=True)
class ErrorRow:
    """One cell of the error table."""

    n: int
    digits: Union[int, str]
    error: float

    def __post_init__(self):
        if self.error < 0:
            raise ValueError("relative error cannot be negative")


@dataclass(frozen=True)
class ScalingRow:
    """Measured and predicted operation counts for one (n, m) cell."""

    n: int
    big_n: int
    m: int
    n_mult: int
    n_add: int
    alpha_mult: float
    alpha_add: float
    naive_mult: int
    naive_add: int
    pred_products: float
    pred_sums: float
    pred_iterations: float
    pred_iter_total: float


@dataclass(frozen=True)
class ScalingReport:
    """Scaling rows sorted by (n, m), plus fitted log-log slopes per m.

    slopes maps m to (slope of log n_mult vs log N, slope of log n_add
    vs log N); entries exist only where at least two grid sizes ran.
    """

    rows: tuple
    slopes: dict


def relative_error(numerical, grid: Grid2D) -> float:
    """Max-norm error against the analytic test solution, normalized by
    the largest analytic magnitude on the grid."""
    u_num = np.ascontiguousarray(numerical, dtype=np.float64)
    if u_num.shape != (grid.n,):
        raise ValueError("vector length %s does not match grid size %d" % (u_num.shape, grid.n))
    u_anal = grid.sample(analytic_solution)
    denom = float(np.abs(u_anal).max())
    if denom == 0.0:
        raise DegenerateProblemError(
            "analytic solution vanishes at every point of the %dx%d grid" % (grid.nx, grid.ny)
        )
    return float(np.abs(u_num - u_anal).max() / denom)


def _norm_digits(d) -> Union[int, str]:
    if d is None:
        return "none"
    if isinstance(d, str):
        if d.lower() == "none":
            return "none"
        return int(d)
    return int(d)


class _Pipeline:
    """Shared per-n artifacts for benchmark runs: operator, inverse, rhs.

    inverse_provider, when given, supplies the dense inverse for a grid
    side (the CLI passes its cache-aware loader)."""

    def __init__(self, inverse_provider=None):
        self._provider = inverse_provider
        self._cells = {}

    def cell(self, n: int):
        if n not in self._cells:
            grid = Grid2D(n, n)
            rhs = assemble_rhs(grid, SourceField(f=test_source))
            if self._provider is not None:
                ainv = self._provider(n)
            else:
                ainv = dense.invert(build_uniform(grid))
            self._cells[n] = (grid, ainv, rhs)
        return self._cells[n]


def run_table1(grid_sides, digit_list, inverse_provider=None) -> list:
    """Regenerate the error table.

    One row per (digits, n), digits in caller order (the table's row
    layout), grid sides in caller order within. digits entries may be
    integers or the literal "none" for the unrounded column.
    """
    pipe = _Pipeline(inverse_provider)
    rows = []
    for d in digit_list:
        digits = _norm_digits(d)
        for n in grid_sides:
            grid, ainv, rhs = pipe.cell(int(n))
            if digits == "none":
                u, _ = dense.apply_dense(ainv, rhs)
            else:
                q = quant.quantize(ainv, digits)
                plan = applyplan.build_plan(q)
                u, _ = applyplan.apply(plan, rhs)
            rows.append(ErrorRow(n=int(n), digits=digits, error=relative_error(u, grid)))
    return rows


def run_scaling(grid_sides, digit_list, inverse_provider=None) -> ScalingReport:
    """Measure fast-apply operation counts across grid sizes and digit
    settings, next to the conventional dense counts and the reference
    cost-model predictions."""
    sides = sorted({int(n) for n in grid_sides})
    digits = sorted({int(m) for m in digit_list})
    if not sides or not digits:
        raise ValueError("need at least one grid side and one digit setting")
    for m in digits:
        if m < 1:
            raise ValueError("scaling study needs m >= 1, got %d" % m)

    pipe = _Pipeline(inverse_provider)
    rows = []
    for n in sides:
        grid, ainv, rhs = pipe.cell(n)
        big_n = grid.n
        _, naive = dense.apply_dense(ainv, rhs)
        for m in digits:
            q = quant.quantize(ainv, m)
            plan = applyplan.build_plan(q)
            _, counters = applyplan.apply(plan, rhs)
            pred = applyplan.predict_direct_costs(m, big_n)
            rows.append(
                ScalingRow(
                    n=n,
                    big_n=big_n,
                    m=m,
                    n_mult=counters.multiplications,
                    n_add=counters.additions,
                    alpha_mult=counters.multiplications / big_n,
                    alpha_add=counters.additions / big_n,
                    naive_mult=naive.multiplications,
                    naive_add=naive.additions,
                    pred_products=pred.direct_products,
                    pred_sums=pred.direct_sums,
                    pred_iterations=pred.iterations,
                    pred_iter_total=pred.iterative_total,
                )
            )
    rows.sort(key=lambda r: (r.n, r.m))

    slopes = {}
    for m in digits:
        sub = [r for r in rows if r.m == m]
        if len(sub) < 2:
            continue
        log_n = np.log([r.big_n for r in sub])
        s_mult = float(np.polyfit(log_n, np.log([r.n_mult for r in sub]), 1)[0])
        s_add = float(np.polyfit(log_n, np.log([r.n_add for r in sub]), 1)[0])
        slopes[m] = (s_mult, s_add)
    return ScalingReport(rows=tuple(rows), slopes=slopes)


def _is_error_table(report) -> bool:
    return isinstance(report, (list, tuple)) and all(isinstance(r, ErrorRow) for r in report)


def emit_csv(report, path) -> None:
    """Write a report in its pinned CSV schema (see module docstring of
    the columns in SCALING_HEADER / TABLE_HEADER)."""
    if isinstance(report, ScalingReport):
        lines = [SCALING_HEADER]
        for r in report.rows:
            lines.append(
                "%d,%d,%d,%d,%d,%r,%r,%d,%d,%r,%r,%r,%r"
                % (
                    r.n, r.big_n, r.m, r.n_mult, r.n_add,
                    r.alpha_mult, r.alpha_add, r.naive_mult, r.naive_add,
                    r.pred_products, r.pred_sums, r.pred_iterations, r.pred_iter_total,
                )
            )
    elif _is_error_table(report):
        lines = [TABLE_HEADER]
        for r in report:
            lines.append("%d,%s,%.6g" % (r.n, r.digits, r.error))
    else:
        raise TypeError("unsupported report type: %r" % type(report).__name__)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def emit_svg(report, path) -> None:
    """Render a report as a self-contained log-log polyline chart."""
    if isinstance(report, ScalingReport):
        series = []
        for idx, m in enumerate(sorted({r.m for r in report.rows})):
            pts = [(r.big_n, r.n_mult) for r in report.rows if r.m == m]
            series.append(("m=%d" % m, _COLORS[idx % len(_COLORS)], pts))
        naive = sorted({(r.big_n, r.naive_mult) for r in report.rows})
        series.append(("naive N^2", "#555555", naive))
        body = _svg_chart(series, "N", "multiplications")
    elif _is_error_table(report):
        series = []
        labels = []
        for r in report:
            if r.digits not in labels:
                labels.append(r.digits)
        for idx, d in enumerate(labels):
            pts = [(r.n, max(r.error, 1e-300)) for r in report if r.digits == d]
            name = "digits=%s" % d
            series.append((name, _COLORS[idx % len(_COLORS)], pts))
        body = _svg_chart(series, "n", "relative error")
    else:
        raise TypeError("unsupported report type: %r" % type(report).__name__)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(body)


def _svg_chart(series, x_label: str, y_label: str) -> str:
    """Minimal log-log chart: decade grid lines, one polyline per series,
    text legend. No external resources."""
    width, height = 640, 480
    left, right, top, bottom = 70, 170, 24, 48
    plot_w = width - left - right
    plot_h = height - top - bottom

    xs = [x for _, _, pts in series for x, _ in pts]
    ys = [y for _, _, pts in series for _, y in pts]
    if not xs:
        raise ValueError("cannot chart an empty report")
    lx0, lx1 = np.log10(min(xs)), np.log10(max(xs))
    ly0, ly1 = np.log10(min(ys)), np.log10(max(ys))
    if lx1 - lx0 < 1e-9:
        lx0, lx1 = lx0 - 0.5, lx1 + 0.5
    if ly1 - ly0 < 1e-9:
        ly0, ly1 = ly0 - 0.5, ly1 + 0.5

    def px(x):
        return left + (np.log10(x) - lx0) / (lx1 - lx0) * plot_w

    def py(y):
        return top + plot_h - (np.log10(y) - ly0) / (ly1 - ly0) * plot_h

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d" font-family="monospace" font-size="12">' % (width, height, width, height),
        '<rect width="%d" height="%d" fill="white"/>' % (width, height),
        '<rect x="%d" y="%d" width="%d" height="%d" fill="none" stroke="#333"/>'
        % (left, top, plot_w, plot_h),
    ]
    for k in range(int(np.ceil(lx0)), int(np.floor(lx1)) + 1):
        x = left + (k - lx0) / (lx1 - lx0) * plot_w
        parts.append(
            '<line x1="%.2f" y1="%d" x2="%.2f" y2="%d" stroke="#ddd"/>' % (x, top, x, top + plot_h)
        )
        parts.append(
            '<text x="%.2f" y="%d" text-anchor="middle">1e%d</text>' % (x, top + plot_h + 16, k)
        )
    for k in range(int(np.ceil(ly0)), int(np.floor(ly1)) + 1):
        y = top + plot_h - (k - ly0) / (ly1 - ly0) * plot_h
        parts.append(
            '<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" stroke="#ddd"/>' % (left, y, left + plot_w, y)
        )
        parts.append(
            '<text x="%d" y="%.2f" text-anchor="end">1e%d</text>' % (left - 6, y + 4, k)
        )
    parts.append(
        '<text x="%.2f" y="%d" text-anchor="middle">%s</text>'
        % (left + plot_w / 2.0, height - 10, x_label)
    )
    parts.append(
        '<text x="16" y="%.2f" transform="rotate(-90 16 %.2f)" text-anchor="middle">%s</text>'
        % (top + plot_h / 2.0, top + plot_h / 2.0, y_label)
    )
    for idx, (label, color, pts) in enumerate(series):
        coords = " ".join("%.2f,%.2f" % (px(x), py(y)) for x, y in pts)
        parts.append(
            '<polyline points="%s" fill="none" stroke="%s" stroke-width="1.5"/>' % (coords, color)
        )
        for x, y in pts:
            parts.append('<circle cx="%.2f" cy="%.2f" r="3" fill="%s"/>' % (px(x), py(y), color))
        ly = top + 14 + 16 * idx
        lx = left + plot_w + 12
        parts.append(
            '<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" stroke="%s" stroke-width="1.5"/>'
            % (lx, ly - 4, lx + 18, ly - 4, color)
        )
        parts.append('<text x="%d" y="%.2f">%s</text>' % (lx + 24, ly, label))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
