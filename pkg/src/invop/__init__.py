"""invop: direct elliptic solver toolkit.

Discretize a 2-D Poisson-type problem, invert the operator once,
quantize the inverse to m decimal digits, and apply it to right-hand
sides with a value-sharing fast multiply whose elementary operations are
counted exactly. Relaxation baselines and a benchmark harness round out
the package.
"""

from ._kernels import BACKEND
from .applyplan import (
    ApplyPlan,
    CostPrediction,
    apply,
    apply_naive_quantized,
    build_plan,
    predict_direct_costs,
)
from .bench import (
    ErrorRow,
    ScalingReport,
    ScalingRow,
    emit_csv,
    emit_svg,
    relative_error,
    run_scaling,
    run_table1,
)
from .cache import CacheEntry, entry_for, read_matrix, read_vector, write_matrix, write_vector
from .counting import OpCounters
from .dense import DenseMatrix, apply_dense, invert, residual_check
from .errors import (
    CacheError,
    CapacityError,
    DegenerateProblemError,
    InvopError,
    MantissaOverflowError,
    SingularMatrixError,
)
from .grid import (
    MAX_DENSE_N,
    CoefficientField,
    Grid2D,
    OperatorMatrix,
    SourceField,
    analytic_solution,
    assemble_rhs,
    build_uniform,
    build_variable,
    test_source,
)
from .iterative import (
    IterativeReport,
    gauss_seidel_solve,
    predict_iterations,
    predict_iterative_total,
    sor_solve,
)
from .quant import QuantizedMatrix, dequantize, quantize, sparsity_stats

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ApplyPlan",
    "CacheEntry",
    "CacheError",
    "CapacityError",
    "CoefficientField",
    "CostPrediction",
    "DegenerateProblemError",
    "DenseMatrix",
    "ErrorRow",
    "Grid2D",
    "InvopError",
    "IterativeReport",
    "MAX_DENSE_N",
    "MantissaOverflowError",
    "OpCounters",
    "OperatorMatrix",
    "QuantizedMatrix",
    "ScalingReport",
    "ScalingRow",
    "SingularMatrixError",
    "SourceField",
    "analytic_solution",
    "apply",
    "apply_dense",
    "apply_naive_quantized",
    "assemble_rhs",
    "build_plan",
    "build_uniform",
    "build_variable",
    "dequantize",
    "emit_csv",
    "emit_svg",
    "entry_for",
    "gauss_seidel_solve",
    "invert",
    "predict_direct_costs",
    "predict_iterations",
    "predict_iterative_total",
    "quantize",
    "read_matrix",
    "read_vector",
    "relative_error",
    "residual_check",
    "run_scaling",
    "run_table1",
    "sor_solve",
    "sparsity_stats",
    "test_source",
    "write_matrix",
    "write_vector",
]
