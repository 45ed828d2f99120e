"""Shared fixtures: lazily built solved-pipeline artifacts per grid side.

Inverting the operator is the expensive step, so grids are built once
per session and reused by every module that needs them.
"""

import numpy as np
import pytest

import invop


class PipelineCells:
    def __init__(self):
        self._store = {}

    def __call__(self, n: int):
        """(grid, operator, inverse, test-problem rhs) for an n-by-n grid."""
        if n not in self._store:
            grid = invop.Grid2D(n, n)
            op = invop.build_uniform(grid)
            ainv = invop.invert(op)
            rhs = invop.assemble_rhs(grid, invop.SourceField(f=invop.test_source))
            self._store[n] = (grid, op, ainv, rhs)
        return self._store[n]


@pytest.fixture(scope="session")
def cells():
    return PipelineCells()


def random_quantized(rng, n: int, digits: int) -> invop.QuantizedMatrix:
    """Random quantized matrix with a small magnitude pool, so columns
    contain repeated |mantissa| values and the plan actually groups."""
    pool = rng.integers(1, 10 ** (digits + 1) + 9, size=int(rng.integers(1, 5)))
    mant = rng.choice(pool, size=(n, n)) * rng.choice([-1, 0, 1], size=(n, n))
    return invop.QuantizedMatrix(n=n, scale_digits=digits, mantissas=mant.astype(np.int64))
