"""Decimal quantization of dense matrices to integer mantissas.

An entry v is stored as the signed integer mantissa round(v * 10^m),
half away from zero, and read back as mantissa * 10^(-m). The mantissa
magnitude is capped at 2^53 so every stored value, and every product
with a unit-scale vector, stays exactly representable in double
precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import DenseMatrix
from .errors import MantissaOverflowError

MANTISSA_LIMIT = 2 ** 53


@dataclass(frozen=True)
class QuantizedMatrix:
    """Integer-mantissa matrix at decimal scale 10^(-scale_digits)."""

    n: int
    scale_digits: int
    mantissas: np.ndarray

    def __post_init__(self):
        if self.scale_digits < 0:
            raise ValueError("scale_digits must be non-negative")
        raw = np.asarray(self.mantissas)
        if not np.issubdtype(raw.dtype, np.integer):
            raise ValueError("mantissas must be integers, got dtype %s" % raw.dtype)
        mant = np.ascontiguousarray(raw, dtype=np.int64)
        if mant.shape != (self.n, self.n):
            raise ValueError("mantissas shape %s does not match n=%d" % (mant.shape, self.n))
        mant.setflags(write=False)
        object.__setattr__(self, "mantissas", mant)

    @property
    def scale(self) -> float:
        """The exact double all consumers multiply mantissas by."""
        return 10.0 ** (-self.scale_digits)


def quantize(mat: DenseMatrix, digits: int) -> QuantizedMatrix:
    """Round every entry to `digits` decimal places, half away from zero.

    Raises MantissaOverflowError, naming the offending entry, if any
    mantissa magnitude would exceed 2^53.
    """
    if not 0 <= digits <= 12:
        raise ValueError("digits must be in 0..12, got %d" % digits)
    scaled = mat.entries * (10.0 ** digits)
    mant_f = np.copysign(np.floor(np.abs(scaled) + 0.5), scaled)
    worst = np.abs(mant_f).max() if mat.n else 0.0
    if worst > MANTISSA_LIMIT:
        i, j = np.unravel_index(int(np.abs(mant_f).argmax()), mant_f.shape)
        raise MantissaOverflowError(
            "entry (%d, %d) = %r needs mantissa %g at %d digits, beyond 2^53"
            % (i, j, float(mat.entries[i, j]), float(mant_f[i, j]), digits)
        )
    return QuantizedMatrix(n=mat.n, scale_digits=digits, mantissas=mant_f.astype(np.int64))


def dequantize(q: QuantizedMatrix) -> DenseMatrix:
    """Expand mantissas to the exact doubles the fast multiply uses."""
    return DenseMatrix(n=q.n, entries=q.mantissas.astype(np.float64) * q.scale)


def sparsity_stats(q: QuantizedMatrix) -> tuple:
    """(total nonzero count, per-column count of distinct nonzero
    absolute mantissas). The second list sizes the fast-apply plan."""
    nonzero = int(np.count_nonzero(q.mantissas))
    distinct = []
    for j in range(q.n):
        col = q.mantissas[:, j]
        nz = np.abs(col[col != 0])
        distinct.append(int(np.unique(nz).size))
    return nonzero, distinct
