"""On-disk matrix cache and vector text I/O.

Matrix files are little-endian and versioned: magic "IVOP", a format
version byte, a kind byte (0x00 dense, 0x01 quantized), then two u32
dims (rows, cols). A dense payload is rows*cols float64 values
row-major; a quantized payload is one signed byte of decimal scale
followed by rows*cols int64 mantissas row-major. Writes go through a
temporary file and an atomic rename, so readers never observe a partial
file. Vectors are plain text, one decimal value per line, written with
repr so they round-trip bit-exactly.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .dense import DenseMatrix
from .errors import CacheError
from .quant import QuantizedMatrix

MAGIC = b"IVOP"
VERSION = 1
KIND_DENSE = 0x00
KIND_QUANTIZED = 0x01

_HEADER = struct.Struct("<4sBBII")


@dataclass(frozen=True)
class CacheEntry:
    """A named slot in the cache directory."""

    key: str
    kind: str
    path: Path


def entry_for(cache_dir, nx: int, ny: int, scheme: str, digits: Optional[int]) -> CacheEntry:
    """Cache slot for the inverse of the given operator; digits=None
    addresses the unrounded dense inverse."""
    if digits is None:
        tail, kind = "dense", "dense"
    else:
        tail, kind = "m%d" % digits, "quantized"
    key = "inv-%s-%dx%d-%s" % (scheme, nx, ny, tail)
    return CacheEntry(key=key, kind=kind, path=Path(cache_dir) / (key + ".ivop"))


def _atomic_write(path: Path, payload: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp%d" % os.getpid())
    try:
        tmp.write_bytes(payload)
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()


def write_matrix(path, mat: Union[DenseMatrix, QuantizedMatrix]) -> None:
    """Serialize a dense or quantized matrix to its binary cache format."""
    if isinstance(mat, DenseMatrix):
        header = _HEADER.pack(MAGIC, VERSION, KIND_DENSE, mat.n, mat.n)
        payload = mat.entries.astype("<f8").tobytes(order="C")
    elif isinstance(mat, QuantizedMatrix):
        header = _HEADER.pack(MAGIC, VERSION, KIND_QUANTIZED, mat.n, mat.n)
        payload = struct.pack("<b", mat.scale_digits) + mat.mantissas.astype("<i8").tobytes(order="C")
    else:
        raise TypeError("cannot cache %r" % type(mat).__name__)
    _atomic_write(path, header + payload)


def read_matrix(path) -> Union[DenseMatrix, QuantizedMatrix]:
    """Load a matrix written by write_matrix.

    Raises CacheError, naming the file, on bad magic, unsupported
    version, unknown kind byte, or truncation. A missing file raises
    FileNotFoundError as usual.
    """
    path = Path(path)
    data = path.read_bytes()
    if len(data) < _HEADER.size:
        raise CacheError("%s: truncated header (%d bytes)" % (path, len(data)))
    magic, version, kind, rows, cols = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CacheError("%s: bad magic %r" % (path, magic))
    if version != VERSION:
        raise CacheError("%s: unsupported format version %d" % (path, version))
    if rows != cols:
        raise CacheError("%s: non-square dims %dx%d" % (path, rows, cols))
    count = rows * cols
    try:
        if kind == KIND_DENSE:
            expected = _HEADER.size + 8 * count
            if len(data) != expected:
                raise CacheError("%s: expected %d bytes, found %d" % (path, expected, len(data)))
            entries = np.frombuffer(data, dtype="<f8", count=count, offset=_HEADER.size)
            return DenseMatrix(n=rows, entries=entries.reshape(rows, cols))
        if kind == KIND_QUANTIZED:
            expected = _HEADER.size + 1 + 8 * count
            if len(data) != expected:
                raise CacheError("%s: expected %d bytes, found %d" % (path, expected, len(data)))
            (scale,) = struct.unpack_from("<b", data, _HEADER.size)
            mant = np.frombuffer(data, dtype="<i8", count=count, offset=_HEADER.size + 1)
            return QuantizedMatrix(n=rows, scale_digits=scale, mantissas=mant.reshape(rows, cols))
    except ValueError as exc:
        raise CacheError("%s: invalid payload: %s" % (path, exc)) from exc
    raise CacheError("%s: unknown kind byte 0x%02x" % (path, kind))


def write_vector(path, vec) -> None:
    """One decimal value per line; repr keeps the round-trip bit-exact."""
    arr = np.ascontiguousarray(vec, dtype=np.float64)
    text = "".join(repr(float(v)) + "\n" for v in arr)
    _atomic_write(Path(path), text.encode("ascii"))


def read_vector(path) -> np.ndarray:
    """Parse a vector written by write_vector (or any one-number-per-line
    text file)."""
    path = Path(path)
    values = []
    for lineno, line in enumerate(path.read_text(encoding="ascii").splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError as exc:
            raise ValueError("%s: line %d is not a number: %r" % (path, lineno, line)) from exc
    return np.asarray(values, dtype=np.float64)
