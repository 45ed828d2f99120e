"""Kernel backend selection.

Two interchangeable backends implement the hot loops: a compiled
extension (_native) and a pure-Python twin (_fallback). Both perform
identical IEEE-754 operation sequences, so their outputs are bitwise
equal. INVOP_BACKEND forces the choice ("native" or "python"); unset,
the compiled backend is used when available.
"""

import os

from . import _fallback

_requested = os.environ.get("INVOP_BACKEND", "").strip().lower()

if _requested == "python":
    _impl = _fallback
    BACKEND = "python"
elif _requested == "native":
    from . import _native as _impl

    BACKEND = "native"
elif _requested == "":
    try:
        from . import _native as _impl

        BACKEND = "native"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"
else:
    raise ValueError(
        "INVOP_BACKEND must be 'native' or 'python', got %r" % _requested
    )

plan_apply = _impl.plan_apply
naive_apply = _impl.naive_apply
dense_matvec = _impl.dense_matvec
relax_solve = _impl.relax_solve

__all__ = ["BACKEND", "plan_apply", "naive_apply", "dense_matvec", "relax_solve"]
