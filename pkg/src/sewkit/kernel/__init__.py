"""Geometry kernel with a compiled fast path and a pure-Python fallback.

The compiled backend (Cython) is used when it imported successfully and
the environment variable SEWKIT_PURE is not set; otherwise the numpy
reference implementation takes over.  Both expose the same functions, so
callers never branch on the backend.

Set SEWKIT_PURE=1 to force the fallback (used by the parity tests and the
benchmark in benchmarks/kernel_bench.py).
"""

from __future__ import annotations

import os

from . import reference

_impl = reference
BACKEND = "python"

if os.environ.get("SEWKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _native as _impl_native

        _impl = _impl_native
        BACKEND = "native"
    except ImportError:
        pass

bezier_points = _impl.bezier_points
bezier_derivatives = _impl.bezier_derivatives
bezier_curvatures = _impl.bezier_curvatures
bezier_length = _impl.bezier_length
bezier_partial_length = _impl.bezier_partial_length
bezier_param_at_length = _impl.bezier_param_at_length
bezier_max_curvature = _impl.bezier_max_curvature

__all__ = [
    "BACKEND",
    "bezier_points",
    "bezier_derivatives",
    "bezier_curvatures",
    "bezier_length",
    "bezier_partial_length",
    "bezier_param_at_length",
    "bezier_max_curvature",
    "reference",
]
