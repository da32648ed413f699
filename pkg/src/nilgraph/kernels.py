"""Kernel selection: the compiled extension when built, else pure Python.

Set ``NILGRAPH_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("NILGRAPH_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

scan_cpa = _impl.scan_cpa
count_special_violations = _impl.count_special_violations

__all__ = ["BACKEND", "scan_cpa", "count_special_violations"]
