"""Selects the compiled kernels when available, else the numpy fallback.

Set ``KSRGROUPS_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("KSRGROUPS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

orbit_labels = _impl.orbit_labels
stabilizer_mask = _impl.stabilizer_mask
positive_mask = _impl.positive_mask
grid_points = _kernels_py.grid_points
