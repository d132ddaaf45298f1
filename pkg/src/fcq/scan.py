"""Backend selection for the double-precision theta scan.

The compiled extension is used when importable; set FCQ_PURE_PYTHON=1 to
force the NumPy fallback.
"""

import os

from . import _scan_py

if os.environ.get("FCQ_PURE_PYTHON"):
    _ext = None
else:
    try:
        from . import _scan_ext as _ext
    except ImportError:
        _ext = None

BACKEND = "cython" if _ext is not None else "numpy"
theta_scan_ratio = _ext.theta_scan_ratio if _ext is not None else _scan_py.theta_scan_ratio
theta_scan_ratio_py = _scan_py.theta_scan_ratio

__all__ = ["BACKEND", "theta_scan_ratio", "theta_scan_ratio_py"]
