"""Select the compiled kernels when available, else the Python fallback.

Set FQSUMS_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by the cross-backend tests).
"""

import os

from . import _kernels_py

if os.environ.get("FQSUMS_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
eval_codes = _impl.eval_codes
char_hist = _impl.char_hist
binomial_hist = _impl.binomial_hist
oracle_sweep = _impl.oracle_sweep
roundtrip_sweep = _impl.roundtrip_sweep


def compiled():
    """The compiled module, or None when it was not built."""
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


fallback = _kernels_py
