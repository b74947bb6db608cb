"""Select the compiled kernels when available, else the pure-Python ones.

Set ``QCC_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("QCC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

rref = _impl.rref
rank = _impl.rank
count_units = _impl.count_units

__all__ = ["BACKEND", "rref", "rank", "count_units"]
