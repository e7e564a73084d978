"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python kernels.
Set CUDSEQ_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by the backend-parity tests).
"""

import os

from . import _pykernels

if os.environ.get("CUDSEQ_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _pykernels

BACKEND: str = kernels.BACKEND_NAME
