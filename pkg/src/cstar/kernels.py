"""Kernel selection: the compiled core when importable, else pure Python.

Set ``CSTAR_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
count_sections = _pykernels.count_sections

if not os.environ.get("CSTAR_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # pragma: no cover - depends on build
        pass
    else:
        count_sections = _ckernels.count_sections
        BACKEND = "cython"

# coefficient guard: values beyond this go to the arbitrary-precision path
_LIMIT = 1 << 20


def h0_count(px, py, a):
    """Dispatch with an overflow guard for the compiled path."""
    if BACKEND == "cython" and max(map(abs, a), default=0) < _LIMIT and len(px) <= 64:
        return count_sections(px, py, a)
    return _pykernels.count_sections(px, py, a)
