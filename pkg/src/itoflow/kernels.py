"""Backend selection for the combinatorial kernels.

The compiled extension (itoflow._speedups, built from Cython) and the pure
interpreter module (itoflow._kernels_py) export the same functions over the
same plain-tuple data.  The compiled one is used when importable; set the
environment variable ITOFLOW_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("ITOFLOW_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND

pack_word = _impl.pack_word
is_surjection = _impl.is_surjection
descent_count = _impl.descent_count
descent_set = _impl.descent_set
surjections = _impl.surjections
qsh_words = _impl.qsh_words
apply_to_blocks = _impl.apply_to_blocks
diamond_words = _impl.diamond_words

__all__ = [
    "BACKEND",
    "pack_word",
    "is_surjection",
    "descent_count",
    "descent_set",
    "surjections",
    "qsh_words",
    "apply_to_blocks",
    "diamond_words",
]
