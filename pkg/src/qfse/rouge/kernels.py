"""Kernel backend selection: compiled extension if available, else pure Python.

Set ``QFSE_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
for debugging).
"""

from __future__ import annotations

import os

from . import _speedups_py

if os.environ.get("QFSE_PURE_PYTHON"):
    _impl = _speedups_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _speedups_py
        BACKEND = "python"

lcs_length = _impl.lcs_length
ngram_overlap = _impl.ngram_overlap
skip_overlap = _impl.skip_overlap
