"""Kernel selection: compiled extension when available, pure Python otherwise.

Set EXEMPLAR_FORGE_PURE=1 to force the pure-Python kernels (used by the parity
tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("EXEMPLAR_FORGE_PURE") == "1":
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

IMPL = _impl.IMPL
ted_from_arrays = _impl.ted_from_arrays
lcs_length = _impl.lcs_length

__all__ = ["IMPL", "ted_from_arrays", "lcs_length"]
