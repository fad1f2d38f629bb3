"""Kernel selection: compiled extension when available, pure Python otherwise.

Set LITTLELAB_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the kernel-agreement tests).  The compiled kernel assumes 64-bit row masks,
so wide domains are routed to the pure twin regardless of backend.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("LITTLELAB_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND


def ldim_masks(rows, domain_size: int) -> int:
    if domain_size > 64:
        return _kernels_py.ldim_masks(rows, domain_size)
    return _impl.ldim_masks(rows, domain_size)


def game_value_masks(rows, domain_size: int) -> int:
    if domain_size > 64:
        return _kernels_py.game_value_masks(rows, domain_size)
    return _impl.game_value_masks(rows, domain_size)
