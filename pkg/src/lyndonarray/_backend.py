"""Backend selection: compiled extension kernels with a pure-Python twin.

The compiled module `_ckernels` implements the same algorithms and data
layout as `_purekernels`; it is preferred when importable.  Set
LYNDONARRAY_BACKEND=pure or =compiled to force a choice (the latter raises
if the extension is missing).
"""

from __future__ import annotations

import os

from . import _purekernels

_FORCED = os.environ.get("LYNDONARRAY_BACKEND", "auto").strip().lower()

if _FORCED not in ("auto", "pure", "compiled"):
    raise RuntimeError(f"LYNDONARRAY_BACKEND must be auto|pure|compiled, got {_FORCED!r}")

if _FORCED == "pure":
    kernels = _purekernels
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]
    except ImportError:
        if _FORCED == "compiled":
            raise
        kernels = _purekernels

BACKEND = kernels.BACKEND


def get_kernels(backend: str | None = None):
    """Kernel module for an explicit backend name, or the selected default."""
    if backend in (None, "auto"):
        return kernels
    if backend == "pure":
        return _purekernels
    if backend == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")
