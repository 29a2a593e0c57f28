"""The linear-time builders.

``build_succinct`` emits the 2n+2-bit balanced parentheses sequence of the
PSS tree left to right, maintaining rank/select support as it goes.
``build_plain`` produces the word-width Lyndon array in a single buffer
that doubles as rightmost-path storage, using O(1) words beyond input and
output.  Both amortize large longest-common-extension discoveries by
bulk-copying repeated structure (run extension when the extension covers
two periods, an amortized look-ahead otherwise).
"""

from __future__ import annotations

import numpy as np

from . import _backend
from .bps import AppendOnlyBps, BuildStats, SuccinctPssTree
from .textcore import TextLike, as_bytes

_U32_LIMIT = 2**31


def _stats_buf():
    return np.zeros(4, dtype=np.uint64)


def build_succinct(
    text: TextLike,
    stats: BuildStats | None = None,
    backend: str | None = None,
) -> SuccinctPssTree:
    """Build the succinct Lyndon array (BPS of the PSS tree) in linear time."""
    data = as_bytes(text)
    kern = _backend.get_kernels(backend)
    state = kern.BpsState(2 * len(data) + 2)
    raw = _stats_buf()
    kern.build_succinct(data, state, raw)
    if stats is not None:
        stats._absorb(raw)
    return AppendOnlyBps._wrap(state, kern).finalize()


def build_plain(
    text: TextLike,
    stats: BuildStats | None = None,
    backend: str | None = None,
    out: np.ndarray | None = None,
) -> np.ndarray:
    """Build the plain Lyndon array; entry [i-1] is lambda at position i.

    ``out`` may supply a preallocated buffer of n+1 entries (uint32 for
    n < 2**31, uint64 otherwise); the returned array is its tail view.
    """
    data = as_bytes(text)
    n = len(data)
    kern = _backend.get_kernels(backend)
    dtype = np.uint32 if n < _U32_LIMIT else np.uint64
    if out is None:
        out = np.zeros(n + 1, dtype=dtype)
    else:
        if out.shape[0] != n + 1 or out.dtype != dtype:
            raise ValueError(f"out must have {n + 1} entries of {dtype}")
    raw = _stats_buf()
    if n:
        kern.build_plain(data, out, raw)
    if stats is not None:
        stats._absorb(raw)
    return out[1:]
