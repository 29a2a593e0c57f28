"""Lyndon factorization and extended-run detection.

The factorization streams factor end positions left to right with constant
working space beyond the input, so the run detector can consume it while
holding at most two end positions at a time.  Slices are (text, start,
length) views over the original bytes; nothing is copied.

An extended Lyndon run is a string suf(mu) . mu^t . pre(mu) with mu a
Lyndon word, t >= 2, and suf/pre a proper suffix/prefix of mu.  For such a
string the longest factor of its Lyndon factorization is exactly mu, which
is what the detector exploits.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from .errors import UsageError
from .textcore import TextLike, as_bytes


class ExtendedRun(NamedTuple):
    """Detected run: repeating period |mu| and the 1-based start of the
    first full repetition inside the examined slice (|suf(mu)| + 1)."""

    period: int
    first_full_start: int


def _slice_args(text: TextLike, start: int, length):
    data = as_bytes(text)
    if length is None:
        length = len(data) - start + 1
    if length <= 0 or start < 1 or start - 1 + length > len(data):
        raise UsageError(f"empty or out-of-range slice ({start=}, {length=})")
    return data, start - 1, length  # 0-based base offset


def lyndon_factorization_stream(
    text: TextLike, start: int = 1, length=None
) -> Iterator[int]:
    """Yield the factor end positions d_1 < d_2 < ... < d_m = length, one at
    a time (Duval's algorithm; ends are 1-based within the slice)."""
    data, base, length = _slice_args(text, start, length)
    i = 0
    while i < length:
        j = i + 1
        k = i
        while j < length:
            a = data[base + k]
            b = data[base + j]
            if a > b:
                break
            k = i if a < b else k + 1
            j += 1
        flen = j - k
        while i <= k:
            i += flen
            yield i


def lyndon_factorization(text: TextLike, start: int = 1, length=None) -> list:
    """All factor end positions as a list (convenience wrapper)."""
    return list(lyndon_factorization_stream(text, start, length))


def detect_extended_run(
    text: TextLike, start: int = 1, length=None
) -> Optional[ExtendedRun]:
    """Return (|mu|, |suf(mu)|+1) if the slice is an extended Lyndon run,
    else None.

    Scans the streamed factorization for the first longest factor (ties do
    not move the start), rejects when twice that length exceeds the slice,
    then verifies the period with one pass comparing each symbol with the
    one |mu| positions before it.
    """
    data, base, length = _slice_args(text, start, length)
    longest = 0
    z = 1
    prev_end = 0
    for end in lyndon_factorization_stream(data, base + 1, length):
        flen = end - prev_end
        if flen > longest:
            longest = flen
            z = prev_end + 1
        prev_end = end
    if 2 * longest > length:
        return None
    for t in range(longest, length):
        if data[base + t] != data[base + t - longest]:
            return None
    return ExtendedRun(period=longest, first_full_start=z)
