"""Byte-string model with sentinel-aware suffix comparisons.

Text positions are 1-based: valid positions are [1, n].  Positions 0 and
n+1 denote the virtual sentinel suffix, which is strictly smaller than
every suffix starting inside the text.  The sentinel is never materialized;
comparisons simply treat out-of-range positions as a symbol below all byte
values, so the full 0..255 alphabet remains usable.

All operations are read-only and safe for unsynchronized concurrent use.
"""

from __future__ import annotations

from typing import NamedTuple, Union

from .errors import UsageError


class Text:
    """Immutable byte string with length ``n`` and 1-based positions."""

    __slots__ = ("data", "n")

    def __init__(self, data):
        if isinstance(data, Text):
            data = data.data
        self.data = bytes(data)
        self.n = len(self.data)

    def __len__(self):
        return self.n

    def __bytes__(self):
        return self.data

    def __repr__(self):
        shown = self.data if self.n <= 24 else self.data[:21] + b"..."
        return f"Text({shown!r}, n={self.n})"


TextLike = Union[Text, bytes, bytearray, memoryview, str]


def as_bytes(text: TextLike) -> bytes:
    """Return the raw bytes of a Text, bytes-like object, or ASCII str."""
    if isinstance(text, Text):
        return text.data
    if isinstance(text, str):
        return text.encode("ascii")
    return bytes(text)


class SuffixOrder(NamedTuple):
    """Outcome of comparing two distinct suffixes: Less or Greater, never Equal."""

    less: bool
    lce: int

    @property
    def greater(self) -> bool:
        return not self.less


def _check_pos(p: int, n: int, name: str) -> None:
    if not 0 <= p <= n + 1:
        raise UsageError(f"{name}={p} outside [0, {n + 1}]")


def lce(text: TextLike, i: int, j: int, skip: int = 0, stats=None) -> int:
    """Length of the longest common prefix of suffixes S_i and S_j.

    ``skip`` asserts that the first ``skip`` symbols are already known to
    match (the caller's responsibility); only comparisons beyond it are
    performed and, when ``stats`` is given, added to
    ``stats.char_comparisons``.  Sentinel positions (0 and n+1) share no
    symbols, so their LCE is 0.
    """
    data = as_bytes(text)
    n = len(data)
    _check_pos(i, n, "i")
    _check_pos(j, n, "j")
    if skip < 0:
        raise UsageError("skip must be >= 0")
    if i == 0 or j == 0 or i == n + 1 or j == n + 1:
        return 0
    ell = skip
    ncmp = 0
    while i + ell <= n and j + ell <= n:
        ncmp += 1
        if data[i + ell - 1] != data[j + ell - 1]:
            break
        ell += 1
    if stats is not None:
        stats.char_comparisons += ncmp
    return ell


def suffix_compare(text: TextLike, i: int, j: int) -> SuffixOrder:
    """Compare suffixes S_i and S_j; they are distinct, so Equal cannot occur.

    The outcome is decided by the symbols right after the common prefix,
    with positions past the end (and position 0) reading as the sentinel.
    """
    data = as_bytes(text)
    n = len(data)
    _check_pos(i, n, "i")
    _check_pos(j, n, "j")
    if i == j:
        raise UsageError("suffix_compare requires distinct positions")
    sentinel_i = i == 0 or i == n + 1
    sentinel_j = j == 0 or j == n + 1
    if sentinel_i and sentinel_j:
        raise UsageError("cannot order two sentinel suffixes")
    if sentinel_i:
        return SuffixOrder(less=True, lce=0)
    if sentinel_j:
        return SuffixOrder(less=False, lce=0)
    ell = lce(data, i, j)
    a = data[i + ell - 1] if i + ell <= n else -1
    b = data[j + ell - 1] if j + ell <= n else -1
    return SuffixOrder(less=a < b, lce=ell)


def is_lyndon_word(text: TextLike, start: int, length: int) -> bool:
    """True iff text[start .. start+length) is strictly smaller than all of
    its proper non-empty suffixes."""
    data = as_bytes(text)
    n = len(data)
    if length < 1:
        raise UsageError("length must be >= 1")
    if start < 1 or start + length - 1 > n:
        raise UsageError(f"range [{start}, {start + length}) outside [1, {n}]")
    w = data[start - 1 : start - 1 + length]
    return all(w < w[k:] for k in range(1, length))
