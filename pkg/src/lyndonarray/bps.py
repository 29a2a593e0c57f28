"""Append-only balanced parentheses sequence and the finalized query tree.

The sequence stores the PSS tree of a text: node i's opening parenthesis is
the (i+1)-th open bit (preorder number = node number), and the whole
sequence takes exactly 2n+2 bits.  During construction the prefix supports
rank over opens, select of the k-th open, and select of the k-th still
unclosed open; after finalization the same blocked excess structures answer
parent and subtree-size queries, which yield the Lyndon array, NSS and PSS
values directly.

Bit positions in this API are 1-based; node ids are 0-based preorder
numbers (the root 0 is the sentinel suffix).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _backend
from .errors import IntegrityError, UsageError


@dataclass
class BuildStats:
    """Instrumentation counters accumulated by the builders.

    char_comparisons counts every symbol-pair comparison performed while
    searching for previous smaller suffixes, detecting runs, and extending
    them (comparisons skipped via known-equal prefixes are not performed,
    hence not counted).  closes_written is n+1 after a complete build.
    """

    char_comparisons: int = 0
    indices_skipped_run: int = 0
    indices_skipped_lookahead: int = 0
    closes_written: int = 0

    def _absorb(self, raw) -> None:
        self.char_comparisons += int(raw[0])
        self.indices_skipped_run += int(raw[1])
        self.indices_skipped_lookahead += int(raw[2])
        self.closes_written += int(raw[3])


class AppendOnlyBps:
    """Growable parentheses sequence with incremental prefix queries."""

    def __init__(self, capacity_bits: int = 0, backend: str | None = None):
        self._k = _backend.get_kernels(backend)
        self._st = self._k.BpsState(capacity_bits)

    @classmethod
    def _wrap(cls, state, kernels) -> "AppendOnlyBps":
        obj = cls.__new__(cls)
        obj._k = kernels
        obj._st = state
        return obj

    @property
    def written(self) -> int:
        return self._st.written

    @property
    def open_count(self) -> int:
        return self._st.opens

    @property
    def unclosed(self) -> int:
        return self._st.unclosed

    def append_open(self) -> None:
        self._st.append_open()

    def append_close(self) -> None:
        self._st.append_close()

    def rank_open(self, pos: int) -> int:
        """Number of open bits in positions [1, pos]."""
        if not 0 <= pos <= self.written:
            raise UsageError(f"pos={pos} outside [0, {self.written}]")
        return self._st.rank_open_count(pos)

    def select_open(self, k: int) -> int:
        """1-based position of the k-th open bit."""
        if not 1 <= k <= self.open_count:
            raise UsageError(f"k={k} outside [1, {self.open_count}]")
        return self._st.select_open0(k) + 1

    def select_uncl(self, k: int) -> int:
        """1-based position of the k-th unclosed open, counted from the left."""
        if not 1 <= k <= self.unclosed:
            raise UsageError(f"k={k} outside [1, {self.unclosed}]")
        return self._st.select_uncl0(k) + 1

    def node_to_open(self, i: int) -> int:
        """Opening-parenthesis position of node i (preorder number)."""
        if not 0 <= i < self.open_count:
            raise UsageError(f"node {i} outside [0, {self.open_count - 1}]")
        return self._st.select_open0(i + 1) + 1

    def open_to_node(self, pos: int) -> int:
        """Node whose opening parenthesis sits at position pos."""
        if not 1 <= pos <= self.written:
            raise UsageError(f"pos={pos} outside [1, {self.written}]")
        st = self._st
        if not st.get_bit(pos - 1):
            raise UsageError(f"position {pos} holds a closing parenthesis")
        return st.rank_open_count(pos) - 1

    def copy_append(self, src_from: int, src_to: int, repetitions: int) -> None:
        """Append the bit range [src_from, src_to] `repetitions` times."""
        if repetitions < 0:
            raise UsageError("repetitions must be >= 0")
        if repetitions == 0:
            return
        if not 1 <= src_from <= src_to <= self.written:
            raise UsageError("source range outside the written prefix")
        self._st.copy_append0(src_from - 1, src_to, repetitions)

    def to_parens(self) -> str:
        payload = self._st.to_bytes()
        return "".join(
            "(" if payload[p >> 3] & (0x80 >> (p & 7)) else ")"
            for p in range(self.written)
        )

    def support_bits(self) -> int:
        return self._st.support_bits()

    def finalize(self) -> "SuccinctPssTree":
        """Verify balance and completeness, then freeze into a query tree."""
        st = self._st
        if st.unclosed != 0:
            raise IntegrityError(f"{st.unclosed} parentheses still unclosed")
        if st.written != 2 * st.opens or st.opens < 1:
            raise IntegrityError("sequence is not a complete preorder walk")
        st.freeze()
        return SuccinctPssTree(self)


class SuccinctPssTree:
    """Finalized 2n+2-bit tree answering parent / subtree-size queries, and
    through them lambda(i), nss(i) and pss(i)."""

    def __init__(self, bps: AppendOnlyBps):
        self._bps = bps
        self._st = bps._st
        self.n = bps.open_count - 1

    @classmethod
    def from_payload(
        cls, payload: bytes, n: int, backend: str | None = None
    ) -> "SuccinctPssTree":
        nbits = 2 * n + 2
        if len(payload) < (nbits + 7) // 8:
            raise IntegrityError("payload shorter than 2n+2 bits")
        kern = _backend.get_kernels(backend)
        try:
            state = kern.BpsState.from_bits(payload, nbits)
        except UsageError as exc:
            raise IntegrityError(str(exc)) from exc
        bps = AppendOnlyBps._wrap(state, kern)
        return bps.finalize()

    @property
    def bit_length(self) -> int:
        return self._st.written

    def payload(self) -> bytes:
        """Packed bits, open=1, MSB first, zero padding in the final byte."""
        return self._st.to_bytes()

    def to_parens(self) -> str:
        return self._bps.to_parens()

    def support_bits(self) -> int:
        return self._st.support_bits()

    def _check(self, i: int, lo: int) -> None:
        if not lo <= i <= self.n:
            raise UsageError(f"node {i} outside [{lo}, {self.n}]")

    def subtree_size(self, i: int) -> int:
        self._check(i, 0)
        o = self._st.select_open0(i + 1)
        c = self._st.find_close0(o)
        return (c - o + 1) // 2

    def parent(self, i: int) -> int:
        self._check(i, 1)
        o = self._st.select_open0(i + 1)
        po = self._st.enclosing_open0(o)
        return self._st.rank_open_count(po + 1) - 1

    def lyndon(self, i: int) -> int:
        """Length of the longest Lyndon word starting at text position i."""
        self._check(i, 1)
        return self.subtree_size(i)

    def nss(self, i: int) -> int:
        self._check(i, 1)
        return i + self.subtree_size(i)

    def pss(self, i: int) -> int:
        return self.parent(i)

    def lyndon_array(self):
        """Materialize the whole Lyndon array (mainly for tests and the CLI)."""
        return [self.subtree_size(i) for i in range(1, self.n + 1)]
