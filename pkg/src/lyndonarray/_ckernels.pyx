# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: packed parentheses buffer with blocked support
structures, plus the succinct and in-place Lyndon-array builders.

Same algorithms and data layout as ``_purekernels``; this is the hot-path
twin selected by default when built.  See that module for the layout notes.
"""

cimport cython

from libc.stdint cimport int64_t, uint8_t, uint16_t, uint32_t, uint64_t
from libc.string cimport memcpy

import numpy as np

from .errors import IntegrityError, UsageError

BACKEND = "compiled"

cdef extern from *:
    """
    static inline int lyn_popcount(unsigned int x) { return __builtin_popcount(x); }
    """
    int lyn_popcount(unsigned int x) noexcept nogil

cdef enum:
    BLOCK_BITS = 512
    BLOCK_BYTES = 64
    BLOCKS_PER_SUPER = 64
    SUPER_BITS = 32768
    CACHE_MIN = 64
    CACHE_MAX = 4096

cdef int64_t INF = <int64_t>1 << 62

# stats slots (shared with _purekernels)
STAT_CMP = 0
STAT_SKIP_RUN = 1
STAT_SKIP_LA = 2
STAT_CLOSES = 3

cdef enum:
    S_CMP = 0
    S_SKIP_RUN = 1
    S_SKIP_LA = 2
    S_CLOSES = 3


cdef int64_t _cache_capacity(int64_t cap_bits) noexcept nogil:
    cdef int64_t c = cap_bits // 1024
    if c < CACHE_MIN:
        c = CACHE_MIN
    if c > CACHE_MAX:
        c = CACHE_MAX
    cdef int64_t p = CACHE_MIN
    while p * 2 <= c:
        p *= 2
    return p  # power of two: the ring index wraps with a mask


@cython.final
cdef class BpsState:
    """Append-only packed parentheses sequence with incremental support."""

    cdef:
        uint8_t[::1] buf
        uint16_t[::1] blk_rank
        int64_t[::1] sup_rank
        int64_t[::1] minleaf            # tree level 0: absolute block minima
        list tree_upper                  # numpy int64 arrays for levels >= 1
        int64_t lvl_cnt[8]
        int nlevels
        int64_t[::1] cring              # interleaved (pos, node) pairs
        int64_t cache_cap, ctop, clen
        public int64_t written, opens
        int64_t excess_, curmin, nfin
        int64_t nblk, nsup              # started blocks / superblocks
        int64_t cap_bits
        bint frozen_

    def __cinit__(self, capacity_bits=0):
        cdef int64_t cap = capacity_bits if capacity_bits > BLOCK_BITS else BLOCK_BITS
        self.cap_bits = cap
        cdef int64_t nblocks = cap // BLOCK_BITS + 2
        cdef int64_t nsupers = nblocks // BLOCKS_PER_SUPER + 2
        self.buf = np.zeros((cap + 7) // 8 + 8, dtype=np.uint8)
        self.blk_rank = np.zeros(nblocks, dtype=np.uint16)
        self.sup_rank = np.zeros(nsupers, dtype=np.int64)
        self.minleaf = np.zeros(nblocks, dtype=np.int64)
        self.tree_upper = []
        cdef int64_t sz = nblocks
        while sz > 64:
            sz = (sz + 63) // 64
            self.tree_upper.append(np.full(sz + 1, INF, dtype=np.int64))
        self.nlevels = 1 + len(self.tree_upper)
        cdef int q
        for q in range(8):
            self.lvl_cnt[q] = 0
        self.cache_cap = _cache_capacity(cap)
        self.cring = np.zeros(2 * self.cache_cap, dtype=np.int64)
        self.ctop = 0
        self.clen = 0
        self.written = 0
        self.opens = 0
        self.excess_ = 0
        self.curmin = INF
        self.nfin = 0
        self.nblk = 0
        self.nsup = 0
        self.frozen_ = False

    # -- growth (standalone use only; builders pre-size exactly) ---------------

    cdef int _grow(self) except -1:
        cdef int64_t newcap = self.cap_bits * 2
        cdef object nbuf = np.zeros((newcap + 7) // 8 + 8, dtype=np.uint8)
        nbuf[: len(self.buf)] = np.asarray(self.buf)
        self.buf = nbuf
        cdef int64_t nblocks = newcap // BLOCK_BITS + 2
        cdef object a
        a = np.zeros(nblocks, dtype=np.uint16)
        a[: self.nblk] = np.asarray(self.blk_rank)[: self.nblk]
        self.blk_rank = a
        a = np.zeros(nblocks // BLOCKS_PER_SUPER + 2, dtype=np.int64)
        a[: self.nsup] = np.asarray(self.sup_rank)[: self.nsup]
        self.sup_rank = a
        a = np.zeros(nblocks, dtype=np.int64)
        a[: self.lvl_cnt[0]] = np.asarray(self.minleaf)[: self.lvl_cnt[0]]
        self.minleaf = a
        cdef list upper = []
        cdef int64_t sz = nblocks
        cdef int lvl = 0
        while sz > 64:
            sz = (sz + 63) // 64
            a = np.full(sz + 1, INF, dtype=np.int64)
            if lvl < len(self.tree_upper):
                old = self.tree_upper[lvl]
                a[: len(old)] = old
            upper.append(a)
            lvl += 1
        self.tree_upper = upper
        self.nlevels = 1 + len(upper)
        self.cap_bits = newcap
        return 0

    # -- properties --------------------------------------------------------------

    @property
    def unclosed(self):
        return self.excess_

    @property
    def frozen(self):
        return self.frozen_

    cdef inline int get_bit_c(self, int64_t pos) noexcept nogil:
        return (self.buf[pos >> 3] >> (7 - (pos & 7))) & 1

    def get_bit(self, pos):
        return self.get_bit_c(pos)

    # -- append path ---------------------------------------------------------------

    cdef int _start_block(self) except -1:
        cdef int64_t bi = self.written >> 9
        if bi + 2 >= self.blk_rank.shape[0]:
            self._grow()
        if bi > 0 and self.nfin < bi:
            self._finish_block()
        if (bi & 63) == 0:
            self.sup_rank[self.nsup] = self.opens
            self.nsup += 1
        self.blk_rank[bi] = <uint16_t>(self.opens - self.sup_rank[self.nsup - 1])
        self.nblk = bi + 1
        return 0

    cdef int _finish_block(self) except -1:
        self._tree_append(self.curmin)
        self.nfin += 1
        self.curmin = INF
        return 0

    cdef int _tree_append(self, int64_t v) except -1:
        cdef int64_t idx = self.lvl_cnt[0]
        cdef int64_t parent, b, m
        cdef int64_t[::1] mv, below
        self.minleaf[idx] = v
        self.lvl_cnt[0] = idx + 1
        cdef int lvl = 0
        while self.lvl_cnt[lvl] > 1 and lvl + 1 < self.nlevels:
            parent = idx >> 6
            mv = self.tree_upper[lvl]
            if parent == self.lvl_cnt[lvl + 1]:
                if parent == 0:
                    # a level's first node covers all children existing so far
                    below = self.minleaf if lvl == 0 else self.tree_upper[lvl - 1]
                    m = below[0]
                    for b in range(1, self.lvl_cnt[lvl]):
                        if below[b] < m:
                            m = below[b]
                    mv[0] = m
                else:
                    mv[parent] = v
                self.lvl_cnt[lvl + 1] = parent + 1
                v = mv[parent]
            elif v < mv[parent]:
                mv[parent] = v
            else:
                break
            idx = parent
            lvl += 1
        return 0

    cdef inline void _cache_push(self, int64_t pos, int64_t node) noexcept nogil:
        cdef int64_t slot = self.ctop
        self.cring[2 * slot] = pos
        self.cring[2 * slot + 1] = node
        self.ctop = (slot + 1) & (self.cache_cap - 1)
        if self.clen < self.cache_cap:
            self.clen += 1

    cdef inline int _push_open(self) except -1:
        cdef int64_t pos = self.written
        if (pos & 511) == 0:
            self._start_block()
        self.buf[pos >> 3] |= <uint8_t>(0x80 >> (pos & 7))
        self.opens += 1
        self.excess_ += 1
        self._cache_push(pos, self.opens - 1)
        self.written = pos + 1
        return 0

    cdef inline int _push_close(self) except -1:
        # append-only over a pre-zeroed buffer: closes need no byte write
        cdef int64_t pos = self.written
        if (pos & 511) == 0:
            self._start_block()
        self.excess_ -= 1
        if self.clen:
            self.clen -= 1
            self.ctop = (self.ctop - 1) & (self.cache_cap - 1)
        self.written = pos + 1
        if self.excess_ < self.curmin:
            self.curmin = self.excess_
        return 0

    cdef int _push_closes(self, int64_t cnt) except -1:
        """Append cnt closing bits, advancing counters blockwise."""
        cdef int64_t pos, room, step, pops
        while cnt > 0:
            pos = self.written
            if (pos & 511) == 0:
                self._start_block()
            room = BLOCK_BITS - (pos & 511)
            step = cnt if cnt < room else room
            self.written = pos + step
            self.excess_ -= step
            pops = self.clen if self.clen < step else step
            self.clen -= pops
            self.ctop = (self.ctop - pops) & (self.cache_cap - 1)
            if self.excess_ < self.curmin:
                self.curmin = self.excess_
            cnt -= step
        return 0

    cdef inline int _push(self, int bit) except -1:
        if bit:
            self._push_open()
        else:
            self._push_close()
        return 0

    cdef inline int _emit(self, int64_t ncloses) except -1:
        """Append ncloses closing bits followed by one open (one loop index)."""
        cdef int64_t pos = self.written
        cdef int64_t end = pos + ncloses
        cdef int64_t off = pos & 511
        cdef int64_t pops, slot
        if off != 0 and off + ncloses + 1 <= 512:
            self.excess_ -= ncloses
            if ncloses:
                pops = self.clen if self.clen < ncloses else ncloses
                self.clen -= pops
                self.ctop = (self.ctop - pops) & (self.cache_cap - 1)
                if self.excess_ < self.curmin:
                    self.curmin = self.excess_
            self.buf[end >> 3] |= <uint8_t>(0x80 >> (end & 7))
            self.opens += 1
            self.excess_ += 1
            slot = self.ctop
            self.cring[2 * slot] = end
            self.cring[2 * slot + 1] = self.opens - 1
            self.ctop = (slot + 1) & (self.cache_cap - 1)
            if self.clen < self.cache_cap:
                self.clen += 1
            self.written = end + 1
        else:
            if ncloses:
                self._push_closes(ncloses)
            self._push_open()
        return 0

    def append_open(self):
        if self.frozen_:
            raise UsageError("sequence is finalized")
        self._push(1)

    def append_close(self):
        if self.frozen_:
            raise UsageError("sequence is finalized")
        if self.excess_ <= 0:
            raise UsageError("append_close with no unclosed parenthesis")
        self._push(0)

    # -- rank / select ---------------------------------------------------------------

    cpdef int64_t rank_open_count(self, int64_t c):
        """Opens among the first c bits (no validation)."""
        if c <= 0:
            return 0
        cdef int64_t bi = (c - 1) >> 9
        cdef int64_t base = self.sup_rank[bi >> 6] + self.blk_rank[bi]
        cdef int64_t byte = bi << 6
        cdef int64_t last = c >> 3
        cdef int64_t acc = 0
        while byte < last:
            acc += lyn_popcount(self.buf[byte])
            byte += 1
        if c & 7:
            acc += lyn_popcount(self.buf[last] >> (8 - (c & 7)))
        return base + acc

    cpdef int64_t excess_at(self, int64_t c):
        return 2 * self.rank_open_count(c) - c

    cpdef int64_t select_open0(self, int64_t k):
        """0-based position of the k-th (1-based) open bit (no validation)."""
        cdef int64_t lo = 0, hi = self.nsup, mid
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.sup_rank[mid] < k:
                lo = mid
            else:
                hi = mid
        cdef int64_t sbi = lo
        cdef int64_t base = sbi * BLOCKS_PER_SUPER
        lo = base
        hi = base + BLOCKS_PER_SUPER
        if hi > self.nblk:
            hi = self.nblk
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.sup_rank[sbi] + self.blk_rank[mid] < k:
                lo = mid
            else:
                hi = mid
        cdef int64_t rem = k - self.sup_rank[sbi] - self.blk_rank[lo]
        cdef int64_t byte = lo * BLOCK_BYTES
        cdef int pc
        while True:
            pc = lyn_popcount(self.buf[byte])
            if pc >= rem:
                break
            rem -= pc
            byte += 1
        cdef int b = self.buf[byte]
        cdef int bit
        for bit in range(8):
            if (b >> (7 - bit)) & 1:
                rem -= 1
                if rem == 0:
                    return (byte << 3) + bit
        raise IntegrityError("select_open fell off a byte")

    cdef int64_t _scan_block_prev(self, int64_t c_hi, int64_t c_lo, int64_t v):
        """Largest count c in (c_lo, c_hi] with excess(c) <= v, else -1."""
        cdef int64_t e = self.excess_at(c_hi)
        cdef int64_t c = c_hi
        while c > c_lo:
            if e <= v:
                return c
            if self.get_bit_c(c - 1):
                e -= 1
            else:
                e += 1
            c -= 1
        return -1

    cdef int64_t _scan_block_next(self, int64_t c_lo, int64_t c_hi, int64_t v):
        """Smallest count c in [c_lo, c_hi] with excess(c) <= v, else -1."""
        cdef int64_t e = self.excess_at(c_lo)
        cdef int64_t c = c_lo
        while True:
            if e <= v:
                return c
            if c == c_hi:
                return -1
            if self.get_bit_c(c):
                e += 1
            else:
                e -= 1
            c += 1

    cdef inline int64_t _row_prev(self, int lvl, int64_t lo, int64_t hi, int64_t v):
        """Largest index in [lo, hi] at tree level lvl with value <= v, or -1."""
        cdef int64_t[::1] row = self.minleaf if lvl == 0 else self.tree_upper[lvl - 1]
        if hi > self.lvl_cnt[lvl] - 1:
            hi = self.lvl_cnt[lvl] - 1
        cdef int64_t b = hi
        while b >= lo:
            if row[b] <= v:
                return b
            b -= 1
        return -1

    cdef inline int64_t _row_next(self, int lvl, int64_t lo, int64_t hi, int64_t v):
        """Smallest index in [lo, hi] at tree level lvl with value <= v, or -1."""
        cdef int64_t[::1] row = self.minleaf if lvl == 0 else self.tree_upper[lvl - 1]
        if hi > self.lvl_cnt[lvl] - 1:
            hi = self.lvl_cnt[lvl] - 1
        cdef int64_t b = lo
        while b <= hi:
            if row[b] <= v:
                return b
            b += 1
        return -1

    cdef int64_t _tree_prev_leq(self, int64_t limit, int64_t v) except -2:
        """Largest leaf index < limit with value <= v, or -1."""
        cdef int64_t nleaf = self.lvl_cnt[0]
        if limit > nleaf:
            limit = nleaf
        if limit <= 0:
            return -1
        cdef int64_t idx = limit - 1
        cdef int64_t found = self._row_prev(0, idx & ~<int64_t>63, idx, v)
        if found >= 0:
            return found
        cdef int lvl = 0
        while True:
            idx >>= 6
            lvl += 1
            if lvl >= self.nlevels or self.lvl_cnt[lvl] == 0:
                return -1
            found = self._row_prev(lvl, idx & ~<int64_t>63, idx - 1, v)
            if found >= 0:
                break
        while lvl > 0:  # descend: subtree minima guarantee a hit
            lvl -= 1
            found = self._row_prev(lvl, found << 6, (found << 6) + 63, v)
            if found < 0:
                raise IntegrityError("min tree lost a dip")  # pragma: no cover
        return found

    cdef int64_t _tree_next_leq(self, int64_t start, int64_t limit, int64_t v) except -2:
        """Smallest leaf index in [start, limit) with value <= v, or -1."""
        cdef int64_t nleaf = self.lvl_cnt[0]
        if limit > nleaf:
            limit = nleaf
        if start >= limit:
            return -1
        cdef int64_t idx = start
        cdef int64_t hi = idx | 63
        if hi > limit - 1:
            hi = limit - 1
        cdef int64_t found = self._row_next(0, idx, hi, v)
        if found >= 0:
            return found
        cdef int lvl = 0
        cdef int64_t hi_row
        while True:
            idx >>= 6
            lvl += 1
            if lvl >= self.nlevels or self.lvl_cnt[lvl] == 0:
                return -1
            hi_row = (limit - 1) >> (6 * lvl)
            hi = idx | 63
            if hi > hi_row:
                hi = hi_row
            found = self._row_next(lvl, idx + 1, hi, v)
            if found >= 0:
                break
        while lvl > 0:
            lvl -= 1
            hi_row = (limit - 1) >> (6 * lvl)
            hi = (found << 6) + 63
            if hi > hi_row:
                hi = hi_row
            found = self._row_next(lvl, found << 6, hi, v)
            if found < 0:
                raise IntegrityError("min tree lost a dip")  # pragma: no cover
        return found

    cpdef int64_t rightmost_dip(self, int64_t limit, int64_t v):
        """Largest count c in [0, limit] with excess(c) <= v."""
        cdef int64_t bi, r, b
        if limit > 0:
            bi = (limit - 1) >> 9
            r = self._scan_block_prev(limit, bi * BLOCK_BITS, v)
            if r >= 0:
                return r
            b = self._tree_prev_leq(bi if bi < self.nfin else self.nfin, v)
            if b >= 0:
                r = self._scan_block_prev((b + 1) * BLOCK_BITS, b * BLOCK_BITS, v)
                if r >= 0:
                    return r
        return 0

    cpdef int64_t leftmost_dip(self, int64_t start, int64_t v):
        """Smallest count c in [start, written] with excess(c) <= v, or -1."""
        if start > self.written:
            return -1
        cdef int64_t bi = start >> 9
        cdef int64_t c_hi = (bi + 1) * BLOCK_BITS
        if c_hi > self.written:
            c_hi = self.written
        cdef int64_t r = self._scan_block_next(start, c_hi, v)
        if r >= 0:
            return r
        cdef int64_t b = self._tree_next_leq(bi + 1, self.nfin, v)
        if b >= 0:
            c_hi = (b + 1) * BLOCK_BITS
            if c_hi > self.written:
                c_hi = self.written
            return self._scan_block_next(b * BLOCK_BITS, c_hi, v)
        cdef int64_t nblocks = (self.written + BLOCK_BITS - 1) // BLOCK_BITS
        if self.nfin < nblocks and self.nfin > bi:
            return self._scan_block_next(self.nfin * BLOCK_BITS, self.written, v)
        return -1

    cpdef int64_t select_uncl0(self, int64_t k):
        """0-based position of the k-th unclosed open (no validation)."""
        if k > self.excess_ - self.clen:
            return self.cring[2 * ((self.ctop - 1 - (self.excess_ - k)) & (self.cache_cap - 1))]
        return self.rightmost_dip(self.written, k - 1)

    cdef inline int64_t uncl_pair(self, int64_t k, int64_t* pos):
        """Node id of the k-th unclosed open; its bit position via *pos."""
        cdef int64_t c
        if k > self.excess_ - self.clen:
            c = 2 * ((self.ctop - 1 - (self.excess_ - k)) & (self.cache_cap - 1))
            pos[0] = self.cring[c]
            return self.cring[c + 1]
        c = self.rightmost_dip(self.written, k - 1)
        pos[0] = c
        return self.rank_open_count(c + 1) - 1

    cpdef int64_t uncl_node(self, int64_t k):
        """Node id (preorder number) of the k-th unclosed open."""
        cdef int64_t c
        if k > self.excess_ - self.clen:
            return self.cring[2 * ((self.ctop - 1 - (self.excess_ - k)) & (self.cache_cap - 1)) + 1]
        c = self.rightmost_dip(self.written, k - 1)
        return self.rank_open_count(c + 1) - 1

    # -- bulk append --------------------------------------------------------------------

    cpdef int copy_append0(self, int64_t src_from, int64_t src_to, int64_t repetitions) except -1:
        """Append the bit range [src_from, src_to) `repetitions` times."""
        if not (0 <= src_from <= src_to <= self.written):
            raise UsageError("copy source outside the written prefix")
        cdef int64_t rep, p
        cdef int bit
        for rep in range(repetitions):
            for p in range(src_from, src_to):
                bit = self.get_bit_c(p)
                if bit == 0 and self.excess_ <= 0:
                    raise UsageError("copy underflows unclosed parentheses")
                self._push(bit)
        return 0

    cdef int _copy_nocache(self, int64_t src_from, int64_t src_to) except -1:
        """Append a bit range without touching the unclosed cache.

        Callers must apply the range's net stack effect themselves (used by
        run extension, whose repetitions pop at most one entry and push
        exactly one: the next repetition start)."""
        cdef int64_t p, pos
        for p in range(src_from, src_to):
            pos = self.written
            if (pos & 511) == 0:
                self._start_block()
            if self.get_bit_c(p):
                self.buf[pos >> 3] |= <uint8_t>(0x80 >> (pos & 7))
                self.opens += 1
                self.excess_ += 1
            else:
                self.excess_ -= 1
                if self.excess_ < self.curmin:
                    self.curmin = self.excess_
            self.written = pos + 1
        return 0

    # -- finalization --------------------------------------------------------------------

    def freeze(self):
        if self.frozen_:
            return
        cdef int64_t nblocks = (self.written + BLOCK_BITS - 1) // BLOCK_BITS
        if self.nfin < nblocks:
            self._finish_block()
        self.frozen_ = True

    def to_bytes(self):
        cdef int64_t nbytes = (self.written + 7) // 8
        return bytes(np.asarray(self.buf)[:nbytes].tobytes())

    @staticmethod
    def from_bits(payload, nbits):
        cdef BpsState st = BpsState(nbits)
        cdef const uint8_t[::1] p = payload
        cdef int64_t i
        cdef int bit
        for i in range(nbits):
            bit = (p[i >> 3] >> (7 - (i & 7))) & 1
            if bit == 0 and st.excess_ <= 0:
                raise IntegrityError("unbalanced parentheses payload")
            st._push(bit)
        return st

    def support_bits(self):
        """Support structure footprint in bits (allocated widths)."""
        cdef int64_t internal = 0
        cdef int lvl
        for lvl in range(1, self.nlevels):
            internal += self.lvl_cnt[lvl]
        return (
            self.nblk * (16 + 64)
            + self.nsup * 64
            + internal * 64
            + self.cache_cap * 128
        )

    # -- finalized navigation ----------------------------------------------------------------

    cpdef int64_t find_close0(self, int64_t open0):
        cdef int64_t d = self.excess_at(open0 + 1)
        cdef int64_t c = self.leftmost_dip(open0 + 2, d - 1)
        if c < 0:
            raise IntegrityError("unmatched open parenthesis")
        return c - 1

    cpdef int64_t enclosing_open0(self, int64_t open0):
        cdef int64_t d = self.excess_at(open0 + 1)
        return self.rightmost_dip(open0, d - 2)


# -- text comparison kernels -------------------------------------------------------

cdef inline int64_t _lce_c(const uint8_t* s, int64_t n, int64_t i, int64_t j,
                           int64_t skip, int64_t* ncmp) noexcept nogil:
    if i == 0 or j == 0 or i > n or j > n:
        return 0
    cdef int64_t ell = skip
    cdef int64_t cc = 0
    while i + ell <= n and j + ell <= n:
        cc += 1
        if s[i + ell - 1] != s[j + ell - 1]:
            break
        ell += 1
    ncmp[0] += cc
    return ell


cdef inline bint _less_at_c(const uint8_t* s, int64_t n, int64_t a, int64_t b,
                            int64_t ell) noexcept nogil:
    cdef int ca = -1, cb = -1
    if 1 <= a and a + ell <= n:
        ca = s[a + ell - 1]
    if 1 <= b and b + ell <= n:
        cb = s[b + ell - 1]
    return ca < cb


def lce_count(data, n, i, j, skip):
    """(lce, comparisons); mirrors the pure kernel."""
    cdef const uint8_t[::1] mv = data
    cdef int64_t cc = 0
    cdef int64_t ell
    if n == 0:
        return 0, 0
    ell = _lce_c(&mv[0], n, i, j, skip, &cc)
    return ell, cc


def is_lyndon(data, start, length):
    """Naive Lyndon test over data[start .. start+length), 1-based start."""
    cdef const uint8_t[::1] mv = data
    cdef const uint8_t* s = NULL
    if length > 0:
        s = &mv[0]
    cdef int64_t k, off, limit
    for k in range(1, length):
        off = 0
        limit = length - k
        while off < limit and s[start - 1 + off] == s[start - 1 + k + off]:
            off += 1
        if off >= limit:
            return False
        if s[start - 1 + k + off] < s[start - 1 + off]:
            return False
    return True


cdef int64_t _detect_run_c(const uint8_t* s, int64_t start, int64_t length,
                           int64_t* z_out, int64_t* ncmp) noexcept nogil:
    """Extended-run period, or 0 when the slice is not a run."""
    cdef int64_t base = start - 1
    cdef int64_t longest = 0, z = 1
    cdef int64_t half = length >> 1
    cdef int64_t i = 0, j, k, flen
    cdef int a, b
    while i < length:
        j = i + 1
        k = i
        while j < length:
            if j - k > half:  # this factor already rules out a run
                return 0
            a = s[base + k]
            b = s[base + j]
            ncmp[0] += 1
            if a > b:
                break
            if a < b:
                k = i
            else:
                k += 1
            j += 1
        flen = j - k
        while i <= k:
            if flen > longest:
                longest = flen
                z = i + 1
            i += flen
    if 2 * longest > length:
        return 0
    cdef int64_t t
    for t in range(longest, length):
        ncmp[0] += 1
        if s[base + t] != s[base + t - longest]:
            return 0
    z_out[0] = z
    return longest


def detect_run(data, start, length, stats=None):
    """(period, first_full_start) or None; counts comparisons into stats."""
    cdef const uint8_t[::1] mv = data
    cdef int64_t z = 0, cc = 0
    cdef int64_t per = _detect_run_c(&mv[0], start, length, &z, &cc)
    if stats is not None:
        stats[S_CMP] += cc
    if per == 0:
        return None
    return per, z


# -- the linear-time builders ----------------------------------------------------------

cdef struct FindResult:
    int64_t closes
    int64_t pm
    int64_t j
    int64_t ell
    int64_t oj      # 0-based position of j's opening parenthesis


cdef FindResult _find_pss_succ(const uint8_t* s, int64_t n, BpsState st,
                               int64_t i, int64_t* ncmp):
    cdef FindResult res
    cdef int64_t k = st.excess_
    cdef int64_t u_rank = 1, u_node = i - 1
    cdef int64_t u_pos = st.written - 1  # the top open is the last written bit
    cdef int64_t w_rank, w_node, q_rank, q_node
    cdef int64_t w_pos = 0, q_pos = 0
    cdef int64_t ell_u, ell_w, ell_q
    ell_u = _lce_c(s, n, u_node, i, 0, ncmp)
    if _less_at_c(s, n, u_node, i, ell_u):
        res.closes = 0
        res.pm = u_node
        res.j = u_node
        res.ell = ell_u
        res.oj = u_pos
        return res
    while True:
        w_rank = u_rank + ell_u + 1
        if w_rank > k:
            w_rank = k
        w_node = st.uncl_pair(k - w_rank + 1, &w_pos)
        ell_w = _lce_c(s, n, w_node, i, 0, ncmp)
        if _less_at_c(s, n, w_node, i, ell_w):
            break
        u_rank = w_rank
        u_node = w_node
        u_pos = w_pos
        ell_u = ell_w
    while w_rank - u_rank > 1:
        if ell_u < ell_w:
            q_rank = u_rank + 1
            q_node = st.uncl_pair(k - q_rank + 1, &q_pos)
            ell_q = _lce_c(s, n, q_node, i, ell_u, ncmp)
            if _less_at_c(s, n, q_node, i, ell_q):
                res.closes = q_rank - 1
                res.pm = q_node
                if ell_u >= ell_q:
                    res.j = u_node
                    res.ell = ell_u
                    res.oj = u_pos
                else:
                    res.j = q_node
                    res.ell = ell_q
                    res.oj = q_pos
                return res
            u_rank = q_rank
            u_node = q_node
            u_pos = q_pos
            ell_u = ell_q
        else:
            q_rank = w_rank - 1
            q_node = st.uncl_pair(k - q_rank + 1, &q_pos)
            ell_q = _lce_c(s, n, q_node, i, ell_w, ncmp)
            if _less_at_c(s, n, q_node, i, ell_q):
                w_rank = q_rank
                w_node = q_node
                w_pos = q_pos
                ell_w = ell_q
            else:
                res.closes = w_rank - 1
                res.pm = w_node
                if ell_q >= ell_w:
                    res.j = q_node
                    res.ell = ell_q
                    res.oj = q_pos
                else:
                    res.j = w_node
                    res.ell = ell_w
                    res.oj = w_pos
                return res
    res.closes = w_rank - 1
    res.pm = w_node
    if ell_u >= ell_w:
        res.j = u_node
        res.ell = ell_u
        res.oj = u_pos
    else:
        res.j = w_node
        res.ell = ell_w
        res.oj = w_pos
    return res


cdef int64_t _lookahead_length_c(const uint8_t* s, int64_t n, int64_t i, int64_t j,
                                 int64_t ell, int64_t* ncmp) noexcept nogil:
    cdef int64_t q = ell >> 2
    cdef int64_t z = 0
    cdef int64_t per = _detect_run_c(s, j + q, ell - q, &z, ncmp)
    cdef int64_t length = q
    cdef int64_t first_full, x, lo, h
    if per > 0:
        first_full = j + q + z - 1
        x = first_full - 1
        while x >= j:
            ncmp[0] += 1
            if s[x - 1] != s[x + per - 1]:
                break
            x -= 1
        lo = x + 1
        h = first_full - ((first_full - lo) // per) * per - j
        if h < q - per:
            length = h + per
    return length


def build_succinct(data, BpsState st, stats):
    """Succinct builder; see _purekernels.build_succinct for the logic."""
    cdef const uint8_t[::1] mv = data
    cdef int64_t n = len(data)
    cdef const uint8_t* s = NULL
    if n > 0:
        s = &mv[0]
    cdef uint64_t[::1] sv = stats
    cdef int64_t ncmp = 0, skip_run = 0, skip_la = 0, closes = 0
    cdef FindResult fr
    cdef int64_t i = 1, per, t, rt, oj, oe, nbits, length, c
    cdef bint decreasing
    st.append_open()
    while i <= n:
        fr = _find_pss_succ(s, n, st, i, &ncmp)
        if fr.closes >= st.excess_:
            raise IntegrityError("builder drained the rightmost path")
        closes += fr.closes
        st._emit(fr.closes)
        if fr.ell >= 2 * (i - fr.j):
            per = i - fr.j
            t = fr.ell // per + 1
            rt = fr.j + (t - 1) * per
            oj = fr.oj
            nbits = st.written - (oj + 1)
            decreasing = fr.j != fr.pm
            for c in range(t - 2):
                st._copy_nocache(oj + 1, oj + 1 + nbits)
                if decreasing and st.clen:  # each repetition closes its predecessor
                    st.clen -= 1
                    st.ctop = (st.ctop - 1) & (st.cache_cap - 1)
                st._cache_push(st.written - 1, st.opens - 1)
            closes += (t - 2) * (nbits - per)
            skip_run += rt - i
            i = rt + 1
        elif fr.ell >= 8:
            length = _lookahead_length_c(s, n, i, fr.j, fr.ell, &ncmp)
            if length >= 2:
                oj = fr.oj
                oe = st.select_open0(fr.j + length)
                nbits = oe - oj
                st.copy_append0(oj + 1, oe + 1, 1)
                closes += nbits - (length - 1)
            skip_la += length - 1
            i += length
        else:
            i += 1
    cdef int64_t drain = st.excess_
    st._push_closes(drain)
    closes += drain
    sv[S_CMP] += <uint64_t>ncmp
    sv[S_SKIP_RUN] += <uint64_t>skip_run
    sv[S_SKIP_LA] += <uint64_t>skip_la
    sv[S_CLOSES] += <uint64_t>closes


ctypedef fused arr_t:
    uint32_t
    uint64_t


cdef FindResult _find_pss_plain(const uint8_t* s, int64_t n, arr_t* A,
                                int64_t i, int64_t* ncmp) noexcept nogil:
    cdef FindResult res
    cdef int64_t u_rank = 1, u_node = i - 1
    cdef int64_t w_rank, w_node, q_node, v_node
    cdef int64_t ell_u, ell_w, ell_q
    cdef int64_t steps, taken, r
    ell_u = _lce_c(s, n, u_node, i, 0, ncmp)
    if _less_at_c(s, n, u_node, i, ell_u):
        res.closes = 0
        res.pm = u_node
        res.j = u_node
        res.ell = ell_u
        return res
    while True:
        steps = ell_u + 1
        w_node = u_node
        taken = 0
        while taken < steps and w_node != 0:
            w_node = A[w_node]
            taken += 1
        w_rank = u_rank + taken
        ell_w = _lce_c(s, n, w_node, i, 0, ncmp)
        if _less_at_c(s, n, w_node, i, ell_w):
            break
        u_rank = w_rank
        u_node = w_node
        ell_u = ell_w
    while w_rank - u_rank > 1:
        if ell_u < ell_w:
            q_node = A[u_node]
            ell_q = _lce_c(s, n, q_node, i, ell_u, ncmp)
            if _less_at_c(s, n, q_node, i, ell_q):
                res.closes = u_rank
                res.pm = q_node
                if ell_u >= ell_q:
                    res.j = u_node
                    res.ell = ell_u
                else:
                    res.j = q_node
                    res.ell = ell_q
                return res
            u_rank += 1
            u_node = q_node
            ell_u = ell_q
        else:
            v_node = u_node  # p_{w-1} is only reachable by walking from p_u
            for r in range(w_rank - u_rank - 1):
                v_node = A[v_node]
            ell_q = _lce_c(s, n, v_node, i, ell_w, ncmp)
            if _less_at_c(s, n, v_node, i, ell_q):
                w_rank -= 1
                w_node = v_node
                ell_w = ell_q
            else:
                res.closes = w_rank - 1
                res.pm = w_node
                if ell_q >= ell_w:
                    res.j = v_node
                    res.ell = ell_q
                else:
                    res.j = w_node
                    res.ell = ell_w
                return res
    res.closes = w_rank - 1
    res.pm = w_node
    if ell_u >= ell_w:
        res.j = u_node
        res.ell = ell_u
    else:
        res.j = w_node
        res.ell = ell_w
    return res


def build_plain(data, arr_t[::1] A, stats):
    """In-place builder; see _purekernels.build_plain for the logic."""
    cdef const uint8_t[::1] mv = data
    cdef int64_t n = len(data)
    if n == 0:
        return
    cdef const uint8_t* s = &mv[0]
    cdef arr_t* arr = &A[0]
    cdef uint64_t[::1] sv = stats
    cdef int64_t ncmp = 0, skip_run = 0, skip_la = 0, closes = 0
    cdef FindResult fr
    cdef int64_t i = 1, x, nxt, per, t, rt, rep, dst, src_lo, rx
    cdef int64_t length, region_end, prev, closed
    while i <= n:
        fr = _find_pss_plain(s, n, arr, i, &ncmp)
        x = i - 1
        while x != fr.pm:
            nxt = arr[x]
            arr[x] = <arr_t>(i - x)
            x = nxt
            closes += 1
        arr[i] = <arr_t>fr.pm
        if fr.ell >= 2 * (i - fr.j):
            per = i - fr.j
            t = fr.ell // per + 1
            rt = fr.j + (t - 1) * per
            src_lo = fr.j + 1
            for rep in range(t - 2):
                dst = i + rep * per + 1
                memcpy(&arr[dst], &arr[src_lo], per * sizeof(arr_t))
            if fr.j == fr.pm:  # increasing
                rx = i + per
                while rx <= rt:
                    arr[rx] = <arr_t>(rx - per)
                    rx += per
                closes += (t - 2) * (per - 1)
            else:  # decreasing
                rx = i
                while rx <= rt - per:
                    arr[rx] = <arr_t>per
                    rx += per
                arr[rt] = <arr_t>fr.pm
                closes += (t - 2) * per
            skip_run += rt - i
            i = rt + 1
        elif fr.ell >= 8:
            length = _lookahead_length_c(s, n, i, fr.j, fr.ell, &ncmp)
            if length >= 2:
                memcpy(&arr[i + 1], &arr[fr.j + 1], (length - 1) * sizeof(arr_t))
                region_end = i + length - 1
                closed = length - 1
                prev = i
                for x in range(i + 1, region_end + 1):
                    if x + <int64_t>arr[x] > region_end:
                        arr[x] = <arr_t>prev
                        prev = x
                        closed -= 1
                closes += closed
            skip_la += length - 1
            i += length
        else:
            i += 1
    x = i - 1
    while x != 0:
        nxt = arr[x]
        arr[x] = <arr_t>(n - x + 1)
        x = nxt
        closes += 1
    closes += 1  # the root closes last
    sv[S_CMP] += <uint64_t>ncmp
    sv[S_SKIP_RUN] += <uint64_t>skip_run
    sv[S_SKIP_LA] += <uint64_t>skip_la
    sv[S_CLOSES] += <uint64_t>closes
