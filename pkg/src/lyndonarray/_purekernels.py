"""Pure-Python kernels: packed parentheses buffer with blocked support
structures, plus the succinct and in-place Lyndon-array builders.

This module mirrors the compiled extension ``_ckernels`` and is selected as
a fallback (or explicitly via LYNDONARRAY_BACKEND=pure).  It doubles as the
traceable reference: the builders accept an optional ``trace`` list that
records search probes and extension events for the invariant tests.

Layout shared with the compiled backend:

* bits are packed MSB-first, open=1, close=0;
* 512-bit blocks carry an open count (relative to their 32768-bit
  superblock) and a minimum-excess value; superblocks carry absolute open
  counts; block minima are organized in a complete 64-ary min tree;
* a capped ring buffer caches the positions and node ids of the topmost
  unclosed parentheses, making rightmost-path access O(1) in the common
  case; deeper accesses fall back to excess searches (the k-th unclosed
  open sits right after the last prefix with excess k-1).
"""

from __future__ import annotations

from .errors import IntegrityError, UsageError

BACKEND = "pure"

BLOCK_BITS = 512
BLOCK_BYTES = BLOCK_BITS // 8
BLOCKS_PER_SUPER = 64
FANOUT = 64

CACHE_MIN = 64
CACHE_MAX = 4096

# stats slots
STAT_CMP = 0
STAT_SKIP_RUN = 1
STAT_SKIP_LA = 2
STAT_CLOSES = 3

# support accounting widths (bits per entry, matching the compiled layout)
_W_BLK_RANK = 16
_W_BLK_MIN = 64
_W_SUP_RANK = 64
_W_TREE = 64
_W_CACHE = 128

_INF = 1 << 62


def _cache_capacity(cap_bits: int) -> int:
    c = max(CACHE_MIN, min(CACHE_MAX, cap_bits // 1024))
    p = CACHE_MIN
    while p * 2 <= c:
        p *= 2
    return p  # power of two: the ring index wraps with a mask


class _MinTree:
    """Complete 64-ary min tree over per-block absolute excess minima.

    Leaves are appended as blocks finish; internal nodes are min-updated on
    the way up, so queries over finished blocks are always consistent.
    """

    def __init__(self):
        self.levels = [[]]

    def append(self, value: int) -> None:
        levels = self.levels
        levels[0].append(value)
        idx = len(levels[0]) - 1
        lvl = 0
        while len(levels[lvl]) > 1:
            parent = idx >> 6
            if lvl + 1 == len(levels):
                levels.append([])
            up = levels[lvl + 1]
            if parent == len(up):
                # a level's first node must cover all children existing so far
                up.append(min(levels[lvl]) if parent == 0 else value)
                value = up[parent]
            elif value < up[parent]:
                up[parent] = value
            else:
                break
            idx = parent
            lvl += 1

    def prev_leq(self, limit: int, v: int) -> int:
        """Largest leaf index < limit with value <= v, or -1."""
        leaves = self.levels[0]
        limit = min(limit, len(leaves))
        if limit <= 0:
            return -1
        # scan leaves within the last group, then ascend level by level
        idx = limit - 1
        lo = idx & ~63
        for b in range(idx, lo - 1, -1):
            if leaves[b] <= v:
                return b
        lvl = 0
        while True:
            idx >>= 6
            lvl += 1
            if lvl >= len(self.levels):
                return -1
            row = self.levels[lvl]
            lo = idx & ~63
            found = -1
            for b in range(min(idx - 1, len(row) - 1), lo - 1, -1):
                if row[b] <= v:
                    found = b
                    break
            if found >= 0:
                # descend: subtree is fully finished, a hit is guaranteed
                while lvl > 0:
                    lvl -= 1
                    row = self.levels[lvl]
                    hi = min((found << 6) + 63, len(row) - 1)
                    for b in range(hi, (found << 6) - 1, -1):
                        if row[b] <= v:
                            found = b
                            break
                return found

    def next_leq(self, start: int, limit: int, v: int) -> int:
        """Smallest leaf index in [start, limit) with value <= v, or -1."""
        leaves = self.levels[0]
        limit = min(limit, len(leaves))
        if start >= limit:
            return -1
        idx = start
        hi = min((idx | 63), limit - 1)
        for b in range(idx, hi + 1):
            if leaves[b] <= v:
                return b
        lvl = 0
        while True:
            idx >>= 6
            lvl += 1
            if lvl >= len(self.levels):
                return -1
            row = self.levels[lvl]
            hi_row = (limit - 1) >> (6 * lvl)
            hi = min((idx | 63), len(row) - 1, hi_row)
            found = -1
            for b in range(idx + 1, hi + 1):
                if row[b] <= v:
                    found = b
                    break
            if found >= 0:
                while lvl > 0:
                    lvl -= 1
                    row = self.levels[lvl]
                    hi = min((found << 6) + 63, len(row) - 1, (limit - 1) >> (6 * lvl))
                    for b in range(found << 6, hi + 1):
                        if row[b] <= v:
                            found = b
                            break
                return found


class BpsState:
    """Append-only packed parentheses sequence with incremental support."""

    def __init__(self, capacity_bits: int = 0):
        cap = max(int(capacity_bits), BLOCK_BITS)
        self._buf = bytearray((cap + 7) // 8)
        self.written = 0
        self.opens = 0
        self._excess = 0  # == number of unclosed parentheses
        self._blk_rank = []  # per started block: opens before it, rel. to superblock
        self._sup_rank = []  # per superblock: absolute opens before it
        self._nfin = 0  # finished blocks (those with min recorded)
        self._tree = _MinTree()
        self._curmin = _INF  # min excess inside the current block
        cache_cap = _cache_capacity(cap)
        self._cache_cap = cache_cap
        self._cpos = [0] * cache_cap
        self._cnode = [0] * cache_cap
        self._chead = 0  # ring start
        self._clen = 0
        self.frozen = False

    # -- low-level bit access -------------------------------------------------

    def _get(self, pos: int) -> int:
        return (self._buf[pos >> 3] >> (7 - (pos & 7))) & 1

    def get_bit(self, pos: int) -> int:
        return self._get(pos)

    @property
    def unclosed(self) -> int:
        return self._excess

    def _start_block(self) -> None:
        bi = self.written // BLOCK_BITS
        if bi > 0 and self._nfin < bi:
            self._finish_block()
        if bi % BLOCKS_PER_SUPER == 0:
            self._sup_rank.append(self.opens)
        self._blk_rank.append(self.opens - self._sup_rank[-1])

    def _finish_block(self) -> None:
        self._tree.append(self._curmin)
        self._nfin += 1
        self._curmin = _INF

    def _cache_push(self, pos: int, node: int) -> None:
        cap = self._cache_cap
        if self._clen == cap:
            self._chead = (self._chead + 1) % cap
            self._clen -= 1
        slot = (self._chead + self._clen) % cap
        self._cpos[slot] = pos
        self._cnode[slot] = node
        self._clen += 1

    def _push(self, bit: int) -> None:
        if self.frozen:
            raise UsageError("sequence is finalized")
        pos = self.written
        if pos % BLOCK_BITS == 0:
            self._start_block()
        byte = pos >> 3
        if byte >= len(self._buf):
            self._buf.extend(bytearray(max(len(self._buf), 64)))
        if bit:
            self._buf[byte] |= 0x80 >> (pos & 7)
            self.opens += 1
            self._excess += 1
            self._cache_push(pos, self.opens - 1)
        else:
            self._buf[byte] &= ~(0x80 >> (pos & 7)) & 0xFF
            self._excess -= 1
            if self._clen:
                self._clen -= 1
        self.written += 1
        if self._excess < self._curmin:
            self._curmin = self._excess

    def append_open(self) -> None:
        self._push(1)

    def append_close(self) -> None:
        if self._excess <= 0:
            raise UsageError("append_close with no unclosed parenthesis")
        self._push(0)

    # -- rank / select ----------------------------------------------------------

    def rank_open_count(self, c: int) -> int:
        """Opens among the first c bits (no validation)."""
        if c <= 0:
            return 0
        bi = (c - 1) // BLOCK_BITS
        base = self._sup_rank[bi // BLOCKS_PER_SUPER] + self._blk_rank[bi]
        s = bi * BLOCK_BITS
        buf = self._buf
        full = int.from_bytes(buf[s >> 3 : c >> 3], "big").bit_count()
        if c & 7:
            full += (buf[c >> 3] >> (8 - (c & 7))).bit_count()
        return base + full

    def excess_at(self, c: int) -> int:
        return 2 * self.rank_open_count(c) - c

    def select_open0(self, k: int) -> int:
        """0-based position of the k-th (1-based) open bit (no validation)."""
        sup = self._sup_rank
        lo, hi = 0, len(sup)
        while hi - lo > 1:  # last superblock with sup[] < k
            mid = (lo + hi) // 2
            if sup[mid] < k:
                lo = mid
            else:
                hi = mid
        sbi = lo
        blk = self._blk_rank
        base = sbi * BLOCKS_PER_SUPER
        lo, hi = base, min(base + BLOCKS_PER_SUPER, len(blk))
        while hi - lo > 1:  # last block with sup+blk[] < k
            mid = (lo + hi) // 2
            if sup[sbi] + blk[mid] < k:
                lo = mid
            else:
                hi = mid
        bi = lo
        rem = k - sup[sbi] - blk[bi]
        buf = self._buf
        byte = bi * BLOCK_BYTES
        while True:
            pc = buf[byte].bit_count()
            if pc >= rem:
                break
            rem -= pc
            byte += 1
        b = buf[byte]
        for bit in range(8):
            if (b >> (7 - bit)) & 1:
                rem -= 1
                if rem == 0:
                    return (byte << 3) + bit
        raise IntegrityError("select_open fell off a byte")  # pragma: no cover

    def _scan_block_prev(self, c_hi: int, c_lo: int, v: int) -> int:
        """Largest count c in (c_lo, c_hi] with excess(c) <= v, else -1."""
        e = self.excess_at(c_hi)
        c = c_hi
        while c > c_lo:
            if e <= v:
                return c
            e -= 1 if self._get(c - 1) else -1
            c -= 1
        return -1

    def _scan_block_next(self, c_lo: int, c_hi: int, v: int) -> int:
        """Smallest count c in [c_lo, c_hi] with excess(c) <= v, else -1."""
        e = self.excess_at(c_lo)
        c = c_lo
        while True:
            if e <= v:
                return c
            if c == c_hi:
                return -1
            e += 1 if self._get(c) else -1
            c += 1

    def rightmost_dip(self, limit: int, v: int) -> int:
        """Largest count c in [0, limit] with excess(c) <= v (v >= 0 always
        succeeds because excess(0) = 0)."""
        if limit > 0:
            bi = (limit - 1) // BLOCK_BITS
            r = self._scan_block_prev(limit, bi * BLOCK_BITS, v)
            if r >= 0:
                return r
            b = self._tree.prev_leq(min(bi, self._nfin), v)
            if b >= 0:
                r = self._scan_block_prev((b + 1) * BLOCK_BITS, b * BLOCK_BITS, v)
                if r >= 0:
                    return r
        return 0

    def leftmost_dip(self, start: int, v: int) -> int:
        """Smallest count c in [start, written] with excess(c) <= v, or -1."""
        if start > self.written:
            return -1
        bi = start // BLOCK_BITS
        c_hi = min((bi + 1) * BLOCK_BITS, self.written)
        r = self._scan_block_next(start, c_hi, v)
        if r >= 0:
            return r
        b = self._tree.next_leq(bi + 1, self._nfin, v)
        if b >= 0:
            return self._scan_block_next(
                b * BLOCK_BITS, min((b + 1) * BLOCK_BITS, self.written), v
            )
        # the block holding the newest bits is not in the tree; scan it last
        nblocks = (self.written + BLOCK_BITS - 1) // BLOCK_BITS
        if self._nfin < nblocks and self._nfin > bi:
            return self._scan_block_next(self._nfin * BLOCK_BITS, self.written, v)
        return -1

    def select_uncl0(self, k: int) -> int:
        """0-based position of the k-th unclosed open (no validation)."""
        if k > self._excess - self._clen:
            slot = (self._chead + self._clen - (self._excess - k) - 1) % self._cache_cap
            return self._cpos[slot]
        return self.rightmost_dip(self.written, k - 1)

    def uncl_node(self, k: int) -> int:
        """Node id (preorder number) of the k-th unclosed open."""
        if k > self._excess - self._clen:
            slot = (self._chead + self._clen - (self._excess - k) - 1) % self._cache_cap
            return self._cnode[slot]
        c = self.rightmost_dip(self.written, k - 1)
        return self.rank_open_count(c + 1) - 1

    # -- bulk append -------------------------------------------------------------

    def copy_append0(self, src_from: int, src_to: int, repetitions: int) -> None:
        """Append the bit range [src_from, src_to) `repetitions` times."""
        if not 0 <= src_from <= src_to <= self.written:
            raise UsageError("copy source outside the written prefix")
        for _ in range(repetitions):
            for p in range(src_from, src_to):
                bit = self._get(p)
                if not bit and self._excess <= 0:
                    raise UsageError("copy underflows unclosed parentheses")
                self._push(bit)

    # -- finalization ------------------------------------------------------------

    def freeze(self) -> None:
        if self.frozen:
            return
        nblocks = (self.written + BLOCK_BITS - 1) // BLOCK_BITS
        if self._nfin < nblocks:
            self._finish_block()
        self.frozen = True

    def to_bytes(self) -> bytes:
        return bytes(self._buf[: (self.written + 7) // 8])

    @classmethod
    def from_bits(cls, payload: bytes, nbits: int) -> "BpsState":
        st = cls(nbits)
        for p in range(nbits):
            bit = (payload[p >> 3] >> (7 - (p & 7))) & 1
            if not bit and st._excess <= 0:
                raise IntegrityError("unbalanced parentheses payload")
            st._push(bit)
        return st

    def support_bits(self) -> int:
        """Support structure footprint in bits, per the compiled layout:
        16-bit block open counts, 64-bit block minima / superblock counts /
        internal tree nodes, and position+node cache entries."""
        tree_internal = sum(len(level) for level in self._tree.levels[1:])
        return (
            len(self._blk_rank) * (_W_BLK_RANK + _W_BLK_MIN)
            + len(self._sup_rank) * _W_SUP_RANK
            + tree_internal * _W_TREE
            + self._cache_cap * _W_CACHE
        )

    # -- finalized navigation -----------------------------------------------------

    def find_close0(self, open0: int) -> int:
        """0-based position of the close matching the open at open0."""
        d = self.excess_at(open0 + 1)
        c = self.leftmost_dip(open0 + 2, d - 1)
        if c < 0:
            raise IntegrityError("unmatched open parenthesis")
        return c - 1

    def enclosing_open0(self, open0: int) -> int:
        """0-based position of the parent's open for the node opened at open0."""
        d = self.excess_at(open0 + 1)
        return self.rightmost_dip(open0, d - 2)


# -- text comparison kernels --------------------------------------------------


def lce_count(data: bytes, n: int, i: int, j: int, skip: int):
    """(lce, comparisons) for suffixes i, j, skipping `skip` known-equal symbols."""
    if i == 0 or j == 0 or i > n or j > n:
        return 0, 0
    ell = skip
    ncmp = 0
    while i + ell <= n and j + ell <= n:
        ncmp += 1
        if data[i + ell - 1] != data[j + ell - 1]:
            break
        ell += 1
    return ell, ncmp


def _less_at(data: bytes, n: int, a: int, b: int, ell: int) -> bool:
    """S_a < S_b given lce(a, b) = ell; out-of-range symbols read as sentinel."""
    ca = data[a + ell - 1] if 1 <= a and a + ell <= n else -1
    cb = data[b + ell - 1] if 1 <= b and b + ell <= n else -1
    return ca < cb


def is_lyndon(data: bytes, start: int, length: int) -> bool:
    """Naive Lyndon test over data[start .. start+length), 1-based start."""
    for k in range(1, length):
        off = 0
        limit = length - k
        while off < limit and data[start - 1 + off] == data[start - 1 + k + off]:
            off += 1
        if off >= limit:
            return False  # proper suffix is a prefix of the word => smaller
        if data[start - 1 + k + off] < data[start - 1 + off]:
            return False
    return True


def detect_run(data: bytes, start: int, length: int, stats=None):
    """Extended-Lyndon-run detection over a slice; counts comparisons.

    Returns (period, first_full_start) or None.  Mirrors duval.detect_extended_run
    but charges symbol comparisons to the build statistics.
    """
    base = start - 1
    ncmp = 0
    longest = 0
    z = 1
    half = length >> 1
    i = 0
    while i < length:
        j = i + 1
        k = i
        while j < length:
            if j - k > half:  # this factor already rules out a run
                if stats is not None:
                    stats[STAT_CMP] += ncmp
                return None
            a = data[base + k]
            b = data[base + j]
            ncmp += 1
            if a > b:
                break
            k = i if a < b else k + 1
            j += 1
        flen = j - k
        while i <= k:
            if flen > longest:
                longest = flen
                z = i + 1
            i += flen
    result = None
    if 2 * longest <= length:
        for t in range(longest, length):
            ncmp += 1
            if data[base + t] != data[base + t - longest]:
                break
        else:
            result = (longest, z)
    if stats is not None:
        stats[STAT_CMP] += ncmp
    return result


# -- the linear-time builders ---------------------------------------------------


def _find_pss_succ(data, n, st, i, stats, trace):
    """Locate pss(i) on the rightmost path; returns (m-1, p_m, j, ell)."""
    k = st._excess
    u_rank = 1
    u_node = i - 1
    ell_u, c = lce_count(data, n, u_node, i, 0)
    stats[STAT_CMP] += c
    if trace is not None:
        trace.append(("probe", i, 1, ell_u))
    if _less_at(data, n, u_node, i, ell_u):
        return 0, u_node, u_node, ell_u
    while True:  # step 1: jump to a candidate interval (u, w]
        w_rank = u_rank + ell_u + 1
        if w_rank > k:
            w_rank = k
        w_node = st.uncl_node(k - w_rank + 1)
        ell_w, c = lce_count(data, n, w_node, i, 0)
        stats[STAT_CMP] += c
        if trace is not None:
            trace.append(("probe", i, w_rank, ell_w))
        if _less_at(data, n, w_node, i, ell_w):
            break
        u_rank, u_node, ell_u = w_rank, w_node, ell_w
    while w_rank - u_rank > 1:  # step 2: narrow to the exact m
        if ell_u < ell_w:
            q_rank = u_rank + 1
            q_node = st.uncl_node(k - q_rank + 1)
            ell_q, c = lce_count(data, n, q_node, i, ell_u)
            stats[STAT_CMP] += c
            if trace is not None:
                trace.append(("probe", i, q_rank, ell_q))
            if _less_at(data, n, q_node, i, ell_q):
                if ell_u >= ell_q:
                    return q_rank - 1, q_node, u_node, ell_u
                return q_rank - 1, q_node, q_node, ell_q
            u_rank, u_node, ell_u = q_rank, q_node, ell_q
        else:
            q_rank = w_rank - 1
            q_node = st.uncl_node(k - q_rank + 1)
            ell_q, c = lce_count(data, n, q_node, i, ell_w)
            stats[STAT_CMP] += c
            if trace is not None:
                trace.append(("probe", i, q_rank, ell_q))
            if _less_at(data, n, q_node, i, ell_q):
                w_rank, w_node, ell_w = q_rank, q_node, ell_q
            else:
                if ell_q >= ell_w:
                    return w_rank - 1, w_node, q_node, ell_q
                return w_rank - 1, w_node, w_node, ell_w
    if ell_u >= ell_w:
        return w_rank - 1, w_node, u_node, ell_u
    return w_rank - 1, w_node, w_node, ell_w


def _lookahead_length(data, n, i, j, ell, stats, trace):
    """Number of nodes the look-ahead may copy: floor(ell/4), or chi when the
    examined window extends a Lyndon run far enough to the left."""
    q = ell >> 2
    res = detect_run(data, j + q, ell - q, stats)
    length = q
    if res is not None:
        per, z = res
        first_full = j + q + z - 1
        x = first_full - 1
        while x >= j:
            stats[STAT_CMP] += 1
            if data[x - 1] != data[x + per - 1]:
                break
            x -= 1
        lo = x + 1
        h = first_full - ((first_full - lo) // per) * per - j
        if h < q - per:
            length = h + per
        if trace is not None:
            trace.append(("la_run", i, j, ell, per, h, length))
    elif trace is not None:
        trace.append(("la_full", i, j, ell, length))
    return length


def build_succinct(data: bytes, st: BpsState, stats, trace=None) -> None:
    """Algorithm: attach each index below its previous smaller suffix, writing
    the BPS left to right; skip runs by bulk-copying repeated structure."""
    n = len(data)
    st.append_open()  # node 0
    i = 1
    while i <= n:
        closes, _pm, j, ell = _find_pss_succ(data, n, st, i, stats, trace)
        for _ in range(closes):
            st.append_close()
        stats[STAT_CLOSES] += closes
        st.append_open()  # node i
        if ell >= 2 * (i - j):
            per = i - j
            t = ell // per + 1
            rt = j + (t - 1) * per
            oj = st.select_open0(j + 1)
            nbits = st.written - (oj + 1)  # per opens, the rest are closes
            st.copy_append0(oj + 1, oj + 1 + nbits, t - 2)
            stats[STAT_CLOSES] += (t - 2) * (nbits - per)
            stats[STAT_SKIP_RUN] += rt - i
            if trace is not None:
                trace.append(("runext", i, j, ell, rt - i))
            i = rt + 1
        elif ell >= 8:
            length = _lookahead_length(data, n, i, j, ell, stats, trace)
            if length >= 2:
                oj = st.select_open0(j + 1)
                oe = st.select_open0(j + length)
                nbits = oe - oj
                st.copy_append0(oj + 1, oe + 1, 1)
                stats[STAT_CLOSES] += nbits - (length - 1)
            stats[STAT_SKIP_LA] += length - 1
            i += length
        else:
            i += 1
    drain = st._excess
    for _ in range(drain):
        st.append_close()
    stats[STAT_CLOSES] += drain


def _find_pss_plain(data, n, A, i, stats, trace):
    """find_pss over the pointer-encoded rightmost path stored in A."""
    u_rank = 1
    u_node = i - 1
    ell_u, c = lce_count(data, n, u_node, i, 0)
    stats[STAT_CMP] += c
    if trace is not None:
        trace.append(("probe", i, 1, ell_u))
    if _less_at(data, n, u_node, i, ell_u):
        return u_node, u_node, ell_u
    while True:  # step 1
        steps = ell_u + 1
        w_node = u_node
        taken = 0
        while taken < steps and w_node != 0:
            w_node = A[w_node]
            taken += 1
        w_rank = u_rank + taken
        ell_w, c = lce_count(data, n, w_node, i, 0)
        stats[STAT_CMP] += c
        if trace is not None:
            trace.append(("probe", i, w_rank, ell_w))
        if _less_at(data, n, w_node, i, ell_w):
            break
        u_rank, u_node, ell_u = w_rank, w_node, ell_w
    while w_rank - u_rank > 1:  # step 2
        if ell_u < ell_w:
            q_node = A[u_node]
            ell_q, c = lce_count(data, n, q_node, i, ell_u)
            stats[STAT_CMP] += c
            if trace is not None:
                trace.append(("probe", i, u_rank + 1, ell_q))
            if _less_at(data, n, q_node, i, ell_q):
                if ell_u >= ell_q:
                    return q_node, u_node, ell_u
                return q_node, q_node, ell_q
            u_rank, u_node, ell_u = u_rank + 1, q_node, ell_q
        else:
            v_node = u_node  # p_{w-1} is only reachable by walking from p_u
            for _ in range(w_rank - u_rank - 1):
                v_node = A[v_node]
            ell_q, c = lce_count(data, n, v_node, i, ell_w)
            stats[STAT_CMP] += c
            if trace is not None:
                trace.append(("probe", i, w_rank - 1, ell_q))
            if _less_at(data, n, v_node, i, ell_q):
                w_rank, w_node, ell_w = w_rank - 1, v_node, ell_q
            else:
                if ell_q >= ell_w:
                    return w_node, v_node, ell_q
                return w_node, w_node, ell_w
    if ell_u >= ell_w:
        return w_node, u_node, ell_u
    return w_node, w_node, ell_w


def build_plain(data: bytes, A, stats, trace=None) -> None:
    """In-place variant: A (indexed by node, size n+1) holds pss pointers for
    rightmost-path nodes and final Lyndon lengths for everything else."""
    n = len(data)
    i = 1
    while i <= n:
        pm, j, ell = _find_pss_plain(data, n, A, i, stats, trace)
        x = i - 1
        while x != pm:  # close p_1 .. p_{m-1}: pointers become lengths
            nxt = A[x]
            A[x] = i - x
            x = nxt
            stats[STAT_CLOSES] += 1
        A[i] = pm
        if ell >= 2 * (i - j):
            per = i - j
            t = ell // per + 1
            rt = j + (t - 1) * per
            src_lo = j + 1
            for rep in range(t - 2):
                dst = i + rep * per + 1
                A[dst : dst + per] = A[src_lo : src_lo + per]
            if j == pm:  # increasing: repetition starts chain up
                rx = i + per
                while rx <= rt:
                    A[rx] = rx - per
                    rx += per
                stats[STAT_CLOSES] += (t - 2) * (per - 1)
            else:  # decreasing: interior starts close with lambda = |mu|
                rx = i
                while rx <= rt - per:
                    A[rx] = per
                    rx += per
                A[rt] = pm
                stats[STAT_CLOSES] += (t - 2) * per
            stats[STAT_SKIP_RUN] += rt - i
            if trace is not None:
                trace.append(("runext", i, j, ell, rt - i))
            i = rt + 1
        elif ell >= 8:
            length = _lookahead_length(data, n, i, j, ell, stats, trace)
            if length >= 2:
                A[i + 1 : i + length] = A[j + 1 : j + length]
                region_end = i + length - 1
                closed = length - 1
                prev = i  # nodes still open after the copy become pointers
                for x in range(i + 1, region_end + 1):
                    if x + A[x] > region_end:
                        A[x] = prev
                        prev = x
                        closed -= 1
                stats[STAT_CLOSES] += closed
            stats[STAT_SKIP_LA] += length - 1
            i += length
        else:
            i += 1
    x = i - 1  # the rightmost path never gains a next smaller suffix
    while x != 0:
        nxt = A[x]
        A[x] = n - x + 1
        x = nxt
        stats[STAT_CLOSES] += 1
    stats[STAT_CLOSES] += 1  # the root closes last
