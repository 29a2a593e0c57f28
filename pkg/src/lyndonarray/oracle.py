"""Slow, obviously-correct reference implementations.

Everything here is ground truth for the fast builders: previous/next
smaller suffix arrays by direct comparison scans, the Lyndon array by
definition-level maximization, and the balanced-parentheses sequence by an
explicit tree walk.  The routines are quadratic to cubic on purpose and are
restricted by the tests to n <= ~1e5; they share no code with the fast
path.

``pss_nss_by_ranks`` is the one scalable member: an independently built
suffix-rank oracle (prefix doubling + stack scans) used to cross-check the
builders on adversarial inputs that the direct scans cannot reach.  Its
agreement with the direct scans is itself property-tested.
"""

from __future__ import annotations

import numpy as np

from .textcore import TextLike, as_bytes, is_lyndon_word


def _suffix_less(data: bytes, n: int, i: int, j: int) -> bool:
    """True iff S_i < S_j, scanning characters; 0 and n+1 act as sentinel."""
    if i == 0 or i == n + 1:
        return True
    if j == 0 or j == n + 1:
        return False
    while i <= n and j <= n:
        a = data[i - 1]
        b = data[j - 1]
        if a != b:
            return a < b
        i += 1
        j += 1
    return i > n  # the exhausted (shorter) suffix is the smaller one


def pss_bruteforce(text: TextLike) -> list:
    """Previous smaller suffix array: pss[i] = max j < i with S_j < S_i (0 if none)."""
    data = as_bytes(text)
    n = len(data)
    out = []
    for i in range(1, n + 1):
        j = i - 1
        while j > 0 and not _suffix_less(data, n, j, i):
            j -= 1
        out.append(j)
    return out


def nss_bruteforce(text: TextLike) -> list:
    """Next smaller suffix array: nss[i] = min j > i with S_j < S_i (n+1 if none)."""
    data = as_bytes(text)
    n = len(data)
    out = []
    for i in range(1, n + 1):
        j = i + 1
        while j <= n and not _suffix_less(data, n, j, i):
            j += 1
        out.append(j)
    return out


def lyndon_array_bruteforce(text: TextLike) -> list:
    """Lyndon array by definition: the longest Lyndon word starting at each i."""
    data = as_bytes(text)
    n = len(data)
    out = []
    for i in range(1, n + 1):
        best = 1
        for ell in range(n - i + 1, 1, -1):
            if is_lyndon_word(data, i, ell):
                best = ell
                break
        out.append(best)
    return out


def bps_bruteforce(text: TextLike) -> str:
    """Balanced parentheses of the PSS tree, written by a preorder traversal.

    Node i's parent is pss(i), children ordered ascendingly, root 0.  The
    result has exactly n+1 opening parentheses and 2n+2 characters.
    """
    data = as_bytes(text)
    n = len(data)
    pss = pss_bruteforce(data)
    children = [[] for _ in range(n + 1)]
    for i in range(1, n + 1):
        children[pss[i - 1]].append(i)  # ascending i keeps children ordered
    out = []
    stack = [(0, 0)]  # (node, next child slot)
    out.append("(")
    while stack:
        node, slot = stack[-1]
        kids = children[node]
        if slot < len(kids):
            stack[-1] = (node, slot + 1)
            stack.append((kids[slot], 0))
            out.append("(")
        else:
            stack.pop()
            out.append(")")
    return "".join(out)


def pack_parens(parens: str) -> bytes:
    """Pack a parentheses string into bytes: open=1, close=0, MSB first."""
    out = bytearray((len(parens) + 7) // 8)
    for k, ch in enumerate(parens):
        if ch == "(":
            out[k >> 3] |= 0x80 >> (k & 7)
        elif ch != ")":
            raise ValueError(f"not a parenthesis: {ch!r}")
    return bytes(out)


def unpack_parens(payload: bytes, nbits: int) -> str:
    """Inverse of pack_parens for the first nbits bits."""
    return "".join(
        "(" if payload[k >> 3] & (0x80 >> (k & 7)) else ")" for k in range(nbits)
    )


def suffix_ranks(text: TextLike) -> np.ndarray:
    """Lexicographic rank of every suffix via prefix doubling (O(n log^2 n)).

    Shorter-is-smaller prefix ties are resolved with a -1 fill key, matching
    the sentinel convention.  Independent of both the fast path and the
    direct comparison scans above.
    """
    data = as_bytes(text)
    n = len(data)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        if n > 1:
            r_sorted = rank[order]
            s_sorted = second[order]
            changed[1:] = (r_sorted[1:] != r_sorted[:-1]) | (
                s_sorted[1:] != s_sorted[:-1]
            )
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(changed)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            break
        k *= 2
    return rank


def pss_nss_by_ranks(text: TextLike):
    """(pss, nss) arrays from suffix ranks via monotone stack scans."""
    ranks = suffix_ranks(text)
    n = len(ranks)
    pss = [0] * n
    nss = [n + 1] * n
    stack = []  # positions (1-based) with increasing ranks
    for i in range(1, n + 1):
        r = ranks[i - 1]
        while stack and ranks[stack[-1] - 1] > r:
            nss[stack.pop() - 1] = i
        pss[i - 1] = stack[-1] if stack else 0
        stack.append(i)
    return pss, nss
