"""Deterministic corpus generators for tests and benchmarks.

All generators are reproducible: the same (kind, n, sigma, seed) yields the
same bytes.  Random texts use letters a.. when sigma fits in the lowercase
alphabet (readable dumps), raw byte values 0..sigma-1 otherwise.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError

KINDS = ("random", "fibonacci", "thue-morse", "periodic", "increasing")

_SWAP_AB = bytes.maketrans(b"ab", b"ba")


def random_text(n: int, sigma: int = 26, seed: int = 0) -> bytes:
    if not 1 <= sigma <= 256:
        raise UsageError("sigma must be in [1, 256]")
    if n < 0:
        raise UsageError("n must be >= 0")
    base = 97 if sigma <= 26 else 0
    rng = np.random.default_rng(seed)
    return bytes(rng.integers(0, sigma, size=n, dtype=np.uint16).astype(np.uint8) + base)


def fibonacci_word(n: int) -> bytes:
    """Prefix of the infinite Fibonacci word abaababa... over {a, b}."""
    if n < 0:
        raise UsageError("n must be >= 0")
    if n == 0:
        return b""
    prev, cur = b"b", b"a"
    while len(cur) < n:
        prev, cur = cur, cur + prev
    return cur[:n]


def thue_morse(n: int) -> bytes:
    """Prefix of the Thue-Morse word abbabaab... over {a, b}."""
    if n < 0:
        raise UsageError("n must be >= 0")
    s = b"a"
    while len(s) < n:
        s = s + s.translate(_SWAP_AB)
    return s[:n]


def periodic(n: int, sigma: int = 2) -> bytes:
    """The increasing Lyndon word of length sigma, repeated to length n."""
    if not 1 <= sigma <= 26:
        raise UsageError("sigma must be in [1, 26] for periodic texts")
    if n < 0:
        raise UsageError("n must be >= 0")
    word = bytes(range(97, 97 + sigma))
    reps = n // sigma + 1
    return (word * reps)[:n]


def increasing(n: int, sigma: int = 26) -> bytes:
    """Strictly rising staircase, clamped at the sigma-th symbol."""
    if not 1 <= sigma <= 26:
        raise UsageError("sigma must be in [1, 26] for increasing texts")
    if n < 0:
        raise UsageError("n must be >= 0")
    return bytes(97 + min(i, sigma - 1) for i in range(n))


def make_text(kind: str, n: int, sigma: int = 26, seed: int = 0) -> bytes:
    if kind == "random":
        return random_text(n, sigma, seed)
    if kind == "fibonacci":
        return fibonacci_word(n)
    if kind == "thue-morse":
        return thue_morse(n)
    if kind == "periodic":
        return periodic(n, sigma)
    if kind == "increasing":
        return increasing(n, sigma)
    raise UsageError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
