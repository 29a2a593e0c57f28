import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_strings
from lyndonarray import UsageError, detect_extended_run, is_lyndon_word
from lyndonarray.duval import ExtendedRun, lyndon_factorization, lyndon_factorization_stream


def factors_of(t, ends):
    prev = 0
    out = []
    for e in ends:
        out.append(t[prev:e])
        prev = e
    return out


def brute_factorization(t: bytes):
    """Unique decomposition into non-increasing Lyndon factors, by search."""
    n = len(t)
    best = None
    stack = [(0, [])]
    while stack:
        pos, acc = stack.pop()
        if pos == n:
            fs = factors_of(t, acc)
            if all(is_lyndon_word(f, 1, len(f)) for f in fs) and all(
                fs[i - 1] >= fs[i] for i in range(1, len(fs))
            ):
                assert best is None, "factorization must be unique"
                best = acc
            continue
        for e in range(pos + 1, n + 1):
            stack.append((e, acc + [e]))
    return best


def test_factorization_examples():
    assert lyndon_factorization(b"northamerica") == [4, 5, 11, 12]
    assert lyndon_factorization(b"abaabaaba") == [2, 5, 8, 9]
    assert lyndon_factorization(b"a") == [1]


def test_factorization_is_streaming():
    gen = lyndon_factorization_stream(b"abaabaaba")
    assert next(gen) == 2 and next(gen) == 5  # ends arrive one at a time


def test_factorization_slices_without_copy():
    t = b"xxnorthamericayy"
    assert lyndon_factorization(t, start=3, length=12) == [4, 5, 11, 12]
    with pytest.raises(UsageError):
        lyndon_factorization(b"abc", start=1, length=0)
    with pytest.raises(UsageError):
        lyndon_factorization(b"abc", start=3, length=2)


def test_factorization_unique_exhaustive():
    for t in all_strings(b"ab", 8):
        assert lyndon_factorization(t) == brute_factorization(t)
    for t in all_strings(b"abc", 5):
        assert lyndon_factorization(t) == brute_factorization(t)


@settings(max_examples=300, deadline=None)
@given(st.binary(min_size=1, max_size=60))
def test_factorization_properties(t):
    ends = lyndon_factorization(t)
    assert ends[-1] == len(t)
    fs = factors_of(t, ends)
    assert b"".join(fs) == t
    for f in fs:
        assert is_lyndon_word(f, 1, len(f))
    for a, b in zip(fs, fs[1:]):
        assert a >= b  # non-increasing factor sequence


def test_detector_examples():
    assert detect_extended_run(b"abaabaaba") == ExtendedRun(3, 3)
    assert detect_extended_run(b"northamerica") is None
    assert detect_extended_run(b"aaaa") == ExtendedRun(1, 1)
    assert detect_extended_run(b"bababa") == ExtendedRun(2, 2)


def test_detector_rejects_single_occurrence():
    # a lone Lyndon word is its own longest factor, and 2l > n rejects it
    assert detect_extended_run(b"ab") is None
    assert detect_extended_run(b"abc") is None
    assert detect_extended_run(b"ba") is None


def compose_run(rng, sigma=3, max_mu=8, max_t=5):
    while True:
        m = rng.randint(1, max_mu)
        mu = bytes(rng.randrange(sigma) + 97 for _ in range(m))
        if is_lyndon_word(mu, 1, m):
            break
    t = rng.randint(2, max_t)
    suf_len = rng.randrange(m)
    pre_len = rng.randrange(m)
    s = mu[m - suf_len :] + mu * t + mu[:pre_len]
    return s, m, suf_len


def brute_is_extended_run(s: bytes) -> bool:
    n = len(s)
    for p in range(1, n // 2 + 1):
        if all(s[i] == s[i - p] for i in range(p, n)):
            for z in range(1, p + 1):
                if n - (z - 1) >= 2 * p and is_lyndon_word(s, z, p):
                    return True
    return False


def test_detector_on_composed_runs():
    rng = random.Random(99)
    for _ in range(3000):
        s, m, suf_len = compose_run(rng)
        got = detect_extended_run(s)
        assert got == ExtendedRun(m, suf_len + 1), (s, got, m, suf_len)


def test_detector_against_brute_force_form_check():
    rng = random.Random(100)
    for _ in range(3000):
        n = rng.randint(1, 24)
        s = bytes(rng.randrange(2) + 97 for _ in range(n))
        got = detect_extended_run(s)
        assert (got is not None) == brute_is_extended_run(s), s
        if got is not None:
            per, z = got
            assert is_lyndon_word(s, z, per)
            assert all(s[i] == s[i - per] for i in range(per, n))
            assert 2 * per <= n


def test_kernel_detectors_match_public():
    import numpy as np

    from lyndonarray import _backend

    rng = random.Random(4)
    kernels = [_backend.get_kernels("pure")]
    try:
        kernels.append(_backend.get_kernels("compiled"))
    except ImportError:
        pass
    for _ in range(2000):
        n = rng.randint(1, 40)
        s = bytes(rng.randrange(3) + 97 for _ in range(n))
        want = detect_extended_run(s)
        want_t = None if want is None else tuple(want)
        for k in kernels:
            stats = np.zeros(4, dtype=np.uint64) if k.BACKEND == "compiled" else [0] * 4
            assert k.detect_run(s, 1, n, stats) == want_t
